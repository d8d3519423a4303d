//! Surface syntax: generators `q g z zs a b bs dz dzs x w`, integer
//! literals, `+ - * /`, powers `^n`, wedge `^`, and `star(..)`, `d(..)`.
//!
//! A `^` immediately followed by an optionally signed integer is a power;
//! any other `^` is the wedge product, which has the precedence of `*`.

use std::fmt;

use num::BigInt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Q,
    Gamma,
    Z,
    Zs,
    A,
    B,
    Bs,
    Dz,
    Dzs,
    X,
    W,
}

impl Generator {
    pub const ALL: [Generator; 11] = [
        Generator::Q,
        Generator::Gamma,
        Generator::Z,
        Generator::Zs,
        Generator::A,
        Generator::B,
        Generator::Bs,
        Generator::Dz,
        Generator::Dzs,
        Generator::X,
        Generator::W,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Q => "q",
            Generator::Gamma => "g",
            Generator::Z => "z",
            Generator::Zs => "zs",
            Generator::A => "a",
            Generator::B => "b",
            Generator::Bs => "bs",
            Generator::Dz => "dz",
            Generator::Dzs => "dzs",
            Generator::X => "x",
            Generator::W => "w",
        }
    }

    fn from_name(s: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Gen(Generator),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Star(Box<Expr>),
    D(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { offset: usize, name: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                *offset
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(src[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().expect("in bounds");
                return Err(ParseError::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    /// Whether the `^` at the cursor starts a power.
    fn caret_is_power(&self) -> bool {
        matches!(self.peek_at(1), Tok::Int(_))
            || (matches!(self.peek_at(1), Tok::Minus | Tok::Plus)
                && matches!(self.peek_at(2), Tok::Int(_)))
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Caret if !self.caret_is_power() => {
                    self.bump();
                    lhs = Expr::Wedge(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let mut base = self.atom()?;
        while *self.peek() == Tok::Caret && self.caret_is_power() {
            self.bump();
            let negative = match self.peek() {
                Tok::Minus => {
                    self.bump();
                    true
                }
                Tok::Plus => {
                    self.bump();
                    false
                }
                _ => false,
            };
            let at = self.offset();
            let Tok::Int(n) = self.bump() else {
                unreachable!("checked by caret_is_power")
            };
            let e: i32 = n.try_into().map_err(|_| ParseError::Syntax {
                offset: at,
                message: "exponent out of range".into(),
            })?;
            base = Expr::Pow(Box::new(base), if negative { -e } else { e });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::LParen => self.parenthesized(at),
            Tok::Ident(name) if name == "star" || name == "d" => {
                let open = self.offset();
                self.expect(Tok::LParen, &format!("`(` after `{name}`"))?;
                let e = self.parenthesized(open)?;
                Ok(if name == "star" {
                    Expr::Star(Box::new(e))
                } else {
                    Expr::D(Box::new(e))
                })
            }
            Tok::Ident(name) => match Generator::from_name(&name) {
                Some(g) => Ok(Expr::Gen(g)),
                None => Err(ParseError::UnknownIdentifier { offset: at, name }),
            },
            Tok::End => Err(ParseError::Syntax {
                offset: at,
                message: "unexpected end of input".into(),
            }),
            t => Err(ParseError::Syntax {
                offset: at,
                message: format!("unexpected {}", describe(&t)),
            }),
        }
    }
}

impl Parser {
    /// The rest of `( expr )` after the opening parenthesis at `open`.
    fn parenthesized(&mut self, open: usize) -> Result<Expr, ParseError> {
        let unclosed = || ParseError::Syntax {
            offset: open,
            message: "unclosed `(`".into(),
        };
        if *self.peek() == Tok::End {
            return Err(unclosed());
        }
        let e = self.expr()?;
        match self.peek() {
            Tok::RParen => {
                self.bump();
                Ok(e)
            }
            Tok::End => Err(unclosed()),
            t => {
                let msg = format!("expected `)`, found {}", describe(t));
                self.error(msg)
            }
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::RParen => "`)`",
        Tok::LParen => "`(`",
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

/// Parse a complete expression.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    if *p.peek() == Tok::End {
        return p.error("empty expression");
    }
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) | Expr::Wedge(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(_) | Expr::Gen(_) | Expr::Star(_) | Expr::D(_) => 5,
        }
    }

    /// Whether the printed form starts with a digit or a sign, which would
    /// turn a preceding `^` into a power.
    fn starts_numeric(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Neg(_) => true,
            Expr::Add(l, _)
            | Expr::Sub(l, _)
            | Expr::Mul(l, _)
            | Expr::Div(l, _)
            | Expr::Wedge(l, _)
            | Expr::Pow(l, _) => l.starts_numeric(),
            Expr::Gen(_) | Expr::Star(_) | Expr::D(_) => false,
        }
    }
}

struct Wrapped<'a>(&'a Expr, bool);

fn left(e: &Expr, p: u8) -> Wrapped<'_> {
    Wrapped(e, e.precedence() < p)
}

fn right(e: &Expr, p: u8) -> Wrapped<'_> {
    Wrapped(e, e.precedence() <= p)
}

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    /// Minimal parentheses; `parse` of the output gives back the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.precedence();
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Gen(g) => f.write_str(g.name()),
            Expr::Neg(e) => write!(f, "-{}", Wrapped(e, e.precedence() < p)),
            Expr::Add(l, r) => write!(f, "{} + {}", left(l, p), right(r, p)),
            Expr::Sub(l, r) => write!(f, "{} - {}", left(l, p), right(r, p)),
            Expr::Mul(l, r) => write!(f, "{}*{}", left(l, p), right(r, p)),
            Expr::Div(l, r) => write!(f, "{}/{}", left(l, p), right(r, p)),
            Expr::Wedge(l, r) => write!(
                f,
                "{}^{}",
                left(l, p),
                Wrapped(r, r.precedence() <= p || r.starts_numeric())
            ),
            Expr::Pow(b, e) => write!(f, "{}^{e}", Wrapped(b, b.precedence() <= p)),
            Expr::Star(e) => write!(f, "star({e})"),
            Expr::D(e) => write!(f, "d({e})"),
        }
    }
}
