//! Canonical text form for scalars, e.g. `1+q`, `g*(1+q)`, `q^-1`,
//! `-q^2/(1-q^2)`.
//!
//! The output is valid input for the expression parser of the command-line
//! front end: products bind tighter than sums, and anything that is not a
//! product of atoms is parenthesized.

use std::fmt;

use num::{BigRational, One, Signed};

use super::{Mono, Poly, Scalar};

/// `q^a*g^b` with signed exponents; empty for the unit monomial.
pub(crate) fn mono_str(q: i64, g: i64) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("q", q), ("g", g)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

fn term_body(m: &Mono, c: &BigRational) -> String {
    let mono = mono_str(m.q as i64, m.g as i64);
    let abs = c.abs();
    match (abs.is_one(), mono.is_empty()) {
        (_, true) => abs.to_string(),
        (true, false) => mono,
        (false, false) => format!("{abs}*{mono}"),
    }
}

impl fmt::Display for Poly {
    /// Terms in ascending graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            write!(f, "{sign}{}", term_body(m, c))?;
        }
        Ok(())
    }
}

/// A scalar split into a sign and a string that can stand as a factor in a
/// product without further parentheses.
pub(crate) struct Factor {
    pub negative: bool,
    pub body: String,
    /// Set when the body is `(P)` for a multi-term polynomial `P` with
    /// nothing else around it.
    bare_sum: Option<String>,
}

impl Factor {
    pub fn is_unit(&self) -> bool {
        self.body == "1"
    }
}

impl Scalar {
    pub(crate) fn factor(&self) -> Factor {
        if self.is_zero() {
            return Factor {
                negative: false,
                body: "0".into(),
                bare_sum: None,
            };
        }
        let num = self.numer();
        let den = self.denom();
        let m = num.mono_content();
        let rest = num.div_mono(m);
        let (mut qe, mut ge) = (m.q as i64, m.g as i64);
        let den_str = match den.as_term() {
            Some((dm, _)) => {
                qe -= dm.q as i64;
                ge -= dm.g as i64;
                None
            }
            None => {
                let dm = den.mono_content();
                let rest = den.div_mono(dm);
                let mono = mono_str(dm.q as i64, dm.g as i64);
                Some(if mono.is_empty() {
                    format!("({rest})")
                } else {
                    format!("({mono}*({rest}))")
                })
            }
        };
        if den_str.is_none() && (qe < 0 || ge < 0) && rest.as_term().is_none() {
            return laurent_factor(&rest, qe, ge);
        }
        let mono = mono_str(qe, ge);
        let mut parts = Vec::new();
        let mut negative = false;
        let mut bare_sum = None;
        match rest.as_term() {
            Some((_, c)) => {
                negative = c.is_negative();
                let abs = c.abs();
                if !abs.is_one() {
                    parts.push(abs.to_string());
                }
                if !mono.is_empty() {
                    parts.push(mono);
                }
            }
            None => {
                if !mono.is_empty() {
                    parts.push(mono);
                }
                if parts.is_empty() && den_str.is_none() {
                    bare_sum = Some(rest.to_string());
                }
                let lowest_negative = rest.trailing().is_some_and(|(_, c)| c.is_negative());
                if lowest_negative && bare_sum.is_none() {
                    negative = true;
                    parts.push(format!("({})", rest.neg()));
                } else {
                    parts.push(format!("({rest})"));
                }
            }
        }
        let mut body = if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        };
        if let Some(d) = den_str {
            body = format!("{body}/{d}");
        }
        Factor {
            negative,
            body,
            bare_sum,
        }
    }
}

/// `q^qe g^ge · rest` written out term by term, since a negative exponent
/// in front of a parenthesized sum reads badly.
fn laurent_factor(rest: &Poly, qe: i64, ge: i64) -> Factor {
    let terms: Vec<(String, bool)> = rest
        .terms()
        .map(|(m, c)| {
            let mono = mono_str(m.q as i64 + qe, m.g as i64 + ge);
            let abs = c.abs();
            let body = match (abs.is_one(), mono.is_empty()) {
                (_, true) => abs.to_string(),
                (true, false) => mono,
                (false, false) => format!("{abs}*{mono}"),
            };
            (body, c.is_negative())
        })
        .collect();
    let signed = |flip: bool| {
        let mut out = String::new();
        for (i, (body, neg)) in terms.iter().enumerate() {
            let neg = *neg != flip;
            out.push_str(if neg {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            });
            out.push_str(body);
        }
        out
    };
    let negative = terms[0].1;
    Factor {
        negative,
        body: format!("({})", signed(negative)),
        bare_sum: Some(signed(false)),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fac = self.factor();
        if let Some(s) = fac.bare_sum {
            return f.write_str(&s);
        }
        if fac.negative {
            f.write_str("-")?;
        }
        f.write_str(&fac.body)
    }
}

/// Write `Σ c_k · basis_k` in canonical form. An empty basis string stands
/// for the unit.
pub(crate) fn write_sum<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, String)>,
{
    let terms: Vec<_> = terms.into_iter().collect();
    if let [(c, basis)] = terms.as_slice() {
        if basis.is_empty() {
            return fmt::Display::fmt(c, f);
        }
    }
    let mut first = true;
    for (c, basis) in terms {
        let fac = c.factor();
        let body = match (basis.is_empty(), fac.is_unit()) {
            (true, _) => fac.body,
            (false, true) => basis,
            (false, false) => format!("{}*{basis}", fac.body),
        };
        match (first, fac.negative) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use crate::scalar::{q_integer, Scalar};

    #[test]
    fn canonical_strings() {
        let q = Scalar::q();
        let g = Scalar::gamma();
        let one = Scalar::one();
        assert_eq!(q_integer(2).to_string(), "1+q");
        assert_eq!((&one - &q.pow(2).unwrap()).to_string(), "1-q^2");
        assert_eq!(q_integer(-1).to_string(), "-q^-1");
        assert_eq!((&g * &q_integer(2)).to_string(), "g*(1+q)");
        let f = -(q.pow(2).unwrap()) / (&one - &q.pow(2).unwrap());
        assert_eq!(f.to_string(), "-q^2/(1-q^2)");
        assert_eq!((q_integer(2) / (&one - &q)).to_string(), "(1+q)/(1-q)");
        assert_eq!(Scalar::zero().to_string(), "0");
        let half = Scalar::from_rational(num::BigRational::new(1.into(), 2.into()));
        assert_eq!((&half * &q).to_string(), "1/2*q");
        assert_eq!(q_integer(-2).to_string(), "-q^-2-q^-1");
        let d = &g * &g * q_integer(2);
        assert_eq!((&one / &d).to_string(), "1/(g^2*(1+q))");
        assert_eq!(
            (-(&q * &q_integer(2)) / &(&g + &q)).to_string(),
            "-q*(1+q)/(q+g)"
        );
        assert_eq!(
            (&(-&q_integer(2) * &q) * &q_integer(2)).to_string(),
            "-q*(1+2*q+q^2)"
        );
        assert_eq!((q_integer(2) * Scalar::q_pow(-1)).to_string(), "q^-1+1");
    }
}
