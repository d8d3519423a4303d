//! Elaboration of expressions into scalars, disc elements, cone elements or
//! forms. Mixed operands are promoted along scalar → cone → disc → form.

use std::fmt;

use qcone::calculus::d;
use qcone::{CalcElement, ConeElement, DiscElement, Scalar};
use thiserror::Error;

use crate::expr::{Expr, Generator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Cone(ConeElement),
    Disc(DiscElement),
    Form(CalcElement),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("`{0}` needs the cone order; pass --N")]
    NeedsOrder(&'static str),
    #[error("division by zero")]
    DivisionByZero,
    #[error("only scalars can be divided by, got {0}")]
    NonScalarDivisor(String),
    #[error("negative power of a non-scalar: {0}")]
    NegativePower(String),
    #[error(transparent)]
    Algebra(#[from] qcone::Error),
}

/// Evaluation context: the cone order, if any.
#[derive(Clone, Copy, Debug, Default)]
pub struct Context {
    pub n: Option<u32>,
}

impl Value {
    fn rank(&self) -> u8 {
        match self {
            Value::Scalar(_) => 0,
            Value::Cone(_) => 1,
            Value::Disc(_) => 2,
            Value::Form(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Cone(_) => "cone",
            Value::Disc(_) => "disc",
            Value::Form(_) => "form",
        }
    }

    fn to_disc(&self) -> DiscElement {
        match self {
            Value::Scalar(s) => DiscElement::scalar(s.clone()),
            Value::Cone(c) => c.embed(),
            Value::Disc(u) => u.clone(),
            Value::Form(_) => unreachable!("forms are never demoted"),
        }
    }

    fn to_form(&self) -> CalcElement {
        match self {
            Value::Form(f) => f.clone(),
            other => CalcElement::function(other.to_disc()),
        }
    }

    /// The value as a disc element, or its four form components.
    pub fn components(&self) -> Vec<DiscElement> {
        match self {
            Value::Form(f) => vec![f.c00.clone(), f.c10.clone(), f.c01.clone(), f.c11.clone()],
            other => vec![other.to_disc()],
        }
    }

    /// Bring two values to a common kind.
    fn unify(self, other: Value) -> (Value, Value) {
        let rank = self.rank().max(other.rank());
        (self.promote(rank), other.promote(rank))
    }

    fn promote(self, rank: u8) -> Value {
        if self.rank() == rank {
            return self;
        }
        match rank {
            // scalars stay scalars next to cone elements
            1 => self,
            2 => Value::Disc(self.to_disc()),
            _ => Value::Form(self.to_form()),
        }
    }

    fn scalar_times(s: &Scalar, v: Value) -> Value {
        match v {
            Value::Scalar(t) => Value::Scalar(s * &t),
            Value::Cone(c) => Value::Cone(c.scale(s)),
            Value::Disc(u) => Value::Disc(u.scale(s)),
            Value::Form(f) => Value::Form(f.scale(s)),
        }
    }

    pub fn plus(self, other: Value) -> Result<Value, EvalError> {
        Ok(match (self, other) {
            (Value::Scalar(a), Value::Cone(c)) | (Value::Cone(c), Value::Scalar(a)) => {
                let n = c.order();
                Value::Cone(c.try_add(&ConeElement::scalar(n, a))?)
            }
            (l, r) => match l.unify(r) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + b),
                (Value::Cone(a), Value::Cone(b)) => Value::Cone(a.try_add(&b)?),
                (Value::Disc(a), Value::Disc(b)) => Value::Disc(a + b),
                (a, b) => Value::Form(&a.to_form() + &b.to_form()),
            },
        })
    }

    pub fn negated(self) -> Value {
        Value::scalar_times(&-Scalar::one(), self)
    }

    pub fn times(self, other: Value) -> Result<Value, EvalError> {
        Ok(match (self, other) {
            (Value::Scalar(s), v) | (v, Value::Scalar(s)) => Value::scalar_times(&s, v),
            (l, r) => match l.unify(r) {
                (Value::Cone(a), Value::Cone(b)) => Value::Cone(a.multiply(&b)?),
                (Value::Disc(a), Value::Disc(b)) => Value::Disc(&a * &b),
                (a, b) => Value::Form(&a.to_form() * &b.to_form()),
            },
        })
    }

    pub fn over(self, other: Value) -> Result<Value, EvalError> {
        match other {
            Value::Scalar(s) => {
                let inv = s.inv().map_err(|_| EvalError::DivisionByZero)?;
                Ok(Value::scalar_times(&inv, self))
            }
            v => Err(EvalError::NonScalarDivisor(v.to_string())),
        }
    }

    pub fn pow(self, e: i32) -> Result<Value, EvalError> {
        if let Value::Scalar(s) = &self {
            return Ok(Value::Scalar(
                s.pow(e).map_err(|_| EvalError::DivisionByZero)?,
            ));
        }
        if e < 0 {
            return Err(EvalError::NegativePower(self.to_string()));
        }
        Ok(match self {
            Value::Cone(c) => Value::Cone(c.pow(e as u32)),
            Value::Disc(u) => Value::Disc(u.pow(e as u32)),
            Value::Form(f) => {
                let mut acc = CalcElement::one();
                for _ in 0..e {
                    acc = &acc * &f;
                }
                Value::Form(acc)
            }
            Value::Scalar(_) => unreachable!("handled above"),
        })
    }

    pub fn star(self) -> Value {
        match self {
            Value::Scalar(s) => Value::Scalar(s),
            Value::Cone(c) => Value::Cone(c.star()),
            Value::Disc(u) => Value::Disc(u.star()),
            Value::Form(f) => Value::Form(f.star_form()),
        }
    }

    pub fn d(self) -> Value {
        Value::Form(d(&self.to_form()))
    }

    /// Exact equality after promotion to a common kind.
    pub fn equals(&self, other: &Value) -> bool {
        let (a, b) = self.clone().unify(other.clone());
        match (&a, &b) {
            (Value::Cone(x), Value::Scalar(s)) | (Value::Scalar(s), Value::Cone(x)) => {
                *x == ConeElement::scalar(x.order(), s.clone())
            }
            _ => a == b,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => s.fmt(f),
            Value::Cone(c) => c.fmt(f),
            Value::Disc(u) => u.fmt(f),
            Value::Form(x) => x.fmt(f),
        }
    }
}

fn generator(g: Generator, ctx: Context) -> Result<Value, EvalError> {
    let cone = |build: fn(u32) -> ConeElement| ctx.n.map(|n| Value::Cone(build(n)));
    Ok(match g {
        Generator::Q => Value::Scalar(Scalar::q()),
        Generator::Gamma => Value::Scalar(Scalar::gamma()),
        Generator::Z => Value::Disc(DiscElement::z()),
        Generator::Zs => Value::Disc(DiscElement::zs()),
        Generator::Dz => Value::Form(CalcElement::dz()),
        Generator::Dzs => Value::Form(CalcElement::dzs()),
        Generator::A => cone(ConeElement::a).unwrap_or_else(|| Value::Disc(DiscElement::a())),
        Generator::X => {
            cone(ConeElement::x).unwrap_or_else(|| Value::Disc(ConeElement::x(2).embed()))
        }
        Generator::W => {
            cone(ConeElement::w).unwrap_or_else(|| Value::Disc(ConeElement::w(2).embed()))
        }
        Generator::B => cone(ConeElement::b).ok_or(EvalError::NeedsOrder("b"))?,
        Generator::Bs => cone(ConeElement::bs).ok_or(EvalError::NeedsOrder("bs"))?,
    })
}

/// Evaluate an expression.
pub fn eval(e: &Expr, ctx: Context) -> Result<Value, EvalError> {
    let ev = |x: &Expr| eval(x, ctx);
    match e {
        Expr::Int(n) => Ok(Value::Scalar(Scalar::from_rational(
            num::BigRational::from_integer(n.clone()),
        ))),
        Expr::Gen(g) => generator(*g, ctx),
        Expr::Neg(x) => Ok(ev(x)?.negated()),
        Expr::Add(l, r) => ev(l)?.plus(ev(r)?),
        Expr::Sub(l, r) => ev(l)?.plus(ev(r)?.negated()),
        Expr::Mul(l, r) | Expr::Wedge(l, r) => ev(l)?.times(ev(r)?),
        Expr::Div(l, r) => ev(l)?.over(ev(r)?),
        Expr::Pow(b, k) => ev(b)?.pow(*k),
        Expr::Star(x) => Ok(ev(x)?.star()),
        Expr::D(x) => Ok(ev(x)?.d()),
    }
}
