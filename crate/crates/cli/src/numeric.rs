//! Direct numerical evaluation of an expression in the truncated Fock
//! representation, operator by operator. Each matrix carries a bound on
//! the total degree of the word it came from, which fixes the safe band.

use nalgebra::DMatrix;
use num::ToPrimitive;
use qcone::fock::{FockRep, TOLERANCE};
use qcone::DiscElement;
use thiserror::Error;

use crate::expr::{Expr, Generator};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("forms cannot be evaluated numerically")]
    Form,
    #[error("`{0}` needs the cone order; pass --N")]
    NeedsOrder(&'static str),
    #[error("only scalars can be divided by")]
    NonScalarDivisor,
    #[error("negative power of an operator")]
    NegativePower,
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension {dim} too small for total degree {degree}")]
    DimensionTooSmall { dim: usize, degree: u32 },
}

#[derive(Clone, Debug)]
enum Num {
    Scalar(f64),
    Op(DMatrix<f64>, u32),
}

impl Num {
    fn into_op(self, dim: usize) -> (DMatrix<f64>, u32) {
        match self {
            Num::Scalar(s) => (DMatrix::identity(dim, dim) * s, 0),
            Num::Op(m, k) => (m, k),
        }
    }
}

struct Evaluator<'a> {
    rep: &'a FockRep,
    n: Option<u32>,
    q: f64,
    g: f64,
}

impl Evaluator<'_> {
    fn op(&self, u: &DiscElement) -> Num {
        Num::Op(
            self.rep
                .evaluate(u)
                .expect("generators have polynomial coefficients"),
            u.max_total_degree(),
        )
    }

    fn affine_in_a(&self, c0: f64, c1: f64) -> Num {
        let dim = self.rep.dim();
        let a = self.rep.evaluate(&DiscElement::a()).expect("polynomial");
        Num::Op(DMatrix::identity(dim, dim) * c0 + a * c1, 2)
    }

    fn gen(&self, g: Generator) -> Result<Num, NumericError> {
        let order = |name| self.n.ok_or(NumericError::NeedsOrder(name));
        Ok(match g {
            Generator::Q => Num::Scalar(self.q),
            Generator::Gamma => Num::Scalar(self.g),
            Generator::Z => self.op(&DiscElement::z()),
            Generator::Zs => self.op(&DiscElement::zs()),
            Generator::A => self.op(&DiscElement::a()),
            Generator::B => self.op(&DiscElement::z().pow(order("b")?)),
            Generator::Bs => self.op(&DiscElement::zs().pow(order("bs")?)),
            Generator::X => self.affine_in_a(1.0, (self.q - 1.0) / self.g),
            Generator::W => self.affine_in_a(-self.q, (1.0 - self.q) * self.q / self.g),
            Generator::Dz | Generator::Dzs => return Err(NumericError::Form),
        })
    }

    fn eval(&self, e: &Expr) -> Result<Num, NumericError> {
        let dim = self.rep.dim();
        Ok(match e {
            Expr::Int(k) => Num::Scalar(k.to_f64().expect("finite")),
            Expr::Gen(g) => self.gen(*g)?,
            Expr::Neg(x) => match self.eval(x)? {
                Num::Scalar(s) => Num::Scalar(-s),
                Num::Op(m, k) => Num::Op(-m, k),
            },
            Expr::Add(l, r) | Expr::Sub(l, r) => {
                let sign = if matches!(e, Expr::Sub(..)) {
                    -1.0
                } else {
                    1.0
                };
                match (self.eval(l)?, self.eval(r)?) {
                    (Num::Scalar(a), Num::Scalar(b)) => Num::Scalar(a + sign * b),
                    (a, b) => {
                        let (ma, ka) = a.into_op(dim);
                        let (mb, kb) = b.into_op(dim);
                        Num::Op(ma + mb * sign, ka.max(kb))
                    }
                }
            }
            Expr::Mul(l, r) => match (self.eval(l)?, self.eval(r)?) {
                (Num::Scalar(a), Num::Scalar(b)) => Num::Scalar(a * b),
                (Num::Scalar(s), Num::Op(m, k)) | (Num::Op(m, k), Num::Scalar(s)) => {
                    Num::Op(m * s, k)
                }
                (Num::Op(a, ka), Num::Op(b, kb)) => Num::Op(a * b, ka + kb),
            },
            Expr::Div(l, r) => match self.eval(r)? {
                Num::Scalar(0.0) => return Err(NumericError::DivisionByZero),
                Num::Scalar(s) => match self.eval(l)? {
                    Num::Scalar(a) => Num::Scalar(a / s),
                    Num::Op(m, k) => Num::Op(m / s, k),
                },
                Num::Op(..) => return Err(NumericError::NonScalarDivisor),
            },
            Expr::Pow(b, p) => match self.eval(b)? {
                Num::Scalar(s) => Num::Scalar(s.powi(*p)),
                Num::Op(..) if *p < 0 => return Err(NumericError::NegativePower),
                Num::Op(m, k) => {
                    let mut acc = DMatrix::identity(dim, dim);
                    for _ in 0..*p {
                        acc *= &m;
                    }
                    Num::Op(acc, k * *p as u32)
                }
            },
            Expr::Star(x) => match self.eval(x)? {
                Num::Scalar(s) => Num::Scalar(s),
                Num::Op(m, k) => Num::Op(m.transpose(), k),
            },
            Expr::Wedge(..) | Expr::D(_) => return Err(NumericError::Form),
        })
    }
}

/// Outcome of a numerical comparison on the safe band.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct FockReport {
    pub degree: u32,
    pub columns: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Evaluate both sides as operators and compare them on the columns
/// `0 ..= D − 1 − M`, `M` the larger word degree of the two sides.
pub fn fock_compare(
    lhs: &Expr,
    rhs: &Expr,
    rep: &FockRep,
    n: Option<u32>,
) -> Result<FockReport, NumericError> {
    let ev = Evaluator {
        rep,
        n,
        q: rep.q0().to_f64().expect("finite"),
        g: rep.gamma0().to_f64().expect("finite"),
    };
    let dim = rep.dim();
    let (ml, kl) = ev.eval(lhs)?.into_op(dim);
    let (mr, kr) = ev.eval(rhs)?.into_op(dim);
    let degree = kl.max(kr);
    if dim as u32 <= degree {
        return Err(NumericError::DimensionTooSmall { dim, degree });
    }
    let columns = dim - degree as usize;
    let mut worst: f64 = 0.0;
    for c in 0..columns {
        for r in 0..dim {
            let (x, y) = (ml[(r, c)], mr[(r, c)]);
            worst = worst.max((x - y).abs() / 1f64.max(x.abs()).max(y.abs()));
        }
    }
    Ok(FockReport {
        degree,
        columns,
        max_deviation: worst,
        tolerance: TOLERANCE,
        pass: worst <= TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn compare(l: &str, r: &str, n: Option<u32>) -> FockReport {
        let rep = FockRep::from_ratios((1, 2), (1, 2), 40).unwrap();
        fock_compare(&parse(l).unwrap(), &parse(r).unwrap(), &rep, n).unwrap()
    }

    #[test]
    fn disc_relation_holds_numerically() {
        let r = compare("zs*z", "q*z*zs + g", None);
        assert!(r.pass);
        assert_eq!(r.degree, 2);
        assert_eq!(r.columns, 38);
        assert!(!compare("zs*z", "z*zs + g", None).pass);
    }

    #[test]
    fn cone_relation_holds_numerically() {
        assert!(compare("a*b", "q^2*b*a + g*(1+q)*b", Some(2)).pass);
        assert!(compare("w", "-q*x", Some(3)).pass);
    }

    #[test]
    fn forms_are_rejected() {
        let rep = FockRep::from_ratios((1, 2), (1, 2), 10).unwrap();
        let err =
            fock_compare(&parse("dz").unwrap(), &parse("0").unwrap(), &rep, None).unwrap_err();
        assert_eq!(err, NumericError::Form);
    }
}
