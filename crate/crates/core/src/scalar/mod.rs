//! Exact arithmetic in the rational function field ℚ(q, γ).
//!
//! A [`Scalar`] is a reduced fraction of two [`Poly`]s. The denominator is
//! normalized so that its lowest term (graded-lex in `q`, `γ`) has
//! coefficient 1, which makes equality of scalars plain structural
//! equality. Both parameters are formal, so `γ ≠ 0` and `q` not a root of
//! unity hold automatically; numeric specializations go through
//! [`Scalar::substitute`].

mod fmt;
pub mod poly;
mod qpoly;
pub mod unipoly;

use std::ops::{Add, Div, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Zero};
use serde::{Serialize, Serializer};

pub(crate) use fmt::write_sum;
pub use poly::{Mono, Poly};
pub use unipoly::{extended_gcd, ExtendedGcd, UniPoly};

use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(r))
    }

    /// The parameter `q`.
    pub fn q() -> Self {
        Scalar::from_poly(Poly::q())
    }

    /// The parameter `γ`.
    pub fn gamma() -> Self {
        Scalar::from_poly(Poly::gamma())
    }

    /// Build `num / den` and reduce it.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if den.is_one() {
            return Scalar { num, den };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Scalar::normalized(num, den)
    }

    /// Rescale a coprime pair so the denominator's lowest term is 1.
    fn normalized(num: Poly, den: Poly) -> Self {
        let (_, c) = den.trailing().expect("nonzero denominator");
        if c.is_one() {
            return Scalar { num, den };
        }
        let inv = c.recip();
        Scalar {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value if this scalar does not depend on `q` or `γ`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if !self.den.is_one() {
            return None;
        }
        match self.num.as_term() {
            None if self.num.is_zero() => Some(BigRational::zero()),
            Some((m, c)) if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(self.den.clone(), self.num.clone()))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i32) -> Result<Self, Error> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let e = e as u32;
        if e == 0 {
            return Ok(Scalar::one());
        }
        // numerator and denominator stay coprime under powers
        Ok(Scalar::normalized(self.num.pow(e), self.den.pow(e)))
    }

    /// `q^n` for any integer `n`.
    pub fn q_pow(n: i32) -> Self {
        let m = Mono::new(n.unsigned_abs(), 0);
        let t = Poly::term(BigRational::one(), m);
        if n >= 0 {
            Scalar::from_poly(t)
        } else {
            Scalar {
                num: Poly::one(),
                den: t,
            }
        }
    }

    /// Value at `(q, γ) = (q0, g0)`.
    pub fn substitute(&self, q0: &BigRational, g0: &BigRational) -> Result<BigRational, Error> {
        let den = self.den.eval(q0, g0);
        if den.is_zero() {
            return Err(Error::VanishingDenominator {
                scalar: self.to_string(),
                q: q0.to_string(),
                gamma: g0.to_string(),
            });
        }
        Ok(self.num.eval(q0, g0) / den)
    }

    /// Apply the substitution `q ↦ q^{-1}`.
    pub fn invert_q(&self) -> Self {
        let flip = |p: &Poly| -> (Poly, u32) {
            let top = p.terms().map(|(m, _)| m.q).max().unwrap_or(0);
            let mut out = Poly::zero();
            for (m, c) in p.terms() {
                out = out.add(&Poly::term(c.clone(), Mono::new(top - m.q, m.g)));
            }
            (out, top)
        };
        let (n, tn) = flip(&self.num);
        let (d, td) = flip(&self.den);
        // n(1/q) / d(1/q) = q^{td-tn} n'(q) / d'(q)
        let shift = td as i32 - tn as i32;
        let base = Scalar::reduce(n, d);
        &base * &Scalar::q_pow(shift)
    }
}

/// The q-integer `[n]_q = (1 - q^n)/(1 - q)`, for any integer `n`.
///
/// For `n ≥ 0` this is `1 + q + … + q^{n-1}`; for `n < 0` it is
/// `-(q^{-1} + … + q^{n})`.
pub fn q_integer(n: i32) -> Scalar {
    let q = Scalar::q();
    if n >= 0 {
        (0..n).fold(Scalar::zero(), |acc, k| &acc + &q.pow(k).expect("q ≠ 0"))
    } else {
        (n..0).fold(Scalar::zero(), |acc, k| &acc - &Scalar::q_pow(k))
    }
}

/// `[n]_{q^{-1}}`, the q-integer in the inverted parameter.
pub fn q_integer_inv(n: i32) -> Scalar {
    if n >= 0 {
        (0..n).fold(Scalar::zero(), |acc, k| &acc + &Scalar::q_pow(-k))
    } else {
        (n..0).fold(Scalar::zero(), |acc, k| &acc - &Scalar::q_pow(-k))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_rational(BigRational::from_integer(n))
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return Scalar {
                    num,
                    den: Poly::one(),
                };
            }
            return Scalar::reduce(num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            return Scalar::reduce(num, self.den.mul(&rhs.den));
        }
        let d1 = self.den.div_exact(&g).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d2).add(&rhs.num.mul(&d1));
        if num.is_zero() {
            return Scalar::zero();
        }
        // only factors of g can cancel
        let h = num.gcd(&g);
        if h.is_one() {
            return Scalar::normalized(num, d1.mul(&rhs.den));
        }
        let num = num.div_exact(&h).expect("gcd divides");
        let g = g.div_exact(&h).expect("gcd divides");
        Scalar::normalized(num, d1.mul(&d2).mul(&g))
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        // cross-cancel so each gcd involves only one factor of each side
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        Scalar::normalized(n1.mul(&n2), d1.mul(&d2))
    }
}

fn cancel(num: &Poly, den: &Poly) -> (Poly, Poly) {
    if den.is_one() {
        return (num.clone(), den.clone());
    }
    let g = num.gcd(den);
    if g.is_one() {
        (num.clone(), den.clone())
    } else {
        (
            num.div_exact(&g).expect("gcd divides"),
            den.div_exact(&g).expect("gcd divides"),
        )
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::inv`] for a checked inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::one(), |a, b| &a * &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn q_integer_values() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(2), Scalar::one() + Scalar::q());
        // [-1]_q = -q^{-1}: numerator -1, denominator q
        let m1 = q_integer(-1);
        assert_eq!(m1.numer(), &Poly::constant(rat(-1, 1)));
        assert_eq!(m1.denom(), &Poly::q());
    }

    #[test]
    fn q_integer_matches_closed_form() {
        let one_minus_q = Scalar::one() - Scalar::q();
        for n in -5..=5 {
            let closed = (Scalar::one() - Scalar::q_pow(n)) / &one_minus_q;
            assert_eq!(q_integer(n), closed, "n = {n}");
        }
    }

    #[test]
    fn field_examples() {
        let q = Scalar::q();
        assert!((&q + &(-&q)).is_zero());
        let one_minus_q = Scalar::one() - &q;
        let inv = one_minus_q.inv().unwrap();
        assert_eq!(inv.numer(), &Poly::one());
        assert_eq!(inv.denom(), one_minus_q.numer());
        assert_eq!(
            q_integer(2) * &one_minus_q,
            Scalar::one() - q.pow(2).unwrap()
        );
    }

    #[test]
    fn inverse_of_zero_is_an_error() {
        assert!(matches!(Scalar::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn substitution() {
        let half = rat(1, 2);
        assert_eq!(q_integer(3).substitute(&half, &half).unwrap(), rat(7, 4));
        assert_eq!(
            Scalar::one().substitute(&rat(3, 7), &rat(-2, 5)).unwrap(),
            rat(1, 1)
        );
        let x = Scalar::gamma() / (Scalar::one() - Scalar::q());
        assert_eq!(x.substitute(&half, &half).unwrap(), rat(1, 1));
        assert!(matches!(
            x.substitute(&rat(1, 1), &half),
            Err(Error::VanishingDenominator { .. })
        ));
    }

    #[test]
    fn denominator_trailing_term_is_one() {
        let x = Scalar::from_int(3) / (Scalar::from_int(2) - Scalar::from_int(4) * Scalar::q());
        // 3/(2-4q) = (3/2)/(1-2q)
        let (m, c) = x.denom().trailing().unwrap();
        assert_eq!(*m, Mono::ONE);
        assert!(c.is_one());
        assert_eq!(x.numer(), &Poly::constant(rat(3, 2)));
    }

    #[test]
    fn invert_q_of_q_integer() {
        for n in 0..5 {
            assert_eq!(q_integer(n).invert_q(), q_integer_inv(n));
        }
        assert_eq!(Scalar::q().invert_q(), Scalar::q_pow(-1));
    }
}
