//! Univariate polynomials over ℚ(q, γ) and the extended Euclidean algorithm.

use std::fmt;

use num::Zero;
use serde::{Serialize, Serializer};

use super::Scalar;
use crate::Error;

/// A polynomial `Σ c_k w^k` with coefficients in ℚ(q, γ).
///
/// The variable name only matters for display; the same type carries
/// polynomials in `w`, in `x` and in the cone generator `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    /// The variable itself.
    pub fn var() -> Self {
        UniPoly::from_coeffs(vec![Scalar::zero(), Scalar::one()])
    }

    /// `c0 + c1·w`.
    pub fn linear(c0: Scalar, c1: Scalar) -> Self {
        UniPoly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Coefficients in ascending degree.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self(inner(w))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        self.coeffs.iter().rev().fold(UniPoly::zero(), |acc, c| {
            acc.mul(inner).add(&UniPoly::constant(c.clone()))
        })
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Euclidean division over the field.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), Error> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        if self.coeffs.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    /// Product `Π (c0_l + c1_l·w)` of linear factors.
    pub fn product_of_linear<I>(factors: I) -> UniPoly
    where
        I: IntoIterator<Item = (Scalar, Scalar)>,
    {
        factors.into_iter().fold(UniPoly::one(), |acc, (c0, c1)| {
            acc.mul(&UniPoly::linear(c0, c1))
        })
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayIn { poly: self, var }
    }
}

/// Result of [`extended_gcd`]: `u·p1 + v·p2 = gcd`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGcd {
    pub gcd: UniPoly,
    pub u: UniPoly,
    pub v: UniPoly,
}

/// Extended Euclidean algorithm. The returned gcd is monic and the
/// cofactors satisfy `u·p1 + v·p2 = gcd` exactly.
pub fn extended_gcd(p1: &UniPoly, p2: &UniPoly) -> Result<ExtendedGcd, Error> {
    if p1.is_zero() && p2.is_zero() {
        return Err(Error::BothZero);
    }
    let (mut r0, mut r1) = (p1.clone(), p2.clone());
    let (mut u0, mut u1) = (UniPoly::one(), UniPoly::zero());
    let (mut v0, mut v1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (quot, rem) = r0.div_rem(&r1)?;
        let u2 = u0.sub(&quot.mul(&u1));
        let v2 = v0.sub(&quot.mul(&v1));
        (r0, r1) = (r1, rem);
        (u0, u1) = (u1, u2);
        (v0, v1) = (v1, v2);
    }
    let lead_inv = r0.lead().expect("nonzero remainder").inv()?;
    Ok(ExtendedGcd {
        gcd: r0.scale(&lead_inv),
        u: u0.scale(&lead_inv),
        v: v0.scale(&lead_inv),
    })
}

struct DisplayIn<'a> {
    poly: &'a UniPoly,
    var: &'a str,
}

impl fmt::Display for DisplayIn<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .poly
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let basis = match k {
                    0 => String::new(),
                    1 => self.var.to_string(),
                    _ => format!("{}^{k}", self.var),
                };
                (c, basis)
            });
        super::fmt::write_sum(f, terms)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_in("w").fmt(f)
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
}

impl std::ops::Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        UniPoly::add(&self, &rhs)
    }
}
