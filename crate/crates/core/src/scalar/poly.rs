//! Sparse polynomials in the two parameters `q` and `γ` with rational
//! coefficients, together with the bivariate GCD that keeps [`Scalar`]
//! fractions reduced.
//!
//! [`Scalar`]: super::Scalar

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use super::qpoly::QPoly;

/// Exponent pair `q^q γ^g`.
///
/// Ordered graded-lexicographically: total degree first, then by the
/// power of `γ`. Iteration over a [`Poly`] therefore starts at the
/// lowest-degree term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub q: u32,
    pub g: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { q: 0, g: 0 };

    pub fn new(q: u32, g: u32) -> Self {
        Mono { q, g }
    }

    pub fn degree(self) -> u32 {
        self.q + self.g
    }

    fn mul(self, other: Mono) -> Mono {
        Mono {
            q: self.q + other.q,
            g: self.g + other.g,
        }
    }

    fn divides(self, other: Mono) -> bool {
        self.q <= other.q && self.g <= other.g
    }

    fn div(self, other: Mono) -> Mono {
        Mono {
            q: self.q - other.q,
            g: self.g - other.g,
        }
    }

    fn min(self, other: Mono) -> Mono {
        Mono {
            q: self.q.min(other.q),
            g: self.g.min(other.g),
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.g).cmp(&(other.degree(), other.g))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `q` and `γ` over ℚ. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Mono, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(c, Mono::ONE)
    }

    pub fn term(c: BigRational, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn q() -> Self {
        Poly::term(BigRational::one(), Mono::new(1, 0))
    }

    pub fn gamma() -> Self {
        Poly::term(BigRational::one(), Mono::new(0, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term if this polynomial is a monomial.
    pub fn as_term(&self) -> Option<(&Mono, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Lowest term under the graded-lex order.
    pub fn trailing(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next()
    }

    /// Highest term under the graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn insert_add(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Largest monomial dividing every term; `1` for the zero polynomial.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        match it.next() {
            None => Mono::ONE,
            Some(first) => it.fold(*first, |acc, m| acc.min(*m)),
        }
    }

    pub fn div_mono(&self, m: Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.div(m), c.clone()))
                .collect(),
        }
    }

    /// Exact division. Returns `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc_inv) = (*dm, dc.recip());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(*rm) {
                return None;
            }
            let m = rm.div(dm);
            let c = rc * &dc_inv;
            rem = rem.sub(&divisor.mul_mono(m).scale(&c));
            quot.insert_add(m, c);
        }
        Some(quot)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, q: &BigRational, g: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| c * pow_rat(q, m.q) * pow_rat(g, m.g))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    pub fn degree_in_gamma(&self) -> u32 {
        self.terms.keys().map(|m| m.g).max().unwrap_or(0)
    }

    /// View as a polynomial in `γ` with coefficients in `ℚ[q]`.
    fn to_gamma_coeffs(&self) -> Vec<QPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let dg = self.degree_in_gamma() as usize;
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::new(); dg + 1];
        for (m, c) in &self.terms {
            let row = &mut rows[m.g as usize];
            let qi = m.q as usize;
            if row.len() <= qi {
                row.resize(qi + 1, BigRational::zero());
            }
            row[qi] = c.clone();
        }
        rows.into_iter().map(QPoly::from_vec).collect()
    }

    fn from_gamma_coeffs(rows: &[QPoly]) -> Poly {
        let mut out = Poly::zero();
        for (g, row) in rows.iter().enumerate() {
            for (q, c) in row.coeffs().iter().enumerate() {
                out.insert_add(Mono::new(q as u32, g as u32), c.clone());
            }
        }
        out
    }

    fn from_qpoly(p: &QPoly) -> Poly {
        Poly::from_gamma_coeffs(std::slice::from_ref(p))
    }

    /// A greatest common divisor, normalized so its lowest term has
    /// coefficient 1. `gcd(0, p)` is `p` normalized the same way.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.normalize_trailing();
        }
        if other.is_zero() {
            return self.normalize_trailing();
        }
        let m = self.mono_content().min(other.mono_content());
        let a = self.div_mono(self.mono_content());
        let b = other.div_mono(other.mono_content());
        if a.len() == 1 || b.len() == 1 {
            return Poly::term(BigRational::one(), m);
        }
        gcd_gamma(&a.to_gamma_coeffs(), &b.to_gamma_coeffs())
            .mul_mono(m)
            .normalize_trailing()
    }

    /// Scale so that the lowest term under the graded-lex order has coefficient 1.
    pub fn normalize_trailing(&self) -> Poly {
        match self.trailing() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Lcm of the coefficient denominators, gcd of the numerators: the
    /// rational content, always positive.
    pub fn rational_content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num.abs(), den)
        }
    }
}

fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    num::pow(x.clone(), e as usize)
}

fn content(rows: &[QPoly]) -> QPoly {
    let mut c = QPoly::zero();
    for r in rows {
        c = c.gcd(r);
        if c.is_constant() && !c.is_zero() {
            return QPoly::one();
        }
    }
    c
}

fn primitive(rows: &[QPoly]) -> Vec<QPoly> {
    let c = content(rows);
    rows.iter().map(|r| r.div_rem(&c).0).collect()
}

fn trim(mut rows: Vec<QPoly>) -> Vec<QPoly> {
    while rows.last().is_some_and(QPoly::is_zero) {
        rows.pop();
    }
    rows
}

/// Pseudo-remainder of `a` by `b` in `ℚ[q][γ]`.
fn prem(a: &[QPoly], b: &[QPoly]) -> Vec<QPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for row in r.iter_mut() {
            *row = row.mul(lb);
        }
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] = r[shift + i].sub(&bi.mul(&lr));
        }
        r = trim(r);
    }
    r
}

/// GCD of two nonzero polynomials given as `γ`-coefficient rows, via
/// contents in `ℚ[q]` and a primitive remainder sequence in `γ`.
fn gcd_gamma(a: &[QPoly], b: &[QPoly]) -> Poly {
    let cont = content(a).gcd(&content(b));
    let mut a = primitive(a);
    let mut b = primitive(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    let g = loop {
        if b.len() == 1 {
            break vec![QPoly::one()];
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            break b;
        }
        a = b;
        b = primitive(&r);
    };
    Poly::from_qpoly(&cont).mul(&Poly::from_gamma_coeffs(&primitive(&g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn one_minus_q() -> Poly {
        Poly::one().sub(&Poly::q())
    }

    #[test]
    fn gcd_recovers_common_factor() {
        // (1-q)(γ+q) and (1-q)(γ-2)
        let f = one_minus_q();
        let a = f.mul(&Poly::gamma().add(&Poly::q()));
        let b = f.mul(&Poly::gamma().sub(&Poly::constant(int(2))));
        assert_eq!(a.gcd(&b), f);
    }

    #[test]
    fn gcd_with_monomial_part() {
        let a = Poly::gamma().mul(&Poly::q()).mul(&one_minus_q());
        let b = Poly::gamma().pow(2).mul(&one_minus_q().pow(2));
        assert_eq!(a.gcd(&b), Poly::gamma().mul(&one_minus_q()));
    }

    #[test]
    fn coprime_is_one() {
        let a = Poly::gamma().add(&Poly::one());
        let b = Poly::q().add(&Poly::one());
        assert!(a.gcd(&b).is_one());
    }

    #[test]
    fn exact_division() {
        let a = one_minus_q().mul(&Poly::gamma().add(&Poly::q()));
        assert_eq!(
            a.div_exact(&one_minus_q()),
            Some(Poly::gamma().add(&Poly::q()))
        );
        assert_eq!(Poly::gamma().div_exact(&Poly::q()), None);
    }
}
