//! The quantum disc algebra `O(D_{q,γ})`: `z* z − q z z* = γ`.
//!
//! Elements are stored in the PBW basis `z^i z*^j` (powers of `z` to the
//! left). Products are normal-ordered with the closed form
//! `z*^j z = q^j z z*^j + γ[j]_q z*^{j-1}`, iterated to move a block of
//! `z`'s past a block of `z*`'s.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::scalar::{q_integer, Scalar};
use crate::{check_order, forward_binop, Error};

/// The PBW monomial `z^i z*^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscMonomial {
    pub i: u32,
    pub j: u32,
}

impl DiscMonomial {
    pub const ONE: DiscMonomial = DiscMonomial { i: 0, j: 0 };

    pub fn new(i: u32, j: u32) -> Self {
        DiscMonomial { i, j }
    }

    pub fn total_degree(self) -> u32 {
        self.i + self.j
    }

    /// `ℤ_N`-degree `(i − j) mod N`, with `deg z = 1` and `deg z* = N − 1`.
    pub fn zn_degree(self, n: u32) -> Result<u32, Error> {
        check_order(n)?;
        Ok(self.zn_degree_unchecked(n))
    }

    pub(crate) fn zn_degree_unchecked(self, n: u32) -> u32 {
        (self.i as i64 - self.j as i64).rem_euclid(n as i64) as u32
    }

    fn basis_string(self) -> String {
        let pow = |name: &str, e: u32| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        [pow("z", self.i), pow("zs", self.j)]
            .into_iter()
            .flatten()
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for DiscMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.basis_string();
        f.write_str(if s.is_empty() { "1" } else { &s })
    }
}

/// A finite linear combination of PBW monomials. Zero coefficients are
/// never stored, so equality is equality of elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiscElement {
    terms: BTreeMap<DiscMonomial, Scalar>,
}

impl DiscElement {
    pub fn zero() -> Self {
        DiscElement::default()
    }

    pub fn one() -> Self {
        DiscElement::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        DiscElement::term(c, DiscMonomial::ONE)
    }

    pub fn term(c: Scalar, m: DiscMonomial) -> Self {
        let mut e = DiscElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn monomial(i: u32, j: u32) -> Self {
        DiscElement::term(Scalar::one(), DiscMonomial::new(i, j))
    }

    pub fn z() -> Self {
        DiscElement::monomial(1, 0)
    }

    pub fn zs() -> Self {
        DiscElement::monomial(0, 1)
    }

    /// `a = z z*`.
    pub fn a() -> Self {
        DiscElement::monomial(1, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (DiscMonomial, Scalar)>>(terms: I) -> Self {
        let mut e = DiscElement::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub(crate) fn add_term(&mut self, m: DiscMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DiscMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: DiscMonomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The scalar if this element is a multiple of 1.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&DiscMonomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> DiscElement {
        if c.is_zero() {
            return DiscElement::zero();
        }
        DiscElement {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&DiscMonomial, &Scalar) -> Scalar) -> DiscElement {
        DiscElement::from_terms(self.terms.iter().map(|(m, c)| (*m, f(m, c))))
    }

    /// Largest total degree `i + j` of any term; 0 for the zero element.
    pub fn max_total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// PBW normal form of the product.
    pub fn multiply(&self, other: &DiscElement) -> DiscElement {
        let mut table = ReorderTable::default();
        let mut out = DiscElement::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                // z^{i1} (z*^{j1} z^{i2}) z*^{j2}
                for (k, ck) in table.get(m1.j, m2.i).iter().enumerate() {
                    if ck.is_zero() {
                        continue;
                    }
                    let m = DiscMonomial::new(m1.i + m2.i - k as u32, m1.j + m2.j - k as u32);
                    out.add_term(m, &c * ck);
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> DiscElement {
        (0..e).fold(DiscElement::one(), |acc, _| acc.multiply(self))
    }

    /// The `*`-involution: `(z^i z*^j)* = z^j z*^i`. The parameters `q`,
    /// `γ` are real, so coefficients are fixed.
    pub fn star(&self) -> DiscElement {
        DiscElement {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (DiscMonomial::new(m.j, m.i), c.clone()))
                .collect(),
        }
    }

    /// The automorphism `z ↦ q^s z`, `z* ↦ q^{-s} z*`.
    pub fn q_shift(&self, s: i32) -> DiscElement {
        self.map_coeffs(|m, c| c * &Scalar::q_pow(s * (m.i as i32 - m.j as i32)))
    }

    /// Sum of the terms of `ℤ_N`-degree `d`.
    pub fn degree_projection(&self, d: u32, n: u32) -> Result<DiscElement, Error> {
        check_order(n)?;
        let d = d % n;
        Ok(DiscElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.zn_degree_unchecked(n) == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        })
    }

    /// The common `ℤ_N`-degree of all terms, or `None` if the element is
    /// not homogeneous. The zero element is homogeneous of every degree and
    /// reports `Some(0)`.
    pub fn homogeneous_degree(&self, n: u32) -> Result<Option<u32>, Error> {
        check_order(n)?;
        let mut degs = self.terms.keys().map(|m| m.zn_degree_unchecked(n));
        let first = match degs.next() {
            None => return Ok(Some(0)),
            Some(d) => d,
        };
        Ok(degs.all(|d| d == first).then_some(first))
    }

    /// Require every term to have `ℤ_N`-degree `expected`.
    pub fn require_degree(&self, n: u32, expected: u32) -> Result<(), Error> {
        check_order(n)?;
        for m in self.terms.keys() {
            let degree = m.zn_degree_unchecked(n);
            if degree != expected {
                return Err(Error::WrongDegree {
                    term: m.to_string(),
                    n,
                    degree,
                    expected,
                });
            }
        }
        Ok(())
    }
}

/// Coefficients of `z*^j z^i = Σ_k c_k z^{i-k} z*^{j-k}`, memoized for the
/// duration of one product.
#[derive(Default)]
struct ReorderTable {
    cache: HashMap<(u32, u32), Vec<Scalar>>,
}

impl ReorderTable {
    fn get(&mut self, j: u32, i: u32) -> &[Scalar] {
        if !self.cache.contains_key(&(j, i)) {
            let v = if i == 0 || j == 0 {
                vec![Scalar::one()]
            } else {
                // (Σ_k c_k z^{i-1-k} z*^{j-k}) · z
                let prev = self.get(j, i - 1).to_vec();
                let mut next = vec![Scalar::zero(); prev.len() + 1];
                for (k, c) in prev.iter().enumerate() {
                    let jk = j - k as u32;
                    next[k] = &next[k] + &(c * &Scalar::q_pow(jk as i32));
                    if jk >= 1 {
                        next[k + 1] =
                            &next[k + 1] + &(c * &(&Scalar::gamma() * &q_integer(jk as i32)));
                    }
                }
                while next.last().is_some_and(Scalar::is_zero) {
                    next.pop();
                }
                next
            };
            self.cache.insert((j, i), v);
        }
        &self.cache[&(j, i)]
    }
}

/// Normal form of `z*^j · z`: `q^j z z*^j + γ[j]_q z*^{j−1}`.
pub fn reorder_power(j: u32) -> DiscElement {
    let mut e = DiscElement::term(Scalar::q_pow(j as i32), DiscMonomial::new(1, j));
    if j > 0 {
        e.add_term(
            DiscMonomial::new(0, j - 1),
            &Scalar::gamma() * &q_integer(j as i32),
        );
    }
    e
}

/// `ℤ_N`-degree of a monomial.
pub fn zn_degree(m: DiscMonomial, n: u32) -> Result<u32, Error> {
    m.zn_degree(n)
}

impl Add<&DiscElement> for &DiscElement {
    type Output = DiscElement;
    fn add(self, rhs: &DiscElement) -> DiscElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&DiscElement> for &DiscElement {
    type Output = DiscElement;
    fn sub(self, rhs: &DiscElement) -> DiscElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&DiscElement> for &DiscElement {
    type Output = DiscElement;
    fn mul(self, rhs: &DiscElement) -> DiscElement {
        self.multiply(rhs)
    }
}

impl Neg for &DiscElement {
    type Output = DiscElement;
    fn neg(self) -> DiscElement {
        DiscElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for DiscElement {
    type Output = DiscElement;
    fn neg(self) -> DiscElement {
        -&self
    }
}

forward_binop!(DiscElement: Add add, Sub sub, Mul mul);

impl From<Scalar> for DiscElement {
    fn from(c: Scalar) -> Self {
        DiscElement::scalar(c)
    }
}

impl fmt::Display for DiscElement {
    /// Canonical text form with terms in descending `(i, j)` order, e.g.
    /// `q^2*z*zs^2 + g*(1+q)*zs`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::scalar::write_sum(
            f,
            self.terms.iter().rev().map(|(m, c)| (c, m.basis_string())),
        )
    }
}

impl Serialize for DiscElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q()
    }
    fn g() -> Scalar {
        Scalar::gamma()
    }

    #[test]
    fn disc_relation() {
        let p = DiscElement::zs().multiply(&DiscElement::z());
        let expected =
            DiscElement::from_terms([(DiscMonomial::new(1, 1), q()), (DiscMonomial::ONE, g())]);
        assert_eq!(p, expected);
    }

    #[test]
    fn zs_squared_times_z() {
        let p = DiscElement::monomial(0, 2).multiply(&DiscElement::z());
        let expected = DiscElement::from_terms([
            (DiscMonomial::new(1, 2), q().pow(2).unwrap()),
            (DiscMonomial::new(0, 1), &g() * &q_integer(2)),
        ]);
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "q^2*z*zs^2 + g*(1+q)*zs");
    }

    #[test]
    fn reorder_power_examples() {
        assert_eq!(reorder_power(0), DiscElement::z());
        assert_eq!(reorder_power(1), DiscElement::zs() * DiscElement::z());
        let expected = DiscElement::from_terms([
            (DiscMonomial::new(1, 3), q().pow(3).unwrap()),
            (DiscMonomial::new(0, 2), &g() * &q_integer(3)),
        ]);
        assert_eq!(reorder_power(3), expected);
    }

    #[test]
    fn star_examples() {
        assert_eq!(DiscElement::z().star(), DiscElement::zs());
        let zsz = DiscElement::zs() * DiscElement::z();
        assert_eq!(zsz.star(), zsz);
    }

    #[test]
    fn degrees() {
        assert_eq!(zn_degree(DiscMonomial::new(1, 0), 3), Ok(1));
        assert_eq!(zn_degree(DiscMonomial::new(0, 1), 3), Ok(2));
        assert_eq!(zn_degree(DiscMonomial::new(4, 1), 3), Ok(0));
        assert_eq!(
            zn_degree(DiscMonomial::new(1, 0), 1),
            Err(Error::InvalidOrder(1))
        );
    }

    #[test]
    fn projections() {
        let u = DiscElement::z() + DiscElement::a();
        assert_eq!(u.degree_projection(0, 2).unwrap(), DiscElement::a());
        let z2 = DiscElement::monomial(2, 0);
        assert_eq!(z2.degree_projection(0, 2).unwrap(), z2);
        assert!(matches!(
            u.degree_projection(0, 0),
            Err(Error::InvalidOrder(0))
        ));
    }

    #[test]
    fn display_of_zero_and_one() {
        assert_eq!(DiscElement::zero().to_string(), "0");
        assert_eq!(DiscElement::one().to_string(), "1");
        assert_eq!((-DiscElement::z()).to_string(), "-z");
    }
}
