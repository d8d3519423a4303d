//! The differential `*`-calculus `Ω(D_{q,γ})`.
//!
//! One-forms are free on `dz`, `dz*` and two-forms on `ω = dz∧dz*`, on
//! either side. Elements are kept in left normal form
//! `f + f₁ dz + f₂ dz* + f₃ ω`. The defining relations
//!
//! ```text
//! z dz = q^{-1} dz z      z* dz = q dz z*      dz∧dz* = −q^{-1} dz*∧dz      dz∧dz = 0
//! ```
//!
//! and their `*`-conjugates give the push-left rules
//! `dz·z = q z·dz`, `dz·z* = q^{-1} z*·dz`, `dz*·z = q z·dz*`,
//! `dz*·z* = q^{-1} z*·dz*`: every one-form generator acts on functions
//! through the automorphism `σ(z) = q z`, `σ(z*) = q^{-1} z*`, and `ω`
//! through `σ²`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::disc::{DiscElement, DiscMonomial};
use crate::scalar::{q_integer, q_integer_inv, Scalar};

/// `f + f₁ dz + f₂ dz* + f₃ dz∧dz*`, all coefficients on the left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct CalcElement {
    /// Functions, bidegree (0,0).
    pub c00: DiscElement,
    /// Coefficient of `dz`, bidegree (1,0).
    pub c10: DiscElement,
    /// Coefficient of `dz*`, bidegree (0,1).
    pub c01: DiscElement,
    /// Coefficient of `dz∧dz*`, bidegree (1,1).
    pub c11: DiscElement,
}

impl CalcElement {
    pub fn zero() -> Self {
        CalcElement::default()
    }

    pub fn new(c00: DiscElement, c10: DiscElement, c01: DiscElement, c11: DiscElement) -> Self {
        CalcElement { c00, c10, c01, c11 }
    }

    pub fn function(f: DiscElement) -> Self {
        CalcElement {
            c00: f,
            ..Default::default()
        }
    }

    pub fn one() -> Self {
        CalcElement::function(DiscElement::one())
    }

    pub fn dz() -> Self {
        CalcElement::dz_form(DiscElement::one())
    }

    pub fn dzs() -> Self {
        CalcElement::dzs_form(DiscElement::one())
    }

    /// The volume form `ω = dz∧dz*`.
    pub fn omega() -> Self {
        CalcElement::omega_form(DiscElement::one())
    }

    /// `f·dz`.
    pub fn dz_form(f: DiscElement) -> Self {
        CalcElement {
            c10: f,
            ..Default::default()
        }
    }

    /// `f·dz*`.
    pub fn dzs_form(f: DiscElement) -> Self {
        CalcElement {
            c01: f,
            ..Default::default()
        }
    }

    /// `f·dz∧dz*`.
    pub fn omega_form(f: DiscElement) -> Self {
        CalcElement {
            c11: f,
            ..Default::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c00.is_zero() && self.c10.is_zero() && self.c01.is_zero() && self.c11.is_zero()
    }

    /// The homogeneous part of form degree `k` (0, 1 or 2).
    pub fn part(&self, k: u32) -> CalcElement {
        match k {
            0 => CalcElement::function(self.c00.clone()),
            1 => CalcElement {
                c10: self.c10.clone(),
                c01: self.c01.clone(),
                ..Default::default()
            },
            2 => CalcElement::omega_form(self.c11.clone()),
            _ => CalcElement::zero(),
        }
    }

    /// Form degree if the element is homogeneous and nonzero.
    pub fn form_degree(&self) -> Option<u32> {
        let present = [
            !self.c00.is_zero(),
            !self.c10.is_zero() || !self.c01.is_zero(),
            !self.c11.is_zero(),
        ];
        let mut degs = (0..3u32).filter(|&k| present[k as usize]);
        match (degs.next(), degs.next()) {
            (Some(k), None) => Some(k),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Scalar) -> CalcElement {
        self.map(|f| f.scale(c))
    }

    fn map(&self, f: impl Fn(&DiscElement) -> DiscElement) -> CalcElement {
        CalcElement {
            c00: f(&self.c00),
            c10: f(&self.c10),
            c01: f(&self.c01),
            c11: f(&self.c11),
        }
    }

    fn zip(
        &self,
        other: &CalcElement,
        f: impl Fn(&DiscElement, &DiscElement) -> DiscElement,
    ) -> CalcElement {
        CalcElement {
            c00: f(&self.c00, &other.c00),
            c10: f(&self.c10, &other.c10),
            c01: f(&self.c01, &other.c01),
            c11: f(&self.c11, &other.c11),
        }
    }

    /// Graded product in left normal form.
    pub fn form_multiply(&self, other: &CalcElement) -> CalcElement {
        let (u, v) = (self, other);
        let s1 = |f: &DiscElement| f.q_shift(1);
        let minus_q = -Scalar::q();
        CalcElement {
            c00: &u.c00 * &v.c00,
            c10: &u.c00 * &v.c10 + &u.c10 * &s1(&v.c00),
            c01: &u.c00 * &v.c01 + &u.c01 * &s1(&v.c00),
            c11: &u.c00 * &v.c11
                + &u.c11 * &v.c00.q_shift(2)
                + &u.c10 * &s1(&v.c01)
                + (&u.c01 * &s1(&v.c10)).scale(&minus_q),
        }
    }

    /// The exterior derivative, with `d(dz) = d(dz*) = 0`.
    pub fn d(&self) -> CalcElement {
        let (d10, d01) = (partial(&self.c00), partial_bar(&self.c00));
        CalcElement {
            c00: DiscElement::zero(),
            c10: d10,
            c01: d01,
            // d(g dz*) = ∂g ω,  d(f dz) = ∂̄f dz*∧dz = −q ∂̄f ω
            c11: partial(&self.c01) - partial_bar(&self.c10).scale(&Scalar::q()),
        }
    }

    /// The `*`-involution on forms, with `(αβ)* = (−1)^{|α||β|} β* α*`.
    ///
    /// `(f dz)* = σ(f*) dz*`, `(f dz*)* = σ(f*) dz` and
    /// `(f ω)* = −σ²(f*) ω` since `ω* = −ω`.
    pub fn star_form(&self) -> CalcElement {
        CalcElement {
            c00: self.c00.star(),
            c10: self.c01.star().q_shift(1),
            c01: self.c10.star().q_shift(1),
            c11: -self.c11.star().q_shift(2),
        }
    }

    fn basis_terms(&self) -> impl Iterator<Item = (&Scalar, String)> {
        let parts: [(&DiscElement, &'static str); 4] = [
            (&self.c00, ""),
            (&self.c10, "dz"),
            (&self.c01, "dzs"),
            (&self.c11, "dz^dzs"),
        ];
        parts.into_iter().flat_map(|(f, gen)| {
            f.terms().rev().map(move |(m, c)| {
                let mono = if *m == DiscMonomial::ONE {
                    "1".to_string()
                } else {
                    m.to_string()
                };
                let basis = match (mono.as_str(), gen) {
                    ("1", "") => String::new(),
                    (mo, "") => mo.to_string(),
                    ("1", ge) => ge.to_string(),
                    (mo, ge) => format!("{mo}*{ge}"),
                };
                (c, basis)
            })
        })
    }
}

/// `dz`-component of `d f`: `d(z^i z*^j) ↦ [i]_q q^{-j} z^{i-1} z*^j`.
pub fn partial(f: &DiscElement) -> DiscElement {
    DiscElement::from_terms(f.terms().filter(|(m, _)| m.i > 0).map(|(m, c)| {
        let k = &q_integer(m.i as i32) * &Scalar::q_pow(-(m.j as i32));
        (DiscMonomial::new(m.i - 1, m.j), c * &k)
    }))
}

/// `dz*`-component of `d f`: `d(z^i z*^j) ↦ [j]_{q^{-1}} z^i z*^{j-1}`.
pub fn partial_bar(f: &DiscElement) -> DiscElement {
    DiscElement::from_terms(f.terms().filter(|(m, _)| m.j > 0).map(|(m, c)| {
        (
            DiscMonomial::new(m.i, m.j - 1),
            c * &q_integer_inv(m.j as i32),
        )
    }))
}

/// `d` as a free function.
pub fn d(u: &CalcElement) -> CalcElement {
    u.d()
}

impl From<DiscElement> for CalcElement {
    fn from(f: DiscElement) -> Self {
        CalcElement::function(f)
    }
}

impl Add<&CalcElement> for &CalcElement {
    type Output = CalcElement;
    fn add(self, rhs: &CalcElement) -> CalcElement {
        self.zip(rhs, |a, b| a + b)
    }
}

impl Sub<&CalcElement> for &CalcElement {
    type Output = CalcElement;
    fn sub(self, rhs: &CalcElement) -> CalcElement {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Mul<&CalcElement> for &CalcElement {
    type Output = CalcElement;
    fn mul(self, rhs: &CalcElement) -> CalcElement {
        self.form_multiply(rhs)
    }
}

impl Neg for &CalcElement {
    type Output = CalcElement;
    fn neg(self) -> CalcElement {
        self.map(|f| -f)
    }
}

impl Neg for CalcElement {
    type Output = CalcElement;
    fn neg(self) -> CalcElement {
        -&self
    }
}

crate::forward_binop!(CalcElement: Add add, Sub sub, Mul mul);

impl fmt::Display for CalcElement {
    /// e.g. `q^-1*zs*dz + z*dzs`; the wedge is spelled `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::scalar::write_sum(f, self.basis_terms())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> CalcElement {
        CalcElement::function(DiscElement::z())
    }
    fn zs() -> CalcElement {
        CalcElement::function(DiscElement::zs())
    }
    fn q() -> Scalar {
        Scalar::q()
    }

    #[test]
    fn push_left_rules() {
        assert_eq!(
            CalcElement::dz() * z(),
            (z() * CalcElement::dz()).scale(&q())
        );
        assert_eq!(
            CalcElement::dz() * zs(),
            (zs() * CalcElement::dz()).scale(&Scalar::q_pow(-1))
        );
        assert_eq!(
            CalcElement::dzs() * z(),
            (z() * CalcElement::dzs()).scale(&q())
        );
        assert_eq!(
            CalcElement::dzs() * zs(),
            (zs() * CalcElement::dzs()).scale(&Scalar::q_pow(-1))
        );
    }

    #[test]
    fn defining_relations() {
        // z dz = q^{-1} dz z, z* dz = q dz z*
        assert_eq!(
            z() * CalcElement::dz(),
            (CalcElement::dz() * z()).scale(&Scalar::q_pow(-1))
        );
        assert_eq!(
            zs() * CalcElement::dz(),
            (CalcElement::dz() * zs()).scale(&q())
        );
        // dz∧dz* = −q^{-1} dz*∧dz, dz∧dz = 0
        let lhs = CalcElement::dz() * CalcElement::dzs();
        let rhs = (CalcElement::dzs() * CalcElement::dz()).scale(&-Scalar::q_pow(-1));
        assert_eq!(lhs, rhs);
        assert!((CalcElement::dz() * CalcElement::dz()).is_zero());
        assert!((CalcElement::dzs() * CalcElement::dzs()).is_zero());
    }

    #[test]
    fn product_examples() {
        assert_eq!(
            (CalcElement::dzs() * CalcElement::dz()),
            CalcElement::omega().scale(&-q())
        );
        let lhs = CalcElement::omega() * z();
        assert_eq!(
            lhs,
            (z() * CalcElement::omega()).scale(&q().pow(2).unwrap())
        );
        let lhs = CalcElement::omega() * zs();
        assert_eq!(lhs, (zs() * CalcElement::omega()).scale(&Scalar::q_pow(-2)));
    }

    #[test]
    fn differential_examples() {
        for n in 2..6 {
            let zn = CalcElement::function(DiscElement::monomial(n, 0));
            let expected =
                CalcElement::dz_form(DiscElement::monomial(n - 1, 0).scale(&q_integer(n as i32)));
            assert_eq!(zn.d(), expected);
        }
        assert!(CalcElement::one().d().is_zero());
        let da = CalcElement::function(DiscElement::a()).d();
        assert_eq!(da.to_string(), "q^-1*zs*dz + z*dzs");
    }

    #[test]
    fn star_examples() {
        assert_eq!(CalcElement::dz().star_form(), CalcElement::dzs());
        let f = CalcElement::dz_form(DiscElement::zs());
        assert_eq!(
            f.star_form(),
            CalcElement::dzs_form(DiscElement::z().scale(&q()))
        );
        for u in [
            DiscElement::monomial(2, 0),
            DiscElement::a(),
            DiscElement::monomial(0, 3),
        ] {
            let u = CalcElement::function(u);
            assert_eq!(u.d().star_form(), u.star_form().d());
        }
    }

    #[test]
    fn disc_relation_is_closed() {
        // d(z* z − q z z* − γ) = 0
        let rel = zs() * z()
            - (z() * zs()).scale(&q())
            - CalcElement::function(DiscElement::scalar(Scalar::gamma()));
        assert!(rel.is_zero());
        let lhs = CalcElement::dzs() * z() + zs() * CalcElement::dz()
            - (CalcElement::dz() * zs() + z() * CalcElement::dzs()).scale(&q());
        assert!(lhs.is_zero());
    }

    #[test]
    fn exact_volume_form() {
        let omega0 = CalcElement::dz() * zs();
        assert_eq!(omega0.d(), -CalcElement::omega());
    }
}
