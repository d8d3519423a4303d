//! The quantum cone `O(C^N_{q,γ})`: the degree-zero part of the disc under
//! the `ℤ_N`-grading, generated by `a = z z*`, `b = z^N` and `b* = z*^N`.
//!
//! A [`ConeElement`] is written in the basis `b^k a^m`, `a^m`, `a^m b*^k`
//! with coefficients on the left. Products are computed by embedding into
//! the disc, multiplying there, and reading the result back with
//! [`cone_normal_form`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::disc::{DiscElement, DiscMonomial};
use crate::report::{Check, RelationCheck};
use crate::scalar::{extended_gcd, q_integer, Scalar, UniPoly};
use crate::{check_order, Error};

/// Cone basis element. `b > 0` is `b^b a^a`, `b == 0` is `a^a` and
/// `b < 0` is `a^a b*^{-b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConeMonomial {
    pub b: i32,
    pub a: u32,
}

impl ConeMonomial {
    pub fn new(b: i32, a: u32) -> Self {
        ConeMonomial { b, a }
    }

    fn basis_string(self) -> String {
        let pow = |name: &str, e: u32| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let parts = if self.b >= 0 {
            [pow("b", self.b as u32), pow("a", self.a)]
        } else {
            [pow("a", self.a), pow("bs", self.b.unsigned_abs())]
        };
        parts.into_iter().flatten().collect::<Vec<_>>().join("*")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeElement {
    n: u32,
    terms: BTreeMap<ConeMonomial, Scalar>,
}

impl ConeElement {
    pub fn zero(n: u32) -> Self {
        ConeElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u32) -> Self {
        ConeElement::scalar(n, Scalar::one())
    }

    pub fn scalar(n: u32, c: Scalar) -> Self {
        ConeElement::term(n, c, ConeMonomial::new(0, 0))
    }

    pub fn term(n: u32, c: Scalar, m: ConeMonomial) -> Self {
        let mut e = ConeElement::zero(n);
        e.add_term(m, c);
        e
    }

    pub fn a(n: u32) -> Self {
        ConeElement::term(n, Scalar::one(), ConeMonomial::new(0, 1))
    }

    pub fn b(n: u32) -> Self {
        ConeElement::term(n, Scalar::one(), ConeMonomial::new(1, 0))
    }

    pub fn bs(n: u32) -> Self {
        ConeElement::term(n, Scalar::one(), ConeMonomial::new(-1, 0))
    }

    /// `x = 1 + γ^{-1}(q − 1) a`, the variable of the generalized Weyl
    /// presentation.
    pub fn x(n: u32) -> Self {
        ConeElement::from_a_poly(n, &x_in_a())
    }

    /// `w = γ^{-1}(1 − q) q a − q`, the variable of the Bezout argument.
    pub fn w(n: u32) -> Self {
        ConeElement::from_a_poly(n, &w_in_a())
    }

    /// The polynomial `p(a)` as a cone element.
    pub fn from_a_poly(n: u32, p: &UniPoly) -> Self {
        let mut e = ConeElement::zero(n);
        for (m, c) in p.coeffs().iter().enumerate() {
            e.add_term(ConeMonomial::new(0, m as u32), c.clone());
        }
        e
    }

    /// The polynomial in `a` if no `b` or `b*` appears.
    pub fn as_a_poly(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|m| m.b != 0) {
            return None;
        }
        let top = self.terms.keys().map(|m| m.a as usize).max().unwrap_or(0);
        let mut coeffs = vec![Scalar::zero(); top + 1];
        for (m, c) in &self.terms {
            coeffs[m.a as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ConeMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: ConeMonomial) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, m: ConeMonomial, c: Scalar) {
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

    pub fn scale(&self, c: &Scalar) -> ConeElement {
        let mut out = ConeElement::zero(self.n);
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    /// Image in the disc under `a ↦ z z*`, `b ↦ z^N`, `b* ↦ z*^N`.
    pub fn embed(&self) -> DiscElement {
        let n = self.n;
        let top = self.terms.keys().map(|m| m.a).max().unwrap_or(0);
        let mut a_pows = vec![DiscElement::one()];
        for _ in 0..top {
            let next = a_pows.last().unwrap().multiply(&DiscElement::a());
            a_pows.push(next);
        }
        let mut out = DiscElement::zero();
        for (m, c) in &self.terms {
            let ap = &a_pows[m.a as usize];
            let k = m.b.unsigned_abs() * n;
            // z^k · (PBW) only shifts exponents; likewise (PBW) · z*^k
            let shifted = if m.b >= 0 {
                DiscElement::from_terms(
                    ap.terms()
                        .map(|(t, s)| (DiscMonomial::new(t.i + k, t.j), s.clone())),
                )
            } else {
                DiscElement::from_terms(
                    ap.terms()
                        .map(|(t, s)| (DiscMonomial::new(t.i, t.j + k), s.clone())),
                )
            };
            out = out + shifted.scale(c);
        }
        out
    }

    /// Product, computed in the disc.
    pub fn multiply(&self, other: &ConeElement) -> Result<ConeElement, Error> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        cone_normal_form(&self.embed().multiply(&other.embed()), self.n)
    }

    pub fn pow(&self, e: u32) -> ConeElement {
        let mut acc = ConeElement::one(self.n);
        for _ in 0..e {
            acc = acc.multiply(self).expect("same order");
        }
        acc
    }

    /// `a* = a`, `b ↔ b*`; antimultiplicative, so `(b^k a^m)* = a^m b*^k`.
    pub fn star(&self) -> ConeElement {
        ConeElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (ConeMonomial::new(-m.b, m.a), c.clone()))
                .collect(),
        }
    }

    fn check_same(&self, other: &ConeElement) -> Result<(), Error> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::OrderMismatch(self.n, other.n))
        }
    }

    pub fn try_add(&self, other: &ConeElement) -> Result<ConeElement, Error> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }
}

/// `z^j z*^j` as a polynomial in `a`: `Π_{l=0}^{j-1} (q^{-l} a + γ[-l]_q)`.
fn diagonal_poly(j: u32) -> UniPoly {
    UniPoly::product_of_linear(
        (0..j as i32).map(|l| (&Scalar::gamma() * &q_integer(-l), Scalar::q_pow(-l))),
    )
}

/// Rewrite a degree-zero disc element in the cone basis.
///
/// `z^i z*^j` with `i − j = kN ≥ 0` is `b^k · z^j z*^j`, and `z^j z*^j`
/// is a product of linear factors in `a`; the case `j > i` is the mirror
/// image with `b*^k` on the right.
pub fn cone_normal_form(u: &DiscElement, n: u32) -> Result<ConeElement, Error> {
    u.require_degree(n, 0)?;
    let mut out = ConeElement::zero(n);
    let mut diag: BTreeMap<u32, UniPoly> = BTreeMap::new();
    for (m, c) in u.terms() {
        let (low, k) = if m.i >= m.j {
            (m.j, ((m.i - m.j) / n) as i32)
        } else {
            (m.i, -(((m.j - m.i) / n) as i32))
        };
        let p = diag.entry(low).or_insert_with(|| diagonal_poly(low));
        for (e, pc) in p.coeffs().iter().enumerate() {
            out.add_term(ConeMonomial::new(k, e as u32), c * pc);
        }
    }
    Ok(out)
}

/// `x(a) = 1 + γ^{-1}(q − 1) a`.
pub fn x_in_a() -> UniPoly {
    let g_inv = Scalar::gamma().inv().expect("γ ≠ 0");
    UniPoly::linear(Scalar::one(), &g_inv * &(Scalar::q() - Scalar::one()))
}

/// `w(a) = γ^{-1}(1 − q) q a − q`.
pub fn w_in_a() -> UniPoly {
    let g_inv = Scalar::gamma().inv().expect("γ ≠ 0");
    let q = Scalar::q();
    UniPoly::linear(-&q, &(&g_inv * &(Scalar::one() - &q)) * &q)
}

/// Right-hand side of `b b* = Π_{l=0}^{N-1} (q^{-l} a + γ[-l]_q)`.
pub fn bbs_poly(n: u32) -> UniPoly {
    diagonal_poly(n)
}

/// Right-hand side of `b* b = Π_{l=1}^{N} (q^l a + γ[l]_q)`.
pub fn bsb_poly(n: u32) -> UniPoly {
    UniPoly::product_of_linear(
        (1..=n as i32).map(|l| (&Scalar::gamma() * &q_integer(l), Scalar::q_pow(l))),
    )
}

/// Embed a polynomial in `a` into the disc.
fn embed_a_poly(n: u32, p: &UniPoly) -> DiscElement {
    ConeElement::from_a_poly(n, p).embed()
}

/// A named identity between two disc elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity<T> {
    pub name: String,
    pub lhs: T,
    pub rhs: T,
}

impl<T: PartialEq + fmt::Display> Identity<T> {
    fn new(name: &str, lhs: T, rhs: T) -> Self {
        Identity {
            name: name.to_string(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn to_check(&self) -> RelationCheck {
        RelationCheck::compare(self.name.clone(), &self.lhs, &self.rhs)
    }
}

/// The three defining relations of the cone, both sides embedded in the
/// disc: `ab = q^N ba + γ[N]_q b`, `bb* = Π_{l=0}^{N-1}(q^{-l}a + γ[-l]_q)`
/// and `b*b = Π_{l=1}^{N}(q^l a + γ[l]_q)`.
pub fn cone_relations(n: u32) -> Result<Vec<Identity<DiscElement>>, Error> {
    check_order(n)?;
    let a = ConeElement::a(n).embed();
    let b = ConeElement::b(n).embed();
    let bs = ConeElement::bs(n).embed();
    let qn = Scalar::q_pow(n as i32);
    let g_n = &Scalar::gamma() * &q_integer(n as i32);
    let ab_rhs = (&b * &a).scale(&qn) + b.scale(&g_n);
    Ok(vec![
        Identity::new("a*b = q^N*b*a + g*[N]_q*b", &a * &b, ab_rhs),
        Identity::new(
            "b*bs = prod_{l=0}^{N-1} (q^-l*a + g*[-l]_q)",
            &b * &bs,
            embed_a_poly(n, &bbs_poly(n)),
        ),
        Identity::new(
            "bs*b = prod_{l=1}^{N} (q^l*a + g*[l]_q)",
            &bs * &b,
            embed_a_poly(n, &bsb_poly(n)),
        ),
    ])
}

/// Check the defining relations; see [`cone_relations`].
pub fn verify_cone_relations(n: u32) -> Result<Vec<RelationCheck>, Error> {
    Ok(cone_relations(n)?.iter().map(Identity::to_check).collect())
}

/// The generalized Weyl presentation in `x = 1 + γ^{-1}(q − 1)a`, embedded
/// in the disc: `xb = q^N bx`, `bb* = (γ/(1−q))^N Π_{l=0}^{N-1}(1 − q^{-l}x)`,
/// `b*b = (γ/(1−q))^N Π_{l=1}^{N}(1 − q^l x)`.
pub fn gwa_relations(n: u32) -> Result<Vec<Identity<DiscElement>>, Error> {
    check_order(n)?;
    let x_poly = x_in_a();
    let x = embed_a_poly(n, &x_poly);
    let b = ConeElement::b(n).embed();
    let bs = ConeElement::bs(n).embed();
    let one_minus_q = Scalar::one() - Scalar::q();
    let pref = (&Scalar::gamma() / &one_minus_q).pow(n as i32)?;

    let in_x = |factors: Vec<(Scalar, Scalar)>| -> DiscElement {
        let p = UniPoly::product_of_linear(factors).scale(&pref);
        embed_a_poly(n, &p.compose(&x_poly))
    };
    let bbs_rhs = in_x(
        (0..n as i32)
            .map(|l| (Scalar::one(), -Scalar::q_pow(-l)))
            .collect(),
    );
    let bsb_rhs = in_x(
        (1..=n as i32)
            .map(|l| (Scalar::one(), -Scalar::q_pow(l)))
            .collect(),
    );
    Ok(vec![
        Identity::new(
            "x*b = q^N*b*x",
            &x * &b,
            (&b * &x).scale(&Scalar::q_pow(n as i32)),
        ),
        Identity::new(
            "b*bs = (g/(1-q))^N * prod_{l=0}^{N-1} (1 - q^-l*x)",
            &b * &bs,
            bbs_rhs,
        ),
        Identity::new(
            "bs*b = (g/(1-q))^N * prod_{l=1}^{N} (1 - q^l*x)",
            &bs * &b,
            bsb_rhs,
        ),
    ])
}

/// Check the generalized Weyl presentation (see [`gwa_relations`]),
/// the inverse change of variables `a = γ(x − 1)/(q − 1)` and `w = −q x`.
pub fn verify_gwa_presentation(n: u32) -> Result<Vec<RelationCheck>, Error> {
    let mut out: Vec<RelationCheck> = gwa_relations(n)?.iter().map(Identity::to_check).collect();
    let back = UniPoly::linear(-Scalar::one(), Scalar::one())
        .scale(&(&Scalar::gamma() / &(Scalar::q() - Scalar::one())))
        .compose(&x_in_a());
    out.push(RelationCheck::compare(
        "a = g*(x - 1)/(q - 1)",
        &ConeElement::from_a_poly(n, &back),
        &ConeElement::a(n),
    ));
    out.push(RelationCheck::compare(
        "w = -q*x",
        &ConeElement::w(n),
        &ConeElement::x(n).scale(&-Scalar::q()),
    ));
    Ok(out)
}

/// Elements `X_i` of degree 1 and `Y_i` of degree `N − 1` with
/// `Σ X_i Y_i = 1`, certifying that the disc is strongly `ℤ_N`-graded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingWitness {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "X")]
    pub x: Vec<DiscElement>,
    #[serde(rename = "Y")]
    pub y: Vec<DiscElement>,
    pub alphas: Vec<Scalar>,
    pub betas: Vec<Scalar>,
}

impl GradingWitness {
    /// `Σ_i X_i Y_i`, computed by disc multiplication.
    pub fn sum(&self) -> DiscElement {
        self.x
            .iter()
            .zip(&self.y)
            .fold(DiscElement::zero(), |acc, (x, y)| acc + x * y)
    }
}

/// Build the strong-grading witness.
///
/// With `z*^{N-1} z^{N-1} = Π_{l=1}^{N-1}(q^l a + γ[l]_q) = Σ β_r a^r`,
/// set `X_0 = α_0 z*^{N-1}`, `Y_0 = z^{N-1}`, `X_i = α_i a^{i-1} z`,
/// `Y_i = z*` with `α_0 β_0 = 1` and `α_i = −α_0 β_i`. The identity
/// `Σ X_i Y_i = 1` is checked before returning.
pub fn grading_witness(n: u32) -> Result<GradingWitness, Error> {
    check_order(n)?;
    let beta_poly = UniPoly::product_of_linear(
        (1..n as i32).map(|l| (&Scalar::gamma() * &q_integer(l), Scalar::q_pow(l))),
    );
    let betas: Vec<Scalar> = (0..n as usize).map(|r| beta_poly.coeff(r)).collect();
    let alpha0 = betas[0].inv()?;
    let mut alphas = vec![alpha0.clone()];
    alphas.extend(betas[1..].iter().map(|b| -(&alpha0 * b)));

    let mut x = vec![DiscElement::monomial(0, n - 1).scale(&alphas[0])];
    let mut y = vec![DiscElement::monomial(n - 1, 0)];
    let mut a_pow = DiscElement::one();
    for alpha in &alphas[1..] {
        x.push((&a_pow * &DiscElement::z()).scale(alpha));
        y.push(DiscElement::zs());
        a_pow = &a_pow * &DiscElement::a();
    }
    let w = GradingWitness {
        n,
        x,
        y,
        alphas,
        betas,
    };
    let s = w.sum();
    if s != DiscElement::one() {
        return Err(Error::CheckFailed(format!("sum X_i Y_i = {s}, expected 1")));
    }
    Ok(w)
}

/// `β_0 = γ^{N-1} Π_{l=1}^{N-1} [l]_q`, the determinant of the linear
/// system solved in [`grading_witness`].
pub fn beta0_closed_form(n: u32) -> Scalar {
    let g = Scalar::gamma().pow(n as i32 - 1).expect("γ ≠ 0");
    (1..n as i32).map(q_integer).fold(g, |acc, l| &acc * &l)
}

/// Square matrix over the cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMatrix {
    n: u32,
    rows: Vec<Vec<ConeElement>>,
}

impl ConeMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &ConeElement {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<ConeElement>] {
        &self.rows
    }

    pub fn multiply(&self, other: &ConeMatrix) -> Result<ConeMatrix, Error> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        let k = self.size();
        let embedded_l: Vec<Vec<DiscElement>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ConeElement::embed).collect())
            .collect();
        let embedded_r: Vec<Vec<DiscElement>> = other
            .rows
            .iter()
            .map(|r| r.iter().map(ConeElement::embed).collect())
            .collect();
        let mut rows = Vec::with_capacity(k);
        for left in &embedded_l {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let s = left
                    .iter()
                    .zip(&embedded_r)
                    .fold(DiscElement::zero(), |acc, (x, r)| acc + x * &r[j]);
                row.push(cone_normal_form(&s, self.n)?);
            }
            rows.push(row);
        }
        Ok(ConeMatrix { n: self.n, rows })
    }

    pub fn is_idempotent(&self) -> Result<bool, Error> {
        Ok(&self.multiply(self)? == self)
    }
}

impl Serialize for ConeMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.rows.serialize(s)
    }
}

/// The idempotent `e_{ij} = Y_i X_j` built from the strong-grading
/// witness. `e² = e` follows from `Σ X_k Y_k = 1`; its row module is the
/// degree `N − 1` component of the disc.
pub fn projector_idempotent(n: u32) -> Result<ConeMatrix, Error> {
    let w = grading_witness(n)?;
    let rows =
        w.y.iter()
            .map(|yi| {
                w.x.iter()
                    .map(|xj| cone_normal_form(&(yi * xj), n))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
    Ok(ConeMatrix { n, rows })
}

/// The polynomials in `a` on the right of `bb*` and `b*b`.
pub fn relation_polynomials(n: u32) -> Result<[UniPoly; 2], Error> {
    check_order(n)?;
    Ok([bbs_poly(n), bsb_poly(n)])
}

/// `gcd(p, p') = 1`: `p` has no repeated roots over the algebraic closure.
pub fn has_simple_roots(p: &UniPoly) -> Result<bool, Error> {
    let e = extended_gcd(p, &p.derivative())?;
    Ok(e.gcd == UniPoly::one())
}

/// Squarefreeness of both relation polynomials, as checks.
pub fn verify_simple_roots(n: u32) -> Result<Vec<Check>, Error> {
    let [p1, p2] = relation_polynomials(n)?;
    let mut out = Vec::new();
    for (name, p) in [("b*bs", p1), ("bs*b", p2)] {
        let g = extended_gcd(&p, &p.derivative())?.gcd;
        out.push(
            Check::compare(
                format!("gcd(p, p') = 1 for p = {name}"),
                n,
                &g.display_in("a").to_string(),
                &"1".to_string(),
            )
            .witnessed(p.display_in("a").to_string()),
        );
    }
    Ok(out)
}

impl Add<&ConeElement> for &ConeElement {
    type Output = ConeElement;
    /// Panics if the orders differ.
    fn add(self, rhs: &ConeElement) -> ConeElement {
        self.try_add(rhs).expect("cone orders must match")
    }
}

impl Sub<&ConeElement> for &ConeElement {
    type Output = ConeElement;
    fn sub(self, rhs: &ConeElement) -> ConeElement {
        self.try_add(&-rhs).expect("cone orders must match")
    }
}

impl std::ops::Mul<&ConeElement> for &ConeElement {
    type Output = ConeElement;
    /// Panics if the orders differ.
    fn mul(self, rhs: &ConeElement) -> ConeElement {
        self.multiply(rhs).expect("cone orders must match")
    }
}

impl Neg for &ConeElement {
    type Output = ConeElement;
    fn neg(self) -> ConeElement {
        ConeElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

crate::forward_binop!(ConeElement: Add add, Sub sub, Mul mul);

impl fmt::Display for ConeElement {
    /// Canonical text, e.g. `q^2*b*a + g*(1+q)*b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::scalar::write_sum(
            f,
            self.terms.iter().rev().map(|(m, c)| (c, m.basis_string())),
        )
    }
}

impl Serialize for ConeElement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
