//! The calculus `Ω(C^N_{q,γ})` on the quantum cone and its complex
//! structure.
//!
//! `Ω(C)` is the part of `Ω(D)` invariant under `ℤ_N`, where `dz` has
//! degree 1 and `dz*` degree `N − 1`. Its one-forms split as
//! `Ω^{(1,0)} ⊕ Ω^{(0,1)}`: the `(1,0)` part is spanned over the cone by
//! `ω₀ = dz z*` and `ω₁ = db = [N]_q z^{N-1} dz`, which are both multiples
//! of `dz`, and the `(0,1)` part is its `*`-image. The bigrading is read
//! off from the components of the ambient free module.
//!
//! The constructive heart of the complex structure is [`omega0_witness`]:
//! `b*db` and `db b* = (b db*)*` are `ω₀` times two coprime polynomials
//! in `a`, and a Bezout identity for those polynomials exhibits `ω₀` itself
//! as a cone combination of `b*db` and `db b*`.

use std::fmt;

use serde::Serialize;

use crate::calculus::{partial, partial_bar, CalcElement};
use crate::cone::{cone_normal_form, w_in_a, ConeElement, Identity};
use crate::disc::DiscElement;
use crate::report::Check;
use crate::scalar::{extended_gcd, q_integer, Scalar, UniPoly};
use crate::{check_order, Error};

/// Bidegree sectors of the cone calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Bidegree {
    #[serde(rename = "(0,0)")]
    B00,
    #[serde(rename = "(1,0)")]
    B10,
    #[serde(rename = "(0,1)")]
    B01,
    #[serde(rename = "(1,1)")]
    B11,
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bidegree::B00 => "(0,0)",
            Bidegree::B10 => "(1,0)",
            Bidegree::B01 => "(0,1)",
            Bidegree::B11 => "(1,1)",
        })
    }
}

/// A `ℤ_N`-invariant form, i.e. an element of `Ω(C^N_{q,γ})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeForm {
    n: u32,
    form: CalcElement,
}

impl ConeForm {
    /// Wrap a disc form, checking that it is invariant: functions and
    /// `ω`-coefficients of degree 0, `dz`-coefficients of degree `N − 1`,
    /// `dz*`-coefficients of degree 1.
    pub fn new(n: u32, form: CalcElement) -> Result<Self, Error> {
        check_order(n)?;
        let checks = [
            (&form.c00, 0),
            (&form.c10, n - 1),
            (&form.c01, 1),
            (&form.c11, 0),
        ];
        for (f, deg) in checks {
            if f.require_degree(n, deg).is_err() {
                return Err(Error::NotInvariant(form.to_string()));
            }
        }
        Ok(ConeForm { n, form })
    }

    pub fn function(e: &ConeElement) -> Self {
        ConeForm {
            n: e.order(),
            form: CalcElement::function(e.embed()),
        }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn form(&self) -> &CalcElement {
        &self.form
    }

    pub fn into_form(self) -> CalcElement {
        self.form
    }

    /// Sectors with a nonzero component.
    pub fn sectors(&self) -> Vec<Bidegree> {
        let f = &self.form;
        [
            (&f.c00, Bidegree::B00),
            (&f.c10, Bidegree::B10),
            (&f.c01, Bidegree::B01),
            (&f.c11, Bidegree::B11),
        ]
        .into_iter()
        .filter(|(c, _)| !c.is_zero())
        .map(|(_, b)| b)
        .collect()
    }

    /// The component in one sector.
    pub fn sector(&self, b: Bidegree) -> ConeForm {
        let f = &self.form;
        let form = match b {
            Bidegree::B00 => CalcElement::function(f.c00.clone()),
            Bidegree::B10 => CalcElement::dz_form(f.c10.clone()),
            Bidegree::B01 => CalcElement::dzs_form(f.c01.clone()),
            Bidegree::B11 => CalcElement::omega_form(f.c11.clone()),
        };
        ConeForm { n: self.n, form }
    }

    pub fn multiply(&self, other: &ConeForm) -> Result<ConeForm, Error> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        Ok(ConeForm {
            n: self.n,
            form: self.form.form_multiply(&other.form),
        })
    }

    pub fn star(&self) -> ConeForm {
        ConeForm {
            n: self.n,
            form: self.form.star_form(),
        }
    }

    pub fn d(&self) -> ConeForm {
        ConeForm {
            n: self.n,
            form: self.form.d(),
        }
    }

    pub fn add(&self, other: &ConeForm) -> Result<ConeForm, Error> {
        if self.n != other.n {
            return Err(Error::OrderMismatch(self.n, other.n));
        }
        Ok(ConeForm {
            n: self.n,
            form: &self.form + &other.form,
        })
    }
}

impl fmt::Display for ConeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.form.fmt(f)
    }
}

/// Holomorphic part of `d`: raises the first bidegree.
pub fn delta(u: &ConeForm) -> ConeForm {
    let f = u.form();
    ConeForm {
        n: u.n,
        form: CalcElement {
            c10: partial(&f.c00),
            c11: partial(&f.c01),
            ..Default::default()
        },
    }
}

/// Antiholomorphic part of `d`: raises the second bidegree.
pub fn deltabar(u: &ConeForm) -> ConeForm {
    let f = u.form();
    ConeForm {
        n: u.n,
        form: CalcElement {
            c01: partial_bar(&f.c00),
            c11: -partial_bar(&f.c10).scale(&Scalar::q()),
            ..Default::default()
        },
    }
}

/// `ω₀ = dz z*`, in left normal form `q^{-1} z* dz`.
pub fn omega0() -> CalcElement {
    CalcElement::dz() * CalcElement::function(DiscElement::zs())
}

/// `ω₁ = db = [N]_q z^{N-1} dz`.
pub fn omega1(n: u32) -> CalcElement {
    CalcElement::function(ConeElement::b(n).embed()).d()
}

/// Decompose a `(1,0)`-form `f dz` with `f` of degree `N − 1` as
/// `r z* dz + s z^{N-1} dz` with cone coefficients `r`, `s`.
///
/// A monomial `z^i z*^j` with `j ≥ 1` goes to `r` with one `z*` stripped
/// from the right; otherwise `i ≥ N − 1` and `z^{N-1}` is stripped.
pub fn membership_test_10(phi: &CalcElement, n: u32) -> Result<(ConeElement, ConeElement), Error> {
    check_order(n)?;
    if !phi.c00.is_zero() || !phi.c01.is_zero() || !phi.c11.is_zero() {
        return Err(Error::NotPure10(phi.to_string()));
    }
    let f = &phi.c10;
    f.require_degree(n, n - 1)?;
    let mut r = DiscElement::zero();
    let mut s = DiscElement::zero();
    for (m, c) in f.terms() {
        if m.j >= 1 {
            r = r + DiscElement::monomial(m.i, m.j - 1).scale(c);
        } else {
            s = s + DiscElement::monomial(m.i - (n - 1), 0).scale(c);
        }
    }
    Ok((cone_normal_form(&r, n)?, cone_normal_form(&s, n)?))
}

/// `X_n(w) = Π_{l=1}^{n-1} (1 + q^{-l} w)`.
pub fn x_poly(n: u32) -> UniPoly {
    UniPoly::product_of_linear((1..n as i32).map(|l| (Scalar::one(), Scalar::q_pow(-l))))
}

/// `Y_n(w) = Π_{l=1}^{n-1} (1 + q^l w)`.
pub fn y_poly(n: u32) -> UniPoly {
    UniPoly::product_of_linear((1..n as i32).map(|l| (Scalar::one(), Scalar::q_pow(l))))
}

/// Cofactors with `f X_n + g Y_n = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutPair {
    pub n: u32,
    pub f: UniPoly,
    pub g: UniPoly,
}

impl BezoutPair {
    /// `f X_n + g Y_n`, which must be 1.
    pub fn combination(&self) -> UniPoly {
        self.f
            .mul(&x_poly(self.n))
            .add(&self.g.mul(&y_poly(self.n)))
    }
}

/// Bezout cofactors for `X_n`, `Y_n` by the extended Euclidean algorithm.
/// A nonconstant gcd is reported as an error.
pub fn bezout_cofactors(n: u32) -> Result<BezoutPair, Error> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let (x, y) = (x_poly(n), y_poly(n));
    let e = extended_gcd(&x, &y)?;
    if e.gcd != UniPoly::one() {
        return Err(Error::NonconstantGcd {
            n,
            gcd: e.gcd.to_string(),
        });
    }
    let pair = BezoutPair { n, f: e.u, g: e.v };
    if pair.combination() != UniPoly::one() {
        return Err(Error::CheckFailed(format!("f*X_{n} + g*Y_{n} != 1")));
    }
    Ok(pair)
}

/// `q [N]_q (γ/(1−q))^{N-1}`, the scalar in `b*db = K₁ Y_N(w) ω₀`.
fn eq5_prefactor_bsdb(n: u32) -> Scalar {
    let base = &Scalar::gamma() / &(Scalar::one() - Scalar::q());
    &(&Scalar::q() * &q_integer(n as i32)) * &base.pow(n as i32 - 1).expect("nonzero")
}

/// `[N]_q (q^{-1}γ/(1−q))^{N-1}`, the scalar in `db b* = K₂ X_N(w) ω₀`.
fn eq5_prefactor_bdbs(n: u32) -> Scalar {
    let base = &(&Scalar::q_pow(-1) * &Scalar::gamma()) / &(Scalar::one() - Scalar::q());
    &q_integer(n as i32) * &base.pow(n as i32 - 1).expect("nonzero")
}

/// A polynomial in `w` rewritten as a polynomial in `a`.
fn in_a(p: &UniPoly) -> UniPoly {
    p.compose(&w_in_a())
}

fn times_omega0(n: u32, p: &UniPoly) -> CalcElement {
    CalcElement::function(ConeElement::from_a_poly(n, p).embed()) * omega0()
}

/// `b* db` and `db b*` in left normal form.
///
/// `b db*` itself is a `(0,1)`-form; its `*`-conjugate `(b db*)* = db b*`
/// is the `(1,0)`-form that is a polynomial multiple of `ω₀`.
pub fn bsdb_and_dbbs(n: u32) -> (CalcElement, CalcElement) {
    let b = CalcElement::function(ConeElement::b(n).embed());
    let bs = CalcElement::function(ConeElement::bs(n).embed());
    (&bs * &b.d(), &b.d() * &bs)
}

/// `b db*`, a `(0,1)`-form.
pub fn bdbs(n: u32) -> CalcElement {
    let b = CalcElement::function(ConeElement::b(n).embed());
    let bs = CalcElement::function(ConeElement::bs(n).embed());
    &b * &bs.d()
}

/// The three forms of the `b*db`, `db b*` identities:
/// `b*db = q[N]_q (γ/(1−q))^{N-1} Π_{l=1}^{N-1}(1 + q^l w) ω₀`,
/// `db b* = [N]_q (q^{-1}γ/(1−q))^{N-1} Π_{l=1}^{N-1}(1 + q^{-l} w) ω₀`,
/// and the conjugate of the second, `b db* = (…ω₀)*`.
pub fn eq5_identities(n: u32) -> Result<Vec<Identity<CalcElement>>, Error> {
    check_order(n)?;
    let (bsdb, dbbs) = bsdb_and_dbbs(n);
    let rhs1 = times_omega0(n, &in_a(&y_poly(n)).scale(&eq5_prefactor_bsdb(n)));
    let rhs2 = times_omega0(n, &in_a(&x_poly(n)).scale(&eq5_prefactor_bdbs(n)));
    let rhs3 = rhs2.star_form();
    let id = |name: &str, lhs, rhs| Identity {
        name: name.to_string(),
        lhs,
        rhs,
    };
    Ok(vec![
        id(
            "bs*d(b) = q*[N]_q*(g/(1-q))^(N-1)*prod_{l=1}^{N-1}(1+q^l*w)*omega0",
            bsdb,
            rhs1,
        ),
        id(
            "d(b)*bs = [N]_q*(q^-1*g/(1-q))^(N-1)*prod_{l=1}^{N-1}(1+q^-l*w)*omega0",
            dbbs,
            rhs2,
        ),
        id(
            "b*d(bs) = ([N]_q*(q^-1*g/(1-q))^(N-1)*prod_{l=1}^{N-1}(1+q^-l*w)*omega0)*",
            bdbs(n),
            rhs3,
        ),
    ])
}

/// Check [`eq5_identities`] exactly.
pub fn verify_eq5(n: u32) -> Result<Vec<Check>, Error> {
    Ok(eq5_identities(n)?
        .iter()
        .map(|i| Check::compare(i.name.clone(), n, &i.lhs, &i.rhs))
        .collect())
}

/// Cone coefficients with `c1 (b*db) + c2 (db b*) = ω₀`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Omega0Witness {
    #[serde(rename = "N")]
    pub n: u32,
    pub c1: ConeElement,
    pub c2: ConeElement,
    pub bezout: BezoutPair,
}

impl Omega0Witness {
    /// `c1 (b*db) + c2 (db b*)`.
    pub fn combination(&self) -> CalcElement {
        let (bsdb, dbbs) = bsdb_and_dbbs(self.n);
        CalcElement::function(self.c1.embed()) * bsdb
            + CalcElement::function(self.c2.embed()) * dbbs
    }
}

/// Exhibit `ω₀` as a cone combination of `b*db` and `db b*`.
///
/// With `b*db = K₁ Y_N(w) ω₀`, `db b* = K₂ X_N(w) ω₀` and
/// `f X_N + g Y_N = 1`, take `c1 = g(w)/K₁` and `c2 = f(w)/K₂`.
pub fn omega0_witness(n: u32) -> Result<Omega0Witness, Error> {
    check_order(n)?;
    let bezout = bezout_cofactors(n)?;
    let c1 = in_a(&bezout.g).scale(&eq5_prefactor_bsdb(n).inv()?);
    let c2 = in_a(&bezout.f).scale(&eq5_prefactor_bdbs(n).inv()?);
    let w = Omega0Witness {
        n,
        c1: ConeElement::from_a_poly(n, &c1),
        c2: ConeElement::from_a_poly(n, &c2),
        bezout,
    };
    let combo = w.combination();
    if combo != omega0() {
        return Err(Error::CheckFailed(format!(
            "c1*bs*db + c2*db*bs = {combo}, expected omega0"
        )));
    }
    Ok(w)
}

/// The axioms of the complex structure on the generators `a`, `b`, `b*`:
/// `d = δ + δ̄`, `δ(u)* = δ̄(u*)`, `δ̄δ + δδ̄ = 0`, `(1,0)`-membership of
/// `ω₀`, `ω₁`, `δa`, `δb`, and the `ω₀` witness.
pub fn complex_structure_checks(n: u32) -> Result<Vec<Check>, Error> {
    check_order(n)?;
    let mut out = Vec::new();
    let gens = [
        ("a", ConeElement::a(n)),
        ("b", ConeElement::b(n)),
        ("bs", ConeElement::bs(n)),
    ];
    for (name, g) in &gens {
        let u = ConeForm::function(g);
        let sum = delta(&u).add(&deltabar(&u))?;
        out.push(Check::compare(
            format!("d({name}) = delta({name}) + deltabar({name})"),
            n,
            u.d().form(),
            sum.form(),
        ));
        let lhs = delta(&u).star();
        let rhs = deltabar(&ConeForm::function(&g.star()));
        out.push(Check::compare(
            format!("delta({name})* = deltabar({name}*)"),
            n,
            lhs.form(),
            rhs.form(),
        ));
        let anti = delta(&deltabar(&u)).add(&deltabar(&delta(&u)))?;
        out.push(Check::compare(
            format!("delta(deltabar({name})) + deltabar(delta({name})) = 0"),
            n,
            anti.form(),
            &CalcElement::zero(),
        ));
    }
    let members = [
        ("omega0", omega0()),
        ("omega1", omega1(n)),
        (
            "delta(a)",
            delta(&ConeForm::function(&ConeElement::a(n))).into_form(),
        ),
        (
            "delta(b)",
            delta(&ConeForm::function(&ConeElement::b(n))).into_form(),
        ),
    ];
    for (name, phi) in members {
        let (r, s) = membership_test_10(&phi, n)?;
        let rebuilt = CalcElement::function(r.embed()) * CalcElement::dz_form(DiscElement::zs())
            + CalcElement::function(s.embed())
                * CalcElement::dz_form(DiscElement::monomial(n - 1, 0));
        out.push(
            Check::compare(format!("{name} in Omega^(1,0)"), n, &rebuilt, &phi)
                .witnessed(format!("r = {r}; s = {s}")),
        );
    }
    let w = omega0_witness(n)?;
    out.push(
        Check::compare(
            "c1*bs*d(b) + c2*d(b)*bs = omega0",
            n,
            &w.combination(),
            &omega0(),
        )
        .witnessed(format!("c1 = {}; c2 = {}", w.c1, w.c2)),
    );
    Ok(out)
}

/// Exactness of the volume form and two-sided generation of `Ω²` on
/// generators: `d(ω₀) = −ω`, `ω a = a ω`, `ω b = q^{2N} b ω`,
/// `ω b* = q^{-2N} b* ω`.
pub fn volume_form_checks(n: u32) -> Result<Vec<Check>, Error> {
    check_order(n)?;
    let omega = CalcElement::omega();
    let f = |e: ConeElement| CalcElement::function(e.embed());
    let (a, b, bs) = (
        f(ConeElement::a(n)),
        f(ConeElement::b(n)),
        f(ConeElement::bs(n)),
    );
    let q2n = Scalar::q_pow(2 * n as i32);
    let q2n_inv = Scalar::q_pow(-2 * n as i32);
    Ok(vec![
        Check::compare("d(omega0) = -omega", n, &omega0().d(), &-&omega)
            .witnessed("omega0 = dz*zs"),
        Check::compare("omega*a = a*omega", n, &(&omega * &a), &(&a * &omega)),
        Check::compare(
            "omega*b = q^(2N)*b*omega",
            n,
            &(&omega * &b),
            &(&b * &omega).scale(&q2n),
        ),
        Check::compare(
            "omega*bs = q^(-2N)*bs*omega",
            n,
            &(&omega * &bs),
            &(&bs * &omega).scale(&q2n_inv),
        ),
    ])
}
