mod common;

use proptest::prelude::*;
use qcone::conecalc::{
    bezout_cofactors, delta, deltabar, membership_test_10, omega0, omega1, x_poly, y_poly,
    Bidegree, ConeForm,
};
use qcone::{CalcElement, ConeElement, Error, Scalar, UniPoly};

use common::arb_cone;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(24)
}

fn on_left(c: &ConeElement, form: &CalcElement) -> CalcElement {
    &CalcElement::function(c.embed()) * form
}

fn arb_10(n: u32) -> impl Strategy<Value = ConeForm> {
    (arb_cone(n), arb_cone(n)).prop_map(move |(c, e)| {
        ConeForm::new(n, &on_left(&c, &omega0()) + &on_left(&e, &omega1(n))).unwrap()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn d_splits_into_delta_and_deltabar(u in arb_cone(3)) {
        let f = ConeForm::function(&u);
        prop_assert_eq!(delta(&f).add(&deltabar(&f)).unwrap(), f.d());
        prop_assert_eq!(delta(&f).star(), deltabar(&f.star()));
    }

    #[test]
    fn membership_recovers_coefficients(c in arb_cone(2), e in arb_cone(2)) {
        let phi = &on_left(&c, &omega0()) + &on_left(&e, &omega1(2));
        let (r, s) = membership_test_10(&phi, 2).unwrap();
        let rebuilt = &CalcElement::dz_form(&r.embed() * &qcone::DiscElement::zs())
            + &CalcElement::dz_form(&s.embed() * &qcone::DiscElement::z());
        prop_assert_eq!(rebuilt, phi);
    }

    #[test]
    fn bigrading_closure(u in arb_10(2), v in arb_10(2)) {
        let mixed = u.multiply(&v.star()).unwrap();
        prop_assert!(mixed.sectors().iter().all(|b| *b == Bidegree::B11));
        prop_assert!(u.multiply(&v).unwrap().form().is_zero());
    }
}

#[test]
fn membership_errors() {
    assert!(matches!(
        membership_test_10(&CalcElement::dzs(), 2),
        Err(Error::NotPure10(_))
    ));
    assert!(matches!(
        membership_test_10(&CalcElement::dz(), 3),
        Err(Error::WrongDegree { .. })
    ));
}

#[test]
fn bezout_identity() {
    for n in 1..=6 {
        let p = bezout_cofactors(n).unwrap();
        assert_eq!(p.combination(), UniPoly::one(), "n = {n}");
    }
}

fn invert_q(p: &UniPoly) -> UniPoly {
    UniPoly::from_coeffs(p.coeffs().iter().map(Scalar::invert_q).collect())
}

fn at_qw(p: &UniPoly) -> UniPoly {
    p.compose(&UniPoly::linear(Scalar::zero(), Scalar::q()))
}

fn lin(c1: Scalar) -> UniPoly {
    UniPoly::linear(Scalar::one(), c1)
}

/// A member of the ideal `(X_n, Y_n)` with its cofactors.
#[derive(Clone)]
struct Member {
    u: UniPoly,
    v: UniPoly,
}

impl Member {
    fn value(&self, n: u32) -> UniPoly {
        self.u.mul(&x_poly(n)).add(&self.v.mul(&y_poly(n)))
    }

    fn times(&self, p: &UniPoly) -> Member {
        Member {
            u: self.u.mul(p),
            v: self.v.mul(p),
        }
    }

    fn plus(&self, other: &Member) -> Member {
        Member {
            u: self.u.add(&other.u),
            v: self.v.add(&other.v),
        }
    }
}

/// Cofactors for `X_{k+1}`, `Y_{k+1}` from those for `X_k`, `Y_k`, by the
/// induction in the coprimality proof.
fn induction_step(k: u32, f: &UniPoly, g: &UniPoly) -> (UniPoly, UniPoly) {
    let ki = k as i32;
    let n = k + 1;
    let q = Scalar::q_pow;
    let left = if k == 1 {
        Member {
            u: UniPoly::one(),
            v: UniPoly::zero(),
        }
    } else {
        let p1 = Member {
            u: f.mul(&lin(q(ki))),
            v: g.mul(&lin(q(-ki))),
        };
        assert_eq!(p1.value(n), lin(q(-ki)).mul(&lin(q(ki))));
        let p2 = Member {
            u: at_qw(f).mul(&lin(Scalar::one())).mul(&lin(q(1))),
            v: at_qw(g).mul(&lin(q(1 - ki))).mul(&lin(q(-ki))),
        };
        assert_eq!(
            p2.value(n),
            lin(q(1)).mul(&lin(q(1 - ki))).mul(&lin(q(-ki)))
        );
        let alpha2 = &q(ki) / &(q(ki) + q(2 - 2 * ki) - q(1) - q(1 - ki));
        let alpha1 = -(&alpha2 * &q(2 - 2 * ki));
        let alpha0 = Scalar::one() - alpha2.clone();
        let head = UniPoly::linear(alpha0, alpha1);
        let unit = head
            .mul(&lin(q(ki)))
            .add(&lin(q(1)).mul(&lin(q(1 - ki))).scale(&alpha2));
        assert_eq!(unit, UniPoly::one());
        p1.times(&head).plus(&p2.times(&UniPoly::constant(alpha2)))
    };
    assert_eq!(left.value(n), lin(q(-ki)));
    let right = Member {
        u: invert_q(&left.v),
        v: invert_q(&left.u),
    };
    assert_eq!(right.value(n), lin(q(ki)));
    let c1 = &q(ki) / &(q(ki) - q(-ki));
    let c2 = Scalar::one() - c1.clone();
    let one = left
        .times(&UniPoly::constant(c1))
        .plus(&right.times(&UniPoly::constant(c2)));
    assert_eq!(one.value(n), UniPoly::one());
    (one.u, one.v)
}

#[test]
fn lemma_induction_route_agrees_with_euclid() {
    let (mut f, mut g) = (UniPoly::one(), UniPoly::zero());
    for k in 1..=4u32 {
        let (nf, ng) = induction_step(k, &f, &g);
        f = nf;
        g = ng;
        let n = k + 1;
        let euclid = bezout_cofactors(n).unwrap();
        let (_, reduced) = f.div_rem(&y_poly(n)).unwrap();
        assert_eq!(reduced, euclid.f, "n = {n}");
    }
}
