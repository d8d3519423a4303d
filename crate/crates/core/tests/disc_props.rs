mod common;

use proptest::prelude::*;
use qcone::scalar::q_integer;
use qcone::{DiscElement, Scalar};

use common::{arb_disc, oracle_multiply};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn multiplication_is_associative(u in arb_disc(4), v in arb_disc(4), w in arb_disc(4)) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }

    #[test]
    fn multiplication_matches_word_rewriting(u in arb_disc(3), v in arb_disc(3)) {
        prop_assert_eq!(&u * &v, oracle_multiply(&u, &v));
    }

    #[test]
    fn star_is_an_involutive_antihomomorphism(u in arb_disc(3), v in arb_disc(3)) {
        prop_assert_eq!((&u * &v).star(), &v.star() * &u.star());
        prop_assert_eq!(u.star().star(), u);
    }

    #[test]
    fn grading_is_multiplicative(i1 in 0u32..4, j1 in 0u32..4, i2 in 0u32..4, j2 in 0u32..4, n in 2u32..7) {
        let u = DiscElement::monomial(i1, j1);
        let v = DiscElement::monomial(i2, j2);
        let du = u.homogeneous_degree(n).unwrap().unwrap();
        let dv = v.homogeneous_degree(n).unwrap().unwrap();
        prop_assert_eq!((&u * &v).homogeneous_degree(n).unwrap(), Some((du + dv) % n));
    }

    #[test]
    fn degree_projections_sum_to_the_element(u in arb_disc(4), n in 2u32..6) {
        let total = (0..n).fold(DiscElement::zero(), |acc, k| acc + u.degree_projection(k, n).unwrap());
        prop_assert_eq!(total, u);
    }
}

#[test]
fn reorder_closed_form() {
    let z = DiscElement::z();
    for j in 1..=8u32 {
        let expected = DiscElement::monomial(1, j).scale(&Scalar::q_pow(j as i32))
            + DiscElement::monomial(0, j - 1).scale(&(Scalar::gamma() * q_integer(j as i32)));
        assert_eq!(&DiscElement::zs().pow(j) * &z, expected, "j = {j}");
    }
}

#[test]
fn diagonal_product_expansion() {
    for n in 2..=6u32 {
        let lhs = &DiscElement::zs().pow(n - 1) * &DiscElement::z().pow(n - 1);
        let rhs = (1..n as i32).fold(DiscElement::one(), |acc, l| {
            let f = DiscElement::a().scale(&Scalar::q_pow(l))
                + DiscElement::scalar(Scalar::gamma() * q_integer(l));
            &acc * &f
        });
        assert_eq!(lhs, rhs, "N = {n}");
    }
}

#[test]
fn printing() {
    assert_eq!(
        (&DiscElement::zs().pow(2) * &DiscElement::z()).to_string(),
        "q^2*z*zs^2 + g*(1+q)*zs"
    );
    assert_eq!(DiscElement::zero().to_string(), "0");
    assert_eq!(DiscElement::one().to_string(), "1");
}
