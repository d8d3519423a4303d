mod common;

use proptest::prelude::*;
use qcone::calculus::{d, partial, partial_bar};
use qcone::scalar::q_integer;
use qcone::{CalcElement, DiscElement, Scalar};

use common::{arb_calc, arb_form};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(48)
}

fn sign(k: u32) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn d_squares_to_zero(u in arb_calc(4)) {
        prop_assert!(d(&d(&u)).is_zero());
    }

    #[test]
    fn graded_leibniz((k, u, v) in (0u32..3, 0u32..3).prop_flat_map(|(k, l)| (Just(k), arb_form(k, 3), arb_form(l, 3)))) {
        prop_assert_eq!(d(&(&u * &v)), &(&d(&u) * &v) + &(&u * &d(&v)).scale(&sign(k)));
    }

    #[test]
    fn star_commutes_with_d(u in arb_calc(3)) {
        prop_assert_eq!(d(&u).star_form(), d(&u.star_form()));
        prop_assert_eq!(u.star_form().star_form(), u);
    }

    #[test]
    fn star_is_graded_antimultiplicative((k, l, u, v) in (0u32..3, 0u32..3).prop_flat_map(|(k, l)| (Just(k), Just(l), arb_form(k, 3), arb_form(l, 3)))) {
        let lhs = (&u * &v).star_form();
        let rhs = (&v.star_form() * &u.star_form()).scale(&sign(k * l));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn forms_are_associative(u in arb_calc(2), v in arb_calc(2), w in arb_calc(2)) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }
}

/// `d` of a PBW word by the Leibniz rule applied letter by letter.
fn naive_d(i: u32, j: u32) -> CalcElement {
    let mut letters = vec![DiscElement::z(); i as usize];
    letters.extend(std::iter::repeat_n(DiscElement::zs(), j as usize));
    let mut total = CalcElement::zero();
    for k in 0..letters.len() {
        let mut term = CalcElement::one();
        for (m, letter) in letters.iter().enumerate() {
            let f = CalcElement::function(letter.clone());
            term = if m == k { &term * &d(&f) } else { &term * &f };
        }
        total = &total + &term;
    }
    total
}

#[test]
fn differential_matches_naive_leibniz() {
    for i in 0..=4 {
        for j in 0..=4 {
            let f = CalcElement::function(DiscElement::monomial(i, j));
            assert_eq!(d(&f), naive_d(i, j), "z^{i} zs^{j}");
        }
    }
}

#[test]
fn partial_derivatives_closed_form() {
    for i in 1..=4u32 {
        for j in 0..=3u32 {
            let f = DiscElement::monomial(i, j);
            let expected = DiscElement::monomial(i - 1, j)
                .scale(&(q_integer(i as i32) * Scalar::q_pow(-(j as i32))));
            assert_eq!(partial(&f), expected);
        }
    }
    assert_eq!(
        partial_bar(&DiscElement::zs().pow(3)),
        DiscElement::zs().pow(2).scale(&q_integer(3).invert_q())
    );
}

#[test]
fn defining_relation_is_closed() {
    let z = CalcElement::function(DiscElement::z());
    let zs = CalcElement::function(DiscElement::zs());
    let g = CalcElement::function(DiscElement::scalar(Scalar::gamma()));
    let rel = &(&zs * &z) - &(&(&z * &zs).scale(&Scalar::q()) + &g);
    assert!(rel.is_zero());
    let dz = CalcElement::dz();
    let dzs = CalcElement::dzs();
    assert_eq!(&dz * &z, (&z * &dz).scale(&Scalar::q()));
    assert_eq!(&dz * &zs, (&zs * &dz).scale(&Scalar::q_pow(-1)));
    assert_eq!(&dzs * &dz, CalcElement::omega().scale(&-Scalar::q()));
    assert!((&dz * &dz).is_zero() && (&dzs * &dzs).is_zero());
}
