mod common;

use num::BigRational;
use proptest::prelude::*;
use qcone::fock::{check_identity, check_products, FockRep};
use qcone::{DiscElement, Scalar};

use common::arb_disc;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(32)
}

fn reps() -> [FockRep; 2] {
    [
        FockRep::from_ratios((1, 2), (1, 2), 40).unwrap(),
        FockRep::from_ratios((3, 4), (1, 4), 40).unwrap(),
    ]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn symbolic_products_agree_with_matrix_products(u in arb_disc(3), v in arb_disc(3)) {
        let prod = &u * &v;
        for rep in reps() {
            let lhs = vec![(Scalar::one(), vec![u.clone(), v.clone()])];
            let rhs = vec![(Scalar::one(), vec![prod.clone()])];
            prop_assert!(check_products(&lhs, &rhs, &rep).unwrap());
        }
    }

    #[test]
    fn perturbations_are_detected(u in arb_disc(3), i in 0u32..3, j in 0u32..3, k in 1i64..1000) {
        let eps = Scalar::from_rational(BigRational::new(k.into(), 1_000_000.into()));
        let v = &u + &DiscElement::monomial(i, j).scale(&eps);
        for rep in reps() {
            prop_assert!(!check_identity(&u, &v, &rep).unwrap());
        }
    }
}
