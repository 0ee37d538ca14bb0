use proptest::prelude::*;
use qkspin::bianchi::{bianchi_check, BianchiSystem};
use qkspin::curvature::{
    curv_dim, curvature_space_check, injectivity_ranks, injectivity_report, join_sym2lambda2, join_sym2sym2,
    lambda4_basis, mult_m, split_sym2lambda2, split_sym2sym2, sym2lambda2_basis, sym2sym2_basis, Tensor,
};
use qkspin::Rational;

fn combination(keys: &[Vec<u8>], coeffs: &[i64]) -> Tensor {
    keys.iter().zip(coeffs).map(|(k, &c)| (k.clone(), Rational::from(c))).collect()
}

#[test]
fn curvature_dimensions() {
    assert_eq!([2, 3, 4].map(curv_dim), [1, 6, 20]);
    for dim in [2, 3, 4] {
        for c in curvature_space_check(dim) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
}

#[test]
fn lambda_injectivity_fails_only_in_dimension_two() {
    let (d, rs, rl) = injectivity_ranks(2);
    assert_eq!(rs, d);
    assert!(rl < d);
    for dim in [2, 4] {
        for c in injectivity_report(dim) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
}

#[test]
fn four_forms_violate_bianchi() {
    for k in lambda4_basis(4) {
        let x = join_sym2lambda2(&Tensor::new(), &Tensor::basis(k.clone()));
        assert!(!mult_m(&x).is_zero(), "{k:?}");
    }
}

#[test]
fn bianchi_equations_match_kernel() {
    for n in 1..=2 {
        for c in bianchi_check(n) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
    for n in 1..=2 {
        let s = BianchiSystem::new(n).unwrap().summary();
        assert!(s.equivalent());
        assert_eq!(s.solution_dim as i64, curv_dim(4 * n));
    }
    assert!(BianchiSystem::new(3).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sym2lambda2_round_trip(coeffs in prop::collection::vec(-3i64..=3, 21)) {
        let keys = sym2lambda2_basis(4);
        let x = combination(&keys, &coeffs);
        let (c, w) = split_sym2lambda2(&x);
        prop_assert!(mult_m(&c).is_zero());
        prop_assert_eq!(join_sym2lambda2(&c, &w), x);
        let (c2, w2) = split_sym2lambda2(&c);
        prop_assert_eq!(c2, c);
        prop_assert!(w2.is_zero());
    }

    #[test]
    fn sym2sym2_round_trip(coeffs in prop::collection::vec(-3i64..=3, 21)) {
        let keys = sym2sym2_basis(3);
        let x = combination(&keys, &coeffs[..keys.len()]);
        let (c, s) = split_sym2sym2(&x);
        prop_assert!(mult_m(&c).is_zero());
        prop_assert_eq!(join_sym2sym2(&c, &s), x);
    }
}
