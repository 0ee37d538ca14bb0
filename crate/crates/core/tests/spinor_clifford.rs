mod common;

use common::sparse_vec;
use proptest::prelude::*;
use qkspin::spinor::{
    clifford_mu, dimension_check, hermitian_spinor, kraines_check, kraines_eigenvalue, metric, mu0, rank_s,
    two_form_on_grade_zero, SpinElem, SpinorSpace, Tangent,
};
use qkspin::{Comb, Rational, Scalar, SparseVec};

fn tangent(v: &[i64], n: usize) -> Tangent<Scalar> {
    let mut out = Tangent::new();
    for (x, &c) in v.iter().enumerate() {
        out.add_term(((x / (2 * n)) as u8, (x % (2 * n)) as u8), Scalar::int(c));
    }
    out
}

fn spinor(space: &SpinorSpace, v: &SparseVec<Rational>) -> SpinElem<Scalar> {
    space.element(&v.convert(|q| Scalar::real(q.clone())))
}

#[test]
fn spinor_ranks_n2() {
    assert_eq!((0..=2).map(|r| rank_s(2, r)).collect::<Vec<_>>(), vec![5, 8, 3]);
    assert_eq!((0..=3).map(|r| rank_s(3, r)).sum::<i64>(), 64);
    for n in 1..=4 {
        for c in dimension_check(n) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
}

#[test]
fn kraines_eigenvalues_n2_n3() {
    let ev: Vec<Rational> = (0..=2).map(|r| kraines_eigenvalue(2, r)).collect();
    assert_eq!(ev, vec![Rational::from(12), Rational::from(0), Rational::from(-20)]);
    for n in 2..=3 {
        for c in kraines_check(n) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
}

#[test]
fn two_form_vanishes_on_grade_zero() {
    for (name, zero) in two_form_on_grade_zero(2) {
        assert!(zero, "{name}");
    }
}

#[test]
fn unscaled_multiplication_fails_clifford_relation() {
    // μ0 = μ/√2 squares to half the metric
    let space = SpinorSpace::new(2).unwrap();
    let x: Tangent<Scalar> = Comb::term((0, 0), Scalar::one()) + Comb::term((1, 2), Scalar::one());
    let psi = space.basis_element::<Scalar>(0);
    let g = metric(2, &x, &x);
    assert!(!g.is_zero());
    let twice = mu0(2, &x, &mu0(2, &x, &psi)).scale(&Scalar::int(2));
    assert_ne!(twice, psi.scale(&-(g.clone() * &Scalar::int(2))));
    assert_eq!(twice, psi.scale(&-g));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn clifford_relation_on_random_vectors(
        x in prop::collection::vec(-2i64..=2, 8),
        y in prop::collection::vec(-2i64..=2, 8),
        v in sparse_vec(16),
    ) {
        let space = SpinorSpace::new(2).unwrap();
        let (x, y) = (tangent(&x, 2), tangent(&y, 2));
        let psi = spinor(&space, &v);
        let lhs = clifford_mu(2, &x, &clifford_mu(2, &y, &psi)) + clifford_mu(2, &y, &clifford_mu(2, &x, &psi));
        let g = metric(2, &x, &y);
        prop_assert_eq!(lhs, psi.scale(&(g * &Scalar::int(-2))));
    }

    #[test]
    fn hermitian_product_is_hermitian(v in sparse_vec(16), w in sparse_vec(16), k in -2i64..=2) {
        let space = SpinorSpace::new(2).unwrap();
        let x = spinor(&space, &v).scale(&(Scalar::i() * &Scalar::int(k) + &Scalar::one()));
        let y = spinor(&space, &w);
        prop_assert_eq!(hermitian_spinor(2, &x, &y), hermitian_spinor(2, &y, &x).conjugate());
        let norm = hermitian_spinor(2, &x, &x);
        prop_assert!(norm.is_positive_real() || x.is_zero());
    }

    #[test]
    fn clifford_square_is_minus_metric(x in prop::collection::vec(-2i64..=2, 8), v in sparse_vec(16), w in sparse_vec(16)) {
        let space = SpinorSpace::new(2).unwrap();
        let x = tangent(&x, 2);
        let psi = spinor(&space, &v) + spinor(&space, &w);
        let g = metric(2, &x, &x);
        prop_assert_eq!(clifford_mu(2, &x, &clifford_mu(2, &x, &psi)), psi.scale(&-g));
    }
}
