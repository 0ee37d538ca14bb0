use qkspin::algebra::{primitive_basis, Elem};
use qkspin::model::{
    derivation_ext, einstein_prefactor, extraction_check, model_symmetry_check, qzero_apply, quadric_endomorphism,
    ricci_check, sym4_acts_trivially, sym4_triviality_check, Sym4Form,
};
use qkspin::symplectic::Coeffs;
use qkspin::Rational;

#[test]
fn ricci_constants() {
    for n in 2..=3 {
        for c in ricci_check(n, 0..20) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
    assert_eq!(einstein_prefactor(2), Rational::new(-1, 64));
}

#[test]
fn model_tensors_and_extraction() {
    for c in model_symmetry_check(2, 7).into_iter().chain(extraction_check(2, 7)) {
        assert!(c.passed, "{}: {:?}", c.name, c.witness);
    }
}

#[test]
fn fourth_order_forms_act_trivially() {
    for n in 2..=3 {
        for c in sym4_triviality_check(n, 0..6) {
            assert!(c.passed, "{}: {:?}", c.name, c.witness);
        }
    }
    let alpha: Coeffs<Rational> = [(0u8, Rational::from(1)), (3, Rational::from(2))].into_iter().collect();
    assert_eq!(sym4_acts_trivially(&Sym4Form::power4(2, &alpha)), None);
}

#[test]
fn single_term_of_the_sum_is_not_trivial() {
    let form = Sym4Form::seeded(2, 3);
    let w = Elem::<Rational>::basis(vec![0]);
    let found = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).any(|(i, j)| {
        let inner = derivation_ext(&form.endomorphism(i, j), &w);
        !derivation_ext(&quadric_endomorphism(2, i, j), &inner).is_zero()
    });
    assert!(found);
}

#[test]
fn primitive_operator_vanishes_but_form_is_nonzero() {
    let form = Sym4Form::seeded(3, 11);
    assert!(!form.is_zero());
    for r in 0..=3 {
        let prim = primitive_basis(3, 3 - r).unwrap();
        for k in 0..prim.dim() {
            assert!(qzero_apply(&form, prim.vector(k)).is_zero(), "r={r} k={k}");
        }
    }
}

#[test]
fn seeded_forms_are_reproducible() {
    assert_eq!(Sym4Form::seeded(2, 42), Sym4Form::seeded(2, 42));
    assert_ne!(Sym4Form::seeded(2, 42), Sym4Form::seeded(2, 43));
}
