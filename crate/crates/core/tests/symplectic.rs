mod common;

use common::coeffs;
use proptest::prelude::*;
use qkspin::symplectic::{Coeffs, SymplecticSpace};
use qkspin::{Comb, Rational};

fn hermitian(space: SymplecticSpace, v: &Coeffs<Rational>, w: &Coeffs<Rational>) -> Rational {
    space.sigma_coeffs(v, &space.j_coeffs(w))
}

#[test]
fn standard_values() {
    let e = SymplecticSpace::new(2);
    assert_eq!(e.sigma_basis(0, 2), 1);
    assert_eq!(e.sigma_basis(2, 0), -1);
    assert_eq!(e.sigma_basis(0, 1), 0);
    for j in 0..4 {
        let (k, s) = e.flat_basis(j);
        for i in 0..4 {
            let val = s * e.sigma_basis(k, i);
            assert_eq!(val, i64::from(i == j), "σ(de_{j}♭, e_{i})");
        }
    }
}

proptest! {
    #[test]
    fn sigma_antisymmetric(m in 1usize..=3, seed in any::<u64>()) {
        let space = SymplecticSpace::new(m);
        let v: Coeffs<Rational> = (0..2 * m as u8).map(|i| (i, Rational::from(((seed >> i) & 7) as i64 - 3))).collect();
        let w: Coeffs<Rational> = (0..2 * m as u8).map(|i| (i, Rational::from(((seed >> (i + 16)) & 7) as i64 - 3))).collect();
        prop_assert_eq!(space.sigma_coeffs(&v, &w), -space.sigma_coeffs(&w, &v));
    }

    #[test]
    fn j_squares_to_minus_one(v in coeffs(6)) {
        let space = SymplecticSpace::new(3);
        prop_assert_eq!(space.j_coeffs(&space.j_coeffs(&v)), v.neg());
    }

    #[test]
    fn j_preserves_sigma(v in coeffs(4), w in coeffs(4)) {
        let space = SymplecticSpace::new(2);
        prop_assert_eq!(space.sigma_coeffs(&space.j_coeffs(&v), &space.j_coeffs(&w)), space.sigma_coeffs(&v, &w));
    }

    #[test]
    fn hermitian_form_positive(v in coeffs(6)) {
        let space = SymplecticSpace::new(3);
        let h = hermitian(space, &v, &v);
        prop_assert!(h.is_positive() || v.is_zero());
    }

    #[test]
    fn hermitian_form_symmetric(v in coeffs(4), w in coeffs(4)) {
        let space = SymplecticSpace::new(2);
        prop_assert_eq!(hermitian(space, &v, &w), hermitian(space, &w, &v));
    }

    #[test]
    fn flat_inverts_sharp(v in coeffs(6)) {
        let space = SymplecticSpace::new(3);
        prop_assert_eq!(space.flat_coeffs(&space.sharp_coeffs(&v)), v.clone());
        let w: Coeffs<Rational> = Comb::basis(1);
        prop_assert_eq!(space.sigma_coeffs(&v, &w), space.sharp_coeffs(&v).get(&1));
    }
}
