mod common;

use common::{nonzero_rational, rational, scalar};
use proptest::prelude::*;
use qkspin::{Rational, Scalar};

#[test]
fn sqrt2_and_i_relations() {
    assert_eq!(Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::int(2));
    assert_eq!(Scalar::i() * &Scalar::i(), Scalar::int(-1));
    assert_eq!("3/6".parse::<Rational>().unwrap(), Rational::new(1, 2));
    assert!("1/0".parse::<Rational>().is_err());
    assert!(Scalar::zero().inverse().is_err());
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + &b, b.clone() + &a);
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() + &b) + &c, a.clone() + &(b.clone() + &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
        prop_assert_eq!(a.clone() - &a, Rational::zero());
    }

    #[test]
    fn rational_inverse(a in nonzero_rational()) {
        prop_assert_eq!(a.clone() * &a.recip().unwrap(), Rational::one());
    }

    #[test]
    fn rational_text_round_trip(a in rational()) {
        prop_assert_eq!(a.canonical().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!((a.clone() * &b) * &c, a.clone() * &(b.clone() * &c));
        prop_assert_eq!(a.clone() * &(b.clone() + &c), a.clone() * &b + &(a.clone() * &c));
    }

    #[test]
    fn scalar_inverse_and_conjugation(a in scalar(), b in scalar()) {
        if !a.is_zero() {
            prop_assert_eq!(a.clone() * &a.inverse().unwrap(), Scalar::one());
        }
        prop_assert_eq!((a.clone() * &b).conjugate(), a.conjugate() * &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert!((a.clone() * &a.conjugate()).is_real());
    }

    #[test]
    fn scalar_encoding_round_trip(a in scalar()) {
        prop_assert_eq!(Scalar::decode(&a.encode()).unwrap(), a);
    }
}
