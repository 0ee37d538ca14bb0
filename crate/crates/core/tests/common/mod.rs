#![allow(dead_code)]

use proptest::prelude::*;
use qkspin::algebra::{primitive_basis, Elem};
use qkspin::symplectic::Coeffs;
use qkspin::{Comb, Rational, Scalar, SparseVec};

pub fn rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (rational(), rational(), rational(), rational()).prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
}

pub fn coeffs(dim: usize) -> impl Strategy<Value = Coeffs<Rational>> {
    prop::collection::vec(-3i64..=3, dim)
        .prop_map(|v| v.into_iter().enumerate().map(|(i, c)| (i as u8, Rational::from(c))).collect())
}

/// Random combination of the primitive basis of Λ^q∘E.
pub fn primitive_element(n: usize, q: usize) -> impl Strategy<Value = Elem<Rational>> {
    let prim = primitive_basis(n, q).expect("q <= n");
    prop::collection::vec(-3i64..=3, prim.dim()).prop_map(move |v| {
        let coords: SparseVec<Rational> = v.into_iter().enumerate().map(|(k, c)| (k, Rational::from(c))).collect();
        prim.element(&coords)
    })
}

/// Random flat coordinate vector on a space of dimension `dim`.
pub fn sparse_vec(dim: usize) -> impl Strategy<Value = SparseVec<Rational>> {
    prop::collection::vec(-2i64..=2, dim)
        .prop_map(|v| v.into_iter().enumerate().map(|(k, c)| (k, Rational::from(c))).collect())
}

pub fn to_scalar<K: Ord + Clone>(c: &Comb<K, Rational>) -> Comb<K, Scalar> {
    c.convert(|q| Scalar::real(q.clone()))
}

/// The 6×6 matrix as printed, entry by entry, for rows (ℂ⊗ℂ, Sym²H⊗ℂ, ℂ⊗Sym²E, Sym²H⊗Sym²E, ℂ⊗Λ²∘E, Sym²H⊗Λ²∘E).
pub fn displayed_w(n: usize, r: usize) -> [[Rational; 6]; 6] {
    let (n, r) = (n as i64, r as i64);
    let a = n - r + 1;
    let b = (n + r + 3) * (r + 1);
    let c = r + 1;
    let s = n + r + 2;
    let f = Rational::new;
    [
        [f(1, a), f(-r, a * c), f(-(r + 2), b), f(r * (r + 2), b * c), f(1, 1), f(-r, c)],
        [f(r, a), f(r * (r + 2), a * c), f(-r * (r + 2), b), f(-r * (r + 2) * (r + 2), b * c), f(r, 1), f(r * (r + 2), c)],
        [f(-(n - r), a), f(r * (n - r), a * c), f(s * (r + 2), b), f(-r * s * (r + 2), b * c), f(1, 1), f(-r, c)],
        [
            f(-(n - r) * r, a),
            f(-r * (r + 2) * (n - r), a * c),
            f(r * s * (r + 2), b),
            f(r * s * (r + 2) * (r + 2), b * c),
            f(r, 1),
            f(r * (r + 2), c),
        ],
        [
            f(-(n - r) * (n + 1), n * a),
            f(r * (n - r) * (n + 1), n * a * c),
            f(-r * s * (n + 1), n * b),
            f(r * r * s * (n + 1), n * b * c),
            f(r, n),
            f(-r * r, n * c),
        ],
        [
            f(-r * (n - r) * (n + 1), n * a),
            f(-r * (r + 2) * (n - r) * (n + 1), n * a * c),
            f(-r * r * s * (n + 1), n * b),
            f(-r * r * (r + 2) * s * (n + 1), n * b * c),
            f(r * r, n),
            f(r * r * (r + 2), n * c),
        ],
    ]
}

pub fn rows(m: &[&[i64]], den: &[&[i64]]) -> Vec<Vec<Rational>> {
    m.iter().zip(den).map(|(a, b)| a.iter().zip(*b).map(|(&p, &q)| Rational::new(p, q)).collect()).collect()
}
