//! Curvature tensors in Sym²Λ²V*: multiplication, comultiplication, the
//! generators (αβ)×(γδ) and the natural splittings of Sym²Λ² and Sym²Sym².

use itertools::Itertools;

use crate::algebra::sort_sign;
use crate::linalg::{rank_of, same_row_space, Comb, Echelon, SparseVec};
use crate::report::Check;
use crate::scalar::{binomial, Rational};
use crate::symplectic::Coeffs;

/// Flattened multi-index. The meaning of each position is fixed by the space.
pub type Key = Vec<u8>;
pub type Tensor = Comb<Key, Rational>;

fn third() -> Rational {
    Rational::new(1, 3)
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// x ∧ y for two sub-keys, ordered lexicographically.
pub fn ext2(x: &[u8], y: &[u8]) -> Tensor {
    match x.cmp(y) {
        std::cmp::Ordering::Equal => Tensor::new(),
        std::cmp::Ordering::Less => Tensor::term([x, y].concat(), Rational::one()),
        std::cmp::Ordering::Greater => Tensor::term([y, x].concat(), -Rational::one()),
    }
}

/// x · y for two sub-keys.
pub fn sym2(x: &[u8], y: &[u8]) -> Tensor {
    if x <= y {
        Tensor::basis([x, y].concat())
    } else {
        Tensor::basis([y, x].concat())
    }
}

pub fn wedge_n(idx: &[u8]) -> Tensor {
    match sort_sign(idx) {
        Some((k, s)) => Tensor::term(k, Rational::from(s)),
        None => Tensor::new(),
    }
}

pub fn sym_n(idx: &[u8]) -> Tensor {
    let mut k = idx.to_vec();
    k.sort_unstable();
    Tensor::basis(k)
}

/// Bilinear extension of a product of keys.
pub fn product(f: impl Fn(&[u8], &[u8]) -> Tensor, a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for (k1, c1) in a.iter() {
        for (k2, c2) in b.iter() {
            out.add_scaled(&f(k1, k2), &(c1.clone() * c2));
        }
    }
    out
}

/// a ⊗ b with concatenated keys.
pub fn tensor(a: &Tensor, b: &Tensor) -> Tensor {
    product(|x, y| Tensor::basis([x, y].concat()), a, b)
}

fn e2(a: u8, b: u8) -> Tensor {
    ext2(&[a], &[b])
}

fn s2(a: u8, b: u8) -> Tensor {
    sym2(&[a], &[b])
}

// ---- bases -----------------------------------------------------------------

pub fn lambda2_basis(dim: usize) -> Vec<Key> {
    (0..dim as u8).combinations(2).collect()
}

pub fn sym2_basis(dim: usize) -> Vec<Key> {
    (0..dim as u8).combinations_with_replacement(2).collect()
}

fn sym2_of(pairs: &[Key]) -> Vec<Key> {
    (0..pairs.len()).combinations_with_replacement(2).map(|v| [pairs[v[0]].clone(), pairs[v[1]].clone()].concat()).collect()
}

/// (a∧b)(c∧d) keys.
pub fn sym2lambda2_basis(dim: usize) -> Vec<Key> {
    sym2_of(&lambda2_basis(dim))
}

/// (ab)(cd) keys.
pub fn sym2sym2_basis(dim: usize) -> Vec<Key> {
    sym2_of(&sym2_basis(dim))
}

pub fn lambda4_basis(dim: usize) -> Vec<Key> {
    (0..dim as u8).combinations(4).collect()
}

pub fn sym4_basis(dim: usize) -> Vec<Key> {
    (0..dim as u8).combinations_with_replacement(4).collect()
}

pub fn sym2lambda2_dim(dim: usize) -> i64 {
    let l2 = binomial(dim as i64, 2);
    binomial(l2 + 1, 2)
}

pub fn curv_dim(dim: usize) -> i64 {
    let n2 = (dim * dim) as i64;
    n2 * (n2 - 1) / 12
}

// ---- multiplication and comultiplication -----------------------------------------

/// m: Sym²Λ² → Λ⁴.
pub fn mult_m(x: &Tensor) -> Tensor {
    x.map_linear(|k| wedge_n(k))
}

/// Δ(x∧y∧z∧w) = (x∧y)(z∧w) + (y∧z)(x∧w) + (z∧x)(y∧w).
pub fn comult_delta(y: &Tensor) -> Tensor {
    y.map_linear(|k| {
        let (x, y, z, w) = (k[0], k[1], k[2], k[3]);
        let mut out = product(sym2, &e2(x, y), &e2(z, w));
        out.add_comb(&product(sym2, &e2(y, z), &e2(x, w)));
        out.add_comb(&product(sym2, &e2(z, x), &e2(y, w)));
        out
    })
}

/// (αβ)×(γδ) = (α∧γ)(β∧δ) + (α∧δ)(β∧γ) on basis covectors.
pub fn cross_basis(a: u8, b: u8, c: u8, d: u8) -> Tensor {
    let mut out = product(sym2, &e2(a, c), &e2(b, d));
    out.add_comb(&product(sym2, &e2(a, d), &e2(b, c)));
    out
}

/// (αβ)×(γδ) for arbitrary covectors.
pub fn curv_generator(alpha: &Coeffs<Rational>, beta: &Coeffs<Rational>, gamma: &Coeffs<Rational>, delta: &Coeffs<Rational>) -> Tensor {
    let mut out = Tensor::new();
    for (&a, ca) in alpha.iter() {
        for (&b, cb) in beta.iter() {
            for (&c, cc) in gamma.iter() {
                for (&d, cd) in delta.iter() {
                    let coef = ca.clone() * cb * cc * cd;
                    out.add_scaled(&cross_basis(a, b, c, d), &coef);
                }
            }
        }
    }
    out
}

fn to_rows(vectors: &[Tensor], basis: &[Key]) -> Vec<SparseVec<Rational>> {
    let index: std::collections::HashMap<&Key, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    vectors.iter().map(|v| v.map_keys(|k| index[k])).collect()
}

/// Basis of ker m = Curv V*.
pub fn ker_m(dim: usize) -> Vec<Tensor> {
    let basis = sym2lambda2_basis(dim);
    let l4 = lambda4_basis(dim);
    let l4_index: std::collections::HashMap<&Key, usize> = l4.iter().enumerate().map(|(i, k)| (k, i)).collect();
    // rows of m: one per Λ⁴ key
    let mut rows: Vec<SparseVec<Rational>> = vec![SparseVec::new(); l4.len()];
    for (col, k) in basis.iter().enumerate() {
        for (key, c) in wedge_n(k).iter() {
            rows[l4_index[key]].add_term(col, c.clone());
        }
    }
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    let (kernel, _) = ech.nullspace(basis.len());
    kernel.iter().map(|v| v.map_keys(|&i| basis[i].clone())).collect()
}

pub fn generators(dim: usize) -> Vec<Tensor> {
    let d = dim as u8;
    (0..d)
        .flat_map(|a| (0..d).flat_map(move |b| (0..d).flat_map(move |c| (0..d).map(move |e| (a, b, c, e)))))
        .map(|(a, b, c, e)| cross_basis(a, b, c, e))
        .filter(|t| !t.is_zero())
        .collect()
}

// ---- the two splittings ---------------------------------------------------------

/// Sym²Λ² → Curv ⊕ Λ⁴: (α∧β)(γ∧δ) ↦ ⅓[(αγ)×(βδ) − (αδ)×(βγ)] ⊕ ⅓ α∧β∧γ∧δ.
pub fn split_sym2lambda2(x: &Tensor) -> (Tensor, Tensor) {
    let curv = x.map_linear(|k| {
        let (a, b, c, d) = (k[0], k[1], k[2], k[3]);
        (cross_basis(a, c, b, d) - cross_basis(a, d, b, c)).scale(&third())
    });
    (curv, mult_m(x).scale(&third()))
}

/// Inverse of [`split_sym2lambda2`]: (c, ω) ↦ c + Δω.
pub fn join_sym2lambda2(curv: &Tensor, l4: &Tensor) -> Tensor {
    curv.clone() + comult_delta(l4)
}

/// Sym²Sym² → Curv ⊕ Sym⁴: (αβ)(γδ) ↦ ⅓(αβ)×(γδ) ⊕ ⅓ αβγδ.
pub fn split_sym2sym2(x: &Tensor) -> (Tensor, Tensor) {
    let curv = x.map_linear(|k| cross_basis(k[0], k[1], k[2], k[3]).scale(&third()));
    let s4 = x.map_linear(|k| sym_n(k)).scale(&third());
    (curv, s4)
}

/// Δ(αβγδ) = (αβ)(γδ) + (αγ)(δβ) + (αδ)(βγ) into Sym²Sym².
pub fn comult_sym(y: &Tensor) -> Tensor {
    y.map_linear(|k| {
        let (a, b, c, d) = (k[0], k[1], k[2], k[3]);
        let mut out = product(sym2, &s2(a, b), &s2(c, d));
        out.add_comb(&product(sym2, &s2(a, c), &s2(d, b)));
        out.add_comb(&product(sym2, &s2(a, d), &s2(b, c)));
        out
    })
}

/// Cr*: (α∧β)(γ∧δ) ↦ (αγ)(βδ) − (αδ)(βγ).
pub fn cross_adjoint(x: &Tensor) -> Tensor {
    x.map_linear(|k| {
        let (a, b, c, d) = (k[0], k[1], k[2], k[3]);
        product(sym2, &s2(a, c), &s2(b, d)) - product(sym2, &s2(a, d), &s2(b, c))
    })
}

/// Inverse of [`split_sym2sym2`]: (c, ω) ↦ Cr*(c) + Δω.
pub fn join_sym2sym2(curv: &Tensor, s4: &Tensor) -> Tensor {
    cross_adjoint(curv) + comult_sym(s4)
}

/// Sym²⊗Λ² → Λ²Sym² ⊕ Λ²Λ²:
/// αβ⊗γ∧δ ↦ ½[(αγ)∧(βδ) + (βγ)∧(αδ)] ⊕ ½[(α∧γ)∧(β∧δ) + (β∧γ)∧(α∧δ)].
pub fn mixed_split_basis(a: u8, b: u8, c: u8, d: u8) -> (Tensor, Tensor) {
    let s = product(ext2, &s2(a, c), &s2(b, d)) + product(ext2, &s2(b, c), &s2(a, d));
    let l = product(ext2, &e2(a, c), &e2(b, d)) + product(ext2, &e2(b, c), &e2(a, d));
    (s.scale(&half()), l.scale(&half()))
}

/// Linear extension of [`mixed_split_basis`] to Sym²⊗Λ² with keys [a,b,c,d].
pub fn mixed_split(x: &Tensor) -> (Tensor, Tensor) {
    let mut s = Tensor::new();
    let mut l = Tensor::new();
    for (k, c) in x.iter() {
        let (ps, pl) = mixed_split_basis(k[0], k[1], k[2], k[3]);
        s.add_scaled(&ps, c);
        l.add_scaled(&pl, c);
    }
    (s, l)
}

/// σ = Σ_k de_k ∧ de_{m+k} on a space of dimension 2m.
pub fn sigma_form(dim: usize) -> Tensor {
    let m = (dim / 2) as u8;
    (0..m).map(|k| (vec![k, m + k], Rational::one())).collect()
}

/// i_Sym(x) and i_Λ(x): the two components of x ⊗ σ.
pub fn i_maps(dim: usize, x: &Tensor) -> (Tensor, Tensor) {
    mixed_split(&tensor(x, &sigma_form(dim)))
}

pub fn i_sym(dim: usize, x: &Tensor) -> Tensor {
    i_maps(dim, x).0
}

pub fn i_lambda(dim: usize, x: &Tensor) -> Tensor {
    i_maps(dim, x).1
}

/// Ranks of i_Sym and i_Λ on Sym²V*, dim V even.
pub fn injectivity_ranks(dim: usize) -> (usize, usize, usize) {
    let basis = sym2_basis(dim);
    let images: Vec<(Tensor, Tensor)> = basis.iter().map(|k| i_maps(dim, &Tensor::basis(k.clone()))).collect();
    let s: Vec<Tensor> = images.iter().map(|p| p.0.clone()).collect();
    let l: Vec<Tensor> = images.iter().map(|p| p.1.clone()).collect();
    (basis.len(), rank_of(&s), rank_of(&l))
}

// ---- reports ---------------------------------------------------------------

/// Dimension, generator and splitting checks for one base dimension.
pub fn curvature_space_check(dim: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let s2l2 = sym2lambda2_basis(dim);
    let l4 = lambda4_basis(dim);
    out.push(Check::from_bool(format!("dim Sym²Λ² N={dim}"), s2l2.len() as i64 == sym2lambda2_dim(dim), || {
        s2l2.len().to_string()
    }));

    let bad = l4.iter().find(|k| mult_m(&comult_delta(&Tensor::basis(k.to_vec()))) != Tensor::basis(k.to_vec()).scale(&Rational::from(3)));
    out.push(Check::from_witness(format!("m∘Δ = 3 N={dim}"), bad.map(|k| format!("{k:?}"))));

    let kernel = ker_m(dim);
    let gens = generators(dim);
    let in_kernel = gens.iter().all(|g| mult_m(g).is_zero());
    out.push(Check::from_bool(format!("generators satisfy Bianchi N={dim}"), in_kernel, String::new));
    let rank = rank_of(&gens);
    out.push(Check::from_bool(format!("dim Curv = N²(N²-1)/12 N={dim}"), rank as i64 == curv_dim(dim) && kernel.len() == rank, || {
        format!("generator rank {rank}, ker m {}, formula {}", kernel.len(), curv_dim(dim))
    }));
    let all: Vec<Key> = s2l2.clone();
    let same = same_row_space(&to_rows(&gens, &all), &to_rows(&kernel, &all));
    out.push(Check::from_bool(format!("span of generators = ker m N={dim}"), same, String::new));

    let d = dim as u8;
    let mut dual = None;
    'q: for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let sum = cross_basis(a, b, c, e) + cross_basis(a, c, e, b) + cross_basis(a, e, b, c);
                    if !sum.is_zero() {
                        dual = Some(format!("({a},{b},{c},{e})"));
                        break 'q;
                    }
                }
            }
        }
    }
    out.push(Check::from_witness(format!("dual Bianchi identity N={dim}"), dual));

    // Sym²Λ² ≅ Curv ⊕ Λ⁴
    let mut round = None;
    let mut curv_parts = Vec::new();
    for k in &s2l2 {
        let x = Tensor::basis(k.clone());
        let (c, w) = split_sym2lambda2(&x);
        if !mult_m(&c).is_zero() || join_sym2lambda2(&c, &w) != x {
            round.get_or_insert_with(|| format!("{k:?}"));
        }
        curv_parts.push((c, w));
    }
    let tagged: Vec<Tensor> = curv_parts.iter().map(|(c, w)| tag_sum(c, w)).collect();
    let inj = rank_of(&tagged) == s2l2.len();
    let dims_ok = curv_dim(dim) + l4.len() as i64 == s2l2.len() as i64;
    out.push(Check::from_witness(format!("Sym²Λ² → Curv⊕Λ⁴ round trip N={dim}"), round));
    out.push(Check::from_bool(format!("Sym²Λ² ≅ Curv⊕Λ⁴ injective, dimensions add N={dim}"), inj && dims_ok, String::new));
    let mut back = None;
    for (i, g) in kernel.iter().enumerate() {
        let (c, w) = split_sym2lambda2(g);
        if c != *g || !w.is_zero() {
            back.get_or_insert_with(|| format!("kernel vector {i}"));
        }
    }
    for k in &l4 {
        let w = Tensor::basis(k.clone());
        let (c, w2) = split_sym2lambda2(&join_sym2lambda2(&Tensor::new(), &w));
        if !c.is_zero() || w2 != w {
            back.get_or_insert_with(|| format!("{k:?}"));
        }
    }
    out.push(Check::from_witness(format!("Curv⊕Λ⁴ → Sym²Λ² → Curv⊕Λ⁴ identity N={dim}"), back));

    // Sym²Sym² ≅ Curv ⊕ Sym⁴
    let s2s2 = sym2sym2_basis(dim);
    let s4 = sym4_basis(dim);
    let mut round = None;
    let mut parts = Vec::new();
    for k in &s2s2 {
        let x = Tensor::basis(k.clone());
        let (c, w) = split_sym2sym2(&x);
        if !mult_m(&c).is_zero() || join_sym2sym2(&c, &w) != x {
            round.get_or_insert_with(|| format!("{k:?}"));
        }
        parts.push(tag_sum(&c, &w));
    }
    let inj = rank_of(&parts) == s2s2.len();
    let dims_ok = curv_dim(dim) + s4.len() as i64 == s2s2.len() as i64;
    out.push(Check::from_witness(format!("Sym²Sym² → Curv⊕Sym⁴ round trip N={dim}"), round));
    out.push(Check::from_bool(format!("Sym²Sym² ≅ Curv⊕Sym⁴ injective, dimensions add N={dim}"), inj && dims_ok, String::new));
    let mut back = None;
    for (i, g) in kernel.iter().enumerate() {
        let (c, w) = split_sym2sym2(&cross_adjoint(g));
        if c != *g || !w.is_zero() {
            back.get_or_insert_with(|| format!("kernel vector {i}"));
        }
    }
    for k in &s4 {
        let w = Tensor::basis(k.clone());
        let (c, w2) = split_sym2sym2(&comult_sym(&w));
        if !c.is_zero() || w2 != w {
            back.get_or_insert_with(|| format!("{k:?}"));
        }
    }
    out.push(Check::from_witness(format!("Curv⊕Sym⁴ → Sym²Sym² → Curv⊕Sym⁴ identity N={dim}"), back));

    let total = (dim * dim * (dim * dim + 5) / 6) as i64;
    let parts_sum = s4.len() as i64 + curv_dim(dim) + l4.len() as i64;
    out.push(Check::from_bool(format!("N²(N²+5)/6 = dim Sym⁴ + dim Curv + dim Λ⁴ N={dim}"), total == parts_sum, || {
        format!("{total} vs {parts_sum}")
    }));
    out
}

/// Direct sum encoded by a leading tag byte.
fn tag_sum(a: &Tensor, b: &Tensor) -> Tensor {
    let mut out = a.map_keys(|k| [&[0u8][..], k].concat());
    out.add_comb(&b.map_keys(|k| [&[1u8][..], k].concat()));
    out
}

/// i_Sym always injective, i_Λ injective exactly when dim V ≠ 2.
pub fn injectivity_report(dim: usize) -> Vec<Check> {
    let (d, rs, rl) = injectivity_ranks(dim);
    let expect_lambda = dim != 2;
    vec![
        Check::from_bool(format!("i_Sym injective N={dim}"), rs == d, || format!("rank {rs} of {d}")),
        Check::from_bool(
            format!("i_Λ {} N={dim}", if expect_lambda { "injective" } else { "not injective" }),
            (rl == d) == expect_lambda,
            || format!("rank {rl} of {d}"),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comult_has_three_terms() {
        let d = comult_delta(&Tensor::basis(vec![0, 1, 2, 3]));
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn curv_dims() {
        assert_eq!(ker_m(2).len(), 1);
        assert_eq!(ker_m(3).len(), 6);
        assert_eq!(ker_m(4).len(), 20);
        assert_eq!(sym2lambda2_dim(4), 21);
    }

    #[test]
    fn reports_pass() {
        for dim in 2..=4 {
            for c in curvature_space_check(dim) {
                assert!(c.passed, "{} {:?}", c.name, c.witness);
            }
        }
        for dim in [2, 4] {
            for c in injectivity_report(dim) {
                assert!(c.passed, "{} {:?}", c.name, c.witness);
            }
        }
        assert_eq!(injectivity_ranks(4), (10, 10, 10));
        assert!(injectivity_ranks(2).2 < 3);
    }
}
