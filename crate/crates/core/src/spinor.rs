//! The graded spinor module ⊕_r Sym^r H ⊗ Λ^{n-r}∘E, split Clifford
//! multiplication, the twisted hermitian product and the sp(1) Casimir.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    contract, extended_sigma, j_power, primitive_basis, primitive_dim, sym_contract, sym_contract_circ,
    sym_mul, wedge_circ_unchecked, AlgebraError, Elem, Mono, PowerKind, PrimitiveSubspace, SymPowerSpace,
};
use crate::linalg::{solve_in_span, Comb, Operator, SparseVec};
use crate::report::Check;
use crate::scalar::{factorial, Field, Rational, Scalar};
use crate::symplectic::{Coeffs, SymplecticSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinorError {
    #[error("n must be at least 1")]
    ZeroRank,
    #[error("spinor spaces differ (n = {0} and n = {1})")]
    Mismatch(usize, usize),
    #[error("element has a component outside the spinor grading: {0}")]
    OutsideGrading(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Key (H-monomial, E-monomial) of Sym^p H ⊗ Λ^q E.
pub type SpinKey = (Mono, Mono);
pub type SpinElem<F> = Comb<SpinKey, F>;
/// Element of H ⊗ E keyed by (H index, E index).
pub type Tangent<F> = Comb<(u8, u8), F>;

#[derive(Debug)]
pub struct Grade {
    pub r: usize,
    pub sym: SymPowerSpace,
    pub prim: Arc<PrimitiveSubspace>,
    pub offset: usize,
}

impl Grade {
    pub fn dim(&self) -> usize {
        self.sym.dim() * self.prim.dim()
    }
}

/// S = ⊕_r S_r with flat index (r, H-monomial, primitive coordinate).
#[derive(Debug)]
pub struct SpinorSpace {
    n: usize,
    grades: Vec<Grade>,
    dim: usize,
}

impl SpinorSpace {
    pub fn new(n: usize) -> Result<Self, SpinorError> {
        if n == 0 {
            return Err(SpinorError::ZeroRank);
        }
        let mut grades = Vec::with_capacity(n + 1);
        let mut offset = 0;
        for r in 0..=n {
            let g = Grade { r, sym: SymPowerSpace::new(2, r), prim: primitive_basis(n, n - r)?, offset };
            offset += g.dim();
            grades.push(g);
        }
        Ok(SpinorSpace { n, grades, dim: offset })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self, r: usize) -> &Grade {
        &self.grades[r]
    }

    pub fn grade_range(&self, r: usize) -> Range<usize> {
        let g = &self.grades[r];
        g.offset..g.offset + g.dim()
    }

    /// (r, H-monomial index, primitive coordinate) of a flat index.
    pub fn locate(&self, idx: usize) -> (usize, usize, usize) {
        let g = self.grades.iter().rev().find(|g| g.offset <= idx).expect("index in range");
        let local = idx - g.offset;
        (g.r, local / g.prim.dim(), local % g.prim.dim())
    }

    pub fn basis_element<F: Field>(&self, idx: usize) -> SpinElem<F> {
        let (r, hs, k) = self.locate(idx);
        let g = &self.grades[r];
        let s = g.sym.basis.mono(hs).clone();
        let mut out = SpinElem::new();
        for (t, c) in g.prim.vector(k).iter() {
            out.add_term((s.clone(), t.clone()), F::from_rational(c.clone()));
        }
        out
    }

    pub fn element<F: Field>(&self, v: &SparseVec<F>) -> SpinElem<F> {
        let mut out = SpinElem::new();
        for (&i, c) in v.iter() {
            out.add_scaled(&self.basis_element(i), c);
        }
        out
    }

    /// Flat coordinates; fails if ψ leaves the spinor grading or the primitive spaces.
    pub fn coords<F: Field>(&self, psi: &SpinElem<F>) -> Result<SparseVec<F>, SpinorError> {
        let mut by_h: BTreeMap<&Mono, Elem<F>> = BTreeMap::new();
        for ((s, t), c) in psi.iter() {
            if s.len() > self.n || t.len() + s.len() != self.n {
                return Err(SpinorError::OutsideGrading(format!("{s:?} ⊗ {t:?}")));
            }
            by_h.entry(s).or_default().add_term(t.clone(), c.clone());
        }
        let mut out = SparseVec::new();
        for (s, e) in by_h {
            let g = &self.grades[s.len()];
            let hs = g.sym.basis.index_of(s).expect("sorted monomial");
            let local = g.prim.coords_checked(&e).map_err(|_| SpinorError::OutsideGrading(format!("{s:?}")))?;
            for (k, c) in local.iter() {
                out.add_term(g.offset + hs * g.prim.dim() + k, c.clone());
            }
        }
        Ok(out)
    }

    /// Matrix of a map S → S given on ambient elements.
    pub fn operator<F: Field>(&self, f: impl Fn(&SpinElem<F>) -> SpinElem<F>) -> Operator<F> {
        Operator::from_fn(self.dim, self.dim, |j| {
            self.coords(&f(&self.basis_element(j))).expect("map preserves the spinor module")
        })
    }

    /// h ⊗ id_P on S_r for an operator h on Sym^r H, zero on the other grades.
    pub fn grade_operator(&self, r: usize, h: &Operator<Rational>) -> Operator<Rational> {
        let g = &self.grades[r];
        let p = g.prim.dim();
        Operator::from_fn(self.dim, self.dim, |j| {
            if !self.grade_range(r).contains(&j) {
                return SparseVec::new();
            }
            let local = j - g.offset;
            let (hs, k) = (local / p, local % p);
            h.column(hs).map_keys(|&row| g.offset + row * p + k)
        })
    }
}

pub fn rank_s(n: usize, r: usize) -> i64 {
    (r as i64 + 1) * primitive_dim(n, n - r)
}

// ---- Clifford multiplication --------------------------------------------------

/// Apply fh ⊗ fe termwise.
pub fn tensor_map<F: Field>(
    psi: &SpinElem<F>,
    fh: impl Fn(&Elem<F>) -> Elem<F>,
    fe: impl Fn(&Elem<F>) -> Elem<F>,
) -> SpinElem<F> {
    let mut out = SpinElem::new();
    for ((s, t), c) in psi.iter() {
        let a = fh(&Elem::basis(s.clone()));
        if a.is_zero() {
            continue;
        }
        let b = fe(&Elem::basis(t.clone()));
        for (s2, x) in a.iter() {
            for (t2, y) in b.iter() {
                out.add_term((s2.clone(), t2.clone()), c.clone() * x * y);
            }
        }
    }
    out
}

fn sharp_h<F: Field>(h: &Coeffs<F>) -> Coeffs<F> {
    SymplecticSpace::h().sharp_coeffs(h)
}

/// The four split pieces of Clifford multiplication by h⊗e, without the factor √2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuPart {
    /// h· ⊗ e♯⌟
    PlusMinus,
    /// h♯⌟∘ ⊗ e∧∘
    MinusPlus,
    /// h· ⊗ e∧∘
    PlusPlus,
    /// h♯⌟∘ ⊗ e♯⌟
    MinusMinus,
}

pub fn mu_part_raw<F: Field>(n: usize, part: MuPart, h: &Coeffs<F>, e: &Coeffs<F>, psi: &SpinElem<F>) -> SpinElem<F> {
    let esp = SymplecticSpace::new(n);
    let hs = sharp_h(h);
    let es = esp.sharp_coeffs(e);
    let raise_h = |x: &Elem<F>| sym_mul(h, x);
    let lower_h = |x: &Elem<F>| sym_contract_circ(&hs, x);
    let raise_e = |x: &Elem<F>| wedge_circ_unchecked(n, e, x);
    let lower_e = |x: &Elem<F>| contract(&es, x);
    match part {
        MuPart::PlusMinus => tensor_map(psi, raise_h, lower_e),
        MuPart::MinusPlus => tensor_map(psi, lower_h, raise_e),
        MuPart::PlusPlus => tensor_map(psi, raise_h, raise_e),
        MuPart::MinusMinus => tensor_map(psi, lower_h, lower_e),
    }
}

fn over_tangent<F: Field>(x: &Tangent<F>, mut f: impl FnMut(&Coeffs<F>, &Coeffs<F>) -> SpinElem<F>) -> SpinElem<F> {
    let mut out = SpinElem::new();
    for (&(a, i), c) in x.iter() {
        out.add_scaled(&f(&Comb::basis(a), &Comb::basis(i)), c);
    }
    out
}

/// μ0 = μ/√2 = h·⊗e♯⌟ + h♯⌟∘⊗e∧∘, extended linearly in X.
pub fn mu0<F: Field>(n: usize, x: &Tangent<F>, psi: &SpinElem<F>) -> SpinElem<F> {
    over_tangent(x, |h, e| {
        let mut out = mu_part_raw(n, MuPart::PlusMinus, h, e, psi);
        out.add_comb(&mu_part_raw(n, MuPart::MinusPlus, h, e, psi));
        out
    })
}

pub fn mu_part(n: usize, part: MuPart, x: &Tangent<Scalar>, psi: &SpinElem<Scalar>) -> SpinElem<Scalar> {
    over_tangent(x, |h, e| mu_part_raw(n, part, h, e, psi)).scale(&Scalar::sqrt2())
}

pub fn mu_plus_minus(n: usize, x: &Tangent<Scalar>, psi: &SpinElem<Scalar>) -> SpinElem<Scalar> {
    mu_part(n, MuPart::PlusMinus, x, psi)
}

pub fn mu_minus_plus(n: usize, x: &Tangent<Scalar>, psi: &SpinElem<Scalar>) -> SpinElem<Scalar> {
    mu_part(n, MuPart::MinusPlus, x, psi)
}

pub fn mu_plus_plus(n: usize, x: &Tangent<Scalar>, psi: &SpinElem<Scalar>) -> SpinElem<Scalar> {
    mu_part(n, MuPart::PlusPlus, x, psi)
}

pub fn mu_minus_minus(n: usize, x: &Tangent<Scalar>, psi: &SpinElem<Scalar>) -> SpinElem<Scalar> {
    mu_part(n, MuPart::MinusMinus, x, psi)
}

/// Clifford multiplication μ(X)ψ = √2(h·⊗e♯⌟ + h♯⌟∘⊗e∧∘)ψ.
pub fn clifford_mu(n: usize, x: &Tangent<Scalar>, psi: &SpinElem<Scalar>) -> SpinElem<Scalar> {
    mu0(n, x, psi).scale(&Scalar::sqrt2())
}

/// Matrix of μ0(h_a ⊗ e_i) on the flat basis.
pub fn mu0_operator(space: &SpinorSpace, a: usize, i: usize) -> Operator<Rational> {
    let x = Tangent::basis((a as u8, i as u8));
    space.operator(|psi| mu0(space.n(), &x, psi))
}

/// Matrix of μ(h_a ⊗ e_i) over Q(i, √2).
pub fn clifford_operator(space: &SpinorSpace, a: usize, i: usize) -> Operator<Scalar> {
    mu0_operator(space, a, i).convert(|q| Scalar::real(q.clone()) * &Scalar::sqrt2())
}

/// g = σ_H ⊗ σ_E on basis tangent vectors.
pub fn metric_basis(n: usize, a: usize, i: usize, b: usize, j: usize) -> i64 {
    SymplecticSpace::h().sigma_basis(a, b) * SymplecticSpace::new(n).sigma_basis(i, j)
}

pub fn metric<F: Field>(n: usize, x: &Tangent<F>, y: &Tangent<F>) -> F {
    let mut acc = F::zero();
    for (&(a, i), c) in x.iter() {
        for (&(b, j), d) in y.iter() {
            let g = metric_basis(n, a as usize, i as usize, b as usize, j as usize);
            if g != 0 {
                acc += c.clone() * d * &F::from_int(g);
            }
        }
    }
    acc
}

/// X̄ = (J ⊗ J)X.
pub fn tangent_conjugate<F: Field>(n: usize, x: &Tangent<F>) -> Tangent<F> {
    let h = SymplecticSpace::h();
    let e = SymplecticSpace::new(n);
    let mut out = Tangent::new();
    for (&(a, i), c) in x.iter() {
        let (ja, sa) = h.j_basis(a as usize);
        let (ji, si) = e.j_basis(i as usize);
        out.add_term((ja as u8, ji as u8), c.conjugate() * &F::from_int(sa * si));
    }
    out
}

// ---- hermitian product --------------------------------------------------------

/// ⟨A1⊗ω1, A2⊗ω2⟩ = (1/p!) σ_H(A1, JA2) σ_E(ω1, Jω2), antilinear in the second slot.
pub fn hermitian_spinor<F: Field>(n: usize, x: &SpinElem<F>, y: &SpinElem<F>) -> F {
    let h = SymplecticSpace::h();
    let e = SymplecticSpace::new(n);
    let mut acc = F::zero();
    for ((s1, t1), c1) in x.iter() {
        for ((s2, t2), c2) in y.iter() {
            if s1.len() != s2.len() || t1.len() != t2.len() {
                continue;
            }
            let js = j_power(h, PowerKind::Symmetric, &Elem::<Rational>::basis(s2.clone()));
            let jt = j_power(e, PowerKind::Exterior, &Elem::<Rational>::basis(t2.clone()));
            let a = extended_sigma(h, PowerKind::Symmetric, &Elem::basis(s1.clone()), &js).expect("equal degrees");
            if a.is_zero() {
                continue;
            }
            let b = extended_sigma(e, PowerKind::Exterior, &Elem::basis(t1.clone()), &jt).expect("equal degrees");
            if b.is_zero() {
                continue;
            }
            let w = a * &b * &factorial(s1.len()).recip().expect("nonzero");
            acc += c1.clone() * &c2.conjugate() * &F::from_rational(w);
        }
    }
    acc
}

/// Elements of Sym^p H ⊗ Λ^q∘E spanned by monomial ⊗ kernel basis.
pub fn bigrade_basis<F: Field>(n: usize, p: usize, q: usize) -> Result<Vec<SpinElem<F>>, SpinorError> {
    let prim = primitive_basis(n, q)?;
    let sym = SymPowerSpace::new(2, p);
    let mut out = Vec::new();
    for s in sym.basis.monomials() {
        for v in prim.basis() {
            let mut el = SpinElem::new();
            for (t, c) in v.iter() {
                el.add_term((s.clone(), t.clone()), F::from_rational(c.clone()));
            }
            out.push(el);
        }
    }
    Ok(out)
}

// ---- sp(1) action and Casimir -------------------------------------------------

/// Derivation action of h_a h_b ∈ Sym²H on Sym^r H, where (h1h2)(h) = σ(h1,h)h2 + σ(h2,h)h1.
pub fn sym2_derivation(a: usize, b: usize, r: usize) -> Operator<Rational> {
    let src = SymPowerSpace::new(2, r);
    let h = SymplecticSpace::h();
    let one = |x: usize, y: usize, el: &Elem<Rational>| -> Elem<Rational> {
        // σ(h_x, ·) as a covector is h_x♯; the result is h_y · (h_x♯ ⌟ el)
        let (cov, s) = h.sharp_basis(x);
        let c = sym_contract(&Comb::term(cov as u8, Rational::from(s)), el);
        sym_mul(&Comb::basis(y as u8), &c)
    };
    src.basis.operator(&src.basis, |m| {
        let el = Elem::basis(m.clone());
        one(a, b, &el) + one(b, a, &el)
    })
}

/// C = -2 Σ D(X_a) D(X^a), dual basis with respect to the trace form on H.
pub fn casimir_sp1(r: usize) -> Operator<Rational> {
    let basis = [(0, 0), (0, 1), (1, 1)];
    let d1: Vec<_> = basis.iter().map(|&(a, b)| sym2_derivation(a, b, 1)).collect();
    let trace = |op: &Operator<Rational>| (0..op.nrows()).fold(Rational::zero(), |acc, i| acc + op.entry(i, i));
    let gram: Vec<SparseVec<Rational>> = (0..3)
        .map(|a| (0..3).map(|b| (b, trace(&d1[a].compose(&d1[b]).expect("2x2")))).collect())
        .collect();
    let dr: Vec<_> = basis.iter().map(|&(a, b)| sym2_derivation(a, b, r)).collect();
    let dim = r + 1;
    let mut c = Operator::zero(dim, dim);
    for a in 0..3 {
        let dual = solve_in_span(&gram, &SparseVec::basis(a)).expect("trace form is nondegenerate");
        let mut xa_dual = Operator::zero(dim, dim);
        for (b, coef) in dual.iter().enumerate() {
            xa_dual = xa_dual.lin_comb(&dr[b], coef).expect("shapes");
        }
        c = c.add(&dr[a].compose(&xa_dual).expect("shapes")).expect("shapes");
    }
    c.scale(&Rational::from(-2))
}

pub fn kraines_eigenvalue(n: usize, r: usize) -> Rational {
    Rational::from(6 * n as i64 - 4 * (r * (r + 2)) as i64)
}

/// 6n·id + 4·C⊗id restricted to S_r.
pub fn kraines_operator(space: &SpinorSpace, r: usize) -> Operator<Rational> {
    let full = space.grade_operator(r, &casimir_sp1(r)).scale(&Rational::from(4));
    let range = space.grade_range(r);
    let base = range.start;
    let d = range.len();
    Operator::from_fn(d, d, |j| {
        let mut col: SparseVec<Rational> = full.column(base + j).map_keys(|&i| i - base);
        col.add_term(j, Rational::from(6 * space.n() as i64));
        col
    })
}

/// μ(A ⊗ σ_E) for A = h_a h_b through μ(X∧Y) = μ(X)μ(Y) + g(X,Y), on the flat basis.
pub fn two_form_operator(space: &SpinorSpace, a: usize, b: usize) -> Operator<Rational> {
    let n = space.n();
    let dim = space.dim();
    let mut total = Operator::zero(dim, dim);
    let pairs = if a == b { vec![(a, b)] } else { vec![(a, b), (b, a)] };
    let mult = if a == b { Rational::from(2) } else { Rational::one() };
    for k in 0..n {
        for &(x, y) in &pairs {
            let mx = mu0_operator(space, x, k);
            let my = mu0_operator(space, y, n + k);
            let prod = mx.compose(&my).expect("square").scale(&Rational::from(2));
            let g = Rational::from(metric_basis(n, x, k, y, n + k));
            let term = prod.add(&Operator::scalar(dim, g)).expect("square");
            total = total.lin_comb(&term, &mult).expect("square");
        }
    }
    total
}

/// Derivation action of h_a h_b on every grade, tensored with id on the E factor.
pub fn derivation_operator(space: &SpinorSpace, a: usize, b: usize) -> Operator<Rational> {
    let dim = space.dim();
    let mut total = Operator::zero(dim, dim);
    for r in 0..=space.n() {
        total = total.add(&space.grade_operator(r, &sym2_derivation(a, b, r))).expect("square");
    }
    total
}

// ---- reports ------------------------------------------------------------------

fn basis_tangents(n: usize) -> Vec<(usize, usize)> {
    (0..2).flat_map(|a| (0..2 * n).map(move |i| (a, i))).collect()
}

/// μ(X)μ(Y) + μ(Y)μ(X) = -2 g(X,Y) id for all basis X, Y, over Q(i, √2).
pub fn clifford_relation_check(n: usize) -> Vec<Check> {
    use rayon::prelude::*;
    let space = SpinorSpace::new(n).expect("n >= 1");
    let tangents = basis_tangents(n);
    let ops: Vec<Operator<Scalar>> = tangents.par_iter().map(|&(a, i)| clifford_operator(&space, a, i)).collect();
    let dim = space.dim();
    let pairs: Vec<(usize, usize)> =
        (0..tangents.len()).flat_map(|x| (x..tangents.len()).map(move |y| (x, y))).collect();
    let failure = pairs.par_iter().find_map_first(|&(x, y)| {
        let anti = ops[x].compose(&ops[y]).and_then(|p| p.add(&ops[y].compose(&ops[x])?)).expect("square");
        let (a, i) = tangents[x];
        let (b, j) = tangents[y];
        let g = Scalar::int(-2 * metric_basis(n, a, i, b, j));
        if anti == Operator::scalar(dim, g) {
            None
        } else {
            Some(format!("X=h{a}⊗e{i}, Y=h{b}⊗e{j}"))
        }
    });
    let mut grading = None;
    for (x, op) in ops.iter().enumerate() {
        for j in 0..dim {
            let (r, _, _) = space.locate(j);
            for (&i, _) in op.column(j).iter() {
                let (r2, _, _) = space.locate(i);
                if r2 + 1 != r && r + 1 != r2 && grading.is_none() {
                    grading = Some(format!("tangent {x}, basis spinor {j}"));
                }
            }
        }
    }
    vec![
        Check::from_witness(format!("Clifford relation n={n} dim={dim}"), failure),
        Check::from_witness(format!("Clifford grading S_r -> S_r±1 n={n}"), grading),
    ]
}

pub fn dimension_check(n: usize) -> Vec<Check> {
    let space = SpinorSpace::new(n).expect("n >= 1");
    let mut out = Vec::new();
    for r in 0..=n {
        let built = space.grade(r).dim() as i64;
        out.push(Check::from_bool(format!("rank S_{r} n={n}"), built == rank_s(n, r), || {
            format!("constructed {built}, formula {}", rank_s(n, r))
        }));
    }
    let total: i64 = (0..=n).map(|r| rank_s(n, r)).sum();
    out.push(Check::from_bool(format!("Σ rank S_r = 4^n n={n}"), total == 1 << (2 * n) && space.dim() as i64 == total, || {
        format!("{total} / {}", space.dim())
    }));
    out
}

/// Casimir scaling, Kraines eigenvalues and μ(A⊗σ_E) = 2A⊗id for r ≥ 1.
pub fn kraines_check(n: usize) -> Vec<Check> {
    let space = SpinorSpace::new(n).expect("n >= 1");
    let mut out = Vec::new();
    for r in 0..=n {
        let c = casimir_sp1(r);
        let expected = Rational::from(-((r * (r + 2)) as i64));
        out.push(Check::from_bool(format!("Casimir on Sym^{r}H = -r(r+2)"), c == Operator::scalar(r + 1, expected.clone()), || {
            format!("{c:?}")
        }));
        let k = kraines_operator(&space, r);
        let ev = kraines_eigenvalue(n, r);
        out.push(Check::from_bool(format!("Kraines eigenvalue on S_{r} n={n} = {ev}"), k.scalar_value() == Some(ev.clone()), || {
            format!("{:?}", k.scalar_value())
        }));
    }
    for (a, b) in [(0, 0), (0, 1), (1, 1)] {
        let lhs = two_form_operator(&space, a, b);
        let rhs = derivation_operator(&space, a, b).scale(&Rational::from(2));
        for r in 1..=n {
            let range = space.grade_range(r);
            let bad = range.clone().find(|&j| lhs.column(j) != rhs.column(j));
            out.push(Check::from_witness(
                format!("μ(h{a}h{b}⊗σ_E) = 2 h{a}h{b}⊗id on S_{r} n={n}"),
                bad.map(|j| format!("basis spinor {j}")),
            ));
        }
    }
    out
}

/// Value of μ(A⊗σ_E) on S_0, which the r ≥ 1 statement does not cover.
pub fn two_form_on_grade_zero(n: usize) -> Vec<(String, bool)> {
    let space = SpinorSpace::new(n).expect("n >= 1");
    [(0, 0), (0, 1), (1, 1)]
        .iter()
        .map(|&(a, b)| {
            let lhs = two_form_operator(&space, a, b);
            let zero = space.grade_range(0).all(|j| lhs.column(j).is_zero());
            (format!("h{a}h{b}"), zero)
        })
        .collect()
}

/// Both adjointness relations of the split Clifford pieces on basis elements.
pub fn adjointness_check(n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let tangents: Vec<Tangent<Scalar>> =
        basis_tangents(n).into_iter().map(|(a, i)| Tangent::basis((a as u8, i as u8))).collect();
    let mut first = None;
    'pm: for p in 0..n {
        let q = n - p;
        let b1 = bigrade_basis::<Scalar>(n, p, q).expect("q <= n");
        let b2 = bigrade_basis::<Scalar>(n, p + 1, q - 1).expect("q <= n");
        for x in &tangents {
            let xb = tangent_conjugate(n, x);
            for (k1, psi1) in b1.iter().enumerate() {
                let l = mu_plus_minus(n, x, psi1);
                for (k2, psi2) in b2.iter().enumerate() {
                    let lhs = hermitian_spinor(n, &l, psi2);
                    let rhs = hermitian_spinor(n, psi1, &mu_minus_plus(n, &xb, psi2));
                    if lhs != -rhs.clone() {
                        first = Some(format!("{x:?} grade {p} pair ({k1},{k2}): {lhs} vs {rhs}"));
                        break 'pm;
                    }
                }
            }
        }
    }
    out.push(Check::from_witness(format!("<μ+-ψ1,ψ2> = -<ψ1,μ-+(X̄)ψ2> n={n}"), first));
    let mut first = None;
    'pp: for p in 0..=n {
        for q in 0..n {
            let b1 = bigrade_basis::<Scalar>(n, p, q).expect("q <= n");
            let b2 = bigrade_basis::<Scalar>(n, p + 1, q + 1).expect("q < n");
            for x in &tangents {
                let xb = tangent_conjugate(n, x);
                for (k1, psi1) in b1.iter().enumerate() {
                    let l = mu_plus_plus(n, x, psi1);
                    for (k2, psi2) in b2.iter().enumerate() {
                        let lhs = hermitian_spinor(n, &l, psi2);
                        let rhs = hermitian_spinor(n, psi1, &mu_minus_minus(n, &xb, psi2));
                        if lhs != rhs {
                            first = Some(format!("{x:?} bigrade ({p},{q}) pair ({k1},{k2}): {lhs} vs {rhs}"));
                            break 'pp;
                        }
                    }
                }
            }
        }
    }
    out.push(Check::from_witness(format!("<μ++ψ1,ψ2> = <ψ1,μ--(X̄)ψ2> n={n}"), first));
    out
}

/// ⟨b, b⟩ > 0 on every flat basis spinor.
pub fn positivity_check(n: usize) -> Check {
    let space = SpinorSpace::new(n).expect("n >= 1");
    let bad = (0..space.dim()).find(|&j| {
        let b = space.basis_element::<Scalar>(j);
        !hermitian_spinor(n, &b, &b).is_positive_real()
    });
    Check::from_witness(format!("hermitian product positive on basis n={n}"), bad.map(|j| format!("basis spinor {j}")))
}
