//! Symmetric and exterior powers on monomial bases, the Lefschetz sl2 triple,
//! primitive subspaces and the modified products ∧∘ and ⌟∘.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;
use thiserror::Error;

use crate::linalg::{lift, Comb, Echelon, Operator, SparseVec};
use crate::report::Check;
use crate::scalar::{binomial, Field, Rational};
use crate::symplectic::{Coeffs, SymplecticSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("primitive degree {q} exceeds n = {n}")]
    DegreeTooLarge { n: usize, q: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("input is not primitive")]
    NotPrimitive,
    #[error("element is not homogeneous")]
    NotHomogeneous,
}

/// Sorted index tuple: strictly increasing for exterior, non-decreasing for symmetric monomials.
pub type Mono = Vec<u8>;
pub type Elem<F> = Comb<Mono, F>;

/// A monomial basis together with its reverse index.
#[derive(Debug, Clone)]
pub struct MonoBasis {
    basis: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl MonoBasis {
    fn from_list(basis: Vec<Mono>) -> Self {
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        MonoBasis { basis, index }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomials(&self) -> &[Mono] {
        &self.basis
    }

    pub fn mono(&self, i: usize) -> &Mono {
        &self.basis[i]
    }

    pub fn index_of(&self, m: &[u8]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn to_sparse<F: Field>(&self, e: &Elem<F>) -> SparseVec<F> {
        e.map_keys(|m| self.index[m])
    }

    pub fn from_sparse<F: Field>(&self, v: &SparseVec<F>) -> Elem<F> {
        v.map_keys(|&i| self.basis[i].clone())
    }

    /// Matrix of a linear map between monomial spaces.
    pub fn operator<F: Field>(&self, target: &MonoBasis, f: impl Fn(&Mono) -> Elem<F>) -> Operator<F> {
        Operator::from_fn(target.dim(), self.dim(), |j| target.to_sparse(&f(&self.basis[j])))
    }
}

/// Λ^q of a space of dimension `base_dim`.
#[derive(Debug, Clone)]
pub struct ExtPowerSpace {
    pub base_dim: usize,
    pub degree: usize,
    pub basis: MonoBasis,
}

impl ExtPowerSpace {
    pub fn new(base_dim: usize, degree: usize) -> Self {
        let list = (0..base_dim as u8).combinations(degree).collect();
        ExtPowerSpace { base_dim, degree, basis: MonoBasis::from_list(list) }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

/// Sym^r of a space of dimension `base_dim`.
#[derive(Debug, Clone)]
pub struct SymPowerSpace {
    pub base_dim: usize,
    pub degree: usize,
    pub basis: MonoBasis,
}

impl SymPowerSpace {
    pub fn new(base_dim: usize, degree: usize) -> Self {
        let list = (0..base_dim as u8).combinations_with_replacement(degree).collect();
        SymPowerSpace { base_dim, degree, basis: MonoBasis::from_list(list) }
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

pub fn homogeneous_degree<F: Field>(e: &Elem<F>) -> Option<usize> {
    e.first_key().map(|k| k.len())
}

// ---- basis-level products -------------------------------------------------

/// e_i ∧ (monomial) as (monomial, sign).
pub fn ext_wedge_basis(i: u8, t: &[u8]) -> Option<(Mono, i64)> {
    match t.binary_search(&i) {
        Ok(_) => None,
        Err(pos) => {
            let mut out = t.to_vec();
            out.insert(pos, i);
            Some((out, if pos % 2 == 0 { 1 } else { -1 }))
        }
    }
}

/// de_j ⌟ (monomial) as (monomial, sign).
pub fn ext_contract_basis(j: u8, t: &[u8]) -> Option<(Mono, i64)> {
    let pos = t.binary_search(&j).ok()?;
    let mut out = t.to_vec();
    out.remove(pos);
    Some((out, if pos % 2 == 0 { 1 } else { -1 }))
}

pub fn sym_mul_basis(i: u8, t: &[u8]) -> Mono {
    let pos = t.partition_point(|&x| x <= i);
    let mut out = t.to_vec();
    out.insert(pos, i);
    out
}

/// dh_j ⌟ (monomial) as (monomial, multiplicity); a derivation.
pub fn sym_contract_basis(j: u8, t: &[u8]) -> Option<(Mono, i64)> {
    let mult = t.iter().filter(|&&x| x == j).count();
    if mult == 0 {
        return None;
    }
    let pos = t.iter().position(|&x| x == j)?;
    let mut out = t.to_vec();
    out.remove(pos);
    Some((out, mult as i64))
}

/// Sign of the permutation sorting `v` (distinct entries), or None with repeats.
pub fn sort_sign(v: &[u8]) -> Option<(Mono, i64)> {
    let mut w = v.to_vec();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            match w[j].cmp(&w[j + 1]) {
                std::cmp::Ordering::Greater => {
                    w.swap(j, j + 1);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return None,
                _ => {}
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((w, sign))
}

// ---- element-level products -----------------------------------------------

pub fn wedge<F: Field>(e: &Coeffs<F>, w: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for (&i, c) in e.iter() {
        for (t, d) in w.iter() {
            if let Some((m, s)) = ext_wedge_basis(i, t) {
                out.add_term(m, c.clone() * d * &F::from_int(s));
            }
        }
    }
    out
}

pub fn contract<F: Field>(eta: &Coeffs<F>, w: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for (&j, c) in eta.iter() {
        for (t, d) in w.iter() {
            if let Some((m, s)) = ext_contract_basis(j, t) {
                out.add_term(m, c.clone() * d * &F::from_int(s));
            }
        }
    }
    out
}

pub fn sym_mul<F: Field>(h: &Coeffs<F>, s: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for (&i, c) in h.iter() {
        for (t, d) in s.iter() {
            out.add_term(sym_mul_basis(i, t), c.clone() * d);
        }
    }
    out
}

/// Unnormalised contraction α⌟ on Sym, acting as a derivation.
pub fn sym_contract<F: Field>(alpha: &Coeffs<F>, s: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for (&j, c) in alpha.iter() {
        for (t, d) in s.iter() {
            if let Some((m, k)) = sym_contract_basis(j, t) {
                out.add_term(m, c.clone() * d * &F::from_int(k));
            }
        }
    }
    out
}

/// α⌟∘ = (1/r) α⌟ on Sym^r; zero on Sym^0.
pub fn sym_contract_circ<F: Field>(alpha: &Coeffs<F>, s: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for (&j, c) in alpha.iter() {
        for (t, d) in s.iter() {
            if let Some((m, k)) = sym_contract_basis(j, t) {
                out.add_term(m, c.clone() * d * &F::ratio(k, t.len() as i64));
            }
        }
    }
    out
}

fn basis_coeffs<F: Field>(i: usize) -> Coeffs<F> {
    Comb::basis(i as u8)
}

// ---- extended σ and hermitian forms -----------------------------------------

/// σ extended to monomials: Gram determinant on Λ, unnormalised Gram permanent on Sym.
fn ext_sigma_mono(space: SymplecticSpace, x: &[u8], y: &[u8]) -> i64 {
    let mut partners = Vec::with_capacity(x.len());
    let mut sign = 1;
    for &a in x {
        let (p, s) = space.partner(a as usize);
        partners.push(p as u8);
        sign *= s;
    }
    match sort_sign(&partners) {
        Some((sorted, perm)) if sorted == y => sign * perm,
        _ => 0,
    }
}

fn sym_sigma_mono(space: SymplecticSpace, x: &[u8], y: &[u8]) -> i64 {
    let mut partners = Vec::with_capacity(x.len());
    let mut sign = 1;
    for &a in x {
        let (p, s) = space.partner(a as usize);
        partners.push(p as u8);
        sign *= s;
    }
    partners.sort_unstable();
    if partners != y {
        return 0;
    }
    let mut weight = 1;
    for (_, grp) in &partners.iter().chunk_by(|&&v| v) {
        let k = grp.count() as i64;
        weight *= (1..=k).product::<i64>();
    }
    sign * weight
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    Exterior,
    Symmetric,
}

/// Bilinear extension of σ to Λ^s (determinant) or Sym^r (permanent).
pub fn extended_sigma<F: Field>(
    space: SymplecticSpace,
    kind: PowerKind,
    x: &Elem<F>,
    y: &Elem<F>,
) -> Result<F, AlgebraError> {
    if let (Some(dx), Some(dy)) = (homogeneous_degree(x), homogeneous_degree(y)) {
        if dx != dy {
            return Err(AlgebraError::DegreeMismatch(dx, dy));
        }
    }
    let mut acc = F::zero();
    for (s, a) in x.iter() {
        for (t, b) in y.iter() {
            if s.len() != t.len() {
                return Err(AlgebraError::NotHomogeneous);
            }
            let v = match kind {
                PowerKind::Exterior => ext_sigma_mono(space, s, t),
                PowerKind::Symmetric => sym_sigma_mono(space, s, t),
            };
            if v != 0 {
                acc += a.clone() * b * &F::from_int(v);
            }
        }
    }
    Ok(acc)
}

/// J applied factorwise to a monomial element; antilinear.
pub fn j_power<F: Field>(space: SymplecticSpace, kind: PowerKind, w: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for (t, c) in w.iter() {
        let mut idx = Vec::with_capacity(t.len());
        let mut sign = 1;
        for &a in t {
            let (j, s) = space.j_basis(a as usize);
            idx.push(j as u8);
            sign *= s;
        }
        let (mono, perm) = match kind {
            PowerKind::Exterior => sort_sign(&idx).expect("J permutes basis"),
            PowerKind::Symmetric => {
                idx.sort_unstable();
                (idx, 1)
            }
        };
        out.add_term(mono, c.conjugate() * &F::from_int(sign * perm));
    }
    out
}

/// ⟨x, y⟩ = σ(x, Jy) on a power.
pub fn power_hermitian<F: Field>(
    space: SymplecticSpace,
    kind: PowerKind,
    x: &Elem<F>,
    y: &Elem<F>,
) -> Result<F, AlgebraError> {
    extended_sigma(space, kind, x, &j_power(space, kind, y))
}

// ---- Lefschetz triple ------------------------------------------------------

/// L_E = ½ Σ de_i♭ ∧ e_i, computed from its definition.
pub fn canonical_bivector(n: usize) -> Elem<Rational> {
    let e = SymplecticSpace::new(n);
    let mut out = Elem::new();
    for i in 0..2 * n {
        let (fi, s) = e.flat_basis(i);
        let v: Coeffs<Rational> = Comb::term(fi as u8, Rational::from(s));
        out.add_comb(&wedge(&v, &Elem::basis(vec![i as u8])));
    }
    out.scale(&Rational::new(1, 2))
}

/// L: wedge with Σ_k e_k ∧ e_{n+k}.
pub fn lefschetz<F: Field>(n: usize, w: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for k in 0..n {
        let inner = wedge(&basis_coeffs(n + k), w);
        out.add_comb(&wedge(&basis_coeffs(k), &inner));
    }
    out
}

/// Λ = L*: Σ_k de_{n+k}⌟ de_k⌟.
pub fn lefschetz_adjoint<F: Field>(n: usize, w: &Elem<F>) -> Elem<F> {
    let mut out = Elem::new();
    for k in 0..n {
        let inner = contract(&basis_coeffs(k), w);
        out.add_comb(&contract(&basis_coeffs(n + k), &inner));
    }
    out
}

/// L: Λ^{q-2}E → Λ^qE.
pub fn l_op(n: usize, q: usize) -> Operator<Rational> {
    let tgt = ExtPowerSpace::new(2 * n, q);
    if q < 2 {
        return Operator::zero(tgt.dim(), 0);
    }
    let src = ExtPowerSpace::new(2 * n, q - 2);
    src.basis.operator(&tgt.basis, |m| lefschetz(n, &Elem::basis(m.clone())))
}

/// Λ: Λ^qE → Λ^{q-2}E.
pub fn lambda_op(n: usize, q: usize) -> Operator<Rational> {
    let src = ExtPowerSpace::new(2 * n, q);
    if q < 2 {
        return Operator::zero(0, src.dim());
    }
    let tgt = ExtPowerSpace::new(2 * n, q - 2);
    src.basis.operator(&tgt.basis, |m| lefschetz_adjoint(n, &Elem::basis(m.clone())))
}

/// H = (n - q)·id on Λ^qE.
pub fn h_op(n: usize, q: usize) -> Operator<Rational> {
    let d = ExtPowerSpace::new(2 * n, q).dim();
    Operator::scalar(d, Rational::from(n as i64 - q as i64))
}

// ---- primitive subspaces ---------------------------------------------------

/// ker Λ ⊂ Λ^qE with an explicit kernel basis.
#[derive(Debug)]
pub struct PrimitiveSubspace {
    pub n: usize,
    pub q: usize,
    pub ambient: ExtPowerSpace,
    basis: Vec<Elem<Rational>>,
    free: Vec<usize>,
    projector: Operator<Rational>,
}

impl PrimitiveSubspace {
    fn build(n: usize, q: usize) -> Self {
        let ambient = ExtPowerSpace::new(2 * n, q);
        let lam = lambda_op(n, q);
        let mut ech = Echelon::new();
        for row in lam.transpose().columns() {
            ech.insert(row.clone());
        }
        let (kernel, free) = ech.nullspace(ambient.dim());
        let basis: Vec<Elem<Rational>> = kernel.iter().map(|v| ambient.basis.from_sparse(v)).collect();
        let projector = kernel_projector(&ambient, &kernel, &l_op(n, q));
        PrimitiveSubspace { n, q, ambient, basis, free, projector }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vector(&self, k: usize) -> &Elem<Rational> {
        &self.basis[k]
    }

    pub fn basis(&self) -> &[Elem<Rational>] {
        &self.basis
    }

    /// Coordinates of an element known to be primitive (read off at free positions).
    pub fn coords<F: Field>(&self, w: &Elem<F>) -> Vec<F> {
        self.free.iter().map(|&f| w.get(self.ambient.basis.mono(f))).collect()
    }

    pub fn coords_sparse<F: Field>(&self, w: &Elem<F>) -> SparseVec<F> {
        self.free
            .iter()
            .enumerate()
            .map(|(k, &f)| (k, w.get(self.ambient.basis.mono(f))))
            .collect()
    }

    pub fn element<F: Field>(&self, coords: &SparseVec<F>) -> Elem<F> {
        let mut out = Elem::new();
        for (k, c) in coords.iter() {
            out.add_scaled(&lift(&self.basis[*k]), c);
        }
        out
    }

    /// Coordinates, or an error if `w` is not in the subspace.
    pub fn coords_checked<F: Field>(&self, w: &Elem<F>) -> Result<SparseVec<F>, AlgebraError> {
        if w.keys().any(|k| k.len() != self.q) {
            return Err(AlgebraError::NotPrimitive);
        }
        let c = self.coords_sparse(w);
        if self.element(&c) == *w {
            Ok(c)
        } else {
            Err(AlgebraError::NotPrimitive)
        }
    }

    pub fn contains<F: Field>(&self, w: &Elem<F>) -> bool {
        self.coords_checked(w).is_ok()
    }

    /// Idempotent projection onto ker Λ along im L, from the kernel basis.
    pub fn projector(&self) -> &Operator<Rational> {
        &self.projector
    }

    /// Matrix of `f` between primitive subspaces, in kernel coordinates.
    pub fn operator_to(
        &self,
        target: &PrimitiveSubspace,
        f: impl Fn(&Elem<Rational>) -> Elem<Rational>,
    ) -> Operator<Rational> {
        Operator::from_fn(target.dim(), self.dim(), |k| target.coords_sparse(&f(&self.basis[k])))
    }
}

fn kernel_projector(
    ambient: &ExtPowerSpace,
    kernel: &[SparseVec<Rational>],
    l: &Operator<Rational>,
) -> Operator<Rational> {
    // columns: kernel basis, then a basis of im L; express each unit vector in it
    let mut cols: Vec<SparseVec<Rational>> = kernel.to_vec();
    let mut ech = Echelon::new();
    for v in kernel {
        ech.insert(v.clone());
    }
    for c in l.columns() {
        if ech.insert(c.clone()).is_some() {
            cols.push(c.clone());
        }
    }
    let d = ambient.dim();
    let k = kernel.len();
    Operator::from_fn(d, d, |j| {
        let coeffs = crate::linalg::solve_in_span(&cols, &SparseVec::basis(j)).expect("Λ^q = ker Λ ⊕ im L");
        let mut out = SparseVec::new();
        for (c, v) in coeffs.iter().take(k).zip(kernel) {
            out.add_scaled(v, c);
        }
        out
    })
}

/// Projection onto primitives from the sl2 relations alone.
pub fn sl2_projector(n: usize, q: usize) -> Operator<Rational> {
    let d = ExtPowerSpace::new(2 * n, q).dim();
    let mut p = Operator::identity(d);
    if q < 2 {
        return p;
    }
    let ll = l_op(n, q).compose(&lambda_op(n, q)).expect("shapes");
    for k in 1..=(q / 2) {
        let c = Rational::from((k * (n - q + k + 1)) as i64);
        let factor = ll.sub(&Operator::scalar(d, c.clone())).expect("shapes").scale(&(-c).recip().expect("c>0"));
        p = factor.compose(&p).expect("shapes");
    }
    p
}

type PrimitiveCache = Mutex<HashMap<(usize, usize), Arc<PrimitiveSubspace>>>;

static PRIMITIVE_CACHE: OnceLock<PrimitiveCache> = OnceLock::new();

/// Cached primitive subspace Λ^q∘E of the space with half dimension n.
pub fn primitive_basis(n: usize, q: usize) -> Result<Arc<PrimitiveSubspace>, AlgebraError> {
    if q > n {
        return Err(AlgebraError::DegreeTooLarge { n, q });
    }
    let cache = PRIMITIVE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cache lock").get(&(n, q)) {
        return Ok(p.clone());
    }
    let built = Arc::new(PrimitiveSubspace::build(n, q));
    let mut guard = cache.lock().expect("cache lock");
    Ok(guard.entry((n, q)).or_insert(built).clone())
}

pub fn primitive_dim(n: usize, q: usize) -> i64 {
    binomial(2 * n as i64, q as i64) - binomial(2 * n as i64, q as i64 - 2)
}

// ---- modified wedge --------------------------------------------------------

/// e ∧∘ ω = e∧ω − 1/(n−k+1) L(e♯⌟ω) for homogeneous primitive ω of degree k;
/// zero when k + 1 > n. No primitivity check.
pub fn wedge_circ_unchecked<F: Field>(n: usize, e: &Coeffs<F>, w: &Elem<F>) -> Elem<F> {
    let Some(k) = homogeneous_degree(w) else { return Elem::new() };
    if k + 1 > n {
        return Elem::new();
    }
    let esp = SymplecticSpace::new(n);
    let es = esp.sharp_coeffs(e);
    let corr = lefschetz(n, &contract(&es, w));
    let mut out = wedge(e, w);
    out.add_scaled(&corr, &F::ratio(-1, (n - k + 1) as i64));
    out
}

/// Checked version of [`wedge_circ_unchecked`].
pub fn wedge_circ<F: Field>(n: usize, e: &Coeffs<F>, w: &Elem<F>) -> Result<Elem<F>, AlgebraError> {
    let Some(k) = homogeneous_degree(w) else { return Ok(Elem::new()) };
    if w.keys().any(|t| t.len() != k) {
        return Err(AlgebraError::NotHomogeneous);
    }
    if k > n || !lefschetz_adjoint(n, w).is_zero() {
        return Err(AlgebraError::NotPrimitive);
    }
    Ok(wedge_circ_unchecked(n, e, w))
}

// ---- operator matrices on primitive spaces --------------------------------------

/// e_i ∧∘ : Λ^s∘ → Λ^{s+1}∘ (zero map into a zero space when s = n).
pub fn wedge_circ_op(n: usize, s: usize, i: usize) -> Operator<Rational> {
    let src = primitive_basis(n, s).expect("s <= n");
    match primitive_basis(n, s + 1) {
        Ok(tgt) => src.operator_to(&tgt, |w| wedge_circ_unchecked(n, &basis_coeffs(i), w)),
        Err(_) => Operator::zero(0, src.dim()),
    }
}

/// de_j ⌟ : Λ^s∘ → Λ^{s-1}∘.
pub fn contract_op(n: usize, s: usize, j: usize) -> Operator<Rational> {
    let src = primitive_basis(n, s).expect("s <= n");
    if s == 0 {
        return Operator::zero(0, src.dim());
    }
    let tgt = primitive_basis(n, s - 1).expect("s-1 <= n");
    src.operator_to(&tgt, |w| contract(&basis_coeffs(j), w))
}

/// h_i · : Sym^r H → Sym^{r+1} H.
pub fn sym_mul_op(r: usize, i: usize) -> Operator<Rational> {
    let src = SymPowerSpace::new(2, r);
    let tgt = SymPowerSpace::new(2, r + 1);
    src.basis.operator(&tgt.basis, |m| sym_mul(&basis_coeffs(i), &Elem::basis(m.clone())))
}

/// dh_j ⌟∘ : Sym^r H → Sym^{r-1} H.
pub fn sym_contract_circ_op(r: usize, j: usize) -> Operator<Rational> {
    let src = SymPowerSpace::new(2, r);
    if r == 0 {
        return Operator::zero(0, src.dim());
    }
    let tgt = SymPowerSpace::new(2, r - 1);
    src.basis.operator(&tgt.basis, |m| sym_contract_circ(&basis_coeffs(j), &Elem::basis(m.clone())))
}

/// Unnormalised dh_j ⌟ : Sym^r H → Sym^{r-1} H.
pub fn sym_contract_op(r: usize, j: usize) -> Operator<Rational> {
    let src = SymPowerSpace::new(2, r);
    if r == 0 {
        return Operator::zero(0, src.dim());
    }
    let tgt = SymPowerSpace::new(2, r - 1);
    src.basis.operator(&tgt.basis, |m| sym_contract(&basis_coeffs(j), &Elem::basis(m.clone())))
}

// ---- identity reports ------------------------------------------------------

fn op_check(name: String, lhs: &Operator<Rational>, rhs: &Operator<Rational>) -> Check {
    if lhs.nrows() != rhs.nrows() || lhs.ncols() != rhs.ncols() {
        return Check::fail(name, format!("shape {}x{} vs {}x{}", lhs.nrows(), lhs.ncols(), rhs.nrows(), rhs.ncols()));
    }
    match lhs.first_difference(rhs) {
        None => Check::pass(name),
        Some(col) => Check::fail(name, format!("basis vector {col}: {:?} vs {:?}", lhs.column(col), rhs.column(col))),
    }
}

fn comp(a: &Operator<Rational>, b: &Operator<Rational>) -> Operator<Rational> {
    a.compose(b).expect("operator shapes")
}

fn plus(a: &Operator<Rational>, b: &Operator<Rational>) -> Operator<Rational> {
    a.add(b).expect("operator shapes")
}

fn minus(a: &Operator<Rational>, b: &Operator<Rational>) -> Operator<Rational> {
    a.sub(b).expect("operator shapes")
}

/// Commutators of L, Λ and H on Λ^qE.
pub fn sl2_check(n: usize, q: usize) -> Vec<Check> {
    let lam_l = comp(&lambda_op(n, q + 2), &l_op(n, q + 2));
    let l_lam = comp(&l_op(n, q), &lambda_op(n, q));
    let mut out = vec![op_check(format!("sl2 [Λ,L]=H n={n} q={q}"), &minus(&lam_l, &l_lam), &h_op(n, q))];
    if q >= 2 {
        let hl = minus(&comp(&h_op(n, q), &l_op(n, q)), &comp(&l_op(n, q), &h_op(n, q - 2)));
        out.push(op_check(format!("sl2 [H,L]=-2L n={n} q={q}"), &hl, &l_op(n, q).scale(&Rational::from(-2))));
        let hlam = minus(&comp(&h_op(n, q - 2), &lambda_op(n, q)), &comp(&lambda_op(n, q), &h_op(n, q)));
        out.push(op_check(format!("sl2 [H,Λ]=2Λ n={n} q={q}"), &hlam, &lambda_op(n, q).scale(&Rational::from(2))));
    }
    out
}

/// Kernel basis, both projectors and contraction stability on Λ^q∘E.
pub fn primitive_check(n: usize, q: usize) -> Vec<Check> {
    let p = primitive_basis(n, q).expect("q <= n");
    let mut out = Vec::new();
    let dim_ok = p.dim() as i64 == primitive_dim(n, q);
    out.push(Check::from_bool(format!("primitive dim n={n} q={q}"), dim_ok, || format!("{} vs {}", p.dim(), primitive_dim(n, q))));
    let in_kernel = p.basis().iter().all(|v| lefschetz_adjoint(n, v).is_zero());
    out.push(Check::from_bool(format!("primitive basis in ker Λ n={n} q={q}"), in_kernel, String::new));
    let proj = p.projector();
    out.push(op_check(format!("primitive projector idempotent n={n} q={q}"), &comp(proj, proj), proj));
    out.push(op_check(format!("sl2 projector equals kernel projector n={n} q={q}"), &sl2_projector(n, q), proj));
    let fixes = p.basis().iter().all(|v| {
        let sv = p.ambient.basis.to_sparse(v);
        proj.apply(&sv) == sv
    });
    out.push(Check::from_bool(format!("primitive projector fixes kernel n={n} q={q}"), fixes, String::new));
    let mut stable = None;
    'outer: for j in 0..2 * n {
        for (k, v) in p.basis().iter().enumerate() {
            if !lefschetz_adjoint(n, &contract(&basis_coeffs(j), v)).is_zero() {
                stable = Some(format!("de{j} on basis vector {k}"));
                break 'outer;
            }
        }
    }
    out.push(Check::from_witness(format!("contraction preserves primitives n={n} q={q}"), stable));
    let mut lemma = None;
    'outer2: for i in 0..2 * n {
        let e: Coeffs<Rational> = basis_coeffs(i);
        let es = SymplecticSpace::new(n).sharp_coeffs(&e);
        for (k, v) in p.basis().iter().enumerate() {
            if lefschetz_adjoint(n, &wedge(&e, v)) != contract(&es, v)
                || !lefschetz_adjoint(n, &wedge_circ_unchecked(n, &e, v)).is_zero()
            {
                lemma = Some(format!("e{i} on basis vector {k}"));
                break 'outer2;
            }
        }
    }
    out.push(Check::from_witness(format!("Λ(e∧ω)=e♯⌟ω and Λ(e∧∘ω)=0 n={n} q={q}"), lemma));
    out
}

/// Anticommutators and number operators of ⌟ and ∧∘ on Λ^s∘E.
pub fn number_operators_check(n: usize, s: usize) -> Vec<Check> {
    let esp = SymplecticSpace::new(n);
    let dim = primitive_basis(n, s).expect("s <= n").dim();
    let two_n = 2 * n;
    let wc: Vec<_> = (0..two_n).map(|i| wedge_circ_op(n, s, i)).collect();
    let ct: Vec<_> = (0..two_n).map(|j| contract_op(n, s, j)).collect();
    let wc_up: Vec<_> = if s < n { (0..two_n).map(|i| wedge_circ_op(n, s + 1, i)).collect() } else { Vec::new() };
    let ct_down: Vec<_> = if s > 0 { (0..two_n).map(|j| contract_op(n, s - 1, j)).collect() } else { Vec::new() };
    let wc_down: Vec<_> = if s > 0 { (0..two_n).map(|i| wedge_circ_op(n, s - 1, i)).collect() } else { Vec::new() };
    let ct_up: Vec<_> = if s < n { (0..two_n).map(|j| contract_op(n, s + 1, j)).collect() } else { Vec::new() };
    let mut out = Vec::new();

    let mut first = None;
    if s >= 2 {
        'a: for a in 0..two_n {
            for b in 0..two_n {
                let anti = plus(&comp(&ct_down[a], &ct[b]), &comp(&ct_down[b], &ct[a]));
                if !anti.is_zero() {
                    first = Some(format!("de{a}, de{b}"));
                    break 'a;
                }
            }
        }
    }
    out.push(Check::from_witness(format!("{{η1⌟,η2⌟}}=0 n={n} s={s}"), first));

    let mut first = None;
    if s + 2 <= n {
        'b: for a in 0..two_n {
            for b in 0..two_n {
                let anti = plus(&comp(&wc_up[a], &wc[b]), &comp(&wc_up[b], &wc[a]));
                if !anti.is_zero() {
                    first = Some(format!("e{a}, e{b}"));
                    break 'b;
                }
            }
        }
    }
    out.push(Check::from_witness(format!("{{e1∧∘,e2∧∘}}=0 n={n} s={s}"), first));

    let mut first = None;
    let c = Rational::new(1, (n - s + 1) as i64);
    'c: for j in 0..two_n {
        for i in 0..two_n {
            let mut lhs = Operator::zero(dim, dim);
            if s < n {
                lhs = plus(&lhs, &comp(&ct_up[j], &wc[i]));
            }
            if s > 0 {
                lhs = plus(&lhs, &comp(&wc_down[i], &ct[j]));
            }
            let mut rhs = Operator::scalar(dim, Rational::from(i64::from(i == j)));
            if s > 0 {
                let (fj, sf) = esp.flat_basis(j);
                let (si, ss) = esp.sharp_basis(i);
                let term = comp(&wc_down[fj], &ct[si]).scale(&(c.clone() * &Rational::from(sf * ss)));
                rhs = plus(&rhs, &term);
            }
            if lhs != rhs {
                first = Some(format!("de{j}, e{i}"));
                break 'c;
            }
        }
    }
    out.push(Check::from_witness(format!("{{η⌟,e∧∘}}=η(e)+η♭∧∘e♯⌟/(n-s+1) n={n} s={s}"), first));

    let mut up = Operator::zero(dim, dim);
    if s < n {
        for i in 0..two_n {
            up = plus(&up, &comp(&ct_up[i], &wc[i]));
        }
    }
    let nn = n as i64;
    let ss = s as i64;
    let up_const = Rational::new((2 * nn - ss + 2) * (nn - ss), nn - ss + 1);
    out.push(op_check(format!("Σ de_i⌟ e_i∧∘ = (2n-s+2)(n-s)/(n-s+1) n={n} s={s}"), &up, &Operator::scalar(dim, up_const)));

    let mut down = Operator::zero(dim, dim);
    if s > 0 {
        for i in 0..two_n {
            down = plus(&down, &comp(&wc_down[i], &ct[i]));
        }
    }
    out.push(op_check(format!("Σ e_i∧∘ de_i⌟ = s n={n} s={s}"), &down, &Operator::scalar(dim, Rational::from(ss))));
    out
}

/// Identities of h· and ⌟∘ on Sym^r H. Those involving h♯⌟∘ on Sym^r need r ≥ 1.
pub fn sym_identities_check(r: usize) -> Vec<Check> {
    let h = SymplecticSpace::h();
    let d = r + 1;
    let mut out = Vec::new();
    let mul = |deg: usize, i: usize| sym_mul_op(deg, i);
    let con = |deg: usize, j: usize| sym_contract_circ_op(deg, j);

    let mut first = None;
    for a in 0..2 {
        for b in 0..2 {
            let c = minus(&comp(&mul(r + 1, a), &mul(r, b)), &comp(&mul(r + 1, b), &mul(r, a)));
            if !c.is_zero() && first.is_none() {
                first = Some(format!("h{a}, h{b}"));
            }
        }
    }
    out.push(Check::from_witness(format!("[h1·,h2·]=0 r={r}"), first));

    let mut first = None;
    if r >= 2 {
        for a in 0..2 {
            for b in 0..2 {
                let c = minus(&comp(&con(r - 1, a), &con(r, b)), &comp(&con(r - 1, b), &con(r, a)));
                if !c.is_zero() && first.is_none() {
                    first = Some(format!("dh{a}, dh{b}"));
                }
            }
        }
    }
    out.push(Check::from_witness(format!("[α1⌟∘,α2⌟∘]=0 r={r}"), first));

    if r >= 1 {
        let mut first_comm = None;
        let mut first_split = None;
        for j in 0..2 {
            for i in 0..2 {
                let (fj, sf) = h.flat_basis(j);
                let (si, ss) = h.sharp_basis(i);
                let sign = Rational::from(sf * ss);
                let flat_sharp = comp(&mul(r - 1, fj), &con(r, si)).scale(&sign);
                let comm = minus(&comp(&con(r + 1, j), &mul(r, i)), &comp(&mul(r - 1, i), &con(r, j)));
                let rhs = flat_sharp.scale(&Rational::new(-1, (r + 1) as i64));
                if comm != rhs && first_comm.is_none() {
                    first_comm = Some(format!("dh{j}, h{i}"));
                }
                let split = minus(&comp(&mul(r - 1, i), &con(r, j)), &flat_sharp);
                if split != Operator::scalar(d, Rational::from(i64::from(i == j))) && first_split.is_none() {
                    first_split = Some(format!("dh{j}, h{i}"));
                }
            }
        }
        out.push(Check::from_witness(format!("[α⌟∘,h·]=-α♭·h♯⌟∘/(r+1) r={r}"), first_comm));
        out.push(Check::from_witness(format!("α(h)=h·α⌟∘-α♭·h♯⌟∘ r={r}"), first_split));
        let mut sum = Operator::zero(d, d);
        for i in 0..2 {
            sum = plus(&sum, &comp(&mul(r - 1, i), &con(r, i)));
        }
        out.push(op_check(format!("Σ h_i·dh_i⌟∘ = id r={r}"), &sum, &Operator::identity(d)));
    }
    let mut sum = Operator::zero(d, d);
    for i in 0..2 {
        sum = plus(&sum, &comp(&con(r + 1, i), &mul(r, i)));
    }
    let c = Rational::new((r + 2) as i64, (r + 1) as i64);
    out.push(op_check(format!("Σ dh_i⌟∘ h_i· = (r+2)/(r+1) r={r}"), &sum, &Operator::scalar(d, c)));
    out
}

/// Every exterior and symmetric operator identity for one n.
pub fn operator_lemmas_report(n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for q in 0..=2 * n {
        out.extend(sl2_check(n, q));
    }
    for s in 0..=n {
        out.extend(primitive_check(n, s));
        out.extend(number_operators_check(n, s));
    }
    for r in 0..=n {
        out.extend(sym_identities_check(r));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64) -> Rational {
        Rational::from(p)
    }

    #[test]
    fn basis_products() {
        let e01 = Elem::<Rational>::basis(vec![0, 1]);
        assert_eq!(contract(&basis_coeffs(0), &e01), Elem::basis(vec![1]));
        assert!(wedge(&basis_coeffs(0), &e01).is_zero());
        let h00 = Elem::<Rational>::basis(vec![0, 0]);
        assert_eq!(sym_contract_circ(&basis_coeffs(0), &h00), Elem::basis(vec![0]));
        assert!(sym_contract_circ(&basis_coeffs(0), &Elem::<Rational>::basis(vec![])).is_zero());
        assert_eq!(sym_mul(&basis_coeffs(1), &h00), Elem::basis(vec![0, 0, 1]));
    }

    #[test]
    fn primitive_dimensions() {
        assert_eq!(primitive_basis(2, 2).unwrap().dim(), 5);
        assert_eq!(primitive_basis(2, 1).unwrap().dim(), 4);
        assert_eq!(primitive_basis(3, 3).unwrap().dim(), 14);
        assert!(matches!(primitive_basis(2, 3), Err(AlgebraError::DegreeTooLarge { .. })));
    }

    #[test]
    fn bivector_matches_lefschetz() {
        for n in 1..=3 {
            assert_eq!(canonical_bivector(n), lefschetz(n, &Elem::basis(vec![])));
        }
    }

    #[test]
    fn wedge_circ_examples() {
        let w = Elem::<Rational>::basis(vec![1]);
        assert_eq!(wedge_circ(2, &basis_coeffs(0), &w).unwrap(), Elem::basis(vec![0, 1]));
        let not_prim = lefschetz(2, &Elem::<Rational>::basis(vec![]));
        assert_eq!(wedge_circ(2, &basis_coeffs(0), &not_prim), Err(AlgebraError::NotPrimitive));
    }

    #[test]
    fn extended_sigma_examples() {
        let e = SymplecticSpace::new(2);
        let x = Elem::<Rational>::basis(vec![0, 1]);
        let y = Elem::<Rational>::basis(vec![2, 3]);
        assert_eq!(extended_sigma(e, PowerKind::Exterior, &x, &y).unwrap(), q(1));
        let h = SymplecticSpace::h();
        let a = Elem::<Rational>::basis(vec![0, 0]);
        let b = Elem::<Rational>::basis(vec![1, 1]);
        assert_eq!(extended_sigma(h, PowerKind::Symmetric, &a, &b).unwrap(), q(2));
        let c = Elem::<Rational>::basis(vec![0]);
        assert!(extended_sigma(e, PowerKind::Exterior, &x, &c).is_err());
    }

    #[test]
    fn identity_reports_small() {
        for c in operator_lemmas_report(2) {
            assert!(c.passed, "{} {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn sort_sign_cases() {
        assert_eq!(sort_sign(&[2, 0, 1]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_sign(&[1, 1]), None);
    }
}
