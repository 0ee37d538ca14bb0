//! Weitzenböck matrices relating the two projector families on
//! (H⊗E)⊗(H⊗E)⊗S_r, a brute-force recovery of them, the curvature
//! operator sums and the row combinations leading to the eigenvalue bound.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{
    contract, primitive_basis, sym_contract, sym_contract_circ, sym_mul, wedge_circ_unchecked, AlgebraError, Elem,
    Mono, PrimitiveSubspace, SymPowerSpace,
};
use crate::linalg::{rank_of, solve_in_span, Comb, Echelon, LinalgError, Matrix, Operator, SparseVec};
use crate::model::tangent_index;
use crate::report::Check;
use crate::scalar::Rational;
use crate::spinor::SpinKey;
use crate::symplectic::{Coeffs, SymplecticSpace};

type Q = Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeitzenboeckError {
    #[error("grade r = {r} out of range for n = {n}")]
    OutOfRange { n: usize, r: usize },
    #[error("the bound needs n >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("scalar curvature must be positive, got {0}")]
    NonPositiveKappa(Rational),
    #[error("row {row} is not a combination of the right family (residual at {witness})")]
    Inconsistent { row: &'static str, witness: String },
    #[error("right family has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("surviving columns {found:?} differ from the expected {expected:?}")]
    UnexpectedDegeneracy { found: Vec<usize>, expected: Vec<usize> },
    #[error("operator sum is not a multiple of the identity")]
    NotScalar,
    #[error("row vector has length {0}, expected 6")]
    BadVector(usize),
    #[error("row combination does not isolate the D+- column: {0}")]
    BadCombination(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn q(p: i64, d: i64) -> Q {
    Rational::new(p, d)
}

fn int(k: usize) -> i64 {
    k as i64
}

fn check_grade(n: usize, r: usize) -> Result<(), WeitzenboeckError> {
    if n == 0 || r > n {
        return Err(WeitzenboeckError::OutOfRange { n, r });
    }
    Ok(())
}

// ---- closed forms ---------------------------------------------------------------

/// H-part, rows (ℂ, Sym²H), columns (−+, +−).
pub fn wh_closed(r: usize) -> Matrix<Q> {
    let r = int(r);
    Matrix::from_rows(vec![vec![q(1, 1), q(-r, r + 1)], vec![q(r, 1), q(r * (r + 2), r + 1)]])
}

/// E-part, rows (ℂ, Sym²E, Λ²∘E), columns (−+, +−, K).
pub fn we_closed(n: usize, r: usize) -> Matrix<Q> {
    let (n, r) = (int(n), int(r));
    let d1 = n - r + 1;
    let d2 = (n + r + 3) * (r + 1);
    Matrix::from_rows(vec![
        vec![q(1, d1), q(-(r + 2), d2), q(1, 1)],
        vec![q(-(n - r), d1), q((n + r + 2) * (r + 2), d2), q(1, 1)],
        vec![q(-(n - r) * (n + 1), n * d1), q(-r * (n + r + 2) * (n + 1), n * d2), q(r, n)],
    ])
}

pub const ROW_LABELS: [&str; 6] = ["ℂ⊗ℂ", "Sym²H⊗ℂ", "ℂ⊗Sym²E", "Sym²H⊗Sym²E", "ℂ⊗Λ²∘E", "Sym²H⊗Λ²∘E"];
pub const COLUMN_LABELS: [&str; 6] = ["(−+,−+)", "(+−,−+)", "(−+,+−)", "(+−,+−)", "(−+,K)", "(+−,K)"];

/// What a column of the matrix equation stands for once applied to ∇²ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColumnSlot {
    pub projector: &'static str,
    pub operator: &'static str,
    /// Coefficient of `operator` in the slot.
    pub factor: (i64, i64),
    /// Same slot written as a product of Dirac components.
    pub product: Option<(&'static str, (i64, i64))>,
}

impl ColumnSlot {
    pub fn factor(&self) -> Q {
        q(self.factor.0, self.factor.1)
    }

    pub fn product_factor(&self) -> Option<Q> {
        self.product.map(|(_, (p, d))| q(p, d))
    }
}

pub const COLUMN_SLOTS: [ColumnSlot; 6] = [
    ColumnSlot { projector: "(−+,−+)", operator: "(D⁺₊)*D⁺₊", factor: (-1, 2), product: Some(("D⁻₋D⁺₊", (1, 2))) },
    ColumnSlot { projector: "(+−,−+)", operator: "D⁺₋D⁻₊", factor: (1, 2), product: Some(("D⁺₋D⁻₊", (1, 2))) },
    ColumnSlot { projector: "(−+,+−)", operator: "D⁻₊D⁺₋", factor: (1, 2), product: Some(("D⁻₊D⁺₋", (1, 2))) },
    ColumnSlot { projector: "(+−,+−)", operator: "(D⁻₋)*D⁻₋", factor: (-1, 2), product: Some(("D⁺₊D⁻₋", (1, 2))) },
    ColumnSlot { projector: "(−+,K)", operator: "(T⁺)*T⁺", factor: (-1, 1), product: None },
    ColumnSlot { projector: "(+−,K)", operator: "(T⁻)*T⁻", factor: (1, 1), product: None },
];

/// What a row of the matrix equation stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowSlot {
    /// −∇*∇
    RoughLaplacian,
    /// r(r+2)/(n+2)·κ/4
    KappaH,
    /// (n+r+2)(n−r)/(n(n+2))·κ/4
    KappaE,
    CurlyC,
    CurlyL,
    Zero,
}

pub const ROW_SLOTS: [RowSlot; 6] =
    [RowSlot::RoughLaplacian, RowSlot::KappaH, RowSlot::KappaE, RowSlot::CurlyC, RowSlot::CurlyL, RowSlot::Zero];

/// Coefficients of κ/4 in the two curvature rows.
pub fn lhs_kappa_slots(n: usize, r: usize) -> (Q, Q) {
    let (n, r) = (int(n), int(r));
    (q(r * (r + 2), n + 2), q((n + r + 2) * (n - r), n * (n + 2)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeitzenboeckMatrix {
    pub n: usize,
    pub r: usize,
    pub entries: Matrix<Q>,
}

impl WeitzenboeckMatrix {
    pub fn entry(&self, i: usize, j: usize) -> &Q {
        &self.entries[(i, j)]
    }

    pub fn to_text(&self) -> Vec<Vec<String>> {
        self.entries.to_rows().iter().map(|row| row.iter().map(Q::canonical).collect()).collect()
    }
}

impl fmt::Display for WeitzenboeckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.to_text();
        let width = text.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for (label, row) in ROW_LABELS.iter().zip(&text) {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            writeln!(f, "{label:>12}  {}", cells.join("  "))?;
        }
        Ok(())
    }
}

/// W = W_E ⊗ W_H, the H index running fastest.
pub fn w_full(n: usize, r: usize) -> WeitzenboeckMatrix {
    WeitzenboeckMatrix { n, r, entries: we_closed(n, r).kron(&wh_closed(r)) }
}

// ---- the elementary maps ------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HLeft {
    Trivial,
    Sym2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HRight {
    MinusPlus,
    PlusMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ELeft {
    Trivial,
    Sym2,
    Lambda2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ERight {
    MinusPlus,
    PlusMinus,
    Kernel,
}

const H_LEFT: [HLeft; 2] = [HLeft::Trivial, HLeft::Sym2];
const H_RIGHT: [HRight; 2] = [HRight::MinusPlus, HRight::PlusMinus];
const E_LEFT: [ELeft; 3] = [ELeft::Trivial, ELeft::Sym2, ELeft::Lambda2];
const E_RIGHT: [ERight; 3] = [ERight::MinusPlus, ERight::PlusMinus, ERight::Kernel];

fn unit(i: usize) -> Coeffs<Q> {
    Comb::basis(i as u8)
}

fn h_sharp(a: usize) -> Coeffs<Q> {
    SymplecticSpace::h().sharp_coeffs(&unit(a))
}

fn flat(space: SymplecticSpace, j: usize) -> Coeffs<Q> {
    let (k, s) = space.flat_basis(j);
    Comb::term(k as u8, Q::from(s))
}

/// H-side of the left family on h_a ⊗ h_b ⊗ s.
pub fn h_left(kind: HLeft, a: usize, b: usize, s: &Elem<Q>) -> Elem<Q> {
    match kind {
        HLeft::Trivial => s.scale(&Q::from(SymplecticSpace::h().sigma_basis(a, b))),
        HLeft::Sym2 => {
            sym_mul(&unit(b), &sym_contract(&h_sharp(a), s)) + sym_mul(&unit(a), &sym_contract(&h_sharp(b), s))
        }
    }
}

/// H-side of the right family on h_a ⊗ h_b ⊗ s.
pub fn h_right(kind: HRight, a: usize, b: usize, s: &Elem<Q>) -> Elem<Q> {
    match kind {
        HRight::MinusPlus => sym_contract_circ(&h_sharp(a), &sym_mul(&unit(b), s)),
        HRight::PlusMinus => sym_mul(&unit(a), &sym_contract_circ(&h_sharp(b), s)),
    }
}

struct ESide {
    n: usize,
    r: usize,
    space: SymplecticSpace,
}

impl ESide {
    fn new(n: usize, r: usize) -> Self {
        ESide { n, r, space: SymplecticSpace::new(n) }
    }

    fn sigma(&self, i: usize, j: usize) -> Q {
        Q::from(self.space.sigma_basis(i, j))
    }

    fn sharp(&self, i: usize) -> Coeffs<Q> {
        self.space.sharp_coeffs(&unit(i))
    }

    fn wedge(&self, e: &Coeffs<Q>, w: &Elem<Q>) -> Elem<Q> {
        wedge_circ_unchecked(self.n, e, w)
    }

    /// e_i♯⌟(e_j∧∘ω)
    fn raise_lower(&self, i: usize, j: usize, w: &Elem<Q>) -> Elem<Q> {
        contract(&self.sharp(i), &self.wedge(&unit(j), w))
    }

    /// e_i∧∘(e_j♯⌟ω)
    fn lower_raise(&self, i: usize, j: usize, w: &Elem<Q>) -> Elem<Q> {
        self.wedge(&unit(i), &contract(&self.sharp(j), w))
    }

    fn kernel_coeffs(&self) -> (Q, Q) {
        let (n, r) = (int(self.n), int(self.r));
        (q(1, n - r + 1), q(r + 2, (n + r + 3) * (r + 1)))
    }

    fn left(&self, kind: ELeft, i: usize, j: usize, w: &Elem<Q>) -> Elem<Q> {
        let x = self.lower_raise(j, i, w);
        let y = self.lower_raise(i, j, w);
        match kind {
            ELeft::Trivial => w.scale(&self.sigma(i, j)),
            ELeft::Sym2 => x + y,
            ELeft::Lambda2 => {
                let trace = q(int(self.n - self.r), int(self.n)) * &self.sigma(i, j);
                x - y - w.scale(&trace)
            }
        }
    }

    fn right(&self, kind: ERight, i: usize, j: usize, w: &Elem<Q>) -> Elem<Q> {
        match kind {
            ERight::MinusPlus => self.raise_lower(i, j, w),
            ERight::PlusMinus => self.lower_raise(i, j, w),
            ERight::Kernel => {
                let (c1, c2) = self.kernel_coeffs();
                let mut out = w.scale(&self.sigma(i, j));
                out.add_scaled(&self.raise_lower(i, j, w), &-c1);
                out.add_scaled(&self.lower_raise(i, j, w), &c2);
                out
            }
        }
    }
}

/// E-side of the left family on e_i ⊗ e_j ⊗ ω, ω ∈ Λ^{n−r}∘E.
pub fn e_left(n: usize, r: usize, kind: ELeft, i: usize, j: usize, w: &Elem<Q>) -> Elem<Q> {
    ESide::new(n, r).left(kind, i, j, w)
}

/// E-side of the right family on e_i ⊗ e_j ⊗ ω, ω ∈ Λ^{n−r}∘E.
pub fn e_right(n: usize, r: usize, kind: ERight, i: usize, j: usize, w: &Elem<Q>) -> Elem<Q> {
    ESide::new(n, r).right(kind, i, j, w)
}

// ---- kernel of multiplication and contraction ------------------------------------

/// Element of E ⊗ Λ^q E keyed by (E index, monomial).
type EForm = Comb<(usize, Mono), Q>;

fn eform_coords(prim: &PrimitiveSubspace, x: &EForm) -> SparseVec<Q> {
    let mut by_e: BTreeMap<usize, Elem<Q>> = BTreeMap::new();
    for ((l, t), c) in x.iter() {
        by_e.entry(*l).or_default().add_term(t.clone(), c.clone());
    }
    let p = prim.dim();
    let mut out = SparseVec::new();
    for (l, w) in by_e {
        let local = prim.coords_checked(&w).expect("primitive component");
        for (k, c) in local.iter() {
            out.add_term(l * p + k, c.clone());
        }
    }
    out
}

fn tensor_e(l: usize, w: &Elem<Q>, c: &Q, out: &mut EForm) {
    for (t, d) in w.iter() {
        out.add_term((l, t.clone()), d.clone() * c);
    }
}

/// Projection of E ⊗ Λ^{n−r}∘E onto the joint kernel of ∧∘ and ♯⌟,
/// in coordinates (E index, primitive coordinate).
pub fn kernel_projection(n: usize, r: usize) -> Result<Operator<Q>, WeitzenboeckError> {
    check_grade(n, r)?;
    let side = ESide::new(n, r);
    let prim = primitive_basis(n, n - r)?;
    let p = prim.dim();
    let dim = 2 * n * p;
    let (c1, c2) = side.kernel_coeffs();
    Ok(Operator::from_fn(dim, dim, |col| {
        let (i, k) = (col / p, col % p);
        let w = prim.vector(k);
        let mut out = EForm::new();
        tensor_e(i, w, &Q::from(1), &mut out);
        let raised = side.wedge(&unit(i), w);
        let lowered = contract(&side.sharp(i), w);
        for l in 0..2 * n {
            tensor_e(l, &contract(&unit(l), &raised), &-c1.clone(), &mut out);
            let f = flat(side.space, l);
            let (m, s) = f.iter().next().map(|(m, s)| (*m as usize, s.clone())).expect("basis");
            tensor_e(m, &side.wedge(&unit(l), &lowered), &(-c2.clone() * &s), &mut out);
        }
        eform_coords(&prim, &out)
    }))
}

fn pair_map(
    n: usize,
    r: usize,
    target_q: Option<usize>,
    f: impl Fn(usize, &Elem<Q>) -> Elem<Q>,
) -> Result<Operator<Q>, WeitzenboeckError> {
    let prim = primitive_basis(n, n - r)?;
    let p = prim.dim();
    let dim = 2 * n * p;
    let target = match target_q {
        Some(t) if t <= n => primitive_basis(n, t)?,
        _ => return Ok(Operator::zero(0, dim)),
    };
    Ok(Operator::from_fn(target.dim(), dim, |col| {
        let w = f(col / p, prim.vector(col % p));
        target.coords_checked(&w).expect("primitive image")
    }))
}

/// e ⊗ ω ↦ e∧∘ω.
pub fn multiplication_map(n: usize, r: usize) -> Result<Operator<Q>, WeitzenboeckError> {
    check_grade(n, r)?;
    pair_map(n, r, Some(n - r + 1), |i, w| wedge_circ_unchecked(n, &unit(i), w))
}

/// e ⊗ ω ↦ e♯⌟ω.
pub fn contraction_map(n: usize, r: usize) -> Result<Operator<Q>, WeitzenboeckError> {
    check_grade(n, r)?;
    let space = SymplecticSpace::new(n);
    pair_map(n, r, (n - r).checked_sub(1), |i, w| contract(&space.sharp_coeffs(&unit(i)), w))
}

pub fn kernel_projection_check(n: usize, r: usize) -> Vec<Check> {
    let tag = format!("kernel projection n={n} r={r}");
    let built = kernel_projection(n, r).and_then(|p| Ok((p, multiplication_map(n, r)?, contraction_map(n, r)?)));
    let (p, m, c) = match built {
        Ok(x) => x,
        Err(e) => return vec![Check::fail(tag, e.to_string())],
    };
    let mp = m.compose(&p).expect("shapes");
    let cp = c.compose(&p).expect("shapes");
    let pp = p.compose(&p).expect("shapes");
    let mut joint = Echelon::new();
    for row in m.transpose().columns().iter().chain(c.transpose().columns()) {
        joint.insert(row.clone());
    }
    let (kernel, _) = joint.nullspace(p.ncols());
    let moved = kernel.iter().position(|v| p.apply(v) != *v);
    vec![
        Check::from_bool(format!("{tag}: multiplication vanishes on image"), mp.is_zero(), || {
            format!("column {:?}", mp.first_difference(&Operator::zero(mp.nrows(), mp.ncols())))
        }),
        Check::from_bool(format!("{tag}: contraction vanishes on image"), cp.is_zero(), || {
            format!("column {:?}", cp.first_difference(&Operator::zero(cp.nrows(), cp.ncols())))
        }),
        Check::from_witness(format!("{tag}: idempotent"), pp.first_difference(&p).map(|c| format!("column {c}"))),
        Check::from_witness(
            format!("{tag}: fixes the joint kernel (dim {})", kernel.len()),
            moved.map(|k| format!("kernel vector {k}")),
        ),
    ]
}

// ---- projector families ---------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Key of a flattened map: (input basis index, output monomial).
pub type FlatKey<M> = (usize, M);
pub type FlatMap<M> = Comb<FlatKey<M>, Q>;
type FlatTerm = (FlatKey<SpinKey>, Q);
type Outputs = Vec<Vec<Elem<Q>>>;

#[derive(Debug, Clone)]
pub struct FamilyMember<M: Ord + Clone> {
    pub label: &'static str,
    pub map: FlatMap<M>,
}

impl<M: Ord + Clone> FamilyMember<M> {
    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

/// Labeled maps X → target, flattened over an input basis of dimension `input_dim`.
#[derive(Debug, Clone)]
pub struct ProjectorFamily<M: Ord + Clone> {
    pub n: usize,
    pub r: usize,
    pub side: Side,
    pub input_dim: usize,
    pub members: Vec<FamilyMember<M>>,
}

impl<M: Ord + Clone> ProjectorFamily<M> {
    /// Members that vanish identically at this grade.
    pub fn zero_members(&self) -> Vec<&'static str> {
        self.members.iter().filter(|m| m.is_zero()).map(|m| m.label).collect()
    }

    pub fn maps(&self) -> Vec<FlatMap<M>> {
        self.members.iter().map(|m| m.map.clone()).collect()
    }
}

struct Inputs {
    sym: SymPowerSpace,
    prim: std::sync::Arc<PrimitiveSubspace>,
}

impl Inputs {
    fn new(n: usize, r: usize) -> Result<Self, WeitzenboeckError> {
        check_grade(n, r)?;
        Ok(Inputs { sym: SymPowerSpace::new(2, r), prim: primitive_basis(n, n - r)? })
    }

    fn sym_elem(&self, hs: usize) -> Elem<Q> {
        Elem::basis(self.sym.basis.mono(hs).clone())
    }

    /// Outputs on h_a ⊗ h_b ⊗ s, indexed by (2a+b)·dim Sym^r + s.
    fn h_outputs(&self, f: impl Fn(usize, usize, &Elem<Q>) -> Elem<Q>) -> Vec<Elem<Q>> {
        let ds = self.sym.dim();
        (0..4 * ds).map(|x| f(x / ds / 2, (x / ds) % 2, &self.sym_elem(x % ds))).collect()
    }

    /// Outputs on e_i ⊗ e_j ⊗ ω_k, indexed by (2n·i+j)·dim Λ∘ + k.
    fn e_outputs(&self, n: usize, f: impl Fn(usize, usize, &Elem<Q>) -> Elem<Q> + Sync) -> Vec<Elem<Q>> {
        let p = self.prim.dim();
        (0..4 * n * n * p)
            .into_par_iter()
            .map(|x| {
                let pair = x / p;
                f(pair / (2 * n), pair % (2 * n), self.prim.vector(x % p))
            })
            .collect()
    }
}

fn flatten(outputs: &[Elem<Q>]) -> FlatMap<Mono> {
    let mut out = FlatMap::new();
    for (x, w) in outputs.iter().enumerate() {
        for (t, c) in w.iter() {
            out.add_term((x, t.clone()), c.clone());
        }
    }
    out
}

const H_LEFT_LABELS: [&str; 2] = ["ℂ", "Sym²H"];
const H_RIGHT_LABELS: [&str; 2] = ["−+", "+−"];
const E_LEFT_LABELS: [&str; 3] = ["ℂ", "Sym²E", "Λ²∘E"];
const E_RIGHT_LABELS: [&str; 3] = ["−+", "+−", "K"];

/// The H-side families on H ⊗ H ⊗ Sym^r H.
pub fn h_family(n: usize, r: usize, side: Side) -> Result<ProjectorFamily<Mono>, WeitzenboeckError> {
    let inputs = Inputs::new(n, r)?;
    let members = match side {
        Side::Left => H_LEFT
            .iter()
            .zip(H_LEFT_LABELS)
            .map(|(&k, label)| FamilyMember { label, map: flatten(&inputs.h_outputs(|a, b, s| h_left(k, a, b, s))) })
            .collect(),
        Side::Right => H_RIGHT
            .iter()
            .zip(H_RIGHT_LABELS)
            .map(|(&k, label)| FamilyMember { label, map: flatten(&inputs.h_outputs(|a, b, s| h_right(k, a, b, s))) })
            .collect(),
    };
    Ok(ProjectorFamily { n, r, side, input_dim: 4 * inputs.sym.dim(), members })
}

/// The E-side families on E ⊗ E ⊗ Λ^{n−r}∘E.
pub fn e_family(n: usize, r: usize, side: Side) -> Result<ProjectorFamily<Mono>, WeitzenboeckError> {
    let inputs = Inputs::new(n, r)?;
    let es = ESide::new(n, r);
    let members = match side {
        Side::Left => E_LEFT
            .iter()
            .zip(E_LEFT_LABELS)
            .map(|(&k, label)| FamilyMember { label, map: flatten(&inputs.e_outputs(n, |i, j, w| es.left(k, i, j, w))) })
            .collect(),
        Side::Right => E_RIGHT
            .iter()
            .zip(E_RIGHT_LABELS)
            .map(|(&k, label)| FamilyMember {
                label,
                map: flatten(&inputs.e_outputs(n, |i, j, w| es.right(k, i, j, w))),
            })
            .collect(),
    };
    Ok(ProjectorFamily { n, r, side, input_dim: 4 * n * n * inputs.prim.dim(), members })
}

/// Members (E member, H member) of the full family, tensored over X(n,r).
fn tensor_family(
    n: usize,
    inputs: &Inputs,
    h_out: &[Vec<Elem<Q>>],
    e_out: &[Vec<Elem<Q>>],
) -> Vec<FlatMap<SpinKey>> {
    let ds = inputs.sym.dim();
    let p = inputs.prim.dim();
    let dim_s = ds * p;
    let d = 4 * n;
    let count = e_out.len() * h_out.len();
    let parts: Vec<Vec<Vec<FlatTerm>>> = (0..d)
        .into_par_iter()
        .map(|x| {
            let mut local: Vec<Vec<FlatTerm>> = vec![Vec::new(); count];
            let (a, i) = (x / (2 * n), x % (2 * n));
            for y in 0..d {
                let (b, j) = (y / (2 * n), y % (2 * n));
                for hs in 0..ds {
                    for k in 0..p {
                        let input = (tangent_index(n, a, i) * d + tangent_index(n, b, j)) * dim_s + hs * p + k;
                        let hx = (2 * a + b) * ds + hs;
                        let ex = (2 * n * i + j) * p + k;
                        for (em, eo) in e_out.iter().enumerate() {
                            let ev = &eo[ex];
                            if ev.is_zero() {
                                continue;
                            }
                            for (hm, ho) in h_out.iter().enumerate() {
                                for (s, c) in ho[hx].iter() {
                                    for (t, e) in ev.iter() {
                                        local[em * h_out.len() + hm]
                                            .push(((input, (s.clone(), t.clone())), c.clone() * e));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            local
        })
        .collect();
    (0..count).map(|m| parts.iter().flat_map(|p| p[m].iter().cloned()).collect()).collect()
}

/// The six-member families on X(n,r) = (H⊗E)⊗(H⊗E)⊗S_r with output in S_r.
/// Input index ((4n·X + Y)·dim S_r + s·dim Λ∘ + k), X = h_a⊗e_i at a·2n+i.
pub fn projector_family(n: usize, r: usize, side: Side) -> Result<ProjectorFamily<SpinKey>, WeitzenboeckError> {
    let inputs = Inputs::new(n, r)?;
    let es = ESide::new(n, r);
    let (h_out, e_out): (Outputs, Outputs) = match side {
        Side::Left => (
            H_LEFT.iter().map(|&k| inputs.h_outputs(|a, b, s| h_left(k, a, b, s))).collect(),
            E_LEFT.iter().map(|&k| inputs.e_outputs(n, |i, j, w| es.left(k, i, j, w))).collect(),
        ),
        Side::Right => (
            H_RIGHT.iter().map(|&k| inputs.h_outputs(|a, b, s| h_right(k, a, b, s))).collect(),
            E_RIGHT.iter().map(|&k| inputs.e_outputs(n, |i, j, w| es.right(k, i, j, w))).collect(),
        ),
    };
    let labels = match side {
        Side::Left => ROW_LABELS,
        Side::Right => COLUMN_LABELS,
    };
    let members = tensor_family(n, &inputs, &h_out, &e_out)
        .into_iter()
        .zip(labels)
        .map(|(map, label)| FamilyMember { label, map })
        .collect();
    let input_dim = 16 * n * n * inputs.sym.dim() * inputs.prim.dim();
    Ok(ProjectorFamily { n, r, side, input_dim, members })
}

pub fn left_projectors(n: usize, r: usize) -> Result<ProjectorFamily<SpinKey>, WeitzenboeckError> {
    projector_family(n, r, Side::Left)
}

pub fn right_projectors(n: usize, r: usize) -> Result<ProjectorFamily<SpinKey>, WeitzenboeckError> {
    projector_family(n, r, Side::Right)
}

// ---- recovery --------------------------------------------------------------------

/// Right H-members that survive at grade r.
pub fn surviving_h(r: usize) -> Vec<usize> {
    if r == 0 {
        vec![0]
    } else {
        vec![0, 1]
    }
}

/// Right E-members that survive at grade r.
pub fn surviving_e(n: usize, r: usize) -> Vec<usize> {
    if r == 0 {
        vec![1, 2]
    } else if r == n {
        vec![0]
    } else {
        vec![0, 1, 2]
    }
}

/// Surviving columns of the full matrix.
pub fn surviving_columns(n: usize, r: usize) -> Vec<usize> {
    let h = surviving_h(r);
    let mut cols: Vec<usize> = surviving_e(n, r).iter().flat_map(|e| h.iter().map(move |h| 2 * e + h)).collect();
    cols.sort_unstable();
    cols
}

/// Solution of left_i = Σ_j W_ij right_j over the surviving right members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recovery {
    /// Zero in columns whose right member vanishes.
    pub matrix: Matrix<Q>,
    pub live_rows: Vec<bool>,
    pub live_cols: Vec<usize>,
    pub rank: usize,
}

impl Recovery {
    pub fn is_generic(&self) -> bool {
        self.live_cols.len() == self.matrix.ncols()
    }

    /// First entry on a surviving column that differs from `closed`.
    pub fn first_mismatch(&self, closed: &Matrix<Q>) -> Option<(usize, usize, Q, Q)> {
        for i in 0..self.matrix.nrows() {
            for &j in &self.live_cols {
                if self.matrix[(i, j)] != closed[(i, j)] {
                    return Some((i, j, self.matrix[(i, j)].clone(), closed[(i, j)].clone()));
                }
            }
        }
        None
    }
}

fn solve_family<M: Ord + Clone + fmt::Debug + Send + Sync>(
    left: &ProjectorFamily<M>,
    right: &ProjectorFamily<M>,
    expected: &[usize],
) -> Result<Recovery, WeitzenboeckError> {
    let live: Vec<usize> = (0..right.members.len()).filter(|&j| !right.members[j].is_zero()).collect();
    if live != expected {
        return Err(WeitzenboeckError::UnexpectedDegeneracy { found: live, expected: expected.to_vec() });
    }
    let cols: Vec<FlatMap<M>> = live.iter().map(|&j| right.members[j].map.clone()).collect();
    let rank = rank_of(&cols);
    if rank < cols.len() {
        return Err(WeitzenboeckError::RankDeficient { rank, expected: cols.len() });
    }
    let rows: Vec<Result<Vec<Q>, WeitzenboeckError>> = left
        .members
        .par_iter()
        .map(|m| {
            if m.is_zero() {
                return Ok(vec![Q::from(0); cols.len()]);
            }
            solve_in_span(&cols, &m.map).map_err(|e| match e {
                LinalgError::Inconsistent(witness) => WeitzenboeckError::Inconsistent { row: m.label, witness },
                LinalgError::RankDeficient { rank, expected } => WeitzenboeckError::RankDeficient { rank, expected },
                LinalgError::Shape(s) => WeitzenboeckError::Inconsistent { row: m.label, witness: s },
            })
        })
        .collect();
    let mut matrix = Matrix::zeros(left.members.len(), right.members.len());
    for (i, row) in rows.into_iter().enumerate() {
        for (x, &j) in row?.into_iter().zip(&live) {
            matrix[(i, j)] = x;
        }
    }
    let live_rows = left.members.iter().map(|m| !m.is_zero()).collect();
    Ok(Recovery { matrix, live_rows, live_cols: live, rank })
}

/// Brute-force 2×2 H-part from the families on H ⊗ H ⊗ Sym^r H.
pub fn recover_wh(n: usize, r: usize) -> Result<Recovery, WeitzenboeckError> {
    solve_family(&h_family(n, r, Side::Left)?, &h_family(n, r, Side::Right)?, &surviving_h(r))
}

/// Brute-force 3×3 E-part from the families on E ⊗ E ⊗ Λ^{n−r}∘E.
pub fn recover_we(n: usize, r: usize) -> Result<Recovery, WeitzenboeckError> {
    solve_family(&e_family(n, r, Side::Left)?, &e_family(n, r, Side::Right)?, &surviving_e(n, r))
}

/// Brute-force 6×6 matrix from the full families on X(n,r).
pub fn recover_w(n: usize, r: usize) -> Result<Recovery, WeitzenboeckError> {
    let (left, right) = rayon::join(|| left_projectors(n, r), || right_projectors(n, r));
    solve_family(&left?, &right?, &surviving_columns(n, r))
}

fn recovery_against(tag: String, rec: Result<Recovery, WeitzenboeckError>, closed: &Matrix<Q>) -> Check {
    match rec {
        Err(e) => Check::fail(tag, e.to_string()),
        Ok(rec) => Check::from_witness(
            tag,
            rec.first_mismatch(closed).map(|(i, j, a, b)| format!("entry ({},{}) recovered {a}, closed {b}", i + 1, j + 1)),
        ),
    }
}

/// Sub-oracles and the full recovery against the closed forms.
pub fn recovery_check(n: usize, r: usize) -> Vec<Check> {
    let tag = format!("n={n} r={r}");
    vec![
        recovery_against(format!("W_H recovered {tag}"), recover_wh(n, r), &wh_closed(r)),
        recovery_against(format!("W_E recovered {tag}"), recover_we(n, r), &we_closed(n, r)),
        recovery_against(format!("W recovered {tag}"), recover_w(n, r), &w_full(n, r).entries),
    ]
}

// ---- identities among the family members -------------------------------------

fn flat_diff(tag: String, lhs: &FlatMap<Mono>, rhs: &FlatMap<Mono>) -> Check {
    let diff = lhs.clone() - rhs.clone();
    Check::from_witness(tag, diff.first_key().map(|k| format!("{k:?}")))
}

/// The rewritten forms of the H and E family members, and pr_K from the kernel projection.
pub fn family_identities_check(n: usize, r: usize) -> Vec<Check> {
    let tag = format!("n={n} r={r}");
    let inputs = match Inputs::new(n, r) {
        Ok(i) => i,
        Err(e) => return vec![Check::fail(format!("family identities {tag}"), e.to_string())],
    };
    let es = ESide::new(n, r);
    let rq = int(r);
    let rr = |a: usize, b: usize, s: &Elem<Q>| sym_mul(&unit(a), &sym_contract_circ(&h_sharp(b), s));
    let sigma_h = |a: usize, b: usize, s: &Elem<Q>| h_left(HLeft::Trivial, a, b, s);

    let sym2 = flatten(&inputs.h_outputs(|a, b, s| h_left(HLeft::Sym2, a, b, s)));
    let sym2_alt = flatten(&inputs.h_outputs(|a, b, s| {
        sigma_h(a, b, s).scale(&Q::from(rq)) + rr(a, b, s).scale(&Q::from(2 * rq))
    }));
    let mp = flatten(&inputs.h_outputs(|a, b, s| h_right(HRight::MinusPlus, a, b, s)));
    let mp_alt = flatten(&inputs.h_outputs(|a, b, s| sigma_h(a, b, s) + rr(a, b, s).scale(&q(rq, rq + 1))));

    let (nq, r1) = (int(n), rq + 1);
    let e_sym2 = flatten(&inputs.e_outputs(n, |i, j, w| es.left(ELeft::Sym2, i, j, w)));
    let e_sym2_alt = flatten(&inputs.e_outputs(n, |i, j, w| {
        es.lower_raise(i, j, w).scale(&q(rq + 2, r1)) - es.raise_lower(i, j, w) + w.scale(&es.sigma(i, j))
    }));
    let e_lam = flatten(&inputs.e_outputs(n, |i, j, w| es.left(ELeft::Lambda2, i, j, w)));
    let e_lam_alt = flatten(&inputs.e_outputs(n, |i, j, w| {
        es.lower_raise(i, j, w).scale(&q(-rq, r1)) - es.raise_lower(i, j, w)
            + w.scale(&(q(rq, nq) * &es.sigma(i, j)))
    }));

    let mut checks = vec![
        flat_diff(format!("(h1h2)(s) = rσ(h1,h2)s + 2r h1·h2♯⌟∘s {tag}"), &sym2, &sym2_alt),
        flat_diff(format!("h1♯⌟∘(h2·s) = σ(h1,h2)s + r/(r+1) h1·h2♯⌟∘s {tag}"), &mp, &mp_alt),
        flat_diff(format!("Sym²E member rewritten {tag}"), &e_sym2, &e_sym2_alt),
        flat_diff(format!("trace-free Λ²E member rewritten {tag}"), &e_lam, &e_lam_alt),
    ];
    checks.push(kernel_member_check(n, r, &inputs, &es));
    checks
}

/// pr_K(e1⊗e2⊗ω) equals e1 contracted against the kernel projection of e2⊗ω.
fn kernel_member_check(n: usize, r: usize, inputs: &Inputs, es: &ESide) -> Check {
    let tag = format!("K member = contraction of the kernel projection n={n} r={r}");
    let proj = match kernel_projection(n, r) {
        Ok(p) => p,
        Err(e) => return Check::fail(tag, e.to_string()),
    };
    let prim = &inputs.prim;
    let p = prim.dim();
    let direct = flatten(&inputs.e_outputs(n, |i, j, w| es.right(ERight::Kernel, i, j, w)));
    let via = flatten(&inputs.e_outputs(n, |i, j, w| {
        let k = prim.coords_sparse(w).first_key().copied().expect("basis vector");
        let image = proj.column(j * p + k);
        let mut out = Elem::new();
        for (&col, c) in image.iter() {
            let (l, kk) = (col / p, col % p);
            let s = es.sigma(i, l);
            if !s.is_zero() {
                out.add_scaled(prim.vector(kk), &(s * c));
            }
        }
        out
    }));
    flat_diff(tag, &direct, &via)
}

// ---- curvature operator sums ------------------------------------------------------

/// Σ_{a,b} dh_a♭·dh_b⌟(h_a·h_b♯⌟ + h_b·h_a♯⌟) on Sym^r H, contractions acting as derivations.
pub fn h_operator_sum(r: usize) -> Operator<Q> {
    let sym = SymPowerSpace::new(2, r);
    let hsp = SymplecticSpace::h();
    sym.basis.operator(&sym.basis, |m| {
        let s = Elem::basis(m.clone());
        let mut out = Elem::new();
        for a in 0..2 {
            for b in 0..2 {
                let inner = sym_mul(&unit(a), &sym_contract(&h_sharp(b), &s))
                    + sym_mul(&unit(b), &sym_contract(&h_sharp(a), &s));
                out.add_comb(&sym_mul(&flat(hsp, a), &sym_contract(&unit(b), &inner)));
            }
        }
        out
    })
}

/// Σ_{i,j} de_i♭∧∘ de_j⌟(e_i∧∘e_j♯⌟ + e_j∧∘e_i♯⌟) on Λ^{n−r}∘E.
pub fn e_operator_sum(n: usize, r: usize) -> Result<Operator<Q>, WeitzenboeckError> {
    check_grade(n, r)?;
    let es = ESide::new(n, r);
    let prim = primitive_basis(n, n - r)?;
    Ok(prim.operator_to(&prim, |w| {
        let mut out = Elem::new();
        for i in 0..2 * n {
            for j in 0..2 * n {
                let inner = es.lower_raise(i, j, w) + es.lower_raise(j, i, w);
                out.add_comb(&es.wedge(&flat(es.space, i), &contract(&unit(j), &inner)));
            }
        }
        out
    }))
}

/// Σ_{i,j} σ(de_i♭, de_j♭)σ(e_i, e_j) over a symplectic space.
pub fn trace_pairing(space: SymplecticSpace) -> Q {
    let d = space.dim();
    let mut acc = Q::from(0);
    for i in 0..d {
        for j in 0..d {
            let s = space.sigma_coeffs(&flat(space, i), &flat(space, j)) * &Q::from(space.sigma_basis(i, j));
            acc += s;
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureScalars {
    pub n: usize,
    pub r: usize,
    pub h_eigenvalue: Q,
    pub e_eigenvalue: Q,
    pub h_trace: Q,
    pub e_trace: Q,
    /// Coefficients of κ/4 in the two curvature rows.
    pub h_kappa: Q,
    pub e_kappa: Q,
}

/// Eigenvalues of the two operator sums and the κ/4 coefficients they induce
/// through the model curvature −κ/(8n(n+2))(R^H + R^E).
pub fn curvature_scalars(n: usize, r: usize) -> Result<CurvatureScalars, WeitzenboeckError> {
    check_grade(n, r)?;
    let h_eigenvalue = h_operator_sum(r).scalar_value().ok_or(WeitzenboeckError::NotScalar)?;
    let e_eigenvalue = e_operator_sum(n, r)?.scalar_value().ok_or(WeitzenboeckError::NotScalar)?;
    let h_trace = trace_pairing(SymplecticSpace::h());
    let e_trace = trace_pairing(SymplecticSpace::new(n));
    let nn = int(n);
    // ½ from the curvature action, 2 for the two symmetric terms, 4 to count in units of κ/4
    let prefactor = q(1, 2) * &Q::from(2) * &q(-1, 8 * nn * (nn + 2)) * &Q::from(4);
    let h_kappa = prefactor.clone() * &e_trace * &h_eigenvalue;
    let e_kappa = prefactor * &h_trace * &e_eigenvalue;
    Ok(CurvatureScalars { n, r, h_eigenvalue, e_eigenvalue, h_trace, e_trace, h_kappa, e_kappa })
}

pub fn curvature_scalar_identities(n: usize, r: usize) -> Vec<Check> {
    let tag = format!("n={n} r={r}");
    let cs = match curvature_scalars(n, r) {
        Ok(c) => c,
        Err(e) => return vec![Check::fail(format!("curvature operator sums {tag}"), e.to_string())],
    };
    let (nq, rq) = (int(n), int(r));
    let (kh, ke) = lhs_kappa_slots(n, r);
    let eq = |name: String, got: &Q, want: Q| Check::from_bool(name, *got == want, || format!("got {got}, want {want}"));
    vec![
        eq(format!("H operator sum = −r(r+2) {tag}"), &cs.h_eigenvalue, Q::from(-rq * (rq + 2))),
        eq(format!("E operator sum = −(n−r)(n+r+2) {tag}"), &cs.e_eigenvalue, Q::from(-(nq - rq) * (nq + rq + 2))),
        eq(format!("Sym²H⊗ℂ κ-coefficient {tag}"), &cs.h_kappa, kh),
        eq(format!("ℂ⊗Sym²E κ-coefficient {tag}"), &cs.e_kappa, ke),
    ]
}

// ---- row combinations and the bound ------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCombination {
    /// aᵀW
    pub w_row: Vec<Q>,
    /// Coefficient of ∇*∇ on the left.
    pub laplacian: Q,
    /// Coefficient of κ/4 on the left.
    pub kappa: Q,
    pub curly_c: Q,
    pub curly_l: Q,
    /// aᵀW times the slot factors: coefficients of the operators in [`COLUMN_SLOTS`].
    pub operators: Vec<Q>,
    /// Coefficients of the product forms (D⁻₋D⁺₊, …); None for the twistor slots.
    pub products: Vec<Option<Q>>,
}

pub fn row_combination(w: &WeitzenboeckMatrix, a: &[Q]) -> Result<RowCombination, WeitzenboeckError> {
    if a.len() != 6 {
        return Err(WeitzenboeckError::BadVector(a.len()));
    }
    let w_row = w.entries.left_mul(a);
    let (kh, ke) = lhs_kappa_slots(w.n, w.r);
    let mut laplacian = Q::from(0);
    let mut kappa = Q::from(0);
    let mut curly_c = Q::from(0);
    let mut curly_l = Q::from(0);
    for (slot, ai) in ROW_SLOTS.iter().zip(a) {
        match slot {
            RowSlot::RoughLaplacian => laplacian -= ai,
            RowSlot::KappaH => kappa += ai.clone() * &kh,
            RowSlot::KappaE => kappa += ai.clone() * &ke,
            RowSlot::CurlyC => curly_c += ai,
            RowSlot::CurlyL => curly_l += ai,
            RowSlot::Zero => {}
        }
    }
    let operators = w_row.iter().zip(&COLUMN_SLOTS).map(|(x, s)| x.clone() * &s.factor()).collect();
    let products = w_row.iter().zip(&COLUMN_SLOTS).map(|(x, s)| s.product_factor().map(|f| x.clone() * &f)).collect();
    Ok(RowCombination { w_row, laplacian, kappa, curly_c, curly_l, operators, products })
}

/// (−1, 1/n, 1, 0, 0, −1/r), r ≥ 1.
pub fn lichnerowicz_vector(n: usize, r: usize) -> Vec<Q> {
    let (n, r) = (int(n), int(r));
    vec![q(-1, 1), q(1, n), q(1, 1), q(0, 1), q(0, 1), q(-1, r)]
}

/// (0, r/n, 0, 0, 0, −1)
pub fn twistor_free_vector(n: usize, r: usize) -> Vec<Q> {
    vec![q(0, 1), q(int(r), int(n)), q(0, 1), q(0, 1), q(0, 1), q(-1, 1)]
}

/// (0, (n+r+2)/n, r+2, 0, 0, −(r+2)/r); at r = 0 the last entry is dropped.
pub fn estimate_vector(n: usize, r: usize) -> Vec<Q> {
    let (nq, rq) = (int(n), int(r));
    let last = if r == 0 { q(0, 1) } else { q(-(rq + 2), rq) };
    vec![q(0, 1), q(nq + rq + 2, nq), q(rq + 2, 1), q(0, 1), q(0, 1), last]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundDerivation {
    pub combination: RowCombination,
    /// κ/4 coefficient divided by the D⁻₊D⁺₋ coefficient.
    pub ratio: Q,
}

/// Re-derives (n+r+3)/(n+2) from the estimate row combination: the D⁻₋ and T⁻
/// columns must vanish where they survive, the (D⁺₊)*D⁺₊ and (T⁺)*T⁺ coefficients must be
/// nonpositive so the squared norms can be dropped, and the κ-coefficient is divided by the D⁻₊D⁺₋ coefficient.
pub fn derive_bound_coefficient(n: usize, r: usize) -> Result<BoundDerivation, WeitzenboeckError> {
    if n < 2 {
        return Err(WeitzenboeckError::RankTooSmall(n));
    }
    check_grade(n, r)?;
    let live = surviving_columns(n, r);
    if !live.contains(&2) {
        return Err(WeitzenboeckError::BadCombination(format!("the D⁻₊D⁺₋ column vanishes at r = {r}")));
    }
    let comb = row_combination(&w_full(n, r), &estimate_vector(n, r))?;
    for j in [3, 5].into_iter().filter(|j| live.contains(j)) {
        if !comb.w_row[j].is_zero() {
            return Err(WeitzenboeckError::BadCombination(format!("column {} is {}", j + 1, comb.w_row[j])));
        }
    }
    for j in [0, 4].into_iter().filter(|j| live.contains(j)) {
        if comb.operators[j].is_positive() {
            return Err(WeitzenboeckError::BadCombination(format!("slot {} enters with the wrong sign", j + 1)));
        }
    }
    let d = comb.products[2].clone().unwrap_or_else(|| Q::from(0));
    if !d.is_positive() || !comb.laplacian.is_zero() {
        return Err(WeitzenboeckError::BadCombination(format!("D⁻₊D⁺₋ coefficient {d}")));
    }
    let ratio = comb.kappa.clone() / d;
    Ok(BoundDerivation { combination: comb, ratio })
}

/// λ² ≥ (n+r+3)/(n+2)·κ/4.
pub fn estimate_bound(n: usize, r: usize, kappa: &Q) -> Result<Q, WeitzenboeckError> {
    if n < 2 {
        return Err(WeitzenboeckError::RankTooSmall(n));
    }
    check_grade(n, r)?;
    if !kappa.is_positive() {
        return Err(WeitzenboeckError::NonPositiveKappa(kappa.clone()));
    }
    Ok(q(int(n + r + 3), int(n + 2)) * kappa * &q(1, 4))
}

pub fn row_combination_check(n: usize, r: usize) -> Vec<Check> {
    let tag = format!("n={n} r={r}");
    let w = w_full(n, r);
    let (nq, rq) = (int(n), int(r));
    let zero = Q::from(0);
    let mut checks = Vec::new();
    if (1..n).contains(&r) {
        let name = format!("Lichnerowicz combination {tag}");
        checks.push(match row_combination(&w, &lichnerowicz_vector(n, r)) {
            Ok(c) => {
                let want = [q(0, 1), q(1, 1), q(1, 1), q(0, 1)];
                let ok = c.laplacian == Q::from(1)
                    && c.kappa == Q::from(1)
                    && c.w_row[4..].iter().all(|x| x.is_zero())
                    && c.products[..4].iter().zip(&want).all(|(p, w)| p.as_ref() == Some(w))
                    && c.curly_c == zero
                    && c.curly_l == zero;
                Check::from_bool(name, ok, || format!("{c:?}"))
            }
            Err(e) => Check::fail(name, e.to_string()),
        });
    }
    if r >= 1 {
        let name = format!("twistor-free combination {tag}");
        checks.push(match row_combination(&w, &twistor_free_vector(n, r)) {
            Ok(c) => {
                let want = [
                    q(rq, 2),
                    q(rq * (rq + 2), 2 * (rq + 1)),
                    q(rq * rq, 2 * (rq + 1)),
                    q(rq * rq * (rq + 2), 2 * (rq + 1) * (rq + 1)),
                ];
                let ok = c.products[..4].iter().zip(&want).all(|(p, w)| p.as_ref() == Some(w))
                    && c.w_row[4..].iter().all(|x| x.is_zero())
                    && c.kappa == q(rq * rq * (rq + 2), nq * (nq + 2))
                    && c.laplacian.is_zero();
                Check::from_bool(name, ok, || format!("{c:?}"))
            }
            Err(e) => Check::fail(name, e.to_string()),
        });
    }
    if r == n {
        return checks;
    }
    let name = format!("estimate combination {tag}");
    checks.push(match derive_bound_coefficient(n, r) {
        Ok(d) => {
            let kappa_ok = d.combination.kappa == q((rq + 2) * (nq + rq + 2), nq + 2);
            let ratio_ok = d.ratio == q(nq + rq + 3, nq + 2);
            Check::from_bool(name, kappa_ok && ratio_ok, || format!("κ-coefficient {}, ratio {}", d.combination.kappa, d.ratio))
        }
        Err(e) => Check::fail(name, e.to_string()),
    });
    checks
}

/// Every Weitzenböck check for one n, all grades.
pub fn weitzenboeck_report(n: usize) -> Vec<Check> {
    let per_grade: Vec<Vec<Check>> = (0..=n)
        .into_par_iter()
        .map(|r| {
            let mut c = recovery_check(n, r);
            c.extend(kernel_projection_check(n, r));
            c.extend(family_identities_check(n, r));
            c.extend(curvature_scalar_identities(n, r));
            if n >= 2 {
                c.extend(row_combination_check(n, r));
            }
            c
        })
        .collect();
    per_grade.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovery_small() {
        for r in 0..=2 {
            for c in recovery_check(2, r) {
                assert!(c.passed, "{c:?}");
            }
        }
    }

    #[test]
    fn bound_rejects_nonpositive_kappa() {
        assert!(estimate_bound(2, 0, &Q::from(0)).is_err());
        assert_eq!(estimate_bound(2, 0, &Q::from(16)).unwrap(), Q::from(5));
    }
}
