//! Sparse exact linear algebra over a [`Field`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{Field, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("inconsistent system (residual at row key {0})")]
    Inconsistent(String),
    #[error("rank deficient: rank {rank} < {expected}")]
    RankDeficient { rank: usize, expected: usize },
}

/// Finite formal linear combination of basis labels `K`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Comb<K: Ord, F> {
    terms: BTreeMap<K, F>,
}

impl<K: Ord, F> Default for Comb<K, F> {
    fn default() -> Self {
        Comb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone + fmt::Debug, F: Field> fmt::Debug for Comb<K, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<K: Ord + Clone, F: Field> Comb<K, F> {
    pub fn new() -> Self {
        Comb { terms: BTreeMap::new() }
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, F::one())
    }

    pub fn term(k: K, c: F) -> Self {
        let mut out = Self::new();
        out.add_term(k, c);
        out
    }

    pub fn add_term(&mut self, k: K, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &F) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c);
        }
    }

    pub fn add_comb(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Comb { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Comb { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> F {
        self.terms.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &F)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn first_key(&self) -> Option<&K> {
        self.terms.keys().next()
    }

    /// Linear extension of a basis map.
    pub fn map_linear<K2: Ord + Clone, G>(&self, mut f: G) -> Comb<K2, F>
    where
        G: FnMut(&K) -> Comb<K2, F>,
    {
        let mut out = Comb::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Relabel basis elements (labels may collide; coefficients add up).
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Comb<K2, F> {
        let mut out = Comb::new();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> Comb<K, G> {
        let mut out = Comb::new();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn into_map(self) -> BTreeMap<K, F> {
        self.terms
    }

    pub fn from_map(m: BTreeMap<K, F>) -> Self {
        let mut out = Self::new();
        for (k, c) in m {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone, F: Field> FromIterator<(K, F)> for Comb<K, F> {
    fn from_iter<I: IntoIterator<Item = (K, F)>>(iter: I) -> Self {
        let mut out = Comb::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord + Clone, F: Field> std::ops::Add for Comb<K, F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.add_comb(&rhs);
        self
    }
}

impl<K: Ord + Clone, F: Field> std::ops::Sub for Comb<K, F> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.add_scaled(&rhs, &-F::one());
        self
    }
}

/// Embed a rational combination into a larger field.
pub fn lift<K: Ord + Clone, F: Field>(c: &Comb<K, Rational>) -> Comb<K, F> {
    c.convert(|q| F::from_rational(q.clone()))
}

pub type SparseVec<F> = Comb<usize, F>;

/// Sparse matrix stored by columns.
#[derive(Clone, PartialEq, Eq)]
pub struct Operator<F: Field> {
    rows: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Field> fmt::Debug for Operator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator {}x{}", self.rows, self.cols.len())?;
        for (j, c) in self.cols.iter().enumerate() {
            if !c.is_zero() {
                writeln!(f, "  col {j}: {c:?}")?;
            }
        }
        Ok(())
    }
}

impl<F: Field> Operator<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Operator { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, F::one())
    }

    pub fn scalar(n: usize, c: F) -> Self {
        Operator { rows: n, cols: (0..n).map(|j| SparseVec::term(j, c.clone())).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec<F>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&k| k < rows)));
        Operator { rows, cols }
    }

    pub fn from_fn(rows: usize, ncols: usize, f: impl FnMut(usize) -> SparseVec<F>) -> Self {
        Self::from_columns(rows, (0..ncols).map(f).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> F {
        self.cols[j].get(&i)
    }

    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (j, c) in v.iter() {
            out.add_scaled(&self.cols[*j], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Operator<F>) -> Result<Operator<F>, LinalgError> {
        if other.rows != self.ncols() {
            return Err(LinalgError::Shape(format!(
                "compose {}x{} after {}x{}",
                self.rows,
                self.ncols(),
                other.rows,
                other.ncols()
            )));
        }
        Ok(Operator { rows: self.rows, cols: other.cols.iter().map(|c| self.apply(c)).collect() })
    }

    pub fn add(&self, other: &Operator<F>) -> Result<Operator<F>, LinalgError> {
        self.lin_comb(other, &F::one())
    }

    pub fn sub(&self, other: &Operator<F>) -> Result<Operator<F>, LinalgError> {
        self.lin_comb(other, &-F::one())
    }

    /// `self + c·other`.
    pub fn lin_comb(&self, other: &Operator<F>, c: &F) -> Result<Operator<F>, LinalgError> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return Err(LinalgError::Shape("sum of operators with different shapes".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.cols.iter_mut().zip(&other.cols) {
            a.add_scaled(b, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Operator<F> {
        Operator { rows: self.rows, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// `Some(c)` if the operator equals `c·id`.
    pub fn scalar_value(&self) -> Option<F> {
        if self.rows != self.ncols() {
            return None;
        }
        if self.rows == 0 {
            return Some(F::zero());
        }
        let c = self.entry(0, 0);
        let ok = self.cols.iter().enumerate().all(|(j, col)| {
            col.iter().all(|(i, v)| *i == j && *v == c) && (c.is_zero() || col.len() == 1)
        });
        ok.then_some(c)
    }

    pub fn convert<G: Field>(&self, f: impl Fn(&F) -> G) -> Operator<G> {
        Operator { rows: self.rows, cols: self.cols.iter().map(|c| c.convert(&f)).collect() }
    }

    /// First column whose entries differ, as a witness for failed equalities.
    pub fn first_difference(&self, other: &Operator<F>) -> Option<usize> {
        (0..self.ncols().min(other.ncols())).find(|&j| self.cols[j] != other.cols[j])
    }

    pub fn transpose(&self) -> Operator<F> {
        let mut cols = vec![SparseVec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[*i].add_term(j, v.clone());
            }
        }
        Operator { rows: self.ncols(), cols }
    }
}

pub fn commutator<F: Field>(a: &Operator<F>, b: &Operator<F>) -> Result<Operator<F>, LinalgError> {
    a.compose(b)?.sub(&b.compose(a)?)
}

pub fn anticommutator<F: Field>(a: &Operator<F>, b: &Operator<F>) -> Result<Operator<F>, LinalgError> {
    a.compose(b)?.add(&b.compose(a)?)
}

/// Small dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Kronecker product; each block of the result is `other` scaled by an entry of `self`.
    pub fn kron(&self, other: &Matrix<F>) -> Matrix<F> {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            self[(i / other.rows, j / other.cols)].clone() * &other[(i % other.rows, j % other.cols)]
        })
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows);
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = F::zero();
            for k in 0..self.cols {
                acc += self[(i, k)].clone() * &other[(k, j)];
            }
            acc
        })
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, a: &[F]) -> Vec<F> {
        assert_eq!(a.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let mut acc = F::zero();
                for (i, ai) in a.iter().enumerate() {
                    acc += ai.clone() * &self[(i, j)];
                }
                acc
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new();
        for i in 0..self.rows {
            ech.insert(dense_to_sparse(self.row(i)));
        }
        ech.rank()
    }
}

impl<F> std::ops::Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        &self.data[i * self.cols + j]
    }
}

impl<F> std::ops::IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dense_to_sparse<F: Field>(row: &[F]) -> SparseVec<F> {
    row.iter().enumerate().map(|(j, c)| (j, c.clone())).collect()
}

/// Incremental row echelon form. Pivot rows are normalised to a leading 1.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { pivots: BTreeMap::new() }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    /// Eliminate every pivot column from `row`.
    pub fn reduce(&self, row: &SparseVec<F>) -> SparseVec<F> {
        let mut r = row.clone();
        let mut cursor = 0usize;
        loop {
            let next = r.keys().find(|&&k| k >= cursor && self.pivots.contains_key(&k)).copied();
            let Some(c) = next else { break };
            let f = r.get(&c);
            r.add_scaled(&self.pivots[&c], &-f);
            cursor = c + 1;
        }
        r
    }

    /// Returns the new pivot column if `row` was independent.
    pub fn insert(&mut self, row: SparseVec<F>) -> Option<usize> {
        let r = self.reduce(&row);
        let c = *r.first_key()?;
        let inv = r.get(&c).inverse().expect("nonzero pivot");
        self.pivots.insert(c, r.scale(&inv));
        Some(c)
    }

    pub fn contains(&self, row: &SparseVec<F>) -> bool {
        self.reduce(row).is_zero()
    }

    /// Fully reduced rows keyed by pivot column.
    pub fn rref(&self) -> BTreeMap<usize, SparseVec<F>> {
        let mut out: BTreeMap<usize, SparseVec<F>> = BTreeMap::new();
        for (&c, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            for (&c2, row2) in &out {
                let f = r.get(&c2);
                if !f.is_zero() {
                    r.add_scaled(row2, &-f);
                }
            }
            out.insert(c, r);
        }
        out
    }

    /// Basis of the right kernel of the inserted rows inside F^ncols, with the free columns.
    pub fn nullspace(&self, ncols: usize) -> (Vec<SparseVec<F>>, Vec<usize>) {
        let rref = self.rref();
        let free: Vec<usize> = (0..ncols).filter(|c| !rref.contains_key(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = SparseVec::term(f, F::one());
                for (&p, row) in &rref {
                    let x = row.get(&f);
                    if !x.is_zero() {
                        v.add_term(p, -x);
                    }
                }
                v
            })
            .collect();
        (basis, free)
    }
}

pub fn rank<F: Field>(rows: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Do two families of row vectors span the same subspace?
pub fn same_row_space<F: Field>(a: &[SparseVec<F>], b: &[SparseVec<F>]) -> bool {
    let mut ea = Echelon::new();
    for r in a {
        ea.insert(r.clone());
    }
    let mut eb = Echelon::new();
    for r in b {
        eb.insert(r.clone());
    }
    ea.rank() == eb.rank() && b.iter().all(|r| ea.contains(r)) && a.iter().all(|r| eb.contains(r))
}

/// Solve `target = Σ_j x_j · columns[j]` exactly, with coordinates keyed by `K`.
/// The columns must be linearly independent.
pub fn solve_in_span<K: Ord + Clone + fmt::Debug, F: Field>(
    columns: &[Comb<K, F>],
    target: &Comb<K, F>,
) -> Result<Vec<F>, LinalgError> {
    let k = columns.len();
    let mut rows: BTreeMap<K, SparseVec<F>> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for (key, c) in col.iter() {
            rows.entry(key.clone()).or_default().add_term(j, c.clone());
        }
    }
    for (key, c) in target.iter() {
        rows.entry(key.clone()).or_default().add_term(k, c.clone());
    }
    let mut ech = Echelon::new();
    for (key, row) in rows {
        if ech.insert(row) == Some(k) {
            return Err(LinalgError::Inconsistent(format!("{key:?}")));
        }
    }
    let rref = ech.rref();
    let rank = rref.keys().filter(|&&c| c < k).count();
    if rank < k {
        return Err(LinalgError::RankDeficient { rank, expected: k });
    }
    Ok((0..k).map(|j| rref[&j].get(&k)).collect())
}

/// Rank of a family of combinations.
pub fn rank_of<K: Ord + Clone, F: Field>(vectors: &[Comb<K, F>]) -> usize {
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    let mut ech = Echelon::new();
    for v in vectors {
        let mut row = SparseVec::new();
        for (key, c) in v.iter() {
            let next = index.len();
            let i = *index.entry(key.clone()).or_insert(next);
            row.add_term(i, c.clone());
        }
        ech.insert(row);
    }
    ech.rank()
}

pub fn rational_operator_to_scalar(op: &Operator<Rational>) -> Operator<Scalar> {
    op.convert(|q| Scalar::real(q.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64) -> Rational {
        Rational::from(p)
    }

    #[test]
    fn echelon_rank_and_kernel() {
        let rows = vec![
            dense_to_sparse(&[r(1), r(2), r(3)]),
            dense_to_sparse(&[r(2), r(4), r(6)]),
            dense_to_sparse(&[r(0), r(1), r(1)]),
        ];
        let mut e = Echelon::new();
        for row in rows {
            e.insert(row);
        }
        assert_eq!(e.rank(), 2);
        let (ker, free) = e.nullspace(3);
        assert_eq!(free, vec![2]);
        let v = &ker[0];
        assert_eq!(v.get(&0) + r(2) * v.get(&1) + r(3) * v.get(&2), r(0));
        assert_eq!(v.get(&1) + v.get(&2), r(0));
    }

    #[test]
    fn solve_and_inconsistency() {
        let a: Comb<&str, Rational> = [("x", r(1)), ("y", r(1))].into_iter().collect();
        let b: Comb<&str, Rational> = [("y", r(1)), ("z", r(2))].into_iter().collect();
        let t = a.scale(&r(3)) + b.scale(&r(-2));
        assert_eq!(solve_in_span(&[a.clone(), b.clone()], &t).unwrap(), vec![r(3), r(-2)]);
        let bad: Comb<&str, Rational> = Comb::basis("x");
        assert!(matches!(solve_in_span(&[a.clone(), b], &bad), Err(LinalgError::Inconsistent(_))));
        assert!(matches!(
            solve_in_span(&[a.clone(), a.scale(&r(2))], &a),
            Err(LinalgError::RankDeficient { .. })
        ));
    }

    #[test]
    fn kron_blocks() {
        let a = Matrix::from_rows(vec![vec![r(1), r(2)], vec![r(3), r(4)]]);
        let b = Matrix::from_rows(vec![vec![r(0), r(1)], vec![r(1), r(0)]]);
        let k = a.kron(&b);
        assert_eq!(k[(0, 1)], r(1));
        assert_eq!(k[(2, 3)], r(4));
        assert_eq!(k[(3, 2)], r(4));
        assert_eq!(k[(1, 2)], r(2));
    }

    #[test]
    fn operator_scalar_detection() {
        let id: Operator<Rational> = Operator::scalar(3, r(5));
        assert_eq!(id.scalar_value(), Some(r(5)));
        let z: Operator<Rational> = Operator::zero(2, 2);
        assert_eq!(z.scalar_value(), Some(r(0)));
        let mut cols = vec![SparseVec::term(0, r(1)), SparseVec::term(0, r(1))];
        cols[1].add_term(1, r(1));
        assert_eq!(Operator::from_columns(2, cols).scalar_value(), None);
    }
}
