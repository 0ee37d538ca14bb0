//! Standard symplectic spaces with musical isomorphisms and quaternionic structure.

use thiserror::Error;

use crate::linalg::Comb;
use crate::scalar::Field;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("vectors live in different spaces (half dims {0} and {1})")]
    Mismatch(usize, usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    OutOfRange { index: usize, dim: usize },
}

/// Coefficient map of a vector or covector on the standard basis.
pub type Coeffs<F> = Comb<u8, F>;

/// The space with basis e_0..e_{2m-1} and σ(e_i, e_{m+i}) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    m: usize,
}

impl SymplecticSpace {
    pub fn new(half_dim: usize) -> Self {
        assert!(half_dim >= 1, "half dimension must be positive");
        SymplecticSpace { m: half_dim }
    }

    /// The two-dimensional space H.
    pub fn h() -> Self {
        Self::new(1)
    }

    pub fn half_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        2 * self.m
    }

    pub fn label(&self, i: usize) -> String {
        format!("e{i}")
    }

    /// σ(e_i, e_j) ∈ {-1, 0, 1}.
    pub fn sigma_basis(&self, i: usize, j: usize) -> i64 {
        let m = self.m;
        if i < m && j == i + m {
            1
        } else if i >= m && i < 2 * m && j + m == i {
            -1
        } else {
            0
        }
    }

    /// The unique j with σ(e_i, e_j) ≠ 0, and that value.
    pub fn partner(&self, i: usize) -> (usize, i64) {
        if i < self.m {
            (i + self.m, 1)
        } else {
            (i - self.m, -1)
        }
    }

    /// J e_i as (index, sign).
    pub fn j_basis(&self, i: usize) -> (usize, i64) {
        self.partner(i)
    }

    /// e_i♯ = σ(e_i, ·) as (covector index, sign).
    pub fn sharp_basis(&self, i: usize) -> (usize, i64) {
        self.partner(i)
    }

    /// de_j♭ as (vector index, sign), so that σ(de_j♭, e) = de_j(e).
    pub fn flat_basis(&self, j: usize) -> (usize, i64) {
        if j >= self.m {
            (j - self.m, 1)
        } else {
            (j + self.m, -1)
        }
    }

    fn check<F: Field>(&self, v: &Coeffs<F>) -> Result<(), SymplecticError> {
        for &k in v.keys() {
            if k as usize >= self.dim() {
                return Err(SymplecticError::OutOfRange { index: k as usize, dim: self.dim() });
            }
        }
        Ok(())
    }

    pub fn sigma_coeffs<F: Field>(&self, v: &Coeffs<F>, w: &Coeffs<F>) -> F {
        let mut acc = F::zero();
        for (&i, a) in v.iter() {
            let (j, s) = self.partner(i as usize);
            let b = w.get(&(j as u8));
            if !b.is_zero() {
                acc += a.clone() * &b * &F::from_int(s);
            }
        }
        acc
    }

    pub fn sharp_coeffs<F: Field>(&self, v: &Coeffs<F>) -> Coeffs<F> {
        v.map_linear(|&i| {
            let (j, s) = self.sharp_basis(i as usize);
            Comb::term(j as u8, F::from_int(s))
        })
    }

    pub fn flat_coeffs<F: Field>(&self, c: &Coeffs<F>) -> Coeffs<F> {
        c.map_linear(|&j| {
            let (i, s) = self.flat_basis(j as usize);
            Comb::term(i as u8, F::from_int(s))
        })
    }

    pub fn j_coeffs<F: Field>(&self, v: &Coeffs<F>) -> Coeffs<F> {
        let mut out = Comb::new();
        for (&i, c) in v.iter() {
            let (j, s) = self.j_basis(i as usize);
            out.add_term(j as u8, c.conjugate() * &F::from_int(s));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vector<F: Field> {
    pub space: SymplecticSpace,
    pub coeffs: Coeffs<F>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Covector<F: Field> {
    pub space: SymplecticSpace,
    pub coeffs: Coeffs<F>,
}

impl<F: Field> Vector<F> {
    pub fn new(space: SymplecticSpace, coeffs: Coeffs<F>) -> Result<Self, SymplecticError> {
        space.check(&coeffs)?;
        Ok(Vector { space, coeffs })
    }

    pub fn basis(space: SymplecticSpace, i: usize) -> Self {
        Vector { space, coeffs: Comb::basis(i as u8) }
    }

    pub fn zero(space: SymplecticSpace) -> Self {
        Vector { space, coeffs: Comb::new() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Vector { space: self.space, coeffs: self.coeffs.scale(c) }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Vector { space: self.space, coeffs: self.coeffs.clone() + other.coeffs.clone() }
    }
}

impl<F: Field> Covector<F> {
    pub fn basis(space: SymplecticSpace, i: usize) -> Self {
        Covector { space, coeffs: Comb::basis(i as u8) }
    }

    pub fn eval(&self, v: &Vector<F>) -> F {
        let mut acc = F::zero();
        for (k, c) in self.coeffs.iter() {
            acc += c.clone() * &v.coeffs.get(k);
        }
        acc
    }
}

fn same(a: SymplecticSpace, b: SymplecticSpace) -> Result<(), SymplecticError> {
    if a == b {
        Ok(())
    } else {
        Err(SymplecticError::Mismatch(a.half_dim(), b.half_dim()))
    }
}

pub fn sigma<F: Field>(v: &Vector<F>, w: &Vector<F>) -> Result<F, SymplecticError> {
    same(v.space, w.space)?;
    Ok(v.space.sigma_coeffs(&v.coeffs, &w.coeffs))
}

pub fn sharp<F: Field>(v: &Vector<F>) -> Covector<F> {
    Covector { space: v.space, coeffs: v.space.sharp_coeffs(&v.coeffs) }
}

pub fn flat<F: Field>(c: &Covector<F>) -> Vector<F> {
    Vector { space: c.space, coeffs: c.space.flat_coeffs(&c.coeffs) }
}

/// The antilinear quaternionic structure.
pub fn j_apply<F: Field>(v: &Vector<F>) -> Vector<F> {
    Vector { space: v.space, coeffs: v.space.j_coeffs(&v.coeffs) }
}

/// ⟨v, w⟩ = σ(v, Jw), linear in v and antilinear in w.
pub fn hermitian<F: Field>(v: &Vector<F>, w: &Vector<F>) -> Result<F, SymplecticError> {
    sigma(v, &j_apply(w))
}
