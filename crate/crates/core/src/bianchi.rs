//! The first Bianchi identity on V = H⊗E written as the block equations
//! I, II, II′, III and III′, compared against ker m.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use thiserror::Error;

use crate::curvature::{
    curv_dim, ext2, mixed_split_basis, split_sym2lambda2, split_sym2sym2, sym2, tensor, wedge_n, Key,
    Tensor,
};
use crate::linalg::{Echelon, SparseVec};
use crate::report::Check;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BianchiError {
    #[error("n = {0} is outside the supported range 1..=2")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Block {
    CcH,
    CcE,
    S4L4,
    L4S4,
    CL4,
    S4C,
    LsllH,
    LlllsE,
    LsllM,
    LlllsM,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Equation {
    I,
    II,
    IIp,
    III,
    IIIp,
}

fn single(a: u8) -> [u8; 1] {
    [a]
}

fn e2(a: u8, b: u8) -> Tensor {
    ext2(&single(a), &single(b))
}

fn s2(a: u8, b: u8) -> Tensor {
    sym2(&single(a), &single(b))
}

/// The ambient Sym²Λ²V* of V = H⊗E with half dimension n.
#[derive(Debug, Clone)]
pub struct BianchiSystem {
    pub n: usize,
    vdim: usize,
    lambda2: Vec<(u8, u8)>,
    columns: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BianchiSummary {
    pub n: usize,
    pub ambient_dim: usize,
    pub rank_equations: usize,
    pub rank_m: usize,
    pub rank_joint: usize,
    pub solution_dim: usize,
}

impl BianchiSummary {
    /// Equal row spaces, hence equal solution spaces.
    pub fn equivalent(&self) -> bool {
        self.rank_equations == self.rank_m && self.rank_joint == self.rank_m
    }
}

impl BianchiSystem {
    pub fn new(n: usize) -> Result<Self, BianchiError> {
        if n == 0 || n > 2 {
            return Err(BianchiError::TooLarge(n));
        }
        let vdim = 4 * n;
        let lambda2: Vec<(u8, u8)> = (0..vdim as u8).tuple_combinations().collect();
        let columns = (0..lambda2.len()).tuple_combinations().chain((0..lambda2.len()).map(|p| (p, p))).collect_vec();
        let mut columns = columns;
        columns.sort_unstable();
        Ok(BianchiSystem { n, vdim, lambda2, columns })
    }

    pub fn ambient_dim(&self) -> usize {
        self.columns.len()
    }

    fn split(&self, x: u8) -> (u8, u8) {
        let big_n = (2 * self.n) as u8;
        (x / big_n, x % big_n)
    }

    /// x∧y ↦ ½ ab⊗i∧j ⊕ ½ a∧b⊗ij.
    fn phi(&self, x: u8, y: u8) -> (Tensor, Tensor) {
        let (a, i) = self.split(x);
        let (b, j) = self.split(y);
        let half = Rational::new(1, 2);
        (tensor(&s2(a, b), &e2(i, j)).scale(&half), tensor(&e2(a, b), &s2(i, j)).scale(&half))
    }

    fn image(&self, col: usize) -> HashMap<(Block, Key), Rational> {
        let (p, q) = self.columns[col];
        let (x, y) = self.lambda2[p];
        let (z, w) = self.lambda2[q];
        let (a1, b1) = self.phi(x, y);
        let (a2, b2) = self.phi(z, w);
        let mut out: HashMap<(Block, Key), Rational> = HashMap::new();
        let mut emit = |tag: Block, t: Tensor, c: &Rational| {
            for (k, v) in t.iter() {
                let e = out.entry((tag, k.clone())).or_default();
                *e += v.clone() * c;
            }
        };
        let half = Rational::new(1, 2);
        for (k1, c1) in a1.iter() {
            for (k2, c2) in a2.iter() {
                let c = c1.clone() * c2 * &half;
                let (s, l) = (&k1[0..2], &k1[2..4]);
                let (s_, l_) = (&k2[0..2], &k2[2..4]);
                let (hc, h4) = split_sym2sym2(&Tensor::basis([s, s_].concat()));
                let (ec, e4) = split_sym2lambda2(&Tensor::basis(canonical_pair(l, l_)));
                emit(Block::CcH, tensor(&hc, &ec), &c);
                emit(Block::S4L4, tensor(&h4, &e4), &c);
                emit(Block::CL4, tensor(&hc, &e4), &c);
                emit(Block::S4C, tensor(&h4, &ec), &c);
                emit(Block::LsllH, tensor(&ext2(s, s_), &ext2(l, l_)), &c);
            }
        }
        for (k1, c1) in b1.iter() {
            for (k2, c2) in b2.iter() {
                let c = c1.clone() * c2 * &half;
                let (t, u) = (&k1[0..2], &k1[2..4]);
                let (t_, u_) = (&k2[0..2], &k2[2..4]);
                let (hc, h4) = split_sym2lambda2(&Tensor::basis(canonical_pair(t, t_)));
                let (ec, e4) = split_sym2sym2(&Tensor::basis(canonical_pair(u, u_)));
                emit(Block::CcE, tensor(&hc, &ec), &c);
                emit(Block::L4S4, tensor(&h4, &e4), &c);
                emit(Block::LlllsE, tensor(&ext2(t, t_), &ext2(u, u_)), &c);
            }
        }
        for (aa, bb) in [(&a1, &b2), (&a2, &b1)] {
            for (k1, c1) in aa.iter() {
                for (k2, c2) in bb.iter() {
                    let c = c1.clone() * c2;
                    let (s, l) = (&k1[0..2], &k1[2..4]);
                    let (t, u) = (&k2[0..2], &k2[2..4]);
                    let (hs, hl) = mixed_split_basis(s[0], s[1], t[0], t[1]);
                    let (es, el) = mixed_split_basis(u[0], u[1], l[0], l[1]);
                    emit(Block::LsllM, tensor(&hs, &el), &c);
                    emit(Block::LlllsM, tensor(&hl, &es), &c);
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Rows of the equations I–III′ over the ambient basis, in a fixed order.
    pub fn equation_rows(&self) -> Vec<(Equation, SparseVec<Rational>)> {
        let images: Vec<_> = (0..self.ambient_dim()).into_par_iter().map(|c| self.image(c)).collect();
        let mut rows: HashMap<(Equation, Key), SparseVec<Rational>> = HashMap::new();
        for (col, img) in images.iter().enumerate() {
            for ((tag, k), c) in img {
                let (eq, coef) = match tag {
                    Block::CcH => (Equation::I, c.clone()),
                    Block::CcE => (Equation::I, -c.clone()),
                    Block::S4L4 => (Equation::II, c.clone()),
                    Block::L4S4 => (Equation::IIp, c.clone()),
                    Block::LsllH => (Equation::III, c.clone()),
                    Block::LsllM => (Equation::III, -c.clone()),
                    Block::LlllsE => (Equation::IIIp, c.clone()),
                    Block::LlllsM => (Equation::IIIp, -c.clone()),
                    Block::CL4 | Block::S4C => continue,
                };
                rows.entry((eq, k.clone())).or_default().add_term(col, coef);
            }
        }
        let mut sorted: Vec<_> = rows.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        sorted.into_iter().map(|((eq, _), r)| (eq, r)).collect()
    }

    /// Rows of m: Sym²Λ²V* → Λ⁴V*.
    pub fn m_rows(&self) -> Vec<SparseVec<Rational>> {
        let mut rows: HashMap<Key, SparseVec<Rational>> = HashMap::new();
        for (col, &(p, q)) in self.columns.iter().enumerate() {
            let (x, y) = self.lambda2[p];
            let (z, w) = self.lambda2[q];
            for (k, c) in wedge_n(&[x, y, z, w]).iter() {
                rows.entry(k.clone()).or_default().add_term(col, c.clone());
            }
        }
        let mut sorted: Vec<_> = rows.into_iter().collect();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        sorted.into_iter().map(|(_, r)| r).collect()
    }

    pub fn summary(&self) -> BianchiSummary {
        let eq_rows = self.equation_rows();
        let m_rows = self.m_rows();
        let mut ech_eq = Echelon::new();
        for (_, r) in &eq_rows {
            ech_eq.insert(r.clone());
        }
        let mut ech_m = Echelon::new();
        for r in &m_rows {
            ech_m.insert(r.clone());
        }
        let rank_equations = ech_eq.rank();
        let rank_m = ech_m.rank();
        for r in &m_rows {
            ech_eq.insert(r.clone());
        }
        BianchiSummary {
            n: self.n,
            ambient_dim: self.ambient_dim(),
            rank_equations,
            rank_m,
            rank_joint: ech_eq.rank(),
            solution_dim: self.ambient_dim() - rank_equations,
        }
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }
}

/// Sym² key of two Λ² sub-keys (unordered).
fn canonical_pair(x: &[u8], y: &[u8]) -> Key {
    if x <= y {
        [x, y].concat()
    } else {
        [y, x].concat()
    }
}

pub fn bianchi_solution_dim(n: usize) -> Result<usize, BianchiError> {
    Ok(BianchiSystem::new(n)?.summary().solution_dim)
}

pub fn bianchi_check(n: usize) -> Vec<Check> {
    let sys = match BianchiSystem::new(n) {
        Ok(s) => s,
        Err(e) => return vec![Check::fail(format!("Bianchi equations n={n}"), e.to_string())],
    };
    let s = sys.summary();
    let expected = curv_dim(sys.vdim()) as usize;
    vec![
        Check::from_bool(format!("equations I-III′ ⟺ ker m n={n}"), s.equivalent(), || format!("{s:?}")),
        Check::from_bool(format!("Bianchi solution dim = {expected} n={n}"), s.solution_dim == expected, || {
            format!("{}", s.solution_dim)
        }),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_equivalent() {
        let s = BianchiSystem::new(1).unwrap().summary();
        assert!(s.equivalent(), "{s:?}");
        assert_eq!(s.solution_dim, 20);
        assert!(BianchiSystem::new(3).is_err());
    }
}
