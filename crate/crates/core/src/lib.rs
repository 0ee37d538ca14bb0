//! Exact linear algebra for Sp(n)Sp(1) representation theory on quaternionic
//! Kähler manifolds: spinor modules, curvature decompositions and
//! Weitzenböck coefficient matrices.

pub mod algebra;
pub mod bianchi;
pub mod curvature;
pub mod linalg;
pub mod model;
pub mod report;
pub mod scalar;
pub mod spinor;
pub mod symplectic;
pub mod weitzenboeck;

pub use linalg::{Comb, Matrix, Operator, SparseVec};
pub use scalar::{Field, Rational, Scalar};
