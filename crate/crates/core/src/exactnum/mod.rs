//! Exact rational scalars and the linear-algebra kernel everything else sits on.

pub mod matrix;
pub mod poly;
pub mod recurrence;
pub mod scalar;
pub mod solve;
pub mod subspace;
pub mod vector;

pub use matrix::{rank, rref, Matrix};
pub use poly::Poly;
pub use solve::BasisSolver;
pub use scalar::{format_scalar, frac, int, parse_scalar, Scalar};
pub use subspace::{kernel, largest_invariant_subspace, Subspace};
pub use vector::SparseVec;
