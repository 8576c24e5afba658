//! Matrix realizations of sl(m,n) and C(m), their root data and gradings.

pub mod algebra;
pub mod frame;
pub mod roots;
pub mod supermatrix;
pub mod table;

pub use algebra::{build, build_c, build_sl, c_form, defining_subspace, SuperAlgebra};
pub use frame::AlgebraKind;
pub use roots::{root_datum, triangular, RootDatum, Triangular, ZGrading};
pub use supermatrix::{invariant_form, superbracket, Parity, ParityClass, SuperMatrix};
pub use table::{StructureTable, WeightFrame};
