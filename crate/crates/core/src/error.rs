use thiserror::Error;

/// Errors raised by algebra and module construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid scalar literal {0:?}")]
    ParseScalar(String),

    #[error("A(n,n) out of scope: sl({0},{0}) is not simple")]
    EqualRankOutOfScope(usize),

    #[error("invalid algebra parameters: {0}")]
    InvalidAlgebra(String),

    #[error("mixed-parity operand in superbracket; split into homogeneous parts first")]
    MixedParity,

    #[error("weight {weight} is not dominant integral: {reason}")]
    NotDominant { weight: String, reason: String },

    #[error("modules act over different algebras")]
    AlgebraMismatch,

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("vector does not generate the module; deficient weight spaces: {0:?}")]
    NotCyclic(Vec<String>),

    #[error("top weight space has multiplicity {0}, expected 1")]
    TopMultiplicity(usize),

    #[error("period {0} needs a cyclotomic extension of the rationals")]
    NeedsCyclotomic(usize),

    #[error("degree window [{lo}, {hi}] too small: {detail}")]
    WindowTooSmall { lo: i64, hi: i64, detail: String },

    #[error("permutation search bound exceeded: K = {0} > 8")]
    PermutationBound(usize),

    #[error("invalid module spec: {0}")]
    InvalidSpec(String),

    #[error("spec extraction failed: {0}")]
    Extraction(String),

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
