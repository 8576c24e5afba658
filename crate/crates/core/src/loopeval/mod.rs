//! Co-finite ideals of the Laurent polynomials, the quotients `𝔤 ⊗ L/I`,
//! evaluation modules and graded loop modules.

pub mod eval;
pub mod graded;
pub mod ideal;
pub mod quotient;

pub use eval::{detect_period, evaluation_module, period_of, psi_from, EvaluationModule, Psi};
pub use graded::{decompose_loop, loop_module, GradedLoopModule, LoopComponent};
pub use ideal::{IdealSpec, LaurentPoly};
pub use quotient::{quotient_algebra, QuotientAlgebra};
