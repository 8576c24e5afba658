//! τ-sequences and the modules `V(ψ,τ)` built from them, with their
//! isomorphism criteria and the recovery of the data from a module.

pub mod build;
pub mod extract;
pub mod iso;
pub mod spec;
pub mod tau;

pub use build::{build_v0, even_quotient, induce_and_reduce, lifted_annihilator_witness, ActionWitness, VhatModule};
pub use extract::{extract_spec, normalize};
pub use iso::{iso_check_g, iso_check_gprime, IsoWitness};
pub use spec::TauModuleSpec;
pub use tau::{is_evaluation, tau_from_eval, TauSeq};
