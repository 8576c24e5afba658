//! Finite-dimensional weight modules and the constructions on them.

pub mod hw;
pub mod induce;
pub mod module;
pub mod quotient;
pub mod weight;

pub use hw::{
    extend_by_z, hw_module_ss, irreducible_g, kac_module, lowest_depth, tensor, trivial_module, DominantWeight,
};
pub use induce::{induce, ParabolicModule};
pub use module::WeightModule;
pub use quotient::{irreducible_quotient, Quotient};
pub use weight::Weight;
