pub mod error;
pub mod exactnum;
pub mod loopeval;
pub mod repcore;
pub mod schema;
pub mod superalg;
pub mod taumod;
pub mod verify;

pub use error::{Error, Result};
