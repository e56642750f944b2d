pub mod abelian;
pub mod cli;
pub mod complex;
pub mod error;
pub mod spectral;
pub mod linalg;
pub mod quantum_ring;

pub use error::{Error, Result};
