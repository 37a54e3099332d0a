//! Exact machinery for multiloop realizations of twisted toroidal Lie algebras.
//!
//! Everything is computed over `Q(zeta_24)` or over the rationals/integers;
//! nothing in here touches floating point.

pub mod error;
pub mod scalar;
pub mod liealg;
pub mod toroidal;
pub mod presentation;
pub mod autos;
pub mod envelope;
pub mod vertex;
pub mod weyl;
pub mod characters;
pub mod report;

pub use error::{Error, Result};
pub use scalar::Scalar;
