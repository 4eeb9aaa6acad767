//! Exact traveling-wave solutions of the seventh-order KdV family.

pub mod algebra;
pub mod ansatz;
mod error;
pub mod expr;
pub mod model;
pub mod solver;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
