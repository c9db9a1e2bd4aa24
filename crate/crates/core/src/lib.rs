//! Exact homological algebra for checking derived completion and torsion
//! dualities on explicit complexes of free modules.

pub mod complex;
pub mod error;
pub mod functors;
pub mod koszul;
pub mod linalg;
pub mod literal;
pub mod matrix;
pub mod module;
pub mod ops;
pub mod qis;
pub mod telescope;
pub mod verify;
pub mod ring;

pub use error::{Error, Result};
