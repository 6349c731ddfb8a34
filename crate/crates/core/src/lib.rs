//! Exact exterior algebra, stable 3-forms on ℝ⁷, octonions, matrix Lie algebras
//! and invariant forms on compact homogeneous spaces G/H.

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod homogeneous;
pub mod liealg;
pub mod linalg;
pub mod multilinear;
pub mod octonion;
pub mod stable_forms;

pub use error::{Error, Result};
pub use linalg::{QMatrix, Q};
pub use multilinear::{KForm, LinearMap, RealForm, Vector};
