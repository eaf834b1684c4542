//! Exact computations with invariant generalized complex structures on
//! Lie-algebra models of nilmanifolds, tori and compact Lie groups.

pub mod blowup;
pub mod cohomology;
pub mod exterior;
pub mod gcs;
pub mod liealg;
pub mod linalg;
pub mod minimal;
pub mod symplectic;
pub mod tduality;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("d^2 != 0 on generator e{0}")]
    Jacobi(usize),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("undefined: {0}")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
