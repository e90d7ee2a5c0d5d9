//! Exact combinatorics and linear algebra for the interval-pattern basis of
//! the function space on a symplectic F2-vector space with a circular basis.
//!
//! The library enumerates the admissible interval patterns on the
//! `(D+1)`-cycle, realizes the bijection between patterns and points of the
//! space through the parity vector of covering counts, builds the partial
//! order on patterns, and computes the exact change-of-basis and Fourier
//! matrices between point masses and isotropic-subspace indicators, together
//! with machine checks for the structural identities these objects satisfy.

mod bits;
pub mod checks;
pub mod dyadic;
pub mod family;
pub mod func;
pub mod gf2;
pub mod interval;
pub mod matrix;

pub use dyadic::Dyadic;
pub use family::PatternFamily;
pub use func::FunctionVector;
pub use gf2::{CircVector, Gf2Subspace};
pub use interval::{Interval, Pattern};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension must be even, at least 2 and at most 62; got {0}")]
    InvalidDimension(u32),
    #[error("index {index} out of range [1, {max}]")]
    IndexOutOfRange { index: u32, max: u32 },
    #[error("{what} supports dimensions up to {max}, got {got}")]
    ScaleGuard { what: &'static str, max: u32, got: u32 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("construction mismatch: {0}")]
    ConstructionMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
