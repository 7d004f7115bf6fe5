//! Exact symbolic verification of the quantum dilogarithm identities
//! attached to the triangular quivers `Q_N`.
//!
//! Everything is computed over the field of rational functions in the
//! formal variable `q` with arbitrary-precision integer coefficients, so
//! every identity check is an exact coefficient comparison at a chosen
//! truncation degree. The crate provides:
//!
//! - [`qfield`]: the coefficient field Q(q);
//! - [`quiver`]: `Q_N`, its incidence matrix, and the vertex symmetries;
//! - [`ncalgebra`]: the q-commuting algebra `T_N` with normal ordering;
//! - [`dilog`]: quantum exponentials, the element `T_N`, and the
//!   pentagon / cyclic / symmetry identity checks;
//! - [`simplex`]: the groups `B(n,N)`, word rewriting with replayable
//!   proof traces, and the word-to-algebra maps;
//! - [`center`]: the monomial center of `T_N`;
//! - [`tensorrep`]: monomial operator calculus on tensor powers and the
//!   tetrahedron-equation checks;
//! - [`suites`]: the named verification suites behind the CLI.

pub mod center;
pub mod dilog;
pub mod ncalgebra;
pub mod qfield;
pub mod quiver;
pub mod report;
pub mod simplex;
pub mod suites;
pub mod tensorrep;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
