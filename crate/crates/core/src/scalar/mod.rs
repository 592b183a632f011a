//! Exact scalars: Gaussian rationals, sparse polynomials and the on-shell ring.

pub mod gaussian;
pub mod onshell;
pub mod parse;
pub mod poly;

pub use gaussian::GaussianRational;
pub use onshell::{CompiledScalar, OnShellScalar};
pub use parse::parse_scalar;
pub use poly::{CompiledPoly, Poly};
