//! Exact operator algebra for free relativistic particle theories, plus a
//! spectral laboratory for the corresponding wave equations.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod lab;
pub mod scalar;
pub mod operator;
pub mod position;
pub mod spin;
pub mod verify;

pub use error::{Error, Result};
