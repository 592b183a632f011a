//! Symbolic operator algebra over the on-shell ring.

pub mod diffop;
pub mod matrix;

pub use diffop::{DiffOperator, MultiIndex, Signature};
pub use matrix::ScalarMatrix;

use crate::scalar::GaussianRational;
use crate::spin::ExactMatrix;

/// The 2×2 block matrices ρ1, ρ2, ρ3 (Pauli matrices acting on the block index).
pub fn rho(k: usize) -> ExactMatrix {
    let i = GaussianRational::i();
    let z = GaussianRational::zero();
    match k {
        1 => ExactMatrix::from_i64(2, &[0, 1, 1, 0]),
        2 => ExactMatrix::from_rows(&[&[z.clone(), -&i], &[i, z]]),
        3 => ExactMatrix::from_i64(2, &[1, 0, 0, -1]),
        _ => panic!("rho index must be 1, 2 or 3"),
    }
}
