#![allow(dead_code)]

use num_complex::Complex64;
use plab_core::lab::{momentum_gaussian, GridState};
use plab_core::operator::{DiffOperator, ScalarMatrix};
use plab_core::scalar::{GaussianRational, OnShellScalar};
use rand::Rng;

/// Smooth coefficient drawn from a small vocabulary of on-shell functions.
pub fn random_scalar<R: Rng>(rng: &mut R) -> OnShellScalar {
    let base = match rng.random_range(0..7) {
        0 => OnShellScalar::one(),
        1 => OnShellScalar::p(rng.random_range(1..=3)),
        2 => OnShellScalar::p0(),
        3 => OnShellScalar::mu(),
        4 => OnShellScalar::p0().invert().expect("p0 is invertible"),
        5 => OnShellScalar::p(rng.random_range(1..=3)).div(&OnShellScalar::p0().add(&OnShellScalar::mu())).expect("mu + p0 is invertible"),
        _ => OnShellScalar::i(),
    };
    let c = GaussianRational::ratio(rng.random_range(-3..=3), rng.random_range(1..=2));
    base.scale(&c)
}

/// Operator of derivative order <= 1, possibly antilinear and possibly with parity.
pub fn random_operator<R: Rng>(rng: &mut R, dim: usize) -> DiffOperator {
    let conj = rng.random_bool(0.25);
    let parity = rng.random_bool(0.25);
    let mut op = DiffOperator::zero(dim);
    for _ in 0..rng.random_range(1..=3) {
        let m = ScalarMatrix::from_fn(dim, |_, _| if rng.random_bool(0.6) { random_scalar(rng) } else { OnShellScalar::zero() });
        let mut d = [0u8; 3];
        if rng.random_bool(0.6) {
            d[rng.random_range(0..3)] = 1;
        }
        let t = DiffOperator::term(m, d, conj, parity);
        if op.is_zero() {
            op = t;
        } else if let Ok(sum) = op.add(&t) {
            op = sum;
        }
    }
    op
}

pub fn test_state(n: usize, components: usize, center: [f64; 3]) -> GridState {
    let w: Vec<Complex64> = (0..components).map(|c| Complex64::new(1.0, 0.5 * c as f64)).collect();
    momentum_gaussian(n, 3, 8.0, 3.0, center, 0.6, &w).unwrap()
}
