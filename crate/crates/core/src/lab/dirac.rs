//! Free Dirac Hamiltonian `2ρ1(S·p) + mρ3` with `S = σ/2`.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pauli() -> [Matrix2<Complex64>; 3] {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    [Matrix2::new(z, o, o, z), Matrix2::new(z, -i, i, z), Matrix2::new(o, z, z, -o)]
}

pub fn dirac_hamiltonian(p: [f64; 3], m: f64) -> Matrix4<Complex64> {
    let s = pauli();
    // 2 S·p = σ·p
    let mut sp = Matrix2::<Complex64>::zeros();
    for (a, sa) in s.iter().enumerate() {
        sp += sa * c(p[a], 0.0);
    }
    let mut h = Matrix4::<Complex64>::zeros();
    for r in 0..2 {
        for col in 0..2 {
            // ρ1 ⊗ σ·p fills the off-diagonal blocks, ρ3 ⊗ m the diagonal ones
            h[(r, col + 2)] = sp[(r, col)];
            h[(r + 2, col)] = sp[(r, col)];
        }
        h[(r, r)] = c(m, 0.0);
        h[(r + 2, r + 2)] = c(-m, 0.0);
    }
    h
}

/// Eigenvalues in ascending order.
pub fn dirac_spectrum(p: [f64; 3], m: f64) -> [f64; 4] {
    let eig = dirac_hamiltonian(p, m).symmetric_eigen();
    let mut v = [eig.eigenvalues[0], eig.eigenvalues[1], eig.eigenvalues[2], eig.eigenvalues[3]];
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rest_frame() {
        let v = dirac_spectrum([0.0; 3], 1.0);
        for (got, want) in v.iter().zip([-1.0, -1.0, 1.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let h = dirac_hamiltonian([0.3, -1.2, 2.0], 0.7);
        assert!((h - h.adjoint()).norm() < 1e-15);
    }
}
