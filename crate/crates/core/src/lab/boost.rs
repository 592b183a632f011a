//! Boosts along axis 1 for spin 0, in the rapidity chart `p1 = μ sinh θ`.
//!
//! There `P1 = μ sinh θ`, `P0 = μ cosh θ` and `K1 = i ∂/∂θ`, so
//! `exp(-iφK1)` is the rigid shift `ψ(θ) -> ψ(θ + φ)`.

use num_complex::Complex64;
use serde::Serialize;

use super::grid::{GridState, Transform};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BoostVerdict {
    pub phi: f64,
    /// `+1` when `d/dφ (U P1 U⁻¹) = +P0` at `φ = 0`.
    pub sign: i8,
    /// Relative error of the central-difference generator against `sign * P0 ψ`.
    pub generator_error: f64,
    pub error_p1: f64,
    pub error_p0: f64,
    pub relative_error: f64,
}

const STEP: f64 = 1e-3;

fn shift(t: &Transform, g: &GridState, data: &[Complex64], by: f64) -> Vec<Complex64> {
    let mut out = data.to_vec();
    if by != 0.0 {
        t.apply_multiplier(g, &mut out, |k| Complex64::from_polar(1.0, k[0] * by));
    }
    out
}

fn rel(a: &[Complex64], b: &[Complex64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

/// `U(φ) M U(φ)⁻¹ ψ` for the multiplication operator `M(θ)`.
fn conjugated(t: &Transform, g: &GridState, psi: &[Complex64], phi: f64, m: impl Fn(f64) -> f64) -> Vec<Complex64> {
    let mut v = shift(t, g, psi, -phi);
    for (i, z) in v.iter_mut().enumerate() {
        *z *= m(g.coordinate(i));
    }
    shift(t, g, &v, phi)
}

/// Checks `U P1 U⁻¹ = cosh φ P1 + s sinh φ P0` and `U P0 U⁻¹ = cosh φ P0 + s sinh φ P1`,
/// with the sign `s` fixed by a small-φ difference quotient.
pub fn boost_action_1d(phi: f64, psi: &GridState) -> Result<BoostVerdict> {
    if psi.dims != 1 || psi.components != 1 {
        return Err(Error::Grid("boost check needs a one-component state on a 1-D rapidity grid".into()));
    }
    let peak = psi.max_amplitude();
    let margin = phi.abs() + STEP + 4.0 * psi.spacing();
    if peak == 0.0 || psi.edge_amplitude(margin) > 1e-12 * peak {
        return Err(Error::Boundary(format!("shift by {phi} would wrap support around the rapidity box")));
    }
    let t = Transform::for_grid(psi);
    let mu = psi.mu;
    let p1 = |th: f64| mu * th.sinh();
    let p0 = |th: f64| mu * th.cosh();
    let data = psi.component(0);
    let times = |f: &dyn Fn(f64) -> f64| -> Vec<Complex64> {
        data.iter().enumerate().map(|(i, z)| z * f(psi.coordinate(i))).collect()
    };
    let p1_psi = times(&p1);
    let p0_psi = times(&p0);

    let plus = conjugated(&t, psi, data, STEP, p1);
    let minus = conjugated(&t, psi, data, -STEP, p1);
    let deriv: Vec<Complex64> = plus.iter().zip(&minus).map(|(a, b)| (a - b) / (2.0 * STEP)).collect();
    let neg_p0: Vec<Complex64> = p0_psi.iter().map(|z| -z).collect();
    let (sign, generator_error) = {
        let e_plus = rel(&deriv, &p0_psi);
        let e_minus = rel(&deriv, &neg_p0);
        if e_plus <= e_minus { (1i8, e_plus) } else { (-1i8, e_minus) }
    };
    let s = sign as f64;

    let (ch, sh) = (phi.cosh(), phi.sinh());
    let got1 = conjugated(&t, psi, data, phi, p1);
    let want1: Vec<Complex64> = p1_psi.iter().zip(&p0_psi).map(|(a, b)| a * ch + b * (s * sh)).collect();
    let got0 = conjugated(&t, psi, data, phi, p0);
    let want0: Vec<Complex64> = p0_psi.iter().zip(&p1_psi).map(|(a, b)| a * ch + b * (s * sh)).collect();
    let error_p1 = rel(&got1, &want1);
    let error_p0 = rel(&got0, &want0);
    Ok(BoostVerdict { phi, sign, generator_error, error_p1, error_p0, relative_error: error_p1.max(error_p0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::grid::Space;

    fn packet(center: f64) -> GridState {
        let mut g = GridState::gaussian(256, 1, 8.0, 1.0, [center, 0.0, 0.0], 0.5, [0.0; 3], &[Complex64::new(1.0, 0.0)]).unwrap();
        g.space = Space::Momentum;
        g
    }

    #[test]
    fn identity_at_zero() {
        let v = boost_action_1d(0.0, &packet(0.0)).unwrap();
        assert_eq!(v.relative_error, 0.0);
        assert_eq!(v.sign, 1);
    }

    #[test]
    fn wrap_is_rejected() {
        let g = packet(5.5);
        assert!(matches!(boost_action_1d(3.0, &g), Err(Error::Boundary(_))));
    }
}
