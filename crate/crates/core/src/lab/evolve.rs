//! Spectral time evolution for the four spin-0 theories and the Klein-Gordon
//! diagnostics built on top of it.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::grid::{GridState, Space, Transform};
use crate::error::{Error, Result};

/// Spin-0 theories: T1 on the upper shell, T2 on the lower shell, and the two
/// symmetric-spectrum theories T3 and T4, which share `P0 = diag(+, -) p0` and
/// differ only in their discrete symmetries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    T1,
    T2,
    T3,
    T4,
}

impl Theory {
    pub const ALL: [Theory; 4] = [Theory::T1, Theory::T2, Theory::T3, Theory::T4];

    pub fn components(self) -> usize {
        match self {
            Theory::T1 | Theory::T2 => 1,
            Theory::T3 | Theory::T4 => 2,
        }
    }

    /// Sign of the energy multiplier per component.
    pub fn signs(self) -> &'static [f64] {
        match self {
            Theory::T1 => &[1.0],
            Theory::T2 => &[-1.0],
            Theory::T3 | Theory::T4 => &[1.0, -1.0],
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

impl FromStr for Theory {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(Theory::T1),
            "T2" => Ok(Theory::T2),
            "T3" => Ok(Theory::T3),
            "T4" => Ok(Theory::T4),
            _ => Err(Error::Config(format!("unknown theory `{s}`, expected T1..T4"))),
        }
    }
}

fn omega(mu: f64, k: [f64; 3]) -> f64 {
    (mu * mu + k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt()
}

/// Reduced observables at one recorded time.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Observables {
    pub time: f64,
    pub norm: f64,
    pub component_norms: Vec<f64>,
    pub mean_x: [f64; 3],
    pub mean_p: [f64; 3],
    /// `<ψ_0, ψ_t>`
    pub overlap: [f64; 2],
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub theory: Theory,
    pub dt: f64,
    pub steps: usize,
    pub record_every: usize,
    pub records: Vec<Observables>,
    /// Position-space states at each record, if requested.
    pub snapshots: Vec<GridState>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.time).collect()
    }

    /// `max_t |norm(t) - norm(0)|`
    pub fn norm_drift(&self) -> f64 {
        let n0 = self.records.first().map(|r| r.norm).unwrap_or(0.0);
        self.records.iter().map(|r| (r.norm - n0).abs()).fold(0.0, f64::max)
    }

    /// Largest drift of a single component norm.
    pub fn component_drift(&self) -> f64 {
        let Some(first) = self.records.first() else { return 0.0 };
        self.records
            .iter()
            .flat_map(|r| r.component_norms.iter().zip(&first.component_norms).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EvolveOptions {
    pub record_every: usize,
    pub keep_snapshots: bool,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { record_every: 1, keep_snapshots: false }
    }
}

fn observe(g: &GridState, psi0: &GridState, t: &Transform, time: f64) -> Observables {
    let np = g.points();
    let vol = g.cell_volume();
    let component_norms: Vec<f64> = (0..g.components).map(|c| g.component_norm_sq(c).sqrt()).collect();
    let norm_sq: f64 = component_norms.iter().map(|x| x * x).sum();
    let mut mean_x = [0.0; 3];
    for (i, z) in g.data.iter().enumerate() {
        let x = g.position_of(i % np);
        for a in 0..g.dims {
            mean_x[a] += x[a] * z.norm_sqr() * vol;
        }
    }
    let mut spec = g.data.clone();
    t.forward(&mut spec);
    let mut mean_p = [0.0; 3];
    let mut spec_norm = 0.0;
    for (i, z) in spec.iter().enumerate() {
        let k = g.wavevector_of(i % np);
        let w = z.norm_sqr();
        spec_norm += w;
        for a in 0..g.dims {
            mean_p[a] += k[a] * w;
        }
    }
    if norm_sq > 0.0 {
        for a in 0..3 {
            mean_x[a] /= norm_sq;
            mean_p[a] = if spec_norm > 0.0 { mean_p[a] / spec_norm } else { 0.0 };
        }
    }
    let ov = psi0.inner(g);
    Observables { time, norm: norm_sq.sqrt(), component_norms, mean_x, mean_p, overlap: [ov.re, ov.im] }
}

/// Propagates `psi0` by `exp(-i dt P0)` applied `steps` times in momentum space.
///
/// `P0` is the multiplier `sign_c * sqrt(mu^2 + k^2)` on component `c`.
pub fn evolve(theory: Theory, psi0: &GridState, dt: f64, steps: usize, opts: EvolveOptions) -> Result<Trajectory> {
    if psi0.components != theory.components() {
        return Err(Error::ComponentMismatch { expected: theory.components(), got: psi0.components });
    }
    if psi0.space != Space::Position {
        return Err(Error::Grid("evolution starts from a position-space state".into()));
    }
    if !dt.is_finite() {
        return Err(Error::Grid(format!("dt must be finite, got {dt}")));
    }
    let every = opts.record_every.max(1);
    let t = Transform::for_grid(psi0);
    let np = psi0.points();
    let signs = theory.signs();
    let step_factor: Vec<Complex64> = (0..psi0.data.len())
        .map(|i| {
            let w = signs[i / np] * omega(psi0.mu, psi0.wavevector_of(i % np));
            Complex64::from_polar(1.0, -w * dt)
        })
        .collect();

    let mut spec = psi0.data.clone();
    t.forward(&mut spec);
    let mut records = vec![observe(psi0, psi0, &t, 0.0)];
    let mut snapshots = Vec::new();
    if opts.keep_snapshots {
        snapshots.push(psi0.clone());
    }
    let mut state = psi0.clone();
    for step in 1..=steps {
        spec.iter_mut().zip(&step_factor).for_each(|(z, f)| *z *= f);
        if step % every == 0 || step == steps {
            state.data.copy_from_slice(&spec);
            t.inverse(&mut state.data);
            records.push(observe(&state, psi0, &t, step as f64 * dt));
            if opts.keep_snapshots {
                snapshots.push(state.clone());
            }
        }
    }
    Ok(Trajectory { theory, dt, steps, record_every: every, records, snapshots })
}

/// `∂ψ/∂t = -i P0 ψ` evaluated spectrally.
pub fn time_derivative(theory: Theory, psi: &GridState) -> Result<GridState> {
    if psi.components != theory.components() {
        return Err(Error::ComponentMismatch { expected: theory.components(), got: psi.components });
    }
    let t = Transform::for_grid(psi);
    let np = psi.points();
    let mut out = psi.clone();
    for (c, &sign) in theory.signs().iter().enumerate() {
        let mu = psi.mu;
        t.apply_multiplier(psi, &mut out.data[c * np..(c + 1) * np], |k| Complex64::new(0.0, -sign * omega(mu, k)));
    }
    Ok(out)
}

fn l2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn l2_real(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Laplacian of every component.
fn laplacian(t: &Transform, g: &GridState) -> Vec<Complex64> {
    let np = g.points();
    let mut out = g.data.clone();
    for c in 0..g.components {
        t.apply_multiplier(g, &mut out[c * np..(c + 1) * np], |k| Complex64::new(-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]), 0.0));
    }
    out
}

/// Largest relative residual of `ψ_tt - ∇²ψ + μ²ψ` over the interior snapshots,
/// with `ψ_tt` a centred second difference and `∇²` spectral.
pub fn kg_residual(traj: &Trajectory) -> Result<f64> {
    kg_residual_per_component(traj).map(|v| v.into_iter().fold(0.0, f64::max))
}

/// Same as [`kg_residual`], one value per component.
pub fn kg_residual_per_component(traj: &Trajectory) -> Result<Vec<f64>> {
    let s = &traj.snapshots;
    if s.len() < 3 {
        return Err(Error::InsufficientSnapshots { need: 3, have: s.len() });
    }
    let h = traj.dt * traj.record_every as f64;
    let t = Transform::for_grid(&s[0]);
    let np = s[0].points();
    let mu2 = s[0].mu * s[0].mu;
    let mut worst = vec![0.0f64; s[0].components];
    for w in s.windows(3) {
        let lap = laplacian(&t, &w[1]);
        for c in 0..w[1].components {
            let r = c * np..(c + 1) * np;
            let mut res = Vec::with_capacity(np);
            let mut scale = Vec::with_capacity(np);
            for i in r {
                let tt = (w[2].data[i] - 2.0 * w[1].data[i] + w[0].data[i]) / (h * h);
                let rhs = lap[i] - mu2 * w[1].data[i];
                res.push(tt - rhs);
                scale.push(rhs);
            }
            let denom = l2(&scale);
            if denom > 0.0 {
                worst[c] = worst[c].max(l2(&res) / denom);
            }
        }
    }
    Ok(worst)
}

/// Residuals of the continuity law for the Klein-Gordon density
/// `ρ = i/(2μ)(ψ̄ ψ_t - ψ ψ̄_t)` and current `j = i/(2μ)(ψ ∇ψ̄ - ψ̄ ∇ψ)`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ContinuityResidual {
    /// `‖∂tρ + ∇·j‖ / ‖∂tρ‖`, the sign that follows from the wave equation.
    pub corrected: f64,
    /// `‖∂tρ - ∇·j‖ / ‖∂tρ‖`
    pub printed: f64,
    /// `‖∂tρ‖`, zero for a single plane wave.
    pub rate_norm: f64,
}

/// `ρ` of one component: `i/(2μ)(ψ̄ ψ_t - ψ ψ̄_t) = -Im(ψ̄ ψ_t)/μ`.
pub fn kg_density(psi: &[Complex64], dpsi: &[Complex64], mu: f64) -> Vec<f64> {
    psi.iter().zip(dpsi).map(|(a, b)| -(a.conj() * b).im / mu).collect()
}

/// Evaluated on component 0 of the middle snapshots, with `ψ_t` spectral and
/// `∂tρ` a centred difference.
pub fn continuity_residual(traj: &Trajectory) -> Result<ContinuityResidual> {
    let s = &traj.snapshots;
    if s.len() < 3 {
        return Err(Error::InsufficientSnapshots { need: 3, have: s.len() });
    }
    let h = traj.dt * traj.record_every as f64;
    let mid = s.len() / 2;
    let g = &s[mid];
    let mu = g.mu;
    let np = g.points();
    let t = Transform::for_grid(g);
    let rho = |st: &GridState| -> Result<Vec<f64>> {
        let d = time_derivative(traj.theory, st)?;
        Ok(kg_density(st.component(0), d.component(0), mu))
    };
    let before = rho(&s[mid - 1])?;
    let after = rho(&s[mid + 1])?;
    let rate: Vec<f64> = after.iter().zip(&before).map(|(a, b)| (a - b) / (2.0 * h)).collect();

    // ∇·j = i/(2μ)(ψ ∇²ψ̄ - ψ̄ ∇²ψ) = Im(ψ̄ ∇²ψ)/μ
    let psi = g.component(0);
    let mut lap = psi.to_vec();
    t.apply_multiplier(g, &mut lap, |k| Complex64::new(-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]), 0.0));
    let div: Vec<f64> = (0..np).map(|i| (psi[i].conj() * lap[i]).im / mu).collect();

    let rate_norm = l2_real(&rate);
    let plus: Vec<f64> = rate.iter().zip(&div).map(|(a, b)| a + b).collect();
    let minus: Vec<f64> = rate.iter().zip(&div).map(|(a, b)| a - b).collect();
    let scale = if rate_norm > 0.0 { rate_norm } else { 1.0 };
    Ok(ContinuityResidual { corrected: l2_real(&plus) / scale, printed: l2_real(&minus) / scale, rate_norm })
}

/// One Feshbach-Villars variant `φ = (ψ + c ψ_t)/√2`, `χ = (ψ - c ψ_t)/√2`.
#[derive(Clone, Debug, Serialize)]
pub struct FvVariant {
    pub factor: String,
    #[serde(skip)]
    pub phi: Vec<Complex64>,
    #[serde(skip)]
    pub chi: Vec<Complex64>,
    #[serde(skip)]
    pub density: Vec<f64>,
    pub proportional: bool,
    /// `c` with `|φ|² - |χ|² = c ρ`, when proportional.
    pub constant: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FvSplit {
    /// Factor `1/m` as printed.
    pub printed: FvVariant,
    /// Factor `i/m`.
    pub imaginary: FvVariant,
    #[serde(skip)]
    pub rho_kg: Vec<f64>,
}

const PROPORTIONALITY_TOL: f64 = 1e-10;

fn fv_variant(label: &str, psi: &[Complex64], dpsi: &[Complex64], c: Complex64, rho: &[f64]) -> FvVariant {
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let phi: Vec<Complex64> = psi.iter().zip(dpsi).map(|(a, b)| (a + c * b) * r2).collect();
    let chi: Vec<Complex64> = psi.iter().zip(dpsi).map(|(a, b)| (a - c * b) * r2).collect();
    let density: Vec<f64> = phi.iter().zip(&chi).map(|(a, b)| a.norm_sqr() - b.norm_sqr()).collect();
    let rr: f64 = rho.iter().map(|x| x * x).sum();
    let dd = l2_real(&density);
    let (proportional, constant) = if rr > 0.0 && dd > 0.0 {
        let k = density.iter().zip(rho).map(|(a, b)| a * b).sum::<f64>() / rr;
        let resid: Vec<f64> = density.iter().zip(rho).map(|(a, b)| a - k * b).collect();
        let ok = k.abs() > PROPORTIONALITY_TOL && l2_real(&resid) <= PROPORTIONALITY_TOL * dd.max(rr.sqrt());
        (ok, ok.then_some(k))
    } else {
        (false, None)
    };
    FvVariant { factor: label.into(), phi, chi, density, proportional, constant }
}

/// Feshbach-Villars split with the printed factor `1/m` and with `i/m`, each
/// tested for pointwise proportionality with the Klein-Gordon density.
pub fn fv_split(psi: &[Complex64], dpsi: &[Complex64], m: f64) -> Result<FvSplit> {
    if m <= 0.0 {
        return Err(Error::Grid(format!("mass must be positive, got {m}")));
    }
    if psi.len() != dpsi.len() {
        return Err(Error::DimensionMismatch(psi.len(), dpsi.len()));
    }
    let rho = kg_density(psi, dpsi, m);
    Ok(FvSplit {
        printed: fv_variant("1/m", psi, dpsi, Complex64::new(1.0 / m, 0.0), &rho),
        imaginary: fv_variant("i/m", psi, dpsi, Complex64::new(0.0, 1.0 / m), &rho),
        rho_kg: rho,
    })
}

/// Least-squares slope of `log r` against `log dt`.
pub fn observed_order(dts: &[f64], residuals: &[f64]) -> f64 {
    let xs: Vec<f64> = dts.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    fn packet(components: usize) -> GridState {
        let w = vec![Complex64::new(1.0, 0.0); components];
        GridState::gaussian(64, 1, 20.0, 1.0, [0.0; 3], 1.5, [0.5, 0.0, 0.0], &w).unwrap()
    }

    #[test]
    fn wrong_component_count() {
        assert!(matches!(
            evolve(Theory::T3, &packet(1), 0.1, 1, EvolveOptions::default()),
            Err(Error::ComponentMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn theories_parse() {
        assert_eq!("t3".parse::<Theory>().unwrap(), Theory::T3);
        assert!("T5".parse::<Theory>().is_err());
    }

    #[test]
    fn zero_state_split() {
        let z = vec![Complex64::new(0.0, 0.0); 8];
        let s = fv_split(&z, &z, 1.0).unwrap();
        assert!(s.printed.density.iter().all(|x| *x == 0.0));
        assert!(!s.imaginary.proportional);
    }
}
