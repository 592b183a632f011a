//! Numeric application of symbolic operators on momentum-space grids.

use num_complex::Complex64;

use super::grid::{GridState, Space, Transform};
use crate::error::{Error, Result};
use crate::operator::{DiffOperator, MultiIndex};

struct SampledTerm {
    derivs: MultiIndex,
    parity: bool,
    /// Row-major `dim × dim` coefficient fields, each of length `n^dims`.
    coeffs: Vec<Option<Vec<Complex64>>>,
}

/// A [`DiffOperator`] with its coefficients evaluated on one grid, upper shell
/// `p0 = +sqrt(mu^2 + p^2)`.
pub struct NumericOperator {
    dim: usize,
    antilinear: bool,
    template: GridState,
    terms: Vec<SampledTerm>,
}

pub fn numeric_operator_sample(op: &DiffOperator, grid: &GridState) -> Result<NumericOperator> {
    if grid.space != Space::Momentum {
        return Err(Error::Grid("operators act on momentum-space grids".into()));
    }
    if op.order() > 2 {
        return Err(Error::Grid(format!("derivative order {} exceeds 2", op.order())));
    }
    if op.dim() != grid.components {
        return Err(Error::DimensionMismatch(op.dim(), grid.components));
    }
    let np = grid.points();
    let points: Vec<[f64; 4]> = (0..np)
        .map(|i| {
            let p = grid.position_of(i);
            [p[0], p[1], p[2], grid.mu]
        })
        .collect();
    let mut terms = Vec::new();
    for (sig, m) in op.terms() {
        for (a, &d) in sig.derivs.iter().enumerate() {
            if d > 0 && a >= grid.dims {
                return Err(Error::Grid(format!("derivative along axis {} on a {}-D grid", a + 1, grid.dims)));
            }
        }
        let mut coeffs = Vec::with_capacity(m.dim() * m.dim());
        for r in 0..m.dim() {
            for c in 0..m.dim() {
                let e = m.get(r, c);
                if e.is_zero() {
                    coeffs.push(None);
                    continue;
                }
                let compiled = e.compile();
                let field = points.iter().map(|pt| compiled.eval(pt)).collect::<Result<Vec<_>>>()?;
                coeffs.push(Some(field));
            }
        }
        terms.push(SampledTerm { derivs: sig.derivs, parity: sig.parity, coeffs });
    }
    let mut template = grid.clone();
    template.data.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
    Ok(NumericOperator { dim: op.dim(), antilinear: op.is_antilinear(), template, terms })
}

impl NumericOperator {
    /// `Σ M(p) ∂^α K^c Υ^u ψ`, with `Υ` an index reversal and `K` pointwise conjugation.
    pub fn apply(&self, psi: &GridState) -> Result<GridState> {
        if !psi.same_shape(&self.template) || psi.space != Space::Momentum {
            return Err(Error::Grid("state does not live on the sampled grid".into()));
        }
        let t = Transform::for_grid(psi);
        let np = psi.points();
        let mut out = self.template.clone();
        out.mu = psi.mu;
        // K and Υ are applied first; the spectrum of the result is shared by all
        // terms with the same parity flag.
        let mut spectra: [Option<(Vec<Complex64>, Vec<Complex64>)>; 2] = [None, None];
        for term in &self.terms {
            let slot = &mut spectra[term.parity as usize];
            if slot.is_none() {
                let mut v = psi.data.clone();
                if term.parity {
                    for c in 0..self.dim {
                        for i in 0..np {
                            v[c * np + i] = psi.data[c * np + psi.reversed_index(i)];
                        }
                    }
                }
                if self.antilinear {
                    v.iter_mut().for_each(|z| *z = z.conj());
                }
                let mut spec = v.clone();
                for c in 0..self.dim {
                    t.forward(&mut spec[c * np..(c + 1) * np]);
                }
                *slot = Some((v, spec));
            }
            let (base, spec) = slot.as_ref().expect("filled above");
            let v = if term.derivs == [0, 0, 0] {
                base.clone()
            } else {
                let mut d = spec.clone();
                for (i, z) in d.iter_mut().enumerate() {
                    let k = psi.wavevector_of(i % np);
                    let mut f = Complex64::new(1.0, 0.0);
                    for a in 0..3 {
                        for _ in 0..term.derivs[a] {
                            f *= Complex64::new(0.0, k[a]);
                        }
                    }
                    *z *= f;
                }
                for c in 0..self.dim {
                    t.inverse(&mut d[c * np..(c + 1) * np]);
                }
                d
            };
            for r in 0..self.dim {
                for c in 0..self.dim {
                    if let Some(field) = &term.coeffs[r * self.dim + c] {
                        for i in 0..np {
                            out.data[r * np + i] += field[i] * v[c * np + i];
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `max |x - y| / max |y|` between `compose(a, b) ψ` and `a(b ψ)`.
pub fn cross_validate(a: &DiffOperator, b: &DiffOperator, psi: &GridState) -> Result<f64> {
    let ab = a.compose(b)?;
    let direct = numeric_operator_sample(&ab, psi)?.apply(psi)?;
    let inner = numeric_operator_sample(b, psi)?.apply(psi)?;
    let sequential = numeric_operator_sample(a, psi)?.apply(&inner)?;
    Ok(max_deviation(&direct, &sequential))
}

/// `max |x - y| / max |y|`, or the absolute maximum when `y` vanishes.
pub fn max_deviation(x: &GridState, y: &GridState) -> f64 {
    let num = x.data.iter().zip(&y.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let den = y.max_amplitude();
    if den > 0.0 {
        num / den
    } else {
        num
    }
}

/// `<a, b>` with the invariant measure `dν = d^3p / p0`.
pub fn weighted_inner(a: &GridState, b: &GridState) -> Complex64 {
    let np = a.points();
    let vol = a.cell_volume();
    let mut acc = Complex64::new(0.0, 0.0);
    for (idx, (x, y)) in a.data.iter().zip(&b.data).enumerate() {
        let p = a.position_of(idx % np);
        let p0 = (a.mu * a.mu + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        acc += x.conj() * y / p0;
    }
    acc * vol
}

/// Gaussian in momentum space, centred away from the box faces.
pub fn momentum_gaussian(n: usize, dims: usize, p_max: f64, mu: f64, center: [f64; 3], width: f64, weights: &[Complex64]) -> Result<GridState> {
    let mut g = GridState::gaussian(n, dims, p_max, mu, center, width, [0.0; 3], weights)?;
    g.space = Space::Momentum;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::OnShellScalar;

    #[test]
    fn multiplication_is_pointwise() {
        let g = momentum_gaussian(16, 3, 6.0, 1.0, [0.3, 0.0, -0.2], 0.8, &[Complex64::new(1.0, 0.0)]).unwrap();
        let op = DiffOperator::scalar(1, OnShellScalar::p(1));
        let out = numeric_operator_sample(&op, &g).unwrap().apply(&g).unwrap();
        for i in 0..g.points() {
            let want = g.data[i] * g.position_of(i)[0];
            assert!((out.data[i] - want).norm() <= 1e-15 * want.norm().max(1e-300));
        }
    }

    #[test]
    fn position_grid_is_rejected() {
        let g = GridState::zeros(8, 3, 1.0, 1, Space::Position, 1.0).unwrap();
        assert!(numeric_operator_sample(&DiffOperator::identity(1), &g).is_err());
    }
}
