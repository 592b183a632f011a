//! Exact real-linear algebra over sampled operator coefficients.
//!
//! A real-linear map `x -> Σ x_b L(B_b)` into operators is reduced to a rational
//! matrix by evaluating every coefficient entry at a few rational on-shell points.
//! Sampling can only overestimate the kernel, so kernels are certified afterwards
//! by exact symbolic substitution.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::operator::{DiffOperator, Signature};
use crate::scalar::GaussianRational;
use crate::Result;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Rational points `(p1, p2, p3, mu; p0)` on the mass shell.
///
/// With `q = p²` and `0 < t² < q`, `p0 = (q/t + t)/2` and `mu = (q/t - t)/2` are
/// rational and satisfy `p0² - mu² = q`.
pub fn shell_points() -> Vec<([BigRational; 4], BigRational)> {
    let raw = [((1, 2), (1, 3), (2, 7), (1, 5)), ((3, 4), (-2, 5), (1, 9), (1, 3)), ((-5, 6), (7, 8), (-3, 11), (1, 2))];
    raw.iter()
        .map(|&(a, b, c, t)| {
            let p = [rat(a.0, a.1), rat(b.0, b.1), rat(c.0, c.1)];
            let q: BigRational = p.iter().map(|x| x * x).sum();
            let t = rat(t.0, t.1);
            let mu = (&q / &t - &t) / rat(2, 1);
            let p0 = (&q / &t + &t) / rat(2, 1);
            ([p[0].clone(), p[1].clone(), p[2].clone(), mu], p0)
        })
        .collect()
}

fn push_value(out: &mut Vec<BigRational>, v: Option<GaussianRational>) {
    let v = v.unwrap_or_else(GaussianRational::zero);
    out.push(v.re.clone());
    out.push(v.im.clone());
}

/// Columns are basis elements; `images[b]` is the list of constraint operators for basis `b`.
fn sample_matrix(images: &[Vec<DiffOperator>]) -> Vec<Vec<BigRational>> {
    let points = shell_points();
    let ncons = images.first().map_or(0, Vec::len);
    let mut columns: Vec<Vec<BigRational>> = vec![Vec::new(); images.len()];
    for c in 0..ncons {
        let sigs: BTreeSet<Signature> = images.iter().flat_map(|img| img[c].terms().map(|(s, _)| *s)).collect();
        let dim = images[0][c].dim();
        for sig in &sigs {
            for r in 0..dim {
                for s in 0..dim {
                    for (pt, p0) in &points {
                        for (b, img) in images.iter().enumerate() {
                            let v = img[c].coefficient(sig.derivs, sig.parity).and_then(|m| m.get(r, s).eval_exact(pt, p0));
                            push_value(&mut columns[b], v);
                        }
                    }
                }
            }
        }
    }
    columns
}

/// Basis of `{x ∈ Q^n : M x = 0}` for `M` given column-wise.
pub fn nullspace(columns: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = columns.len();
    let m = columns.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigRational>> = (0..m).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..n {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); n];
            x[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                x[pc] = -rows[row][f].clone();
            }
            normalize(x)
        })
        .collect()
}

/// Scales so the first nonzero entry is positive and entries are small integers where possible.
fn normalize(mut x: Vec<BigRational>) -> Vec<BigRational> {
    if let Some(first) = x.iter().find(|v| !v.is_zero()).cloned() {
        let s = if first.is_negative() { -BigRational::one() } else { BigRational::one() };
        for v in x.iter_mut() {
            *v *= &s;
        }
    }
    x
}

/// Kernel of the real-linear map sampled from `images`.
pub fn real_kernel(images: &[Vec<DiffOperator>]) -> Result<Vec<Vec<BigRational>>> {
    Ok(nullspace(&sample_matrix(images)))
}

/// Checks each kernel vector exactly with `holds`.
pub fn certify_kernel(kernel: &[Vec<BigRational>], mut holds: impl FnMut(&[BigRational]) -> Result<bool>) -> Result<bool> {
    for x in kernel {
        if !holds(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_are_on_shell() {
        for (p, p0) in shell_points() {
            let lhs = &p0 * &p0;
            let rhs = &p[0] * &p[0] + &p[1] * &p[1] + &p[2] * &p[2] + &p[3] * &p[3];
            assert_eq!(lhs, rhs);
            assert!(p[3].is_positive());
        }
    }

    #[test]
    fn nullspace_of_rank_one() {
        // columns (1,2), (2,4), (0,0)
        let cols = vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)], vec![rat(0, 1), rat(0, 1)]];
        let k = nullspace(&cols);
        assert_eq!(k.len(), 2);
    }
}
