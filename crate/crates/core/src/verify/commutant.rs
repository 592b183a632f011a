//! Commutant dimension in the block algebra and the time-operator obstruction.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::linear::{certify_kernel, real_kernel};
use crate::catalog::Representation;
use crate::operator::{DiffOperator, ScalarMatrix};
use crate::scalar::{GaussianRational, OnShellScalar};
use crate::spin::ExactMatrix;
use crate::Result;

/// Real basis of Hermitian `b×b` matrices.
pub fn hermitian_basis(b: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for a in 0..b {
        let mut m = ExactMatrix::zeros(b);
        m.set(a, a, GaussianRational::one());
        out.push(m);
    }
    for a in 0..b {
        for c in (a + 1)..b {
            let mut m = ExactMatrix::zeros(b);
            m.set(a, c, GaussianRational::one());
            m.set(c, a, GaussianRational::one());
            out.push(m);
            let mut m = ExactMatrix::zeros(b);
            m.set(a, c, -&GaussianRational::i());
            m.set(c, a, GaussianRational::i());
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct Commutant {
    pub rep: String,
    pub dimension: usize,
    /// Basis of Hermitian block patterns `A` (acting as `A ⊗ Id`).
    pub basis: Vec<String>,
    pub certified: bool,
    pub irreducible: bool,
    pub uses_t: bool,
    pub uses_s: bool,
}

fn combine(basis: &[ExactMatrix], x: &[BigRational]) -> ExactMatrix {
    let mut acc = ExactMatrix::zeros(basis[0].dim);
    for (b, c) in basis.iter().zip(x) {
        if !c.is_zero() {
            acc = acc.add(&b.scale(&GaussianRational::real(c.clone())));
        }
    }
    acc
}

fn constraints(rep: &Representation, a: &ExactMatrix, use_t: bool, use_s: bool) -> Result<Vec<DiffOperator>> {
    let op = DiffOperator::constant(&a.kron(&ExactMatrix::identity(rep.spin.dim())));
    let mut out = Vec::new();
    for (_, g) in rep.generators.named() {
        out.push(op.commutator(g)?);
    }
    if use_t {
        out.push((&op * &rep.t).sub(&(&rep.t * &op))?);
    }
    if use_s {
        out.push((&op * &rep.s).sub(&(&rep.s * &op))?);
    }
    Ok(out)
}

fn render(m: &ExactMatrix) -> String {
    let rows: Vec<String> = (0..m.dim)
        .map(|i| format!("[{}]", (0..m.dim).map(|j| m.get(i, j).to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Real dimension of the Hermitian block-scalar operators commuting with every generator
/// and, optionally, with `T` and `S`.
pub fn commutant_dimension_with(rep: &Representation, use_t: bool, use_s: bool) -> Result<Commutant> {
    let basis = hermitian_basis(rep.blocks);
    let images: Vec<Vec<DiffOperator>> = basis.iter().map(|a| constraints(rep, a, use_t, use_s)).collect::<Result<_>>()?;
    let kernel = real_kernel(&images)?;
    let certified = certify_kernel(&kernel, |x| Ok(constraints(rep, &combine(&basis, x), use_t, use_s)?.iter().all(DiffOperator::is_zero)))?;
    Ok(Commutant {
        rep: rep.label(),
        dimension: kernel.len(),
        basis: kernel.iter().map(|x| render(&combine(&basis, x))).collect(),
        certified,
        irreducible: kernel.len() == 1,
        uses_t: use_t,
        uses_s: use_s,
    })
}

pub fn commutant_dimension(rep: &Representation) -> Result<Commutant> {
    commutant_dimension_with(rep, true, true)
}

#[derive(Clone, Debug, Serialize)]
pub struct TimeOperatorVerdict {
    pub rep: String,
    /// `[q0, P0]` for `q0 = Σ q_ab E_ab ⊗ Id`, rendered block by block.
    pub commutator_shape: String,
    pub diagonal_blocks_vanish: bool,
    /// `[Q0, P0] = i Id` is impossible.
    pub contradiction: bool,
}

/// For a multiplication operator `q0(p)` commuting with every `P_j`, `[q0, P0]` has
/// vanishing diagonal blocks, so `[Q0, P0] = i Id` cannot hold.
///
/// Scalar functions commute with `p0`, so the commutator is linear in the block
/// entries `q_ab` and it suffices to evaluate it on the block units `E_ab ⊗ Id`.
pub fn no_time_operator(rep: &Representation) -> Result<TimeOperatorVerdict> {
    let b = rep.blocks;
    let n = rep.spin.dim();
    let mut diag_zero = true;
    let mut shape = vec![vec![String::from("0"); b]; b];
    for a in 0..b {
        for c in 0..b {
            let mut e = ExactMatrix::zeros(b);
            e.set(a, c, GaussianRational::one());
            let q = DiffOperator::constant(&e.kron(&ExactMatrix::identity(n)));
            let comm = q.commutator(&rep.generators.p0)?;
            if comm.is_zero() {
                continue;
            }
            if a == c {
                diag_zero = false;
            }
            let coeff = comm
                .coefficient([0, 0, 0], false)
                .map(|m: &ScalarMatrix| m.get(a * n, c * n).clone())
                .unwrap_or_else(OnShellScalar::zero);
            shape[a][c] = format!("({})*q{}{}", coeff.render(), a + 1, c + 1);
        }
    }
    let rows: Vec<String> = shape.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    // Also confirm on a momentum-dependent multiplier, p1/p0 in the first diagonal entry.
    let mut m = ScalarMatrix::zeros(rep.dim());
    m.set(0, 0, OnShellScalar::p(1).mul(&OnShellScalar::p0().invert()?));
    let generic = DiffOperator::multiplication(m).commutator(&rep.generators.p0)?;
    let diag_zero = diag_zero && generic.is_zero();
    Ok(TimeOperatorVerdict {
        rep: rep.label(),
        commutator_shape: format!("[{}]", rows.join(", ")),
        diagonal_blocks_vanish: diag_zero,
        contradiction: diag_zero,
    })
}
