//! Candidate position operators: Newton-Wigner, the two-block `D` ansatz,
//! the spin-shifted family and the Dirac form.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::{levi, spin_data, RepClass, Representation};
use crate::error::{Error, Result};
use crate::operator::{rho, DiffOperator, ScalarMatrix};
use crate::scalar::{GaussianRational, OnShellScalar};
use crate::spin::ExactMatrix;

/// A position ansatz together with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Ansatz {
    /// `F_j = i ∂_j - i p_j / (2 p0²)` in every block.
    NewtonWigner,
    /// `F + f(p0) p` on a one-block representation.
    Shifted { f: OnShellScalar },
    /// `F̂ + d p_j` with `d` a 2×2 matrix of scalars acting on the block index.
    GenericD { d: [[OnShellScalar; 2]; 2] },
    /// `F - a (p·S) p / (p0 (p0 + mu)) + a S - (p × S) / (mu (p0 + mu))`
    SpinShifted { a: GaussianRational },
    /// `SpinShifted` with `a = 0`.
    CrossTerm,
    /// Two-block family with constant angle `B`, given by `(sin B, cos B)`.
    TwoBlock { a: OnShellScalar, sin_b: BigRational, cos_b: BigRational },
    /// `TwoBlock` with `sin B = 0`.
    TwoBlockCos { a: OnShellScalar, cos_b: BigRational },
    /// `TwoBlock` with `cos B = 0`.
    TwoBlockSin { a: OnShellScalar, sin_b: BigRational },
    /// `TwoBlockSin` with `A = 0`, `sin B = -1`.
    OffDiagonal,
    /// `OffDiagonal` with the doubled block factor `ρ1 ρ1 = Id` in the `(p·S) p` term.
    OffDiagonalDoubled,
    /// The Dirac-equivalent operator.
    Dirac,
}

impl Ansatz {
    pub fn name(&self) -> &'static str {
        match self {
            Ansatz::NewtonWigner => "NewtonWigner",
            Ansatz::Shifted { .. } => "Shifted",
            Ansatz::GenericD { .. } => "GenericD",
            Ansatz::SpinShifted { .. } => "spin-shifted",
            Ansatz::CrossTerm => "cross-term",
            Ansatz::TwoBlock { .. } => "two-block",
            Ansatz::TwoBlockCos { .. } => "two-block-cos",
            Ansatz::TwoBlockSin { .. } => "two-block-sin",
            Ansatz::OffDiagonal => "off-diagonal",
            Ansatz::OffDiagonalDoubled => "off-diagonal-doubled",
            Ansatz::Dirac => "dirac",
        }
    }

    /// The `(A, sin B, cos B)` triple of the two-block family, after validation.
    fn angle(&self) -> Result<Option<(OnShellScalar, BigRational, BigRational)>> {
        let (a, s, c) = match self {
            Ansatz::TwoBlock { a, sin_b, cos_b } => (a.clone(), sin_b.clone(), cos_b.clone()),
            Ansatz::TwoBlockCos { a, cos_b } => (a.clone(), BigRational::zero(), cos_b.clone()),
            Ansatz::TwoBlockSin { a, sin_b } => (a.clone(), sin_b.clone(), BigRational::zero()),
            Ansatz::OffDiagonal => (OnShellScalar::zero(), -BigRational::one(), BigRational::zero()),
            _ => return Ok(None),
        };
        if &s * &s + &c * &c != BigRational::one() {
            return Err(Error::IncompatibleAnsatz(format!("sin B = {}, cos B = {} do not satisfy sin² + cos² = 1", s, c)));
        }
        Ok(Some((a, s, c)))
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ansatz::Shifted { f: s } => write!(f, "Shifted(f={})", s),
            Ansatz::SpinShifted { a } => write!(f, "spin-shifted(a={})", a),
            Ansatz::TwoBlock { a, sin_b, cos_b } => write!(f, "two-block(A={}, sinB={}, cosB={})", a, sin_b, cos_b),
            Ansatz::TwoBlockCos { a, cos_b } => write!(f, "two-block-cos(A={}, cosB={})", a, cos_b),
            Ansatz::TwoBlockSin { a, sin_b } => write!(f, "two-block-sin(A={}, sinB={})", a, sin_b),
            Ansatz::GenericD { d } => write!(f, "GenericD([[{}, {}], [{}, {}]])", d[0][0], d[0][1], d[1][0], d[1][1]),
            other => f.write_str(other.name()),
        }
    }
}

pub type Position = [DiffOperator; 3];

fn real(r: &BigRational) -> GaussianRational {
    GaussianRational::real(r.clone())
}

/// Newton-Wigner component on `C^n`.
pub fn nw_component(n: usize, j: usize) -> DiffOperator {
    let i = GaussianRational::i();
    let p0sq_inv = OnShellScalar::p0().pow(2).invert().expect("p0 is never zero on the shell");
    let shift = OnShellScalar::p(j).mul(&p0sq_inv).scale(&GaussianRational::ratio(1, 2));
    &DiffOperator::partial(n, j).scale(&i) - &DiffOperator::scalar(n, shift).scale(&i)
}

fn nw_blocks(blocks: usize, n: usize) -> Position {
    let id = ExactMatrix::identity(blocks);
    [1, 2, 3].map(|j| DiffOperator::block(&id, &nw_component(n, j)))
}

pub fn newton_wigner(rep: &Representation) -> Position {
    nw_blocks(rep.blocks, rep.spin.dim())
}

/// Spin-dependent building blocks on `C^(2s+1)`.
struct SpinTerms {
    n: usize,
    s: [ScalarMatrix; 3],
    /// `p·S`
    p_dot_s: ScalarMatrix,
    /// `(p × S)_j`
    cross: [ScalarMatrix; 3],
}

impl SpinTerms {
    fn new(rep: &Representation) -> Result<Self> {
        let sd = spin_data(rep.spin)?;
        let n = rep.spin.dim();
        let mut p_dot_s = ScalarMatrix::zeros(n);
        for a in 0..3 {
            p_dot_s = p_dot_s.add(&sd.s[a].scale_by(&OnShellScalar::p(a + 1)));
        }
        let cross = [0, 1, 2].map(|j| {
            let mut acc = ScalarMatrix::zeros(n);
            for a in 0..3 {
                for b in 0..3 {
                    let e = levi(j, a, b);
                    if e != 0 {
                        acc = acc.add(&sd.s[b].scale_by(&OnShellScalar::p(a + 1)).scale(&GaussianRational::from_i64(e)));
                    }
                }
            }
            acc
        });
        Ok(Self { n, s: sd.s, p_dot_s, cross })
    }

    fn mult(&self, m: ScalarMatrix) -> DiffOperator {
        DiffOperator::multiplication(m)
    }
}

fn inv(s: OnShellScalar) -> OnShellScalar {
    s.invert().expect("denominator is a nonzero on-shell scalar")
}

fn p0_plus_mu() -> OnShellScalar {
    OnShellScalar::p0().add(&OnShellScalar::mu())
}

fn require(cond: bool, what: &str, ansatz: &Ansatz, rep: &Representation) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::IncompatibleAnsatz(format!("{} needs {}; got {}", ansatz.name(), what, rep.label())))
    }
}

/// Assembles `Q` for the given ansatz on the given representation.
pub fn build_position(rep: &Representation, ansatz: &Ansatz) -> Result<Position> {
    let n = rep.spin.dim();
    match ansatz {
        Ansatz::NewtonWigner => Ok(newton_wigner(rep)),
        Ansatz::Shifted { f } => {
            require(rep.blocks == 1, "a one-block representation", ansatz, rep)?;
            Ok([1, 2, 3].map(|j| &nw_component(n, j) + &DiffOperator::scalar(n, f.mul(&OnShellScalar::p(j)))))
        }
        Ansatz::GenericD { d } => {
            require(rep.blocks == 2, "a two-block representation", ansatz, rep)?;
            let f = newton_wigner(rep);
            let dm = ScalarMatrix::from_fn(2, |a, b| d[a][b].clone());
            Ok([0, 1, 2].map(|j| {
                let pj = ScalarMatrix::scalar(n, OnShellScalar::p(j + 1));
                let blockd = kron_scalar(&dm, &pj);
                &f[j] + &DiffOperator::multiplication(blockd)
            }))
        }
        Ansatz::SpinShifted { .. } | Ansatz::CrossTerm => {
            require(matches!(rep.class(), RepClass::Up | RepClass::Down), "a single-shell representation", ansatz, rep)?;
            let a = match ansatz {
                Ansatz::SpinShifted { a } => a.clone(),
                _ => GaussianRational::zero(),
            };
            let t = SpinTerms::new(rep)?;
            let c1 = inv(OnShellScalar::p0().mul(&p0_plus_mu()));
            let c2 = inv(OnShellScalar::mu().mul(&p0_plus_mu()));
            Ok([0, 1, 2].map(|j| {
                let pj = OnShellScalar::p(j + 1);
                let mut m = t.p_dot_s.scale_by(&pj.mul(&c1)).scale(&a).neg();
                m = m.add(&t.s[j].scale(&a));
                m = m.sub(&t.cross[j].scale_by(&c2));
                &nw_component(n, j + 1) + &t.mult(m)
            }))
        }
        Ansatz::TwoBlock { .. } | Ansatz::TwoBlockCos { .. } | Ansatz::TwoBlockSin { .. } | Ansatz::OffDiagonal => {
            require(rep.class() == RepClass::SymCanonical, "a symmetric-spectrum canonical representation", ansatz, rep)?;
            let (a, sin_b, cos_b) = ansatz.angle()?.expect("angle family");
            two_block_family(rep, &a, &real(&sin_b), &real(&cos_b), &rho(1), &rho(2))
        }
        Ansatz::OffDiagonalDoubled => {
            require(rep.class() == RepClass::SymCanonical, "a symmetric-spectrum canonical representation", ansatz, rep)?;
            // ρ1 ρ1 = Id in front of the (p·S) p term, ρ1 elsewhere.
            let t = SpinTerms::new(rep)?;
            let f = newton_wigner(rep);
            let id2 = ExactMatrix::identity(2);
            let den = inv(OnShellScalar::p0().pow(2).mul(&p0_plus_mu()));
            let inv_p0 = inv(OnShellScalar::p0());
            let cden = inv(OnShellScalar::p0().mul(&p0_plus_mu()));
            Ok([0, 1, 2].map(|j| {
                let pj = OnShellScalar::p(j + 1);
                let ps = ScalarMatrix::block(&id2, &t.p_dot_s.scale_by(&pj.mul(&den)));
                let s = ScalarMatrix::block(&rho(1), &t.s[j].scale_by(&inv_p0)).neg();
                let c = ScalarMatrix::block(&id2, &t.cross[j].scale_by(&cden));
                &f[j] + &DiffOperator::multiplication(ps.add(&s).add(&c))
            }))
        }
        Ansatz::Dirac => {
            require(rep.blocks == 2, "a two-block representation", ansatz, rep)?;
            let t = SpinTerms::new(rep)?;
            let f = newton_wigner(rep);
            let id2 = ExactMatrix::identity(2);
            let den = inv(OnShellScalar::p0().pow(2).mul(&p0_plus_mu()));
            let inv_p0 = inv(OnShellScalar::p0());
            let cden = inv(OnShellScalar::p0().mul(&p0_plus_mu()));
            let r2 = rho(2);
            Ok([0, 1, 2].map(|j| {
                let pj = OnShellScalar::p(j + 1);
                let ps = ScalarMatrix::block(&r2, &t.p_dot_s.scale_by(&pj.mul(&den)));
                let s = ScalarMatrix::block(&r2, &t.s[j].scale_by(&inv_p0)).neg();
                let c = ScalarMatrix::block(&id2, &t.cross[j].scale_by(&cden));
                &f[j] + &DiffOperator::multiplication(ps.add(&s).add(&c))
            }))
        }
    }
}

/// `Q = F̂ + ρa A sinB p + ρb A cosB p - ρa sinB (p·S) p / (p0²(p0+mu)) - ρb cosB (p·S) p / (p0²(p0+mu))
///      + ρa sinB S / p0 + ρb cosB S / p0 + (p × S) / (p0 (p0 + mu))`
fn two_block_family(
    rep: &Representation,
    a: &OnShellScalar,
    sin_b: &GaussianRational,
    cos_b: &GaussianRational,
    ra: &ExactMatrix,
    rb: &ExactMatrix,
) -> Result<Position> {
    let t = SpinTerms::new(rep)?;
    let n = t.n;
    let f = newton_wigner(rep);
    let id2 = ExactMatrix::identity(2);
    let idn = ScalarMatrix::identity(n);
    let den = inv(OnShellScalar::p0().pow(2).mul(&p0_plus_mu()));
    let inv_p0 = inv(OnShellScalar::p0());
    let cden = inv(OnShellScalar::p0().mul(&p0_plus_mu()));
    let pattern = ra.scale(sin_b).add(&rb.scale(cos_b));
    Ok([0, 1, 2].map(|j| {
        let pj = OnShellScalar::p(j + 1);
        let lin = ScalarMatrix::block(&pattern, &idn.scale_by(&a.mul(&pj)));
        let ps = ScalarMatrix::block(&pattern, &t.p_dot_s.scale_by(&pj.mul(&den))).neg();
        let s = ScalarMatrix::block(&pattern, &t.s[j].scale_by(&inv_p0));
        let c = ScalarMatrix::block(&id2, &t.cross[j].scale_by(&cden));
        &f[j] + &DiffOperator::multiplication(lin.add(&ps).add(&s).add(&c))
    }))
}

/// `d ⊗ m` for a scalar-valued block pattern `d`.
fn kron_scalar(d: &ScalarMatrix, m: &ScalarMatrix) -> ScalarMatrix {
    let (nb, n) = (d.dim(), m.dim());
    ScalarMatrix::from_fn(nb * n, |i, j| d.get(i / n, j / n).mul(m.get(i % n, j % n)))
}

/// Applies the block phase twist with `k = 1` to every component.
pub fn dirac_equivalence(q: &Position) -> Result<Position> {
    let [a, b, c] = q;
    Ok([a.block_phase_twist(1)?, b.block_phase_twist(1)?, c.block_phase_twist(1)?])
}

pub fn positions_equal(a: &Position, b: &Position) -> Result<bool> {
    for j in 0..3 {
        if !a[j].equals(&b[j])? {
            return Ok(false);
        }
    }
    Ok(true)
}
