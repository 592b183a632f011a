//! Position-operator checks: commuting components, canonical and rotation
//! commutators, behaviour under `T` and `S`, self-adjointness, the
//! Jordan-Mukunda boost relation, the ansatz scan and the two-block `D`-space
//! analysis.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::linear::{certify_kernel, real_kernel};
use super::report::{CheckReport, Relation};
use crate::catalog::{build_rep, levi, Generators, RepClass, RepKind, Representation};
use crate::operator::{DiffOperator, ScalarMatrix};
use crate::position::{build_position, dirac_equivalence, positions_equal, Ansatz, Position};
use crate::scalar::{GaussianRational, OnShellScalar};
use crate::spin::Spin;
use crate::{Error, Result};

fn i() -> GaussianRational {
    GaussianRational::i()
}

/// Commuting components, canonical commutators with `P`, rotation covariance and
/// self-adjointness: the checks that depend only on the generators.
pub fn check_position_core(g: &Generators, q: &Position, label: &str) -> Result<CheckReport> {
    let dim = g.p0.dim();
    let mut report = CheckReport::new(label, "position");
    for j in 0..3 {
        for k in (j + 1)..3 {
            report.push(Relation::zero_check(format!("commute [Q{},Q{}]", j + 1, k + 1), &q[j].commutator(&q[k])?));
        }
    }
    let id_i = DiffOperator::identity(dim).scale(&i());
    let zero = DiffOperator::zero(dim);
    for k in 0..3 {
        for j in 0..3 {
            let rhs = if j == k { &id_i } else { &zero };
            report.push(Relation::equation(format!("canonical [Q{},P{}]", k + 1, j + 1), &q[k].commutator(&g.p[j])?, rhs)?);
        }
    }
    for l in 0..3 {
        for j in 0..3 {
            let mut rhs = DiffOperator::zero(dim);
            for (k, qk) in q.iter().enumerate() {
                let e = levi(l, j, k);
                if e != 0 {
                    rhs = &rhs + &qk.scale(&(&i() * &GaussianRational::from_i64(e)));
                }
            }
            report.push(Relation::equation(format!("rotation [J{},Q{}]", l + 1, j + 1), &g.j[l].commutator(&q[j])?, &rhs)?);
        }
    }
    for j in 0..3 {
        let adj = q[j].formal_adjoint()?;
        report.push(Relation::equation(format!("self-adjoint Q{}", j + 1), &adj, &q[j])?);
    }
    Ok(report)
}

/// `T Q = Q T` and `S Q = -Q S`.
pub fn check_position_discrete(t: &DiffOperator, s: &DiffOperator, q: &Position, report: &mut CheckReport) -> Result<()> {
    for j in 0..3 {
        let tq = (t * &q[j]).sub(&(&q[j] * t))?;
        report.push(Relation::zero_check(format!("T: TQ{0} = Q{0}T", j + 1), &tq));
    }
    for j in 0..3 {
        let sq = (s * &q[j]).add(&(&q[j] * s))?;
        report.push(Relation::zero_check(format!("S: SQ{0} = -Q{0}S", j + 1), &sq));
    }
    Ok(())
}

/// Every position axiom for `q` in `rep`.
pub fn check_position(rep: &Representation, q: &Position) -> Result<CheckReport> {
    let mut report = check_position_core(&rep.generators, q, &rep.label())?;
    check_position_discrete(&rep.t, &rep.s, q, &mut report)?;
    Ok(report)
}

/// Verdicts of the Jordan-Mukunda relation in both readings.
#[derive(Clone, Debug, Serialize)]
pub struct JmVerdict {
    pub printed: bool,
    pub symmetrized: bool,
    pub report: CheckReport,
}

/// `[K_j, Q_k] = ½(Q_j V_k + V_k Q_j)` with `V_k = [P0, Q_k]`, as printed for all `j, k`,
/// and its `j ↔ k` symmetric part for `j ≤ k`.
pub fn check_jm(g: &Generators, q: &Position, label: &str) -> Result<JmVerdict> {
    let mut report = CheckReport::new(label, "jm");
    let half = GaussianRational::ratio(1, 2);
    let v: Vec<DiffOperator> = q.iter().map(|qk| g.p0.commutator(qk)).collect::<Result<_>>()?;
    let kq: Vec<Vec<DiffOperator>> =
        (0..3).map(|j| (0..3).map(|k| g.k[j].commutator(&q[k])).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    let rhs: Vec<Vec<DiffOperator>> =
        (0..3).map(|j| (0..3).map(|k| (&(&q[j] * &v[k]) + &(&v[k] * &q[j])).scale(&half)).collect()).collect();
    let mut printed = true;
    for j in 0..3 {
        for k in 0..3 {
            let r = Relation::equation(format!("JM[K{},Q{}]", j + 1, k + 1), &kq[j][k], &rhs[j][k])?;
            printed &= r.holds();
            report.push(r);
        }
    }
    let mut symmetrized = true;
    for j in 0..3 {
        for k in j..3 {
            let lhs = (&kq[j][k] + &kq[k][j]).scale(&half);
            let r = (&rhs[j][k] + &rhs[k][j]).scale(&half);
            let rel = Relation::equation(format!("JM-sym[K{},Q{}]", j + 1, k + 1), &lhs, &r)?;
            symmetrized &= rel.holds();
            report.push(rel);
        }
    }
    Ok(JmVerdict { printed, symmetrized, report })
}

/// One candidate tried by the scan.
#[derive(Clone, Debug, Serialize)]
pub struct ScanEntry {
    pub ansatz: String,
    pub commuting: bool,
    pub canonical: bool,
    pub rotations: bool,
    pub self_adjoint: bool,
    pub time_reversal: bool,
    pub space_inversion: bool,
    pub jm: bool,
    pub passes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub rep: String,
    pub t_antilinear: bool,
    pub s_antilinear: bool,
    pub s_sq: i64,
    pub entries: Vec<ScanEntry>,
    pub passing: Vec<String>,
    pub admits_position: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanTable {
    pub spin: String,
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    /// Labels of the symmetric-spectrum rows that admit a passing ansatz.
    pub fn passing_symmetric(&self) -> Vec<&str> {
        self.rows
            .iter()
            .filter(|r| r.admits_position && !r.rep.starts_with("Uu") && !r.rep.starts_with("Ud"))
            .map(|r| r.rep.as_str())
            .collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("### Position scan, s = {}\n\n| rep | T | S | S^2 | passing ansatz |\n|---|---|---|---|---|\n", self.spin);
        for r in &self.rows {
            let ch = |anti: bool| if anti { "anti-unitary" } else { "unitary" };
            let pass = if r.passing.is_empty() { "none".to_string() } else { r.passing.join(", ") };
            out.push_str(&format!("| {} | {} | {} | {} | {} |\n", r.rep, ch(r.t_antilinear), ch(r.s_antilinear), r.s_sq, pass));
        }
        out
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Candidate ansätze examined for a representation class.
pub fn scan_candidates(class: RepClass) -> Vec<Ansatz> {
    match class {
        RepClass::Up | RepClass::Down => vec![
            Ansatz::NewtonWigner,
            Ansatz::CrossTerm,
            Ansatz::SpinShifted { a: GaussianRational::one() },
            Ansatz::SpinShifted { a: GaussianRational::ratio(-1, 2) },
        ],
        RepClass::SymCanonical => {
            let mut v = vec![Ansatz::NewtonWigner, Ansatz::OffDiagonal, Ansatz::Dirac];
            let angles = [(1, 1, 0, 1), (-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, -1, 1), (3, 5, 4, 5)];
            for a in [OnShellScalar::zero(), OnShellScalar::one()] {
                for &(sn, sd, cn, cd) in &angles {
                    v.push(Ansatz::TwoBlock { a: a.clone(), sin_b: rat(sn, sd), cos_b: rat(cn, cd) });
                }
            }
            v
        }
        _ => vec![Ansatz::NewtonWigner],
    }
}

/// For each octet member, whether some catalogued ansatz satisfies every position
/// axiom, self-adjointness and the Jordan-Mukunda relation as printed.
pub fn jm_scan(spin: Spin) -> Result<ScanTable> {
    // Position axioms other than the T/S ones depend only on the generators, which are
    // shared by all members of a class; evaluate them once per class.
    let mut rows = Vec::new();
    for class in [RepClass::Up, RepClass::Down, RepClass::SymCanonical] {
        let members: Vec<Representation> = RepKind::OCTET
            .iter()
            .filter(|k| k.class() == class)
            .map(|&k| build_rep(k, spin))
            .collect::<Result<_>>()?;
        let base = &members[0];
        let candidates = scan_candidates(class);
        let core: Vec<(Ansatz, Position, CheckReport, bool)> = candidates
            .into_par_iter()
            .map(|a| {
                let q = build_position(base, &a)?;
                let core = check_position_core(&base.generators, &q, &base.label())?;
                let jm = check_jm(&base.generators, &q, &base.label())?;
                Ok((a, q, core, jm.printed))
            })
            .collect::<Result<_>>()?;
        for rep in &members {
            let mut entries = Vec::new();
            for (a, q, core, jm) in &core {
                let mut disc = CheckReport::new(rep.label(), "position");
                check_position_discrete(&rep.t, &rep.s, q, &mut disc)?;
                let group = |prefix: &str, r: &CheckReport| r.relations.iter().filter(|x| x.id.starts_with(prefix)).all(|x| x.holds());
                let e = ScanEntry {
                    ansatz: a.to_string(),
                    commuting: group("commute", core),
                    canonical: group("canonical", core),
                    rotations: group("rotation", core),
                    self_adjoint: group("self-adjoint", core),
                    time_reversal: group("T: ", &disc),
                    space_inversion: group("S: ", &disc),
                    jm: *jm,
                    passes: false,
                };
                let passes = e.commuting && e.canonical && e.rotations && e.self_adjoint && e.time_reversal && e.space_inversion && e.jm;
                entries.push(ScanEntry { passes, ..e });
            }
            let passing: Vec<String> = entries.iter().filter(|e| e.passes).map(|e| e.ansatz.clone()).collect();
            rows.push(ScanRow {
                rep: rep.label(),
                t_antilinear: rep.t.is_antilinear(),
                s_antilinear: rep.s.is_antilinear(),
                s_sq: rep.expected.s_sq,
                admits_position: !passing.is_empty(),
                passing,
                entries,
            });
        }
    }
    Ok(ScanTable { spin: spin.to_string(), rows })
}

/// Solution space of the two-block ansatz `Q = F̂ + (d ⊗ Id) p_j`, `d` Hermitian and
/// constant, under `T Q = Q T` and `S Q = -Q S`.
#[derive(Clone, Debug, Serialize)]
pub struct DSpace {
    pub rep: String,
    pub case: String,
    pub dimension: usize,
    /// Basis of admissible `d` matrices, rendered.
    pub basis: Vec<String>,
    pub certified: bool,
    pub verdict: String,
}

/// Real basis of Hermitian 2×2 matrices: `E11, E22, ρ1, ρ2`.
fn hermitian_basis2() -> Vec<[[GaussianRational; 2]; 2]> {
    let z = GaussianRational::zero;
    let o = GaussianRational::one;
    let im = GaussianRational::i();
    vec![
        [[o(), z()], [z(), z()]],
        [[z(), z()], [z(), o()]],
        [[z(), o()], [o(), z()]],
        [[z(), -&im], [im.clone(), z()]],
    ]
}

/// Outcome of conjugating by the block phase twist `diag(1, i)`.
#[derive(Clone, Debug, Serialize)]
pub struct TwistVerdict {
    pub rep: String,
    pub generators_fixed: bool,
    /// The off-diagonal ansatz is carried onto the Dirac form.
    pub maps_to_dirac: bool,
    /// Same test for the doubled-factor reading of the off-diagonal ansatz.
    pub doubled_maps_to_dirac: bool,
    pub report: CheckReport,
}

/// Checks that the twist fixes all ten generators of a symmetric-spectrum
/// representation and sends the off-diagonal position onto the Dirac one.
pub fn twist_check(rep: &Representation) -> Result<TwistVerdict> {
    let twisted = rep.generators.twisted(1)?;
    let mut report = CheckReport::new(rep.label(), "twist");
    let mut generators_fixed = true;
    for ((name, before), (_, after)) in rep.generators.named().into_iter().zip(twisted.named()) {
        let r = Relation::equation(format!("twist fixes {}", name), after, before)?;
        generators_fixed &= r.holds();
        report.push(r);
    }
    let dirac = build_position(rep, &Ansatz::Dirac)?;
    let image = dirac_equivalence(&build_position(rep, &Ansatz::OffDiagonal)?)?;
    let maps_to_dirac = positions_equal(&image, &dirac)?;
    for j in 0..3 {
        report.push(Relation::equation(format!("twist off-diagonal Q{} = dirac Q{}", j + 1, j + 1), &image[j], &dirac[j])?);
    }
    let doubled = dirac_equivalence(&build_position(rep, &Ansatz::OffDiagonalDoubled)?)?;
    let doubled_maps_to_dirac = positions_equal(&doubled, &dirac)?;
    Ok(TwistVerdict { rep: rep.label(), generators_fixed, maps_to_dirac, doubled_maps_to_dirac, report })
}

/// Case label of a symmetric-spectrum octet member: `U`/`A` for unitary or
/// anti-unitary `T` and `S`, then the sub-case.
pub fn d_space_case(kind: RepKind) -> Option<&'static str> {
    Some(match kind {
        RepKind::U1 => "UU.i",
        RepKind::U2 => "UU.ii",
        RepKind::U4 => "UA.i",
        RepKind::U3 => "UA.ii",
        RepKind::U6 => "AA.i",
        RepKind::U5 => "AA.ii",
        _ => return None,
    })
}

fn d_ops(rep: &Representation, d: &[[GaussianRational; 2]; 2]) -> [DiffOperator; 3] {
    let n = rep.spin.dim();
    [1, 2, 3].map(|j| {
        let m = ScalarMatrix::from_fn(2 * n, |r, c| {
            if r % n == c % n {
                OnShellScalar::constant(d[r / n][c / n].clone()).mul(&OnShellScalar::p(j))
            } else {
                OnShellScalar::zero()
            }
        });
        DiffOperator::multiplication(m)
    })
}

pub fn d_space(rep: &Representation) -> Result<DSpace> {
    if rep.class() != RepClass::SymCanonical || rep.spin != Spin::ZERO {
        return Err(Error::IncompatibleAnsatz(format!("the D-space analysis is for s = 0 symmetric-spectrum members, got {}", rep.label())));
    }
    let basis = hermitian_basis2();
    // Residual of the constraints for D alone; F̂ satisfies both.
    let constraint = |d: &[[GaussianRational; 2]; 2]| -> Result<Vec<DiffOperator>> {
        let ops = d_ops(rep, d);
        let mut out = Vec::new();
        for op in &ops {
            out.push((&rep.t * op).sub(&(op * &rep.t))?);
            out.push((&rep.s * op).add(&(op * &rep.s))?);
        }
        Ok(out)
    };
    let images: Vec<Vec<DiffOperator>> = basis.iter().map(&constraint).collect::<Result<_>>()?;
    let kernel = real_kernel(&images)?;
    let combine = |x: &[BigRational]| -> [[GaussianRational; 2]; 2] {
        let mut d = [[GaussianRational::zero(), GaussianRational::zero()], [GaussianRational::zero(), GaussianRational::zero()]];
        for (b, c) in basis.iter().zip(x) {
            for r in 0..2 {
                for s in 0..2 {
                    d[r][s] = &d[r][s] + &(&b[r][s] * &GaussianRational::real(c.clone()));
                }
            }
        }
        d
    };
    let certified = certify_kernel(&kernel, |x| {
        let ops = constraint(&combine(x))?;
        Ok(ops.iter().all(|o| o.is_zero()))
    })?;
    let rendered: Vec<String> = kernel
        .iter()
        .map(|x| {
            let d = combine(x);
            format!("[[{}, {}], [{}, {}]]", d[0][0], d[0][1], d[1][0], d[1][1])
        })
        .collect();
    let dimension = kernel.len();
    let verdict = if dimension == 0 { "determined: Q = F̂" } else { "undetermined" };
    Ok(DSpace {
        rep: rep.label(),
        case: d_space_case(rep.kind).unwrap_or("-").to_string(),
        dimension,
        basis: rendered,
        certified,
        verdict: verdict.into(),
    })
}

/// Refutation witnesses for the single-shell `s = 0` position: `Q = F + f p` with
/// `f ∈ {0, 1, i}`. `f = 0` passes everything, `f = 1` breaks `T Q = Q T`, `f = i`
/// keeps `T` but breaks self-adjointness.
pub fn nw_witnesses(rep: &Representation) -> Result<Vec<(String, CheckReport)>> {
    let mut out = Vec::new();
    for (name, f) in [("f=0", OnShellScalar::zero()), ("f=1", OnShellScalar::one()), ("f=i", OnShellScalar::i())] {
        let q = build_position(rep, &Ansatz::Shifted { f })?;
        let mut report = check_position(rep, &q)?;
        report.suite = format!("position {}", name);
        for r in report.relations.iter_mut() {
            let predicted = match name {
                "f=1" => r.id.starts_with("T: "),
                "f=i" => r.id.starts_with("self-adjoint"),
                _ => false,
            };
            if predicted {
                r.expected_violation = true;
            }
        }
        out.push((name.to_string(), report));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nw_passes_for_up_spin_zero() {
        let rep = build_rep(RepKind::Up, Spin::ZERO).unwrap();
        let q = crate::position::newton_wigner(&rep);
        let r = check_position(&rep, &q).unwrap();
        assert!(r.all_hold(), "{}", r.to_markdown());
        let jm = check_jm(&rep.generators, &q, "Uu").unwrap();
        assert!(jm.printed && jm.symmetrized);
    }

    #[test]
    fn d_space_dimensions() {
        let want = [(RepKind::U1, 2), (RepKind::U2, 1), (RepKind::U3, 0), (RepKind::U4, 1), (RepKind::U5, 0), (RepKind::U6, 1)];
        for (k, dim) in want {
            let d = d_space(&build_rep(k, Spin::ZERO).unwrap()).unwrap();
            assert_eq!(d.dimension, dim, "{:?}", d);
            assert!(d.certified);
        }
    }
}
