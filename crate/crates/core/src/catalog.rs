//! The representation catalog: generators, time reversal `T` and space
//! inversion `S` for every construction, with the metadata each one is
//! expected to satisfy.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::{rho, DiffOperator, ScalarMatrix};
use crate::scalar::{GaussianRational, OnShellScalar};
use crate::spin::{spin_matrices, tau_matrix, ExactMatrix, Spin, SpinMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RepClass {
    Up,
    Down,
    SymCanonical,
    DoubledUp,
    QuadSym,
}

/// Which `T̂` block pattern the doubled positive-energy construction uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DoubledT {
    Identity,
    Swap,
    Diagonal,
    Antisymmetric,
}

impl DoubledT {
    pub const ALL: [DoubledT; 4] = [DoubledT::Identity, DoubledT::Swap, DoubledT::Diagonal, DoubledT::Antisymmetric];

    pub fn matrix(self) -> ExactMatrix {
        match self {
            DoubledT::Identity => ExactMatrix::identity(2),
            DoubledT::Swap => rho(1),
            DoubledT::Diagonal => rho(3),
            DoubledT::Antisymmetric => ExactMatrix::from_i64(2, &[0, 1, -1, 0]),
        }
    }

    /// `T̂²` as a sign; the catalogued matrices all square to `±Id`.
    pub fn square_sign(self) -> i64 {
        match self {
            DoubledT::Antisymmetric => -1,
            _ => 1,
        }
    }

    /// Phase `ω` with `ST = ω TS` when `S = Υ ρ1`.
    pub fn omega(self) -> i64 {
        match self {
            DoubledT::Identity | DoubledT::Swap => 1,
            DoubledT::Diagonal | DoubledT::Antisymmetric => -1,
        }
    }

    /// `c` in `T̂ = c T̂ᵗ`.
    pub fn symmetry(self) -> i64 {
        self.square_sign()
    }
}

/// Every construction the catalog knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RepKind {
    Up,
    Down,
    U1,
    U2,
    U3,
    U4,
    U5,
    U6,
    Doubled(DoubledT),
    /// The four-block symmetric-spectrum construction with `S² = +Id` (`true`) or `-Id`.
    Quad(bool),
}

impl RepKind {
    pub const OCTET: [RepKind; 8] =
        [RepKind::Up, RepKind::Down, RepKind::U1, RepKind::U2, RepKind::U3, RepKind::U4, RepKind::U5, RepKind::U6];
    pub const SYMMETRIC: [RepKind; 6] = [RepKind::U1, RepKind::U2, RepKind::U3, RepKind::U4, RepKind::U5, RepKind::U6];

    pub fn all() -> Vec<RepKind> {
        let mut v = Self::OCTET.to_vec();
        v.extend(DoubledT::ALL.iter().map(|&t| RepKind::Doubled(t)));
        v.push(RepKind::Quad(true));
        v.push(RepKind::Quad(false));
        v
    }

    pub fn class(self) -> RepClass {
        match self {
            RepKind::Up => RepClass::Up,
            RepKind::Down => RepClass::Down,
            RepKind::Doubled(_) => RepClass::DoubledUp,
            RepKind::Quad(_) => RepClass::QuadSym,
            _ => RepClass::SymCanonical,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RepKind::Up => "Uu",
            RepKind::Down => "Ud",
            RepKind::U1 => "U1",
            RepKind::U2 => "U2",
            RepKind::U3 => "U3",
            RepKind::U4 => "U4",
            RepKind::U5 => "U5",
            RepKind::U6 => "U6",
            RepKind::Doubled(DoubledT::Identity) => "D-id",
            RepKind::Doubled(DoubledT::Swap) => "D-rho1",
            RepKind::Doubled(DoubledT::Diagonal) => "D-rho3",
            RepKind::Doubled(DoubledT::Antisymmetric) => "D-irho2",
            RepKind::Quad(true) => "Q-plus",
            RepKind::Quad(false) => "Q-minus",
        }
    }

    pub fn parse(text: &str) -> Result<RepKind> {
        let t = text.trim();
        let aliases: &[(&str, RepKind)] = &[("up", RepKind::Up), ("down", RepKind::Down), ("u(u)", RepKind::Up), ("u(d)", RepKind::Down)];
        for k in Self::all() {
            if k.label().eq_ignore_ascii_case(t) {
                return Ok(k);
            }
        }
        for (a, k) in aliases {
            if a.eq_ignore_ascii_case(t) {
                return Ok(*k);
            }
        }
        Err(Error::IllegalCombination(format!(
            "unknown representation '{}'; expected one of {}",
            t,
            Self::all().iter().map(|k| k.label()).collect::<Vec<_>>().join(", ")
        )))
    }

    pub fn blocks(self) -> usize {
        match self.class() {
            RepClass::Up | RepClass::Down => 1,
            RepClass::SymCanonical | RepClass::DoubledUp => 2,
            RepClass::QuadSym => 4,
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Spectrum {
    /// Positive mass shell only.
    Positive,
    /// Negative mass shell only.
    Negative,
    /// Both shells.
    Symmetric,
}

impl Spectrum {
    pub fn label(self) -> &'static str {
        match self {
            Spectrum::Positive => "S+",
            Spectrum::Negative => "S-",
            Spectrum::Symmetric => "S+ u S-",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub t_antilinear: bool,
    pub s_antilinear: bool,
    /// `T² = t_sq * Id`
    pub t_sq: i64,
    /// `S² = s_sq * Id`
    pub s_sq: i64,
    /// `ST = omega * TS`
    pub omega: i64,
    pub spectrum: Spectrum,
}

/// The ten generators `P0, P1..P3, J1..J3, K1..K3`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub p0: DiffOperator,
    pub p: [DiffOperator; 3],
    pub j: [DiffOperator; 3],
    pub k: [DiffOperator; 3],
}

impl Generators {
    /// Name and operator of all ten generators, in a fixed order.
    pub fn named(&self) -> Vec<(String, &DiffOperator)> {
        let mut v = vec![("P0".to_string(), &self.p0)];
        for i in 0..3 {
            v.push((format!("P{}", i + 1), &self.p[i]));
        }
        for i in 0..3 {
            v.push((format!("J{}", i + 1), &self.j[i]));
        }
        for i in 0..3 {
            v.push((format!("K{}", i + 1), &self.k[i]));
        }
        v
    }

    fn map(&self, mut f: impl FnMut(&DiffOperator) -> DiffOperator) -> Generators {
        let p0 = f(&self.p0);
        let p = [f(&self.p[0]), f(&self.p[1]), f(&self.p[2])];
        let j = [f(&self.j[0]), f(&self.j[1]), f(&self.j[2])];
        let k = [f(&self.k[0]), f(&self.k[1]), f(&self.k[2])];
        Generators { p0, p, j, k }
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub kind: RepKind,
    pub spin: Spin,
    pub blocks: usize,
    pub generators: Generators,
    pub t: DiffOperator,
    pub s: DiffOperator,
    pub expected: Expected,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.blocks * self.spin.dim()
    }

    pub fn class(&self) -> RepClass {
        self.kind.class()
    }

    pub fn label(&self) -> String {
        format!("{}(s={})", self.kind.label(), self.spin)
    }
}

/// Exact spin data lifted to scalar matrices.
pub(crate) struct SpinData {
    pub s: [ScalarMatrix; 3],
    pub tau: ExactMatrix,
    pub tau_bar_sign: i64,
}

pub(crate) fn spin_data(spin: Spin) -> Result<SpinData> {
    let mats = spin_matrices(spin, SpinMode::Exact)?;
    let tau = tau_matrix(spin, SpinMode::Exact)?;
    let ex = |m: &crate::spin::SpinMatrix| ScalarMatrix::from_exact(m.exact().expect("exact mode"));
    Ok(SpinData {
        s: [ex(&mats[0]), ex(&mats[1]), ex(&mats[2])],
        tau: tau.exact().expect("exact mode").clone(),
        tau_bar_sign: if spin.is_half_integer() { -1 } else { 1 },
    })
}

/// Levi-Civita `ε_{abc}` for indices in 0..3.
pub(crate) fn levi(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

/// Generators of the positive-energy representation on `C^(2s+1)`-valued functions.
///
/// `J_k = i(p_j ∂_l - p_l ∂_j) + S_k` for `(k, l, j)` cyclic, and
/// `K_j = i p0 ∂_j - (S ∧ p)_j / (mu + p0)`.
pub fn positive_generators(spin: Spin) -> Result<Generators> {
    let sd = spin_data(spin)?;
    let n = spin.dim();
    let i = GaussianRational::i();
    let p = |j: usize| DiffOperator::scalar(n, OnShellScalar::p(j));
    let d = |j: usize| DiffOperator::partial(n, j);
    let p0 = DiffOperator::scalar(n, OnShellScalar::p0());
    let pj = [p(1), p(2), p(3)];
    let mut jk = Vec::new();
    for k in 0..3 {
        let l = (k + 1) % 3;
        let j = (k + 2) % 3;
        let orbital = &(&pj[j] * &d(l + 1)) - &(&pj[l] * &d(j + 1));
        jk.push(&orbital.scale(&i) + &DiffOperator::multiplication(sd.s[k].clone()));
    }
    let inv = OnShellScalar::mu().add(&OnShellScalar::p0()).invert()?;
    let mut kj = Vec::new();
    for j in 0..3 {
        let mut wedge = ScalarMatrix::zeros(n);
        for a in 0..3 {
            for b in 0..3 {
                let e = levi(j, a, b);
                if e != 0 {
                    let term = sd.s[a].scale_by(&OnShellScalar::p(b + 1)).scale(&GaussianRational::from_i64(e));
                    wedge = wedge.add(&term);
                }
            }
        }
        let boost = (&p0 * &d(j + 1)).scale(&i);
        kj.push(&boost - &DiffOperator::multiplication(wedge.scale_by(&inv)));
    }
    let arr = |v: Vec<DiffOperator>| -> [DiffOperator; 3] { v.try_into().expect("three components") };
    Ok(Generators { p0, p: pj, j: arr(jk), k: arr(kj) })
}

/// Builds one catalog representation.
pub fn build_rep(kind: RepKind, spin: Spin) -> Result<Representation> {
    if matches!(kind, RepKind::Quad(_)) && spin != Spin::ZERO {
        return Err(Error::IllegalCombination(format!("{} is only constructed for s = 0, got s = {}", kind, spin)));
    }
    let sd = spin_data(spin)?;
    let n = spin.dim();
    let up = positive_generators(spin)?;
    let tau = &sd.tau;
    let tt = sd.tau_bar_sign;
    let blocks = kind.blocks();
    let id2 = ExactMatrix::identity(2);
    let idn = ExactMatrix::identity(n);
    let upsilon = |dim: usize| DiffOperator::parity_op(dim);
    let conj = |dim: usize| DiffOperator::conjugation(dim);
    let constant = |m: ExactMatrix| DiffOperator::constant(&m);
    let neg_energy = |g: &Generators| Generators {
        p0: g.p0.neg(),
        p: g.p.clone(),
        j: g.j.clone(),
        k: [g.k[0].neg(), g.k[1].neg(), g.k[2].neg()],
    };
    // Block-diagonal lift with sign pattern `signs` on P0 and K.
    let lift = |signs: &ExactMatrix| -> Generators {
        let ones = ExactMatrix::identity(signs.dim);
        Generators {
            p0: DiffOperator::block(signs, &up.p0),
            p: [0, 1, 2].map(|a| DiffOperator::block(&ones, &up.p[a])),
            j: [0, 1, 2].map(|a| DiffOperator::block(&ones, &up.j[a])),
            k: [0, 1, 2].map(|a| DiffOperator::block(signs, &up.k[a])),
        }
    };
    let sym_gens = || lift(&rho(3));
    let dim = blocks * n;
    let swap_t = || constant(rho(1).kron(&idn));
    let anti_t = || &constant(ExactMatrix::identity(blocks).kron(tau)) * &(&conj(dim) * &upsilon(dim));
    let anti_s = |pattern: ExactMatrix| &constant(pattern.kron(tau)) * &conj(dim);
    let irho2 = ExactMatrix::from_i64(2, &[0, 1, -1, 0]);

    let (generators, t, s, expected) = match kind {
        RepKind::Up | RepKind::Down => {
            let g = if kind == RepKind::Up { up.clone() } else { neg_energy(&up) };
            let t = &constant(tau.clone()) * &(&conj(n) * &upsilon(n));
            let spectrum = if kind == RepKind::Up { Spectrum::Positive } else { Spectrum::Negative };
            let e = Expected { t_antilinear: true, s_antilinear: false, t_sq: tt, s_sq: 1, omega: 1, spectrum };
            (g, t, upsilon(n), e)
        }
        RepKind::U1 | RepKind::U2 => {
            let pattern = if kind == RepKind::U1 { id2.clone() } else { rho(3) };
            let s = &upsilon(dim) * &constant(pattern.kron(&idn));
            let omega = if kind == RepKind::U1 { 1 } else { -1 };
            let e = Expected { t_antilinear: false, s_antilinear: false, t_sq: 1, s_sq: 1, omega, spectrum: Spectrum::Symmetric };
            (sym_gens(), swap_t(), s, e)
        }
        RepKind::U3 | RepKind::U4 => {
            let (pattern, sign) = if kind == RepKind::U3 { (rho(1), 1) } else { (irho2.clone(), -1) };
            let e = Expected {
                t_antilinear: false,
                s_antilinear: true,
                t_sq: 1,
                s_sq: sign * tt,
                omega: sign,
                spectrum: Spectrum::Symmetric,
            };
            (sym_gens(), swap_t(), anti_s(pattern), e)
        }
        RepKind::U5 | RepKind::U6 => {
            let (pattern, sign) = if kind == RepKind::U5 { (rho(1), 1) } else { (irho2.clone(), -1) };
            let e = Expected {
                t_antilinear: true,
                s_antilinear: true,
                t_sq: tt,
                s_sq: sign * tt,
                omega: 1,
                spectrum: Spectrum::Symmetric,
            };
            (sym_gens(), anti_t(), anti_s(pattern), e)
        }
        RepKind::Doubled(that) => {
            let g = lift(&id2);
            let s = &upsilon(dim) * &constant(rho(1).kron(&idn));
            let t = &constant(that.matrix().kron(tau)) * &(&conj(dim) * &upsilon(dim));
            let e = Expected {
                t_antilinear: true,
                s_antilinear: false,
                t_sq: that.square_sign() * tt,
                s_sq: 1,
                omega: that.omega(),
                spectrum: Spectrum::Positive,
            };
            (g, t, s, e)
        }
        RepKind::Quad(plus) => {
            let signs = id2.kron(&rho(3));
            let g = lift(&signs);
            let t = constant(id2.kron(&rho(1)));
            let m = if plus { id2.kron(&rho(1)) } else { irho2.kron(&rho(1)) };
            let s = &constant(m) * &conj(dim);
            let e = Expected {
                t_antilinear: false,
                s_antilinear: true,
                t_sq: 1,
                s_sq: if plus { 1 } else { -1 },
                omega: 1,
                spectrum: Spectrum::Symmetric,
            };
            (g, t, s, e)
        }
    };
    let rep = Representation { kind, spin, blocks, generators, t, s, expected };
    debug_assert_eq!(rep.t.is_antilinear(), rep.expected.t_antilinear);
    debug_assert_eq!(rep.s.is_antilinear(), rep.expected.s_antilinear);
    Ok(rep)
}

/// Checks that a requested `(class, T unitary?, S unitary?)` combination can exist.
pub fn check_combination(class: RepClass, t_antilinear: bool, s_antilinear: bool) -> Result<()> {
    match class {
        RepClass::Up | RepClass::Down | RepClass::DoubledUp => {
            if !t_antilinear || s_antilinear {
                return Err(Error::IllegalCombination(
                    "a single-shell spectrum needs anti-unitary T and unitary S; unitary T forces both shells".into(),
                ));
            }
        }
        RepClass::SymCanonical | RepClass::QuadSym => {
            if t_antilinear && !s_antilinear {
                return Err(Error::IllegalCombination(
                    "anti-unitary T with unitary S is excluded for the symmetric spectrum".into(),
                ));
            }
        }
    }
    Ok(())
}

/// Finds the catalog member of a class with the requested characters of `T` and `S`.
pub fn build_by_characters(class: RepClass, spin: Spin, t_antilinear: bool, s_antilinear: bool, s_sq: Option<i64>) -> Result<Representation> {
    check_combination(class, t_antilinear, s_antilinear)?;
    let candidates: Vec<RepKind> = RepKind::all().into_iter().filter(|k| k.class() == class).collect();
    for k in candidates {
        if matches!(k, RepKind::Quad(_)) && spin != Spin::ZERO {
            continue;
        }
        let rep = build_rep(k, spin)?;
        let e = &rep.expected;
        if e.t_antilinear == t_antilinear && e.s_antilinear == s_antilinear && s_sq.is_none_or(|v| v == e.s_sq) {
            return Ok(rep);
        }
    }
    Err(Error::IllegalCombination(format!("no {:?} representation with these characters at s = {}", class, spin)))
}

/// The eight representations with irreducible restriction to the proper orthochronous group.
pub fn enumerate_octet(spin: Spin) -> Result<Vec<Representation>> {
    RepKind::OCTET.iter().map(|&k| build_rep(k, spin)).collect()
}

/// The four catalogued `T̂` block matrices of the doubled construction with their
/// symmetry sign `c` (`T̂ = c T̂ᵗ`) and phase `ω`.
pub fn doubled_t_variants() -> Vec<(DoubledT, ExactMatrix, i64, i64)> {
    DoubledT::ALL.iter().map(|&t| (t, t.matrix(), t.symmetry(), t.omega())).collect()
}

/// Pauli-Lubanski operators `W0 = P·J`, `W_j = P0 J_j - (P × K)_j`.
/// `[W0, W1, W2, W3]` with `W0 = P·J` and `W_j = P0 J_j + sign (P×K)_j`.
fn pauli_lubanski_with(rep: &Representation, sign: i64) -> [DiffOperator; 4] {
    let g = &rep.generators;
    let mut w0 = DiffOperator::zero(rep.dim());
    for a in 0..3 {
        w0 = &w0 + &(&g.p[a] * &g.j[a]);
    }
    let mut w = Vec::new();
    for j in 0..3 {
        let mut acc = &g.p0 * &g.j[j];
        for a in 0..3 {
            for b in 0..3 {
                let e = levi(j, a, b);
                if e != 0 {
                    acc = &acc + &(&g.p[a] * &g.k[b]).scale(&GaussianRational::from_i64(sign * e));
                }
            }
        }
        w.push(acc);
    }
    let [w1, w2, w3]: [DiffOperator; 3] = w.try_into().expect("three components");
    [w0, w1, w2, w3]
}

/// Pauli-Lubanski four-operator in the generator conventions used here,
/// `W_j = P0 J_j + (P×K)_j`.
pub fn pauli_lubanski(rep: &Representation) -> [DiffOperator; 4] {
    pauli_lubanski_with(rep, 1)
}

/// The variant `W_j = P0 J_j - (P×K)_j`, kept for comparison.
pub fn pauli_lubanski_printed(rep: &Representation) -> [DiffOperator; 4] {
    pauli_lubanski_with(rep, -1)
}

fn minkowski_square([w0, w1, w2, w3]: [DiffOperator; 4]) -> DiffOperator {
    let mut acc = &w0 * &w0;
    for w in [&w1, &w2, &w3] {
        acc = &acc - &(w * w);
    }
    acc
}

/// `W0² - W1² - W2² - W3²`
pub fn pauli_lubanski_square(rep: &Representation) -> DiffOperator {
    minkowski_square(pauli_lubanski(rep))
}

/// Square of [`pauli_lubanski_printed`].
pub fn pauli_lubanski_printed_square(rep: &Representation) -> DiffOperator {
    minkowski_square(pauli_lubanski_printed(rep))
}

impl Generators {
    /// Conjugates every generator by the constant block phase twist.
    pub fn twisted(&self, k: i64) -> Result<Generators> {
        let mut err = None;
        let g = self.map(|op| match op.block_phase_twist(k) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                op.clone()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i_times(op: &DiffOperator) -> DiffOperator {
        op.scale(&GaussianRational::i())
    }

    #[test]
    fn rotation_and_boost_signs() {
        for spin in [Spin::ZERO, Spin::HALF] {
            let g = build_rep(RepKind::Up, spin).unwrap().generators;
            // [J1, P2] = i P3, [J1, J2] = i J3, [J1, K2] = i K3, [K1, K2] = -i J3, [K1, P1] = i P0
            assert!(g.j[0].commutator(&g.p[1]).unwrap().equals(&i_times(&g.p[2])).unwrap());
            assert!(g.j[0].commutator(&g.j[1]).unwrap().equals(&i_times(&g.j[2])).unwrap());
            assert!(g.j[0].commutator(&g.k[1]).unwrap().equals(&i_times(&g.k[2])).unwrap());
            assert!(g.k[0].commutator(&g.k[1]).unwrap().equals(&i_times(&g.j[2]).neg()).unwrap());
            assert!(g.k[0].commutator(&g.p[0]).unwrap().equals(&i_times(&g.p0)).unwrap());
        }
    }

    #[test]
    fn quad_needs_spin_zero() {
        assert!(build_rep(RepKind::Quad(true), Spin::HALF).is_err());
    }

    #[test]
    fn illegal_characters_are_rejected() {
        assert!(check_combination(RepClass::Up, false, false).is_err());
        assert!(check_combination(RepClass::SymCanonical, true, false).is_err());
        assert!(check_combination(RepClass::SymCanonical, true, true).is_ok());
    }
}
