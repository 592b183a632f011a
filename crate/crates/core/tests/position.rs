use num_rational::BigRational;

use plab_core::catalog::{build_rep, RepKind};
use plab_core::position::{build_position, newton_wigner, positions_equal, Ansatz};
use plab_core::scalar::{GaussianRational, OnShellScalar};
use plab_core::spin::Spin;
use plab_core::verify::{check_jm, check_position, check_position_core};
use plab_core::Error;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn spin_terms_vanish_at_spin_zero() {
    let rep = build_rep(RepKind::Up, Spin::ZERO).unwrap();
    let q = build_position(&rep, &Ansatz::SpinShifted { a: GaussianRational::zero() }).unwrap();
    assert!(positions_equal(&q, &newton_wigner(&rep)).unwrap());
}

#[test]
fn newton_wigner_is_the_same_in_every_block() {
    for kind in [RepKind::Up, RepKind::U1, RepKind::U5] {
        let rep = build_rep(kind, Spin::HALF).unwrap();
        let report = check_position_core(&rep.generators, &newton_wigner(&rep), &rep.label()).unwrap();
        assert!(report.all_hold(), "{}", report.to_markdown());
    }
}

#[test]
fn zero_d_is_newton_wigner() {
    let rep = build_rep(RepKind::U1, Spin::ZERO).unwrap();
    let z = OnShellScalar::zero;
    let q = build_position(&rep, &Ansatz::GenericD { d: [[z(), z()], [z(), z()]] }).unwrap();
    assert!(positions_equal(&q, &newton_wigner(&rep)).unwrap());
}

#[test]
fn imaginary_off_diagonal_d_keeps_components_commuting() {
    let rep = build_rep(RepKind::U6, Spin::ZERO).unwrap();
    let d = OnShellScalar::p0().invert().unwrap().mul(&OnShellScalar::i());
    let z = OnShellScalar::zero();
    let q = build_position(&rep, &Ansatz::GenericD { d: [[z.clone(), d.clone()], [d.neg(), z]] }).unwrap();
    let report = check_position(&rep, &q).unwrap();
    assert!(report.relations.iter().filter(|r| r.id.starts_with("commute")).all(|r| r.holds()));
    assert!(report.all_hold(), "{}", report.to_markdown());
}

#[test]
fn diagonal_d_commutes_with_swap_time_reversal() {
    let rep = build_rep(RepKind::U1, Spin::ZERO).unwrap();
    let z = OnShellScalar::zero();
    let q = build_position(&rep, &Ansatz::GenericD { d: [[OnShellScalar::one(), z.clone()], [z, OnShellScalar::one()]] }).unwrap();
    for qj in &q {
        assert!((&rep.t * qj).equals(&(qj * &rep.t)).unwrap());
    }
}

#[test]
fn cross_term_breaks_commutativity_only_with_spin() {
    for (spin, commutes) in [(Spin::ZERO, true), (Spin::HALF, false)] {
        let rep = build_rep(RepKind::Up, spin).unwrap();
        let q = build_position(&rep, &Ansatz::CrossTerm).unwrap();
        assert_eq!(q[0].commutator(&q[1]).unwrap().is_zero(), commutes);
    }
}

#[test]
fn dirac_position_satisfies_the_axioms_at_half_spin() {
    let rep = build_rep(RepKind::U5, Spin::HALF).unwrap();
    let q = build_position(&rep, &Ansatz::Dirac).unwrap();
    let core = check_position_core(&rep.generators, &q, "dirac").unwrap();
    assert!(core.all_hold(), "{}", core.to_markdown());
    assert!(check_jm(&rep.generators, &q, "dirac").unwrap().printed);
}

#[test]
fn newton_wigner_fails_the_boost_relation_at_half_spin() {
    let rep = build_rep(RepKind::Up, Spin::HALF).unwrap();
    assert!(!check_jm(&rep.generators, &newton_wigner(&rep), "nw").unwrap().printed);
}

#[test]
fn angles_must_lie_on_the_circle() {
    let rep = build_rep(RepKind::U3, Spin::HALF).unwrap();
    let bad = Ansatz::TwoBlock { a: OnShellScalar::zero(), sin_b: rat(1, 2), cos_b: rat(1, 2) };
    assert!(matches!(build_position(&rep, &bad), Err(Error::IncompatibleAnsatz(_))));
    let ok = Ansatz::TwoBlock { a: OnShellScalar::zero(), sin_b: rat(3, 5), cos_b: rat(4, 5) };
    assert!(build_position(&rep, &ok).is_ok());
}

#[test]
fn ansatz_must_fit_the_representation() {
    let up = build_rep(RepKind::Up, Spin::ZERO).unwrap();
    assert!(build_position(&up, &Ansatz::Dirac).is_err());
    let u1 = build_rep(RepKind::U1, Spin::ZERO).unwrap();
    assert!(build_position(&u1, &Ansatz::Shifted { f: OnShellScalar::one() }).is_err());
    assert!(build_position(&u1, &Ansatz::CrossTerm).is_err());
}
