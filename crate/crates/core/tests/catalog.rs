use plab_core::catalog::{build_by_characters, build_rep, check_combination, RepClass, RepKind};
use plab_core::operator::DiffOperator;
use plab_core::scalar::{GaussianRational, OnShellScalar};
use plab_core::spin::Spin;
use plab_core::verify::{commutant_dimension_with, no_time_operator};
use plab_core::Error;

#[test]
fn dimensions_follow_blocks_and_spin() {
    for spin in [Spin::ZERO, Spin::HALF] {
        for kind in RepKind::all() {
            if matches!(kind, RepKind::Quad(_)) && spin != Spin::ZERO {
                continue;
            }
            let rep = build_rep(kind, spin).unwrap();
            assert_eq!(rep.dim(), kind.blocks() * (spin.twice() as usize + 1), "{}", rep.label());
            assert_eq!(rep.generators.named().len(), 10);
            assert!(rep.generators.named().iter().all(|(_, g)| g.dim() == rep.dim()));
        }
    }
}

#[test]
fn labels_parse_back() {
    for kind in RepKind::all() {
        assert_eq!(RepKind::parse(kind.label()).unwrap(), kind);
    }
    assert_eq!(RepKind::parse("up").unwrap(), RepKind::Up);
    assert!(matches!(RepKind::parse("U7"), Err(Error::IllegalCombination(_))));
}

#[test]
fn scalar_up_generators() {
    let rep = build_rep(RepKind::Up, Spin::ZERO).unwrap();
    let g = &rep.generators;
    assert!(g.p0.equals(&DiffOperator::scalar(1, OnShellScalar::p0())).unwrap());
    assert!(g.p[1].equals(&DiffOperator::scalar(1, OnShellScalar::p(2))).unwrap());
    // J3 = i(p2 ∂1 - p1 ∂2)
    let i = GaussianRational::i();
    let j3 = &(&DiffOperator::scalar(1, OnShellScalar::p(2)) * &DiffOperator::partial(1, 1)) - &(&DiffOperator::scalar(1, OnShellScalar::p(1)) * &DiffOperator::partial(1, 2));
    assert!(g.j[2].equals(&j3.scale(&i)).unwrap());
}

#[test]
fn down_shell_has_negative_energy() {
    let rep = build_rep(RepKind::Down, Spin::ZERO).unwrap();
    assert!(rep.generators.p0.equals(&DiffOperator::scalar(1, OnShellScalar::p0().neg())).unwrap());
}

#[test]
fn forbidden_characters() {
    assert!(check_combination(RepClass::Up, false, false).is_err());
    assert!(check_combination(RepClass::Up, true, true).is_err());
    assert!(check_combination(RepClass::SymCanonical, true, false).is_err());
    assert!(check_combination(RepClass::SymCanonical, true, true).is_ok());
}

#[test]
fn lookup_by_characters() {
    let rep = build_by_characters(RepClass::SymCanonical, Spin::HALF, false, true, Some(-1)).unwrap();
    assert_eq!(rep.kind, RepKind::U3);
    let rep = build_by_characters(RepClass::SymCanonical, Spin::ZERO, false, true, Some(-1)).unwrap();
    assert_eq!(rep.kind, RepKind::U4);
}

#[test]
fn higher_spin_is_not_exact() {
    let s = Spin::parse("3/2").unwrap();
    assert!(matches!(build_rep(RepKind::Up, s), Err(Error::ExactModeUnsupported(_))));
    assert!(matches!(Spin::parse("1/3"), Err(Error::BadSpin(_))));
}

#[test]
fn shells_split_without_discrete_operators() {
    let rep = build_rep(RepKind::U1, Spin::ZERO).unwrap();
    assert_eq!(commutant_dimension_with(&rep, false, false).unwrap().dimension, 2);
    assert_eq!(commutant_dimension_with(&rep, true, true).unwrap().dimension, 1);
}

#[test]
fn no_time_operator_on_two_shells() {
    for kind in RepKind::SYMMETRIC {
        let v = no_time_operator(&build_rep(kind, Spin::ZERO).unwrap()).unwrap();
        assert!(v.diagonal_blocks_vanish && v.contradiction, "{}", v.rep);
    }
}
