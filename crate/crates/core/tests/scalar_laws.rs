mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plab_core::scalar::{parse_scalar, GaussianRational, OnShellScalar};

fn scalar(seed: u64) -> OnShellScalar {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = common::random_scalar(&mut rng);
    let b = common::random_scalar(&mut rng);
    a.add(&b.mul(&common::random_scalar(&mut rng)))
}

/// Points `(p1, p2, p3, mu)` with integer `p0`.
const SHELL: [[f64; 4]; 4] = [[3.0, 4.0, 0.0, 0.0], [2.0, 3.0, 6.0, 0.0], [1.0, 2.0, 2.0, 0.0], [0.0, 0.0, 3.0, 4.0]];

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + b.norm())
}

#[test]
fn p0_squares_onto_the_shell() {
    let lhs = OnShellScalar::p0().pow(2);
    let mut rhs = OnShellScalar::mu().pow(2);
    for j in 1..=3 {
        rhs = rhs.add(&OnShellScalar::p(j).pow(2));
    }
    assert_eq!(lhs, rhs);
}

#[test]
fn shell_values_are_exact_integers() {
    let p0 = OnShellScalar::p0();
    for (pt, want) in SHELL.iter().zip([5.0, 7.0, 3.0, 5.0]) {
        assert_eq!(p0.eval_f64(pt).unwrap(), Complex64::new(want, 0.0));
    }
}

#[test]
fn derivative_of_p0() {
    for j in 1..=3 {
        let want = OnShellScalar::p(j).div(&OnShellScalar::p0()).unwrap();
        assert_eq!(OnShellScalar::p0().derive(j), want);
    }
}

#[test]
fn newton_wigner_shift_matches_hand_value() {
    // p1 / (2 p0^2) at (3, 4, 0), mu = 0: 3 / 50.
    let x = parse_scalar("p1/(2*p0^2)").unwrap();
    assert!(close(x.eval_f64(&SHELL[0]).unwrap(), Complex64::new(0.06, 0.0)));
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(OnShellScalar::one().div(&OnShellScalar::zero()).is_err());
}

#[test]
fn malformed_input_is_rejected() {
    for text in ["p4", "1/", "(p1", "p1 ** 2", ""] {
        assert!(parse_scalar(text).is_err(), "{text}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (scalar(a), scalar(b), scalar(c));
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.sub(&x).is_zero());
        prop_assert_eq!(x.mul(&OnShellScalar::one()), x.clone());
    }

    #[test]
    fn inverse_when_nonzero(a in any::<u64>()) {
        let x = scalar(a);
        prop_assume!(!x.is_zero());
        prop_assert!(x.mul(&x.invert().unwrap()).is_one());
    }

    #[test]
    fn leibniz_rule(a in any::<u64>(), b in any::<u64>(), j in 1usize..=3) {
        let (x, y) = (scalar(a), scalar(b));
        prop_assert_eq!(x.mul(&y).derive(j), x.derive(j).mul(&y).add(&x.mul(&y.derive(j))));
    }

    #[test]
    fn conjugation_is_an_involution(a in any::<u64>()) {
        let x = scalar(a);
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.parity().parity(), x);
    }

    #[test]
    fn render_parses_back(a in any::<u64>()) {
        let x = scalar(a);
        prop_assert_eq!(parse_scalar(&x.render()).unwrap(), x);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in any::<u64>(), b in any::<u64>(), k in 0usize..4) {
        let (x, y) = (scalar(a), scalar(b));
        let pt = &SHELL[k];
        let (vx, vy) = (x.eval_f64(pt).unwrap(), y.eval_f64(pt).unwrap());
        prop_assert!(close(x.add(&y).eval_f64(pt).unwrap(), vx + vy));
        prop_assert!(close(x.mul(&y).eval_f64(pt).unwrap(), vx * vy));
        prop_assert!(close(x.conj().eval_f64(pt).unwrap(), vx.conj()));
    }

    #[test]
    fn constants_commute_with_scaling(a in any::<u64>(), n in -9i64..9, d in 1i64..9) {
        let x = scalar(a);
        let c = GaussianRational::ratio(n, d);
        prop_assert_eq!(x.scale(&c), x.mul(&OnShellScalar::constant(c)));
    }
}
