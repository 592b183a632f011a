mod common;

use num_complex::Complex64;

use plab_core::catalog::{build_rep, RepKind};
use plab_core::lab::{
    boost_action_1d, dirac_spectrum, evolve, fv_split, kg_residual, numeric_operator_sample, read_binary, time_derivative, weighted_inner, write_binary,
    write_csv, EvolveOptions, GridState, Space, Theory,
};
use plab_core::position::newton_wigner;
use plab_core::spin::Spin;
use plab_core::Error;

fn packet(theory: Theory) -> GridState {
    let w: Vec<Complex64> = (0..theory.components()).map(|c| Complex64::new(1.0, 0.3 * c as f64)).collect();
    GridState::gaussian(64, 1, 20.0, 1.0, [0.0; 3], 1.5, [0.5, 0.0, 0.0], &w).unwrap()
}

fn snapshots(theory: Theory, psi: &GridState, dt: f64, steps: usize) -> Vec<GridState> {
    evolve(theory, psi, dt, steps, EvolveOptions { record_every: 1, keep_snapshots: true }).unwrap().snapshots
}

#[test]
fn steps_compose() {
    for theory in Theory::ALL {
        let psi = packet(theory);
        let two = snapshots(theory, &psi, 0.05, 2);
        let one = snapshots(theory, &psi, 0.1, 1);
        let last = (two.last().unwrap(), one.last().unwrap());
        let err = last.0.data.iter().zip(&last.1.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err < 1e-12, "{theory}: {err:e}");
    }
}

#[test]
fn plane_wave_picks_up_its_phase() {
    let (l, mu, t) = (10.0, 1.5, 0.7);
    for (theory, sign) in [(Theory::T1, 1.0), (Theory::T2, -1.0)] {
        for mode in [0i64, 3, -5] {
            let psi = GridState::plane_wave(32, 1, l, mu, 1, &[(0, [mode, 0, 0], Complex64::new(1.0, 0.0))]).unwrap();
            let end = snapshots(theory, &psi, t / 4.0, 4).pop().unwrap();
            let k = std::f64::consts::PI * mode as f64 / l;
            let phase = Complex64::from_polar(1.0, -sign * (mu * mu + k * k).sqrt() * t);
            for (a, b) in end.data.iter().zip(&psi.data) {
                assert!((a - phase * b).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn two_component_theories_evolve_shells_oppositely() {
    let psi = GridState::plane_wave(16, 1, 8.0, 1.0, 2, &[(0, [2, 0, 0], Complex64::new(1.0, 0.0)), (1, [2, 0, 0], Complex64::new(1.0, 0.0))]).unwrap();
    let end = snapshots(Theory::T3, &psi, 0.25, 1).pop().unwrap();
    let np = psi.points();
    let ratio_up = end.data[0] / psi.data[0];
    let ratio_down = end.data[np] / psi.data[np];
    assert!((ratio_up * ratio_down - 1.0).norm() < 1e-12);
}

#[test]
fn norm_is_conserved() {
    for theory in Theory::ALL {
        let traj = evolve(theory, &packet(theory), 1e-2, 300, EvolveOptions { record_every: 50, keep_snapshots: false }).unwrap();
        assert!(traj.norm_drift() < 1e-10, "{theory}");
        assert_eq!(traj.records.len(), 7);
    }
}

#[test]
fn klein_gordon_residual_is_small_for_small_steps() {
    let traj = evolve(Theory::T2, &packet(Theory::T2), 1e-3, 2, EvolveOptions { record_every: 1, keep_snapshots: true }).unwrap();
    assert!(kg_residual(&traj).unwrap() < 1e-5);
    let short = evolve(Theory::T1, &packet(Theory::T1), 1e-3, 1, EvolveOptions { record_every: 1, keep_snapshots: true }).unwrap();
    assert!(matches!(kg_residual(&short), Err(Error::InsufficientSnapshots { need: 3, have: 2 })));
}

#[test]
fn binary_dump_round_trip() {
    let snaps = snapshots(Theory::T3, &packet(Theory::T3), 0.01, 3);
    let mut bytes = Vec::new();
    write_binary(&snaps, &mut bytes).unwrap();
    assert_eq!(&bytes[..4], b"PLAB");
    assert_eq!(bytes.len(), 40 + 4 * 64 * 2 * 16);
    let dump = read_binary(bytes.as_slice()).unwrap();
    assert_eq!((dump.n, dump.components, dump.dims, dump.space), (64, 2, 1, Space::Position));
    for (a, b) in dump.snapshots.iter().zip(&snaps) {
        assert_eq!(a, &b.data);
    }
    bytes[0] = b'X';
    assert!(read_binary(bytes.as_slice()).is_err());
    assert!(read_binary(&bytes[..30]).is_err());
}

#[test]
fn csv_has_one_line_per_record() {
    let traj = evolve(Theory::T1, &packet(Theory::T1), 1e-3, 10, EvolveOptions { record_every: 5, keep_snapshots: false }).unwrap();
    let mut out = Vec::new();
    write_csv(&traj, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + traj.records.len());
    assert!(lines[0].starts_with("time,norm"));
    assert!(lines.iter().all(|l| l.split(',').count() == 12));
}

#[test]
fn newton_wigner_is_symmetric_under_the_invariant_measure() {
    let rep = build_rep(RepKind::Up, Spin::ZERO).unwrap();
    let phi = common::test_state(64, 1, [0.4, -0.3, 0.2]);
    let psi = common::test_state(64, 1, [-0.2, 0.5, 0.1]);
    for q in newton_wigner(&rep) {
        let op = numeric_operator_sample(&q, &phi).unwrap();
        let lhs = weighted_inner(&phi, &op.apply(&psi).unwrap());
        let rhs = weighted_inner(&op.apply(&phi).unwrap(), &psi);
        assert!((lhs - rhs).norm() < 1e-8 * lhs.norm().max(1.0), "{lhs} vs {rhs}");
    }
}

#[test]
fn feshbach_villars_needs_the_imaginary_factor() {
    let psi = packet(Theory::T1);
    let dpsi = time_derivative(Theory::T1, &psi).unwrap();
    let split = fv_split(psi.component(0), dpsi.component(0), 1.0).unwrap();
    assert!(split.imaginary.proportional);
    assert!((split.imaginary.constant.unwrap() - 2.0).abs() < 1e-9);
    assert!(!split.printed.proportional);
    assert!(fv_split(psi.component(0), dpsi.component(0), 0.0).is_err());
}

#[test]
fn dirac_rest_frame_and_massless_limits() {
    assert_eq!(dirac_spectrum([0.0; 3], 2.0).map(|e| (e * 1e12).round() / 1e12), [-2.0, -2.0, 2.0, 2.0]);
    let e = dirac_spectrum([0.0, 0.0, 1.0], 0.0);
    assert!((e[3] - 1.0).abs() < 1e-14 && (e[0] + 1.0).abs() < 1e-14);
}

#[test]
fn boost_rejects_packets_near_the_edge() {
    let mut wide = GridState::gaussian(256, 1, 8.0, 1.0, [0.0; 3], 1.9, [0.0; 3], &[Complex64::new(1.0, 0.0)]).unwrap();
    wide.space = Space::Momentum;
    assert!(matches!(boost_action_1d(0.5, &wide), Err(Error::Boundary(_))));
    let mut narrow = GridState::gaussian(256, 1, 8.0, 1.0, [0.0; 3], 0.5, [0.0; 3], &[Complex64::new(1.0, 0.0)]).unwrap();
    narrow.space = Space::Momentum;
    let v = boost_action_1d(0.5, &narrow).unwrap();
    assert_eq!(v.sign, 1);
    assert!(v.relative_error < 1e-8);
}

#[test]
fn packets_must_fit_the_box() {
    let err = GridState::gaussian(64, 1, 5.0, 1.0, [3.0, 0.0, 0.0], 1.0, [0.0; 3], &[Complex64::new(1.0, 0.0)]);
    assert!(matches!(err, Err(Error::Boundary(_))));
    assert!(matches!(
        evolve(Theory::T3, &packet(Theory::T1), 0.1, 1, EvolveOptions::default()),
        Err(Error::ComponentMismatch { expected: 2, got: 1 })
    ));
}
