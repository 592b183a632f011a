//! Floating-point laboratory: spectral evolution, wave-equation residuals,
//! Dirac spectra, boosts and numeric sampling of symbolic operators.

pub mod boost;
pub mod dirac;
pub mod dump;
pub mod evolve;
pub mod grid;
pub mod sample;

pub use boost::{boost_action_1d, BoostVerdict};
pub use dirac::{dirac_hamiltonian, dirac_spectrum};
pub use dump::{read_binary, write_binary, write_csv, BinaryDump};
pub use evolve::{
    continuity_residual, evolve, fv_split, kg_residual, kg_residual_per_component, observed_order, time_derivative,
    ContinuityResidual, EvolveOptions, FvSplit, FvVariant, Observables, Theory, Trajectory,
};
pub use grid::{GridState, Space, Transform};
pub use sample::{cross_validate, max_deviation, momentum_gaussian, numeric_operator_sample, weighted_inner, NumericOperator};
