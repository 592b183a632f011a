//! Runnable verification suites, position checks and commutant analysis.

pub mod commutant;
pub mod linear;
pub mod position;
pub mod report;
pub mod suites;

pub use commutant::{commutant_dimension, commutant_dimension_with, no_time_operator, Commutant, TimeOperatorVerdict};
pub use position::{
    check_jm, check_position, check_position_core, check_position_discrete, d_space, d_space_case, jm_scan, nw_witnesses,
    scan_candidates, twist_check, DSpace, JmVerdict, ScanEntry, ScanRow, ScanTable, TwistVerdict,
};
pub use report::{CheckReport, Relation, Status};
pub use suites::{check_casimirs, check_discrete, check_lie_algebra, extract_omega, Casimirs};
