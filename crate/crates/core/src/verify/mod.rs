//! Executable checks of the reduction identity, chiral symmetry, zero-energy
//! Weyl sequences, spectral mapping and gap bound, plus the regime classifier.

mod checks;
mod classify;
mod report;
mod suite;
mod weyl;

pub use checks::{
    check_gap_bound, check_mapping, check_reduction_identity, check_reduction_identity_with_boundary, check_symmetry,
    check_symmetry_matrix, REDUCTION_TOL,
};
pub use classify::{classify_regime, decide, CouplingModel, Regime, RegimeLabel};
pub use report::{CheckReport, Comparison};
pub use suite::{run_suite, Suite, SuiteConfig};
pub use weyl::{weyl_eps, weyl_zero_residual, WeylResidual};
