//! Transfer matrices, Lyapunov exponents and eigenvector localization diagnostics.

mod kernel;
mod localization;
mod lyapunov;

pub use kernel::{zero_mode_kernel, ZeroModes};
pub use localization::{
    decay_fit, eig_localization_profile, ipr, slaving_residual, write_localization_csv, DecayFit, LocalizationRow,
    LocalizedState, LOCALIZATION_CSV_HEADER,
};
pub use lyapunov::{lyapunov, TransferStep, MIN_STEPS};
