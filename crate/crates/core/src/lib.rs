//! Magnetic tight-binding Hamiltonians on the Lieb lattice and their reduction
//! to the almost Mathieu operator (AMO).
//!
//! The crate is organised by subsystem:
//!
//! * [`arithmetic`] continued fractions, torus distances and the arithmetic
//!   indices β(α), γ(α, θ) that govern the spectral transitions;
//! * [`operators`] finite Hermitian matrices for the 1D and 2D Lieb operators,
//!   the general-coupling variant, the AMO and the factor product H̃H̃*;
//! * [`spectra`] band sets at rational flux (Chambers discriminant for the AMO,
//!   the square-root spectral map and a direct Bloch sweep for the Lieb model);
//! * [`dynamics`] transfer-matrix Lyapunov exponents, localization diagnostics
//!   and the zero-energy kernel;
//! * [`verify`] executable checks of the reduction identity, the chiral
//!   symmetry, the Weyl sequence at E = 0, the spectral map, and the regime
//!   classifier;
//! * [`cli`] the `lieb-spectra` command line.

pub mod arithmetic;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fmt;
pub mod linalg;
pub mod operators;
pub mod spectra;
pub mod verify;

pub use arithmetic::{ContinuedFraction, Flux, IndexEstimate, IndexValue, TorusPoint};
pub use error::{Error, Result};
pub use operators::{Boundary, GeneralParams, HermitianMatrix, LiebParams, Sublattice};
pub use spectra::{BandSet, Interval, Method};
pub use verify::{CheckReport, Regime, RegimeLabel};
