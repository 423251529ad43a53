//! Continued fractions, torus arithmetic and the arithmetic indices
//! β(α) = limsup −ln‖nα‖/|n| and γ(α, θ) = limsup −ln‖2θ + nα‖/|n|.

mod cf;
mod flux;
mod indices;
mod torus;

pub use cf::{cf_expand, ContinuedFraction};
pub use flux::Flux;
pub use indices::{
    beta_estimate, beta_for_flux, beta_scan, find_near_half, gamma_estimate, gamma_estimate_at,
    IndexEstimate, IndexValue, ZERO_FLOOR,
};
pub use torus::{torus_norm, TorusPoint};
