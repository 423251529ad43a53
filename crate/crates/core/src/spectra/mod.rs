//! Band sets at rational flux.
//!
//! AMO bands come from the discriminant `Δ(E)` (exact band edges by 1D root
//! finding); Lieb and general-coupling bands come either from the square-root
//! image of the AMO bands or from a direct sweep of the magnetic Brillouin zone.

mod amo;
mod bands;
mod dimension;
mod io;
mod lieb;
mod torus;

pub use amo::{amo_bands_rational, reference_phase, DiscriminantPoly, ScaledValue};
pub use bands::{BandMeta, BandSet, Interval, Model, MERGE_TOL};
pub use dimension::{box_count, box_dimension_estimate, DimensionEstimate};
pub use io::{band_rows, read_bands_csv, write_bands_csv, write_bands_json, BandRow, CSV_HEADER, CSV_MAGIC};
pub use lieb::{
    g_t, general_bands_rational, general_map_energy, lieb_bands_direct, lieb_bands_rational, map_amo_energy, Method,
    DEFAULT_GRID,
};
pub use torus::spectrum_2d_check;
