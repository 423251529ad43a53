use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::operators::{kappa, Boundary, HermitianMatrix, LiebParams, Sublattice};
use crate::spectra::Interval;

/// Amplitudes below this fraction of the peak are left out of decay fits.
const NOISE_FLOOR: f64 = 1e-10;

/// Exponential decay fit `ln a_m ≈ c − rate·|m − m₀|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    pub center: usize,
    pub rate: f64,
    /// RMS residual of the log-linear fit.
    pub residual: f64,
    /// Trusted cell range `[start, end)`.
    pub window: (usize, usize),
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalizedState {
    pub eigenvalue: f64,
    pub ipr: f64,
    /// `None` when fewer than three cells in the window are above the noise floor.
    pub fit: Option<DecayFit>,
}

/// `Σ|u|⁴ / (Σ|u|²)²`.
pub fn ipr(u: &[Complex64]) -> f64 {
    let n2: f64 = u.iter().map(|z| z.norm_sqr()).sum();
    u.iter().map(|z| z.norm_sqr().powi(2)).sum::<f64>() / (n2 * n2)
}

/// Fits the decay of per-cell amplitudes over the cells that remain after
/// dropping `ceil(0.05 N)` cells at each end.
pub fn decay_fit(amplitudes: &[f64]) -> Option<DecayFit> {
    let n = amplitudes.len();
    let margin = (0.05 * n as f64).ceil() as usize;
    if n < 2 * margin + 3 {
        return None;
    }
    let window = (margin, n - margin);
    let (mut center, mut peak) = (0usize, f64::NEG_INFINITY);
    for (m, &a) in amplitudes.iter().enumerate() {
        if a > peak {
            peak = a;
            center = m;
        }
    }
    let pts: Vec<(f64, f64)> = (window.0..window.1)
        .filter(|&m| amplitudes[m] > NOISE_FLOOR * peak)
        .map(|m| ((m as f64 - center as f64).abs(), amplitudes[m].ln()))
        .collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 3 || sxx == 0.0 {
        return None;
    }
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / sxx;
    let residual = (pts.iter().map(|p| (p.1 - my - slope * (p.0 - mx)).powi(2)).sum::<f64>() / k).sqrt();
    Some(DecayFit { center, rate: -slope, residual, window, points: pts.len() })
}

/// Eigenpairs of an open Lieb or AMO matrix with eigenvalue in `window`:
/// participation ratio over all components and the decay fit of the
/// A-sublattice amplitude per cell (the plain amplitude for the AMO).
pub fn eig_localization_profile(m: &HermitianMatrix, window: Interval) -> Result<Vec<LocalizedState>> {
    if m.boundary() != Boundary::Open {
        return Err(Error::Usage("localization profile needs an open truncation".into()));
    }
    let a_sites: Vec<usize> = match m.labels() {
        Some(labels) => labels.iter().enumerate().filter(|(_, l)| l.sublattice == Sublattice::A).map(|(i, _)| i).collect(),
        None => (0..m.dim()).collect(),
    };
    if a_sites.len() < 50 {
        return Err(Error::Domain(format!("need at least 50 cells, got {}", a_sites.len())));
    }
    let eig = m.eigh()?;
    Ok((0..m.dim())
        .filter(|&j| window.contains(eig.values[j], 0.0))
        .map(|j| {
            let v = eig.vector(j);
            let amps: Vec<f64> = a_sites.iter().map(|&i| v[i].norm()).collect();
            LocalizedState { eigenvalue: eig.values[j], ipr: ipr(v), fit: decay_fit(&amps) }
        })
        .collect())
}

/// Largest deviation, relative to `max|u|`, from `u^B_m = E⁻¹ conj(𝒦_m) u^A_m`
/// and `u^C_m = E⁻¹ t (u^A_m + u^A_{m+1})` over interior cells `1..N−1`.
pub fn slaving_residual(params: &LiebParams, energy: f64, u: &[Complex64]) -> Result<f64> {
    if !u.len().is_multiple_of(3) || u.len() < 9 {
        return Err(Error::Structure(format!("vector length {} is not 3N with N >= 3", u.len())));
    }
    if energy == 0.0 {
        return Err(Error::Domain("slaving relations need E ≠ 0".into()));
    }
    let n = u.len() / 3;
    let at = |m: usize, s: Sublattice| u[3 * m + s.offset()];
    let scale = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for m in 1..n - 1 {
        let b = kappa(&params.alpha, params.theta, m as i64).conj() * at(m, Sublattice::A) / energy;
        let c = params.t * (at(m, Sublattice::A) + at(m + 1, Sublattice::A)) / energy;
        worst = worst.max((at(m, Sublattice::B) - b).norm()).max((at(m, Sublattice::C) - c).norm());
    }
    Ok(worst / scale)
}

pub const LOCALIZATION_CSV_HEADER: [&str; 9] =
    ["model", "alpha_desc", "theta", "t", "N", "eigenvalue", "ipr", "decay_rate", "fit_residual"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalizationRow {
    pub model: String,
    pub alpha_desc: String,
    pub theta: f64,
    pub t: f64,
    pub n: usize,
    pub state: LocalizedState,
}

/// Writes the localization report; states without a fit leave the last two columns empty.
pub fn write_localization_csv<W: Write>(w: W, rows: &[LocalizationRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(LOCALIZATION_CSV_HEADER)?;
    for r in rows {
        let (rate, res) = match &r.state.fit {
            Some(f) => (g17(f.rate), g17(f.residual)),
            None => (String::new(), String::new()),
        };
        out.write_record([
            r.model.clone(),
            r.alpha_desc.clone(),
            g17(r.theta),
            g17(r.t),
            r.n.to_string(),
            g17(r.state.eigenvalue),
            g17(r.state.ipr),
            rate,
            res,
        ])?;
    }
    out.flush()?;
    Ok(())
}
