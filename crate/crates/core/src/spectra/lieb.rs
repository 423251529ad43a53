use rayon::prelude::*;

use super::amo::amo_bands_rational;
use super::bands::{BandMeta, BandSet, Interval, Model, MERGE_TOL};
use crate::error::{Error, Result};
use crate::operators::{build_general_bloch, build_lieb_bloch, check_coupling, GeneralCouplings, HermitianMatrix};

/// Default Bloch grid per side for [`Method::Direct`].
pub const DEFAULT_GRID: usize = 64;

/// Radicands above `-RADICAND_TOL` are clamped to zero.
const RADICAND_TOL: f64 = 1e-12;

/// Eigenvalues below this in magnitude over the whole zone form the flat band.
const FLAT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Square-root image of the AMO bands plus the flat band.
    Mapped,
    /// Sweep of the magnetic Brillouin zone with local edge refinement.
    Direct,
}

/// `±√(t²e + 2 + 2t²)`, the Lieb energies over the AMO energy `e` at `λ = t⁻²`.
pub fn map_amo_energy(e: f64, t: f64) -> Result<(f64, f64)> {
    check_coupling("t", t)?;
    signed_root(t * t * e + 2.0 + 2.0 * t * t)
}

/// `g_t(E) = E²t⁻² − 2t⁻² − 2`, the inverse of [`map_amo_energy`].
pub fn g_t(energy: f64, t: f64) -> f64 {
    (energy * energy - 2.0) / (t * t) - 2.0
}

/// `±√(t₂t₃e + 1 + t₂² + t₃² + t₄²)` for the AMO at `λ = t₄/(t₂t₃)`.
pub fn general_map_energy(e: f64, c: &GeneralCouplings) -> Result<(f64, f64)> {
    let c = GeneralCouplings::new(c.t2, c.t3, c.t4)?;
    signed_root(c.t2 * c.t3 * e + 1.0 + c.t2 * c.t2 + c.t3 * c.t3 + c.t4 * c.t4)
}

fn signed_root(radicand: f64) -> Result<(f64, f64)> {
    if !radicand.is_finite() || radicand < -RADICAND_TOL {
        return Err(Error::Domain(format!("energy maps to negative radicand {radicand}")));
    }
    let r = radicand.max(0.0).sqrt();
    Ok((-r, r))
}

/// Maps each AMO band through `map`. `offset` is the constant term of the
/// radicand; images below the square root of its rounding error are snapped
/// to 0 so that a band edge at the bottom of the AMO range lands on the flat band.
fn mapped(amo: &BandSet, meta: BandMeta, offset: f64, map: impl Fn(f64) -> Result<(f64, f64)>) -> Result<BandSet> {
    let snap = (64.0 * f64::EPSILON * offset).sqrt();
    let image = |e: f64| -> Result<f64> {
        let r = map(e)?.1;
        Ok(if r < snap { 0.0 } else { r })
    };
    let mut raw = vec![Interval::point(0.0)];
    for iv in amo.intervals() {
        let (lo, hi) = (image(iv.lo)?, image(iv.hi)?);
        raw.push(Interval::new(lo, hi)?);
        raw.push(Interval::new(-hi, -lo)?);
    }
    BandSet::from_intervals(raw, MERGE_TOL, meta)
}

/// Bulk bands of the Lieb model at flux `p/q`, with the flat band `[0, 0]`.
pub fn lieb_bands_rational(p: u64, q: u64, t: f64, method: Method) -> Result<BandSet> {
    match method {
        Method::Mapped => {
            check_coupling("t", t)?;
            let amo = amo_bands_rational(p, q, t.powi(-2))?;
            mapped(&amo, BandMeta { model: Model::Lieb, p, q, coupling: t }, 2.0 + 2.0 * t * t, |e| map_amo_energy(e, t))
        }
        Method::Direct => lieb_bands_direct(p, q, t, DEFAULT_GRID),
    }
}

pub fn lieb_bands_direct(p: u64, q: u64, t: f64, n_grid: usize) -> Result<BandSet> {
    check_coupling("t", t)?;
    build_lieb_bloch(p, q, t, 0.0, 0.0)?;
    let meta = BandMeta { model: Model::Lieb, p, q, coupling: t };
    direct_sweep(q, n_grid, meta, |theta, k| build_lieb_bloch(p, q, t, theta, k))
}

/// Bands of the general-coupling model; the metadata coupling is `t₄/(t₂t₃)`.
pub fn general_bands_rational(p: u64, q: u64, c: &GeneralCouplings, method: Method) -> Result<BandSet> {
    let c = GeneralCouplings::new(c.t2, c.t3, c.t4)?;
    let meta = BandMeta { model: Model::General, p, q, coupling: c.lambda() };
    match method {
        Method::Mapped => {
            let amo = amo_bands_rational(p, q, c.lambda())?;
            let offset = 1.0 + c.t2 * c.t2 + c.t3 * c.t3 + c.t4 * c.t4;
            mapped(&amo, meta, offset, |e| general_map_energy(e, &c))
        }
        Method::Direct => {
            build_general_bloch(p, q, c, 0.0, 0.0)?;
            direct_sweep(q, DEFAULT_GRID, meta, |theta, k| build_general_bloch(p, q, c, theta, k))
        }
    }
}

/// Sweeps `θ ∈ [0, 1/q)`, `k ∈ [0, 2π)` on an `n × n` grid, takes the range of
/// each sorted Bloch eigenvalue and refines its extremes by compass search.
fn direct_sweep<F>(q: u64, n: usize, meta: BandMeta, build: F) -> Result<BandSet>
where
    F: Fn(f64, f64) -> Result<HermitianMatrix> + Sync,
{
    if n < 8 {
        return Err(Error::Config(format!("Bloch grid must be at least 8 per side, got {n}")));
    }
    let dtheta = 1.0 / (q as f64 * n as f64);
    let dk = std::f64::consts::TAU / n as f64;
    let eig = |theta: f64, k: f64| -> Result<Vec<f64>> { build(theta, k)?.eigenvalues() };
    let grid: Vec<Vec<f64>> = (0..n * n)
        .into_par_iter()
        .map(|idx| eig((idx / n) as f64 * dtheta, (idx % n) as f64 * dk))
        .collect::<Result<_>>()?;
    let bands = grid[0].len();
    let refined: Vec<Result<(Interval, bool)>> = (0..bands)
        .into_par_iter()
        .map(|j| {
            let values: Vec<f64> = grid.iter().map(|e| e[j]).collect();
            let (gmin, gmax) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
            if gmin.abs() <= FLAT_TOL && gmax.abs() <= FLAT_TOL {
                return Ok((Interval::point(0.0), false));
            }
            let lo = refine(&values, n, dtheta, dk, 1.0, |th, k| Ok(eig(th, k)?[j]))?;
            let hi = refine(&values, n, dtheta, dk, -1.0, |th, k| Ok(eig(th, k)?[j]))?;
            let coarse = (gmin - lo) > 1e-3 * (gmax - gmin).max(1e-12) || (hi - gmax) > 1e-3 * (gmax - gmin).max(1e-12);
            Ok((Interval::new(lo.min(gmin), hi.max(gmax))?, coarse))
        })
        .collect();
    let mut raw = Vec::with_capacity(bands);
    let mut coarse = false;
    for r in refined {
        let (iv, c) = r?;
        raw.push(iv);
        coarse |= c;
    }
    let mut set = BandSet::from_intervals(raw, MERGE_TOL, meta)?;
    if coarse {
        set.push_warning(format!("Bloch grid {n}x{n} missed band extremes by more than 0.1% of a band width"));
    }
    Ok(set)
}

/// Minimises `sign · f` over the periodic zone, starting from the best grid points.
fn refine(
    values: &[f64],
    n: usize,
    dtheta: f64,
    dk: f64,
    sign: f64,
    f: impl Fn(f64, f64) -> Result<f64>,
) -> Result<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| (sign * values[a]).total_cmp(&(sign * values[b])).then(a.cmp(&b)));
    let mut best = sign * values[order[0]];
    for &start in order.iter().take(3) {
        let (mut th, mut k) = ((start / n) as f64 * dtheta, (start % n) as f64 * dk);
        let mut val = sign * values[start];
        let (mut h_th, mut h_k) = (dtheta, dk);
        while h_th > 1e-9 * dtheta || h_k > 1e-9 * dk {
            let mut moved = false;
            for (a, b) in [(h_th, 0.0), (-h_th, 0.0), (0.0, h_k), (0.0, -h_k)] {
                let cand = sign * f(th + a, k + b)?;
                if cand < val {
                    val = cand;
                    th += a;
                    k += b;
                    moved = true;
                    break;
                }
            }
            if !moved {
                h_th *= 0.5;
                h_k *= 0.5;
            }
        }
        best = best.min(val);
    }
    Ok(sign * best)
}
