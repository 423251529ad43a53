use std::time::Instant;

use serde_json::json;

use super::report::{CheckReport, Comparison};
use crate::error::{Error, Result};
use crate::operators::{build_amo, build_factor_product, build_lieb_1d, sign_flip_a, Boundary, HermitianMatrix, LiebParams};
use crate::spectra::{amo_bands_rational, lieb_bands_direct, lieb_bands_rational, Method};

pub const REDUCTION_TOL: f64 = 1e-12;

fn lieb_json(params: &LiebParams, n: usize) -> serde_json::Value {
    json!({"alpha": params.alpha.label(), "theta": params.theta, "t": params.t, "N": n})
}

/// Largest `|P_ij − t²(A + (2+2t⁻²)I)_ij|` over rows `rows`.
fn reduction_diff(params: &LiebParams, n: usize, rows: std::ops::Range<usize>) -> Result<f64> {
    let t2 = params.t * params.t;
    let product = build_factor_product(params, n)?;
    let amo = build_amo(&params.alpha, params.theta, params.lambda(), n, Boundary::Open)?;
    let shift = 2.0 + 2.0 * params.lambda();
    let mut worst = 0.0f64;
    for i in rows {
        for j in 0..n {
            let mut target = amo.get(i, j) * t2;
            if i == j {
                target += t2 * shift;
            }
            worst = worst.max((product.get(i, j) - target).norm());
        }
    }
    Ok(worst)
}

/// `H̃H̃* = t²(H^AMO + (2+2t⁻²)I)` on the interior rows `2..=N−3` of the open truncation.
pub fn check_reduction_identity(params: &LiebParams, n: usize) -> Result<CheckReport> {
    if n < 10 {
        return Err(Error::Domain(format!("reduction check needs N >= 10, got {n}")));
    }
    let started = Instant::now();
    let diff = reduction_diff(params, n, 2..n - 2)?;
    Ok(CheckReport::new("reduction_identity", lieb_json(params, n), diff, REDUCTION_TOL, Comparison::AtMost, started))
}

/// The same identity on every row; the truncated first row is expected to fail.
pub fn check_reduction_identity_with_boundary(params: &LiebParams, n: usize) -> Result<CheckReport> {
    if n < 10 {
        return Err(Error::Domain(format!("reduction check needs N >= 10, got {n}")));
    }
    let started = Instant::now();
    let diff = reduction_diff(params, n, 0..n)?;
    let first = reduction_diff(params, n, 0..1)?;
    let r = CheckReport::new("reduction_identity_all_rows", lieb_json(params, n), diff, REDUCTION_TOL, Comparison::AtMost, started);
    Ok(if r.pass { r } else { r.with_detail(format!("row 0 misses the hopping to C_-1: deviation {first:e}")) })
}

/// `‖U*MU + M‖_max` (must be exactly 0) and the `E ↦ −E` symmetry of the spectrum.
pub fn check_symmetry_matrix(m: &HermitianMatrix, params: serde_json::Value) -> Result<CheckReport> {
    let started = Instant::now();
    let flipped = sign_flip_a(m)?;
    let n = m.dim();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((flipped.get(i, j) + m.get(i, j)).norm());
        }
    }
    let e = m.eigenvalues()?;
    let asym = e.iter().zip(e.iter().rev()).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max);
    let r = CheckReport::new("symmetry", params, worst, 0.0, Comparison::AtMost, started)
        .with_detail(format!("spectrum asymmetry {asym:e}"));
    Ok(if asym <= 1e-12 * m.max_abs().max(1.0) { r } else { r.fail_with("spectrum is not symmetric under E -> -E") })
}

pub fn check_symmetry(params: &LiebParams, n: usize) -> Result<CheckReport> {
    let m = build_lieb_1d(params, n, Boundary::Open)?;
    check_symmetry_matrix(&m, lieb_json(params, n))
}

/// Hausdorff distance between the mapped and directly swept Lieb bands.
pub fn check_mapping(p: u64, q: u64, t: f64, grid: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mapped = lieb_bands_rational(p, q, t, Method::Mapped)?;
    let direct = lieb_bands_direct(p, q, t, grid)?;
    let d = mapped.hausdorff(&direct)?;
    let mut r = CheckReport::new("mapping", json!({"p": p, "q": q, "t": t, "grid": grid}), d, 1e-6, Comparison::AtMost, started);
    for w in direct.warnings() {
        r = r.with_detail(w.clone());
    }
    Ok(r)
}

/// `c = (2 + 2λ) − max |band edge|`, which must be positive for `p/q ∉ ℤ`.
pub fn check_gap_bound(p: u64, q: u64, lambda: f64) -> Result<CheckReport> {
    let started = Instant::now();
    let bands = amo_bands_rational(p, q, lambda)?;
    let hull = bands.hull().ok_or_else(|| Error::Structure("empty AMO band set".into()))?;
    let c = (2.0 + 2.0 * lambda) - hull.lo.abs().max(hull.hi.abs());
    let r = CheckReport::new("gap_bound", json!({"p": p, "q": q, "lambda": lambda}), c, 0.0, Comparison::Above, started);
    Ok(if q == 1 { r.with_detail("integer flux: the bound saturates") } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Flux;
    use crate::operators::{build_general_1d, build_lieb_2d_torus, GeneralCouplings, GeneralParams};
    use approx::assert_relative_eq;

    #[test]
    fn reduction_interior_rows() {
        let p = LiebParams::new(Flux::golden(), 0.13, 0.5).unwrap();
        let r = check_reduction_identity(&p, 200).unwrap();
        assert!(r.pass && r.measured <= 1e-13, "{r:?}");
        let p = LiebParams::new(Flux::rational(0, 1).unwrap(), 0.0, 1.0).unwrap();
        assert!(check_reduction_identity(&p, 10).unwrap().measured < 1e-14);
        assert!(check_reduction_identity(&p, 9).is_err());
    }

    #[test]
    fn reduction_boundary_rows_fail() {
        let p = LiebParams::new(Flux::golden(), 0.0, 0.7).unwrap();
        let r = check_reduction_identity_with_boundary(&p, 20).unwrap();
        assert!(!r.pass);
        assert_relative_eq!(r.measured, 0.49, epsilon = 1e-12);
        assert!(!r.details.is_empty());
    }

    #[test]
    fn symmetry_is_exact() {
        let p = LiebParams::new(Flux::silver(), 0.3, 1.7).unwrap();
        let r = check_symmetry(&p, 30).unwrap();
        assert!(r.pass && r.measured == 0.0);
        let g = GeneralParams::new(Flux::golden(), 0.2, GeneralCouplings::new(0.7, 1.3, 0.9).unwrap()).unwrap();
        assert!(check_symmetry_matrix(&build_general_1d(&g, 20, Boundary::Open).unwrap(), json!({})).unwrap().pass);
        assert!(check_symmetry_matrix(&build_lieb_2d_torus(1, 3, 1.0, 3, 2).unwrap(), json!({})).unwrap().pass);
    }

    #[test]
    fn gap_bound_examples() {
        let r = check_gap_bound(1, 2, 1.0).unwrap();
        assert_relative_eq!(r.measured, 4.0 - 8f64.sqrt(), epsilon = 1e-12);
        assert!(r.pass);
        let r = check_gap_bound(0, 1, 2.0).unwrap();
        assert!(r.measured.abs() < 1e-12 && !r.pass);
        assert!(check_gap_bound(1, 3, 4.0).unwrap().pass);
    }

    #[test]
    fn mapping_half_flux() {
        let r = check_mapping(1, 2, 1.0, 16).unwrap();
        assert!(r.measured <= 1e-9, "{r:?}");
    }
}
