use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;

use super::report::{CheckReport, Comparison};
use crate::arithmetic::find_near_half;
use crate::error::{Error, Result};
use crate::operators::{kappa, LiebParams, Sublattice};

/// Weyl vector at `E = 0` and its residual.
#[derive(Clone, Debug)]
pub struct WeylResidual {
    pub m: u64,
    pub eps: f64,
    pub residual: f64,
    pub report: CheckReport,
}

/// `eps_k` with `2 sin(π eps_k) = 1/k`, i.e. `2|cos(π(1/2 ± eps_k))| = 1/k`.
pub fn weyl_eps(k: u64) -> f64 {
    (0.5 / k as f64).asin() / std::f64::consts::PI
}

/// `(Hu)` restricted to cells `m−1..=m+1` for `u` supported in those cells, by the row formulas.
fn apply_rows(params: &LiebParams, u: impl Fn(i64, Sublattice) -> Complex64, m: i64) -> Vec<Complex64> {
    let t = params.t;
    let k = |j: i64| kappa(&params.alpha, params.theta, j);
    let mut out = Vec::with_capacity(9);
    for j in m - 1..=m + 1 {
        out.push(k(j) * u(j, Sublattice::B) + t * (u(j, Sublattice::C) + u(j - 1, Sublattice::C)));
        out.push(k(j).conj() * u(j, Sublattice::A));
        out.push(t * (u(j, Sublattice::A) + u(j + 1, Sublattice::A)));
    }
    out
}

/// Places `u^B_m = 1` at the first `m >= 0` with `‖θ + mα − 1/2‖ < eps_k`;
/// the residual `‖Hu‖ = |𝒦_m|` is then below `1/k`.
pub fn weyl_zero_residual(params: &LiebParams, k: u64) -> Result<WeylResidual> {
    if k == 0 {
        return Err(Error::Domain("k must be positive".into()));
    }
    let started = Instant::now();
    let eps = weyl_eps(k);
    let m = find_near_half(&params.alpha, params.theta, eps)?;
    let mi = m as i64;
    let u = |j: i64, s: Sublattice| if j == mi && s == Sublattice::B { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    let residual = apply_rows(params, u, mi).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let report = CheckReport::new(
        "weyl_zero",
        json!({"alpha": params.alpha.label(), "theta": params.theta, "t": params.t, "k": k}),
        residual,
        1.0 / k as f64,
        Comparison::AtMost,
        started,
    )
    .with_detail(format!("m = {m}"));
    let report = if residual < 1.0 / k as f64 { report } else { report.fail_with("residual is not strictly below 1/k") };
    Ok(WeylResidual { m, eps, residual, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Flux;

    #[test]
    fn eps_solves_cosine_equation() {
        for k in [10u64, 1000] {
            let e = weyl_eps(k);
            let v = 2.0 * (std::f64::consts::PI * (0.5 + e)).cos().abs();
            assert!((v - 1.0 / k as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn golden_k10() {
        let p = LiebParams::new(Flux::golden(), 0.0, 1.0).unwrap();
        let w = weyl_zero_residual(&p, 10).unwrap();
        assert!(w.residual < 0.1 && w.report.pass);
        let direct = kappa(&p.alpha, 0.0, w.m as i64).norm();
        assert!((w.residual - direct).abs() < 1e-15);
    }

    #[test]
    fn half_phase_is_exact_kernel() {
        for a in [Flux::golden(), Flux::silver()] {
            let p = LiebParams::new(a, 0.5, 2.0).unwrap();
            let w = weyl_zero_residual(&p, 1000).unwrap();
            assert_eq!((w.m, w.residual), (0, 0.0));
        }
    }

    #[test]
    fn unreachable_rational_target() {
        let p = LiebParams::new(Flux::rational(1, 3).unwrap(), 0.0, 1.0).unwrap();
        assert!(matches!(weyl_zero_residual(&p, 10), Err(Error::NoSolution(_))));
    }
}
