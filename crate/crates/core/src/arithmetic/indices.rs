use serde::Serialize;

use super::{ContinuedFraction, Flux, TorusPoint};
use crate::error::{Error, Result};

/// Below this an index estimate is treated as numerically zero.
pub const ZERO_FLOOR: f64 = 0.05;

/// Torus distances below 2⁻¹⁰⁰ count as exact hits: they are zero up to the
/// rounding of α to 128 bits.
const EXACT_HIT: f64 = 7.888609052210118e-31;

/// A nonnegative index that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum IndexValue {
    Finite(f64),
    Infinite,
}

impl IndexValue {
    pub fn to_f64(self) -> f64 {
        match self {
            IndexValue::Finite(v) => v,
            IndexValue::Infinite => f64::INFINITY,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, IndexValue::Infinite)
    }
}

/// A limsup estimate with an explicit trust radius.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexEstimate {
    pub value: IndexValue,
    pub uncertainty: f64,
    pub diagnostic: Option<String>,
}

impl IndexEstimate {
    fn infinite(why: impl Into<String>) -> Self {
        IndexEstimate { value: IndexValue::Infinite, uncertainty: 0.0, diagnostic: Some(why.into()) }
    }

    /// Zero within max(uncertainty, [`ZERO_FLOOR`]).
    pub fn is_negligible(&self) -> bool {
        match self.value {
            IndexValue::Finite(v) => v <= self.uncertainty.max(ZERO_FLOOR),
            IndexValue::Infinite => false,
        }
    }
}

/// Trailing window of the ratio sequence used as the limsup proxy at `depth`.
fn window_max(ratios: &[f64], depth: usize) -> f64 {
    let width = (depth / 4).max(1);
    ratios[depth - width..depth].iter().copied().fold(0.0, f64::max)
}

/// β(α) along convergent denominators: `ln q_{k+1} / q_k` (since
/// ‖q_k α‖ ≍ 1/q_{k+1}), maximised over the last quarter of the first
/// `depth` ratios. The uncertainty is the change from `depth - 1` or
/// `1/q_depth`, whichever is larger.
pub fn beta_estimate(alpha: &ContinuedFraction, depth: usize) -> Result<IndexEstimate> {
    if depth == 0 || depth > alpha.depth() {
        return Err(Error::Range(format!(
            "beta depth {depth} outside stored expansion 1..={}",
            alpha.depth()
        )));
    }
    let ratios: Vec<f64> = (0..depth)
        .map(|k| alpha.ln_denominator(k + 1) / alpha.denominator_f64(k))
        .collect();
    let value = window_max(&ratios, depth);
    let previous = if depth >= 2 { window_max(&ratios, depth - 1) } else { 0.0 };
    let uncertainty = (value - previous).abs().max(1.0 / alpha.denominator_f64(depth));
    let diagnostic = alpha
        .truncated()
        .then(|| format!("expansion truncated at depth {}", alpha.depth()));
    Ok(IndexEstimate { value: IndexValue::Finite(value), uncertainty, diagnostic })
}

/// [`beta_estimate`] for a flux; rational flux gives the infinite sentinel and
/// the depth is clamped to the stored expansion.
pub fn beta_for_flux(alpha: &Flux, depth: usize) -> Result<IndexEstimate> {
    match alpha {
        Flux::Rational { p, q } => Ok(IndexEstimate::infinite(format!("rational flux {p}/{q}: ‖qα‖ = 0"))),
        Flux::Irrational(cf) => beta_estimate(cf, depth.clamp(1, cf.depth())),
    }
}

/// Max of −ln‖x‖/|n| over one tail block of a scan.
struct TailScan {
    upper: f64,
    lower: f64,
    hit: Option<i64>,
}

fn scan(n_max: u64, mut distance: impl FnMut(i64) -> f64) -> TailScan {
    let mut out = TailScan { upper: 0.0, lower: 0.0, hit: None };
    for n in 1..=n_max as i64 {
        for signed in [n, -n] {
            let d = distance(signed);
            if d < EXACT_HIT {
                out.hit.get_or_insert(signed);
                continue;
            }
            let term = -d.ln() / n as f64;
            let n = n as u64;
            if n > n_max / 2 {
                out.upper = out.upper.max(term);
            } else if n > n_max / 4 {
                out.lower = out.lower.max(term);
            }
        }
    }
    out
}

fn finish(tail: TailScan, n_max: u64) -> IndexEstimate {
    if let Some(n) = tail.hit {
        return IndexEstimate::infinite(format!("exact resonance at n = {n}"));
    }
    IndexEstimate {
        value: IndexValue::Finite(tail.upper),
        uncertainty: (tail.upper - tail.lower).abs().max(1.0 / n_max as f64),
        diagnostic: None,
    }
}

/// Direct-scan form of β: −ln‖nα‖/|n| maximised over `n_max/2 < |n| <= n_max`.
pub fn beta_scan(alpha: &Flux, n_max: u64) -> IndexEstimate {
    gamma_estimate_at(alpha, TorusPoint::ZERO, n_max)
}

/// γ(α, θ) by direct scan of ‖2θ + nα‖ over both signs of `n`.
///
/// The value is the maximum of −ln‖2θ + nα‖/|n| over the tail block
/// `n_max/2 < |n| <= n_max`; an exact hit anywhere in `1 <= |n| <= n_max`
/// (the phase is α-rational) returns the infinite sentinel.
pub fn gamma_estimate(alpha: &Flux, theta: f64, n_max: u64) -> Result<IndexEstimate> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("non-finite phase {theta}")));
    }
    if n_max == 0 {
        return Err(Error::Domain("gamma scan needs n_max >= 1".into()));
    }
    Ok(gamma_estimate_at(alpha, TorusPoint::from_f64(2.0 * theta), n_max))
}

/// [`gamma_estimate`] with the doubled phase `2θ mod 1` given exactly.
pub fn gamma_estimate_at(alpha: &Flux, two_theta: TorusPoint, n_max: u64) -> IndexEstimate {
    if let Flux::Rational { p, q } = alpha {
        return IndexEstimate::infinite(format!("rational flux {p}/{q}: orbit is periodic"));
    }
    let a = alpha.point();
    let tail = scan(n_max.max(1), |n| (two_theta + a.mul_int(n)).norm());
    finish(tail, n_max.max(1))
}

/// Upper bound on the first `m >= 0` with ‖θ + mα − 1/2‖ < eps: once
/// `q_k > 1/(2 eps)` the orbit of length `q_k + q_{k-1}` has gaps below `1/q_k`.
pub fn near_half_search_bound(alpha: &Flux, eps: f64) -> u64 {
    match alpha {
        Flux::Rational { q, .. } => *q,
        Flux::Irrational(cf) => {
            for k in 1..=cf.depth() {
                let qk = cf.denominator_f64(k);
                if qk > 0.5 / eps {
                    return (qk + cf.denominator_f64(k - 1)).min(u64::MAX as f64) as u64;
                }
            }
            (10.0 / eps).ceil().min(1e12) as u64
        }
    }
}

/// Smallest `m >= 0` with ‖θ + mα − 1/2‖_𝕋 < eps.
pub fn find_near_half(alpha: &Flux, theta: f64, eps: f64) -> Result<u64> {
    if !(eps.is_finite() && eps > 0.0) || !theta.is_finite() {
        return Err(Error::Domain(format!("find_near_half needs finite theta and eps > 0, got {theta}, {eps}")));
    }
    let step = alpha.point();
    let bound = near_half_search_bound(alpha, eps);
    let mut x = TorusPoint::from_f64(theta) - TorusPoint::HALF;
    for m in 0..bound {
        if x.norm() < eps {
            return Ok(m);
        }
        x = x + step;
    }
    Err(Error::NoSolution(format!(
        "no m < {bound} brings θ + mα within {eps} of 1/2 for α = {}",
        alpha.label()
    )))
}
