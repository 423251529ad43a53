use serde::Serialize;

use crate::arithmetic::{beta_for_flux, gamma_estimate, Flux, IndexEstimate, IndexValue};
use crate::error::Result;
use crate::operators::{check_coupling, GeneralCouplings};

/// `|L|` below this counts as the critical coupling.
const CRITICAL_TOL: f64 = 1e-12;
const GAMMA_SCAN_MIN: u64 = 64;
const GAMMA_SCAN_MAX: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    Localized,
    SingularContinuous,
    AbsolutelyContinuous,
    Critical,
    TransitionLine,
    FlatBandOnly,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum CouplingModel {
    Lieb { t: f64 },
    General(GeneralCouplings),
}

impl CouplingModel {
    /// `L = ln λ`: `ln t⁻²` or `ln(t₄/(t₂t₃))`.
    pub fn threshold(&self) -> Result<f64> {
        match self {
            CouplingModel::Lieb { t } => {
                check_coupling("t", *t)?;
                Ok(-2.0 * t.ln())
            }
            CouplingModel::General(c) => Ok(GeneralCouplings::new(c.t2, c.t3, c.t4)?.log_coupling()),
        }
    }
}

/// Label plus the comparisons it was derived from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeLabel {
    pub regime: Regime,
    pub threshold: f64,
    pub beta: Option<IndexEstimate>,
    pub gamma: Option<IndexEstimate>,
    pub reasons: Vec<String>,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

fn show(e: &IndexEstimate) -> String {
    match e.value {
        IndexValue::Finite(v) => format!("{v:.6} ± {:.2e}", e.uncertainty),
        IndexValue::Infinite => "inf".into(),
    }
}

/// Spectral regime on the bulk spectrum from `β̂(α)`, `γ̂(α, θ)` and `L`.
///
/// `L < 0` is absolutely continuous and `L = 0` critical. For `L > 0`:
/// `β > L` is singular continuous; `β < L` with `γ = 0`, or `β = 0` with
/// `γ < L`, is localized; `β = 0` with `γ > L` is singular continuous.
/// Equalities within the estimate uncertainty give `TransitionLine`, and
/// anything else is `Indeterminate`.
pub fn classify_regime(alpha: &Flux, theta: f64, model: CouplingModel, scan_depth: usize) -> Result<RegimeLabel> {
    let threshold = model.threshold()?;
    let mut label = RegimeLabel { regime: Regime::Indeterminate, threshold, beta: None, gamma: None, reasons: vec![] };
    let cf = match alpha {
        Flux::Rational { p, q } => {
            label.regime = Regime::FlatBandOnly;
            label.reasons.push(format!("rational flux {p}/{q}: band spectrum plus the flat band; see the bands command"));
            return Ok(label);
        }
        Flux::Irrational(cf) => cf,
    };
    if threshold.abs() <= CRITICAL_TOL {
        label.regime = Regime::Critical;
        label.reasons.push("L = 0: critical coupling".into());
        return Ok(label);
    }
    if threshold < 0.0 {
        label.regime = Regime::AbsolutelyContinuous;
        label.reasons.push(format!("L = {threshold:.6} < 0"));
        return Ok(label);
    }
    let depth = scan_depth.clamp(1, cf.depth());
    let beta = beta_for_flux(alpha, depth)?;
    let n_max = (cf.denominator_f64(depth).min(GAMMA_SCAN_MAX as f64) as u64).clamp(GAMMA_SCAN_MIN, GAMMA_SCAN_MAX);
    let gamma = gamma_estimate(alpha, theta, n_max)?;
    let (regime, why) = decide(&beta, &gamma, threshold);
    label.regime = regime;
    label.reasons.push(why);
    label.beta = Some(beta);
    label.gamma = Some(gamma);
    Ok(label)
}

/// The `L > 0` decision table applied to given estimates.
pub fn decide(beta: &IndexEstimate, gamma: &IndexEstimate, l: f64) -> (Regime, String) {
    let b = beta.value.to_f64();
    let g = gamma.value.to_f64();
    let (ub, ug) = (beta.uncertainty, gamma.uncertainty);
    if b > l + ub {
        (Regime::SingularContinuous, format!("β̂ = {} > L = {l:.6}", show(beta)))
    } else if (b - l).abs() <= ub {
        (Regime::TransitionLine, format!("β̂ = {} equals L = {l:.6} within uncertainty", show(beta)))
    } else if b < l - ub && gamma.is_negligible() {
        (Regime::Localized, format!("β̂ = {} < L = {l:.6} and γ̂ = {} ≈ 0", show(beta), show(gamma)))
    } else if beta.is_negligible() && g < l - ug {
        (Regime::Localized, format!("β̂ ≈ 0 and γ̂ = {} < L = {l:.6}", show(gamma)))
    } else if beta.is_negligible() && g > l + ug {
        (Regime::SingularContinuous, format!("β̂ ≈ 0 and γ̂ = {} > L = {l:.6}", show(gamma)))
    } else if beta.is_negligible() && (g - l).abs() <= ug {
        (Regime::TransitionLine, format!("β̂ ≈ 0 and γ̂ = {} equals L = {l:.6} within uncertainty", show(gamma)))
    } else {
        (Regime::Indeterminate, format!("β̂ = {}, γ̂ = {} match no case at L = {l:.6}", show(beta), show(gamma)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{ContinuedFraction, TorusPoint, gamma_estimate_at};

    fn lieb(t: f64) -> CouplingModel {
        CouplingModel::Lieb { t }
    }

    #[test]
    fn golden_localized() {
        assert_eq!(classify_regime(&Flux::golden(), 0.0, lieb(0.5), 40).unwrap().regime, Regime::Localized);
    }

    #[test]
    fn liouville_singular() {
        let a = Flux::irrational(ContinuedFraction::liouville(3.0, 10).unwrap()).unwrap();
        let r = classify_regime(&a, 0.0, lieb(0.5), 10).unwrap();
        assert_eq!(r.regime, Regime::SingularContinuous, "{r:?}");
    }

    #[test]
    fn weak_and_critical() {
        for a in [Flux::golden(), Flux::silver(), Flux::e_minus_2()] {
            assert_eq!(classify_regime(&a, 0.3, lieb(2.0), 20).unwrap().regime, Regime::AbsolutelyContinuous);
            assert_eq!(classify_regime(&a, 0.3, lieb(1.0), 20).unwrap().regime, Regime::Critical);
        }
        let c = GeneralCouplings::new(0.7, 1.3, 0.9).unwrap();
        assert_eq!(classify_regime(&Flux::golden(), 0.0, CouplingModel::General(c), 20).unwrap().regime, Regime::AbsolutelyContinuous);
        let c = GeneralCouplings::new(0.5, 3.0, 1.5).unwrap();
        assert_eq!(classify_regime(&Flux::golden(), 0.0, CouplingModel::General(c), 20).unwrap().regime, Regime::Critical);
    }

    #[test]
    fn resonant_phase_is_singular() {
        let a = Flux::golden();
        let two_theta = -a.point().mul_int(5);
        let gamma = gamma_estimate_at(&a, two_theta, 1000);
        assert!(gamma.value.is_infinite());
        let beta = beta_for_flux(&a, 30).unwrap();
        assert_eq!(decide(&beta, &gamma, 2.0f64.ln() * 2.0).0, Regime::SingularContinuous);
    }

    #[test]
    fn decision_table_edges() {
        let est = |v: f64, u: f64| IndexEstimate { value: IndexValue::Finite(v), uncertainty: u, diagnostic: None };
        assert_eq!(decide(&est(1.0, 0.01), &est(0.0, 0.01), 1.005).0, Regime::TransitionLine);
        assert_eq!(decide(&est(0.0, 0.01), &est(1.0, 0.01), 1.005).0, Regime::TransitionLine);
        assert_eq!(decide(&est(0.0, 0.01), &est(0.5, 0.01), 1.0).0, Regime::Localized);
        assert_eq!(decide(&est(0.5, 0.01), &est(0.5, 0.01), 1.0).0, Regime::Indeterminate);
    }

    #[test]
    fn rational_is_flat_band_only() {
        assert_eq!(classify_regime(&Flux::rational(1, 3).unwrap(), 0.0, lieb(0.5), 10).unwrap().regime, Regime::FlatBandOnly);
    }

    #[test]
    fn phase_reflection_symmetry() {
        let a = Flux::silver();
        let theta = 0.137;
        let plus = gamma_estimate_at(&a, TorusPoint::from_f64(theta).mul_int(2), 5000);
        let minus = gamma_estimate_at(&a, TorusPoint::from_f64(-theta).mul_int(2), 5000);
        assert_eq!(plus, minus);
        let l1 = classify_regime(&a, theta, lieb(0.5), 30).unwrap();
        let l2 = classify_regime(&a, -theta, lieb(0.5), 30).unwrap();
        assert_eq!(l1.regime, l2.regime);
    }
}
