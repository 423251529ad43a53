use crate::arithmetic::{Flux, TorusPoint};
use crate::error::{Error, Result};

pub const MIN_STEPS: u64 = 1000;

/// One step `[[E − 2λcos(2πx), −1], [1, 0]]` of the AMO cocycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransferStep {
    pub energy: f64,
    pub lambda: f64,
    pub x: f64,
    pub matrix: [[f64; 2]; 2],
}

impl TransferStep {
    pub fn new(energy: f64, lambda: f64, x: f64) -> TransferStep {
        let a = energy - 2.0 * lambda * (std::f64::consts::TAU * x).cos();
        TransferStep { energy, lambda, x, matrix: [[a, -1.0], [1.0, 0.0]] }
    }

    pub fn det(&self) -> f64 {
        let m = self.matrix;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }
}

/// `(1/N) ln ‖T_{N−1} ⋯ T_0‖` with the product renormalised after every step.
pub fn lyapunov(energy: f64, lambda: f64, alpha: &Flux, theta: f64, n_steps: u64) -> Result<f64> {
    if n_steps < MIN_STEPS {
        return Err(Error::Domain(format!("need at least {MIN_STEPS} steps, got {n_steps}")));
    }
    if !(energy.is_finite() && lambda.is_finite() && theta.is_finite()) {
        return Err(Error::Domain("non-finite Lyapunov input".into()));
    }
    let step = alpha.point();
    let mut x = TorusPoint::from_f64(theta);
    let mut m = [1.0f64, 0.0, 0.0, 1.0];
    let mut log_sum = 0.0;
    for _ in 0..n_steps {
        let a = energy - 2.0 * lambda * (std::f64::consts::TAU * x.to_f64()).cos();
        let next = [a * m[0] - m[2], a * m[1] - m[3], m[0], m[1]];
        let norm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Numerical(format!("transfer product degenerated (norm {norm})")));
        }
        m = next.map(|v| v / norm);
        log_sum += norm.ln();
        x = x + step;
    }
    Ok(log_sum / n_steps as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn steps_are_unimodular() {
        for x in [0.0, 0.3, 0.77] {
            assert_eq!(TransferStep::new(1.3, 2.5, x).det(), 1.0);
        }
    }

    #[test]
    fn far_outside_spectrum_matches_free_case() {
        // Oracle: cosh⁻¹(E/2) is the free growth rate; the potential shifts it by O(λ²/E²).
        let e = 100.0f64;
        let want = ((e + (e * e - 4.0).sqrt()) / 2.0).ln();
        let le = lyapunov(e, 1.0, &Flux::golden(), 0.0, 100_000).unwrap();
        assert!((le - want).abs() < 0.01 * want);
    }

    #[test]
    fn shift_invariance() {
        let a = Flux::golden();
        let l1 = lyapunov(0.5, 2.0, &a, 0.1, 50_000).unwrap();
        let l2 = lyapunov(0.5, 2.0, &a, 0.1 + a.value(), 50_000).unwrap();
        assert!((l1 - l2).abs() < 1e-3);
        assert!(l1 >= 2f64.ln() - 0.02);
    }

    #[test]
    fn rejects_short_runs() {
        assert!(lyapunov(0.0, 1.0, &Flux::golden(), 0.0, 10).is_err());
    }
}
