use num_complex::Complex64;

use super::matrix::{Boundary, HermitianMatrix};
use super::{check_coupling, check_periodic, normalized_theta, Orbit};
use crate::arithmetic::Flux;
use crate::error::{Error, Result};

/// On-site potential `2λ cos(2π(θ + mα))` for `m = 0..n`.
pub fn amo_potential(alpha: &Flux, theta: f64, lambda: f64, n: usize) -> Vec<f64> {
    let orbit = Orbit::new(alpha, theta);
    (0..n).map(|m| 2.0 * lambda * (std::f64::consts::TAU * orbit.phase(m as i64).to_f64()).cos()).collect()
}

/// The almost Mathieu operator `u_{m+1} + u_{m−1} + 2λ cos(2π(θ+mα)) u_m` on `n` sites.
pub fn build_amo(alpha: &Flux, theta: f64, lambda: f64, n: usize, boundary: Boundary) -> Result<HermitianMatrix> {
    if n == 0 {
        return Err(Error::Domain("need at least one site".into()));
    }
    check_coupling("lambda", lambda)?;
    check_periodic(alpha, n, boundary)?;
    let theta = normalized_theta(theta)?;
    let mut h = HermitianMatrix::zeros(n, boundary);
    for (m, v) in amo_potential(alpha, theta, lambda, n).into_iter().enumerate() {
        h.add_onsite(m, v);
    }
    let one = Complex64::new(1.0, 0.0);
    for m in 0..n.saturating_sub(1) {
        h.add_hopping(m, m + 1, one);
    }
    if let Boundary::Periodic { k } = boundary {
        h.add_hopping(n - 1, 0, Complex64::from_polar(1.0, k));
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn q1_bloch_is_scalar() {
        let h = build_amo(&Flux::rational(0, 1).unwrap(), 0.0, 0.5, 1, Boundary::Periodic { k: 0.3 }).unwrap();
        assert_relative_eq!(h.get(0, 0).re, 1.0 + 2.0 * 0.3f64.cos(), epsilon = 1e-15);
    }

    #[test]
    fn periodic_corner_phase() {
        let k = 0.9;
        let h = build_amo(&Flux::rational(1, 3).unwrap(), 0.2, 2.0, 3, Boundary::Periodic { k }).unwrap();
        assert_relative_eq!((h.get(2, 0) - Complex64::from_polar(1.0, k)).norm(), 0.0, epsilon = 1e-15);
        assert!(h.is_hermitian());
    }

    #[test]
    fn rejects_bad_coupling() {
        assert!(build_amo(&Flux::golden(), 0.0, 0.0, 4, Boundary::Open).is_err());
        assert!(build_amo(&Flux::golden(), 0.0, 1.0, 0, Boundary::Open).is_err());
    }
}
