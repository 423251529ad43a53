use num_complex::Complex64;

use super::lieb::{lieb_labels, site};
use super::matrix::{Boundary, HermitianMatrix, Sublattice};
use super::{check_coupling, check_periodic, cis, coprime_flux, normalized_theta, Orbit};
use crate::arithmetic::Flux;
use crate::error::{Error, Result};

/// Hopping strengths of the generalized Lieb model: `t₂` (A–C in-cell),
/// `t₃` (A–C across cells), `t₄` (modulated A–B).
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct GeneralCouplings {
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
}

impl GeneralCouplings {
    pub fn new(t2: f64, t3: f64, t4: f64) -> Result<Self> {
        check_coupling("t2", t2)?;
        check_coupling("t3", t3)?;
        check_coupling("t4", t4)?;
        Ok(GeneralCouplings { t2, t3, t4 })
    }

    /// Effective AMO coupling `t₄ / (t₂t₃)`.
    pub fn lambda(&self) -> f64 {
        self.t4 / (self.t2 * self.t3)
    }

    /// `ln(t₄ / (t₂t₃))`, the Lyapunov exponent of the mapped AMO on its spectrum.
    pub fn log_coupling(&self) -> f64 {
        self.t4.ln() - self.t2.ln() - self.t3.ln()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralParams {
    pub alpha: Flux,
    pub theta: f64,
    pub couplings: GeneralCouplings,
}

impl GeneralParams {
    pub fn new(alpha: Flux, theta: f64, couplings: GeneralCouplings) -> Result<Self> {
        let couplings = GeneralCouplings::new(couplings.t2, couplings.t3, couplings.t4)?;
        Ok(GeneralParams { alpha, theta: normalized_theta(theta)?, couplings })
    }
}

pub fn build_general_1d(params: &GeneralParams, n_cells: usize, boundary: Boundary) -> Result<HermitianMatrix> {
    if n_cells == 0 {
        return Err(Error::Domain("need at least one cell".into()));
    }
    let GeneralCouplings { t2, t3, t4 } = GeneralCouplings::new(params.couplings.t2, params.couplings.t3, params.couplings.t4)?;
    check_periodic(&params.alpha, n_cells, boundary)?;
    let orbit = Orbit::new(&params.alpha, params.theta);
    let mut h = HermitianMatrix::zeros(3 * n_cells, boundary);
    for m in 0..n_cells {
        let x = orbit.phase(m as i64).to_f64();
        let coeff = orbit.gauge(m as i64).conj() * (Complex64::new(1.0, 0.0) + t4 * cis(x));
        let a = site(m, Sublattice::A);
        h.add_hopping(a, site(m, Sublattice::B), coeff);
        h.add_hopping(a, site(m, Sublattice::C), Complex64::new(t2, 0.0));
        if m > 0 {
            h.add_hopping(a, site(m - 1, Sublattice::C), Complex64::new(t3, 0.0));
        }
    }
    if let Boundary::Periodic { k } = boundary {
        h.add_hopping(site(0, Sublattice::A), site(n_cells - 1, Sublattice::C), Complex64::from_polar(t3, -k));
    }
    Ok(h.with_labels(lieb_labels(n_cells)))
}

pub fn build_general_bloch(
    p: u64,
    q: u64,
    couplings: GeneralCouplings,
    theta: f64,
    k: f64,
) -> Result<HermitianMatrix> {
    let params = GeneralParams::new(coprime_flux(p, q)?, theta, couplings)?;
    build_general_1d(&params, q as usize, Boundary::Periodic { k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{build_lieb_1d, LiebParams};
    use approx::assert_relative_eq;

    #[test]
    fn unit_couplings_match_lieb_spectrum() {
        let t = 1.0;
        let g = GeneralParams::new(Flux::golden(), 0.37, GeneralCouplings::new(t, t, 1.0).unwrap()).unwrap();
        let l = LiebParams::new(Flux::golden(), 0.37, t).unwrap();
        let eg = build_general_1d(&g, 20, Boundary::Open).unwrap().eigenvalues().unwrap();
        let el = build_lieb_1d(&l, 20, Boundary::Open).unwrap().eigenvalues().unwrap();
        for (a, b) in eg.iter().zip(&el) {
            assert_relative_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn lambda_and_log() {
        let c = GeneralCouplings::new(0.5, 2.0, 3.0).unwrap();
        assert_relative_eq!(c.lambda(), 3.0);
        assert_relative_eq!(c.log_coupling(), 3f64.ln(), epsilon = 1e-15);
        assert!(GeneralCouplings::new(0.0, 1.0, 1.0).is_err());
    }
}
