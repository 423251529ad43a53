//! Finite Hermitian matrices for every operator in the model family.
//!
//! Site ordering for the Lieb family is `3·cell + {A: 0, B: 1, C: 2}`; the 2D
//! torus numbers cells `m·Ly + n`.

mod amo;
mod general;
mod lieb;
mod matrix;

pub use amo::{amo_potential, build_amo};
pub use general::{build_general_1d, build_general_bloch, GeneralCouplings, GeneralParams};
pub use lieb::{
    build_factor_product, build_lieb_1d, build_lieb_2d_torus, build_lieb_bloch, kappa, sign_flip_a,
    LiebParams,
};
pub use matrix::{Boundary, HermitianMatrix, SiteLabel, Sublattice};

use num_complex::Complex64;

use crate::arithmetic::{Flux, TorusPoint};
use crate::error::{Error, Result};

/// The orbit `θ + mα` together with the gauge phase `e^{πimα}`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Orbit {
    alpha: TorusPoint,
    half_alpha: TorusPoint,
    theta: TorusPoint,
}

impl Orbit {
    pub(crate) fn new(alpha: &Flux, theta: f64) -> Orbit {
        let a = alpha.point();
        Orbit { alpha: a, half_alpha: a.half(), theta: TorusPoint::from_f64(theta) }
    }

    /// `θ + mα mod 1`.
    pub(crate) fn phase(&self, m: i64) -> TorusPoint {
        self.theta + self.alpha.mul_int(m)
    }

    /// `e^{πimα}`.
    pub(crate) fn gauge(&self, m: i64) -> Complex64 {
        cis(self.half_alpha.mul_int(m).to_f64())
    }
}

/// `e^{2πix}`.
pub(crate) fn cis(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * x)
}

pub(crate) fn check_coupling(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {v}")))
    }
}

pub(crate) fn check_periodic(alpha: &Flux, n: usize, boundary: Boundary) -> Result<()> {
    if let Boundary::Periodic { k } = boundary {
        if !k.is_finite() {
            return Err(Error::Domain(format!("quasimomentum must be finite, got {k}")));
        }
        match alpha.as_rational() {
            Some((_, q)) if (n as u64).is_multiple_of(q) => {}
            Some((p, q)) => {
                return Err(Error::Config(format!("periodic boundary needs q | N; got α = {p}/{q}, N = {n}")))
            }
            None => return Err(Error::Config("periodic boundary needs rational flux".into())),
        }
    }
    Ok(())
}

pub(crate) fn normalized_theta(theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("phase must be finite, got {theta}")));
    }
    let t = theta - theta.floor();
    Ok(if t >= 1.0 { 0.0 } else { t })
}

pub(crate) fn coprime_flux(p: u64, q: u64) -> Result<Flux> {
    use num_integer::Integer;
    if q == 0 || p.gcd(&q) != 1 {
        return Err(Error::Domain(format!("flux {p}/{q} is not in lowest terms")));
    }
    Flux::rational(p as i64, q)
}
