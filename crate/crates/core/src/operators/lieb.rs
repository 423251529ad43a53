use num_complex::Complex64;

use super::matrix::{Boundary, HermitianMatrix, SiteLabel, Sublattice};
use super::{check_coupling, check_periodic, cis, coprime_flux, normalized_theta, Orbit};
use crate::arithmetic::{Flux, TorusPoint};
use crate::error::{Error, Result};

/// Flux, phase and C-hopping of the Lieb model.
#[derive(Clone, Debug, PartialEq)]
pub struct LiebParams {
    pub alpha: Flux,
    pub theta: f64,
    pub t: f64,
}

impl LiebParams {
    /// Validates `t > 0` and reduces `θ` into `[0, 1)`.
    pub fn new(alpha: Flux, theta: f64, t: f64) -> Result<Self> {
        check_coupling("t", t)?;
        Ok(LiebParams { alpha, theta: normalized_theta(theta)?, t })
    }

    /// Effective AMO coupling `λ = t⁻²`.
    pub fn lambda(&self) -> f64 {
        self.t.powi(-2)
    }
}

/// `𝒦_m = e^{πimα}(1 + e^{−2πi(θ+mα)})`, the A→B coefficient at cell `m`.
pub fn kappa(alpha: &Flux, theta: f64, m: i64) -> Complex64 {
    orbit_kappa(&Orbit::new(alpha, theta), m)
}

/// Uses `1 + e^{−2πix} = −2 sin(πd) e^{−πix}` with `d = x − 1/2` taken exactly
/// on the torus, so that `𝒦` vanishes exactly when `θ + mα = 1/2`.
pub(crate) fn orbit_kappa(orbit: &Orbit, m: i64) -> Complex64 {
    let x = orbit.phase(m);
    let d = (x - TorusPoint::HALF).signed();
    orbit.gauge(m) * cis(-0.5 * x.to_f64()) * (-2.0 * (std::f64::consts::PI * d).sin())
}

pub(crate) fn site(cell: usize, s: Sublattice) -> usize {
    3 * cell + s.offset()
}

pub(crate) fn lieb_labels(n_cells: usize) -> Vec<SiteLabel> {
    (0..n_cells)
        .flat_map(|cell| {
            [Sublattice::A, Sublattice::B, Sublattice::C].map(|sublattice| SiteLabel { cell, row: 0, sublattice })
        })
        .collect()
}

/// The 1D magnetic Lieb operator on `n_cells` cells (`3·n_cells` sites).
pub fn build_lieb_1d(params: &LiebParams, n_cells: usize, boundary: Boundary) -> Result<HermitianMatrix> {
    if n_cells == 0 {
        return Err(Error::Domain("need at least one cell".into()));
    }
    check_coupling("t", params.t)?;
    check_periodic(&params.alpha, n_cells, boundary)?;
    let orbit = Orbit::new(&params.alpha, params.theta);
    let t = Complex64::new(params.t, 0.0);
    let mut h = HermitianMatrix::zeros(3 * n_cells, boundary);
    for m in 0..n_cells {
        let a = site(m, Sublattice::A);
        h.add_hopping(a, site(m, Sublattice::B), orbit_kappa(&orbit, m as i64));
        h.add_hopping(a, site(m, Sublattice::C), t);
        if m > 0 {
            h.add_hopping(a, site(m - 1, Sublattice::C), t);
        }
    }
    if let Boundary::Periodic { k } = boundary {
        h.add_hopping(site(0, Sublattice::A), site(n_cells - 1, Sublattice::C), t * Complex64::from_polar(1.0, -k));
    }
    Ok(h.with_labels(lieb_labels(n_cells)))
}

/// The `3q × 3q` Bloch matrix of the Lieb operator at `α = p/q`.
pub fn build_lieb_bloch(p: u64, q: u64, t: f64, theta: f64, k: f64) -> Result<HermitianMatrix> {
    let params = LiebParams::new(coprime_flux(p, q)?, theta, t)?;
    build_lieb_1d(&params, q as usize, Boundary::Periodic { k })
}

/// The 2D Lieb operator on an `Lx × Ly` torus at flux `p/q`; requires `q | Lx`.
pub fn build_lieb_2d_torus(p: u64, q: u64, t: f64, lx: usize, ly: usize) -> Result<HermitianMatrix> {
    check_coupling("t", t)?;
    if lx == 0 || ly == 0 {
        return Err(Error::Domain("torus sides must be positive".into()));
    }
    let alpha = coprime_flux(p, q)?;
    check_periodic(&alpha, lx, Boundary::periodic())?;
    let orbit = Orbit::new(&alpha, 0.0);
    let cell = |m: usize, n: usize| (m % lx) * ly + (n % ly);
    let tc = Complex64::new(t, 0.0);
    let mut h = HermitianMatrix::zeros(3 * lx * ly, Boundary::periodic());
    for m in 0..lx {
        let g = orbit.gauge(m as i64);
        for n in 0..ly {
            let a = site(cell(m, n), Sublattice::A);
            h.add_hopping(a, site(cell(m, n), Sublattice::B), g);
            h.add_hopping(a, site(cell(m, n + ly - 1), Sublattice::B), g.conj());
            h.add_hopping(a, site(cell(m, n), Sublattice::C), tc);
            h.add_hopping(a, site(cell(m + lx - 1, n), Sublattice::C), tc);
        }
    }
    let labels = (0..lx)
        .flat_map(|m| (0..ly).map(move |n| (m, n)))
        .flat_map(|(m, n)| {
            [Sublattice::A, Sublattice::B, Sublattice::C].map(|sublattice| SiteLabel { cell: m, row: n, sublattice })
        })
        .collect();
    Ok(h.with_labels(labels))
}

/// `H̃H̃*` for the open `N × 2N` factor `H̃ = [𝒦 | tS]` that maps the
/// B and C amplitudes of cells `0..N` onto the A amplitudes.
pub fn build_factor_product(params: &LiebParams, n: usize) -> Result<HermitianMatrix> {
    if n < 3 {
        return Err(Error::Domain(format!("factor product needs N >= 3, got {n}")));
    }
    check_coupling("t", params.t)?;
    let orbit = Orbit::new(&params.alpha, params.theta);
    let t = Complex64::new(params.t, 0.0);
    // Columns: B_m at m, C_m at N + m.
    let rows: Vec<Vec<(usize, Complex64)>> = (0..n)
        .map(|m| {
            let mut r = vec![(m, orbit_kappa(&orbit, m as i64)), (n + m, t)];
            if m > 0 {
                r.push((n + m - 1, t));
            }
            r
        })
        .collect();
    let mut cols: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); 2 * n];
    for (i, r) in rows.iter().enumerate() {
        for &(c, v) in r {
            cols[c].push((i, v));
        }
    }
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (i, r) in rows.iter().enumerate() {
        for &(c, v) in r {
            for &(j, w) in &cols[c] {
                data[i * n + j] += v * w.conj();
            }
        }
    }
    Ok(HermitianMatrix::from_raw(n, data, Boundary::Open))
}

/// `U M U*` with `U = diag(−1 on A, +1 on B and C)`.
pub fn sign_flip_a(m: &HermitianMatrix) -> Result<HermitianMatrix> {
    let labels = m.labels().ok_or_else(|| Error::Usage("sign flip needs sublattice labels".into()))?;
    let sign: Vec<f64> = labels.iter().map(|l| if l.sublattice == Sublattice::A { -1.0 } else { 1.0 }).collect();
    let n = m.dim();
    let data = (0..n * n).map(|idx| m.get(idx / n, idx % n) * (sign[idx / n] * sign[idx % n])).collect();
    Ok(HermitianMatrix::from_raw(n, data, m.boundary()).with_labels(labels.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn golden(theta: f64, t: f64) -> LiebParams {
        LiebParams::new(Flux::golden(), theta, t).unwrap()
    }

    #[test]
    fn kappa_modulus_matches_cosine() {
        let a = Flux::golden();
        for m in [-7i64, 0, 3, 1000] {
            let x = 0.3 + m as f64 * a.value();
            let expect = 2.0 + 2.0 * (std::f64::consts::TAU * x).cos();
            assert_relative_eq!(kappa(&a, 0.3, m).norm_sqr(), expect, epsilon = 1e-9);
        }
    }

    #[test]
    fn kappa_vanishes_at_half() {
        assert_eq!(kappa(&Flux::golden(), 0.5, 0).norm(), 0.0);
        let k = kappa(&Flux::rational(0, 1).unwrap(), 0.0, 0);
        assert!((k - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn single_cell_spectrum() {
        let h = build_lieb_1d(&golden(0.0, 1.0), 1, Boundary::Open).unwrap();
        let e = h.eigenvalues().unwrap();
        let s5 = 5f64.sqrt();
        for (x, y) in e.iter().zip([-s5, 0.0, s5]) {
            assert_relative_eq!(*x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn open_structure() {
        let h = build_lieb_1d(&golden(0.2, 0.7), 5, Boundary::Open).unwrap();
        assert_eq!(h.dim(), 15);
        assert!(h.is_hermitian());
        assert_eq!(h.get(site(2, Sublattice::A), site(1, Sublattice::C)), Complex64::new(0.7, 0.0));
        assert_eq!(h.get(site(0, Sublattice::A), site(4, Sublattice::C)), Complex64::new(0.0, 0.0));
        assert_eq!(h.get(site(1, Sublattice::B), site(1, Sublattice::C)), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn periodic_requires_divisibility() {
        let p = LiebParams::new(Flux::rational(1, 3).unwrap(), 0.0, 1.0).unwrap();
        assert!(matches!(build_lieb_1d(&p, 4, Boundary::periodic()), Err(Error::Config(_))));
        assert!(build_lieb_1d(&p, 6, Boundary::periodic()).is_ok());
        assert!(matches!(build_lieb_1d(&golden(0.0, 1.0), 6, Boundary::periodic()), Err(Error::Config(_))));
    }

    #[test]
    fn bloch_gamma_point_q1() {
        let h = build_lieb_bloch(0, 1, 1.0, 0.0, 0.0).unwrap();
        let e = h.eigenvalues().unwrap();
        let s8 = 8f64.sqrt();
        for (x, y) in e.iter().zip([-s8, 0.0, s8]) {
            assert_relative_eq!(*x, y, epsilon = 1e-12);
        }
        assert!(matches!(build_lieb_bloch(2, 4, 1.0, 0.0, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn sign_flip_anticommutes() {
        let h = build_lieb_1d(&golden(0.41, 1.3), 6, Boundary::Open).unwrap();
        let f = sign_flip_a(&h).unwrap();
        let n = h.dim();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(f.get(i, j), -h.get(i, j));
            }
        }
    }

    #[test]
    fn torus_accumulates_on_thin_sides() {
        let h = build_lieb_2d_torus(0, 1, 1.0, 1, 1).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(h.get(0, 1), Complex64::new(2.0, 0.0));
        assert_eq!(h.get(0, 2), Complex64::new(2.0, 0.0));
        assert!(matches!(build_lieb_2d_torus(1, 3, 1.0, 4, 2), Err(Error::Config(_))));
    }

    #[test]
    fn factor_product_is_hermitian() {
        let p = build_factor_product(&golden(0.1, 0.8), 10).unwrap();
        assert!(p.is_hermitian());
        assert!(build_factor_product(&golden(0.1, 0.8), 2).is_err());
    }
}
