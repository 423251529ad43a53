use crate::error::{Error, Result};
use crate::operators::{build_lieb_1d, build_lieb_2d_torus, coprime_flux, Boundary, LiebParams};

/// Max distance between the sorted spectrum of the `Lx × Ly` torus and the
/// sorted union over `θ_j = j/Ly` of the periodic 1D spectra with `N = Lx`.
pub fn spectrum_2d_check(p: u64, q: u64, t: f64, lx: usize, ly: usize) -> Result<f64> {
    let torus = build_lieb_2d_torus(p, q, t, lx, ly)?.eigenvalues()?;
    let alpha = coprime_flux(p, q)?;
    let mut union = Vec::with_capacity(3 * lx * ly);
    for j in 0..ly {
        let params = LiebParams::new(alpha.clone(), j as f64 / ly as f64, t)?;
        union.extend(build_lieb_1d(&params, lx, Boundary::periodic())?.eigenvalues()?);
    }
    if union.len() != torus.len() {
        return Err(Error::Structure(format!("spectrum sizes differ: {} vs {}", torus.len(), union.len())));
    }
    union.sort_by(f64::total_cmp);
    Ok(torus.iter().zip(&union).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_flux_square_torus() {
        assert!(spectrum_2d_check(0, 1, 0.7, 2, 2).unwrap() <= 1e-12);
    }

    #[test]
    fn third_flux() {
        assert!(spectrum_2d_check(1, 3, 1.0, 3, 4).unwrap() <= 1e-10);
    }

    #[test]
    fn flat_band_multiplicity() {
        let e = build_lieb_2d_torus(1, 3, 1.0, 3, 2).unwrap().eigenvalues().unwrap();
        assert!(e.iter().filter(|x| x.abs() < 1e-10).count() >= 6);
    }
}
