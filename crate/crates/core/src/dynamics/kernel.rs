use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::{build_lieb_1d, Boundary, LiebParams};

/// Numerical kernel of the open Lieb truncation.
#[derive(Clone, Debug)]
pub struct ZeroModes {
    pub dimension: usize,
    pub basis: Vec<Vec<Complex64>>,
    /// Largest A-sublattice norm among the basis vectors.
    pub max_a_norm: f64,
    /// Set when some `|eigenvalue|` lies within a factor 10 of `tol`.
    pub warning: Option<String>,
}

/// Eigenvectors of the `3N × 3N` open truncation with `|E| <= tol`.
pub fn zero_mode_kernel(params: &LiebParams, n: usize, tol: f64) -> Result<ZeroModes> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!("kernel tolerance must be > 0, got {tol}")));
    }
    let h = build_lieb_1d(params, n, Boundary::Open)?;
    let eig = h.eigh()?;
    let mut basis = Vec::new();
    let mut max_a_norm = 0.0f64;
    let mut borderline = 0;
    for (j, &e) in eig.values.iter().enumerate() {
        if e.abs() >= tol / 10.0 && e.abs() <= tol * 10.0 {
            borderline += 1;
        }
        if e.abs() <= tol {
            let v = eig.vector(j).to_vec();
            let a = (0..n).map(|m| v[3 * m].norm_sqr()).sum::<f64>().sqrt();
            max_a_norm = max_a_norm.max(a);
            basis.push(v);
        }
    }
    let warning = (borderline > 0).then(|| format!("{borderline} eigenvalues within a factor 10 of tol = {tol}"));
    Ok(ZeroModes { dimension: basis.len(), basis, max_a_norm, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::Flux;

    #[test]
    fn dimension_equals_cell_count() {
        let p = LiebParams::new(Flux::golden(), 0.13, 0.8).unwrap();
        for n in [1, 5, 12] {
            let k = zero_mode_kernel(&p, n, 1e-10).unwrap();
            assert_eq!(k.dimension, n);
            assert!(k.max_a_norm <= 1e-10);
            assert!(k.warning.is_none());
        }
    }

    /// Oracle: kernel dimension = 3N − 2·rank(X) for the A×(B∪C) block X,
    /// with the rank from an SVD.
    #[test]
    fn rank_oracle() {
        let p = LiebParams::new(Flux::silver(), 0.4, 1.3).unwrap();
        let n = 9;
        let h = build_lieb_1d(&p, n, Boundary::Open).unwrap();
        let x = nalgebra::DMatrix::from_fn(n, 2 * n, |i, j| {
            let col = 3 * (j / 2) + 1 + j % 2;
            let z = h.get(3 * i, col);
            nalgebra::Complex::new(z.re, z.im)
        });
        let rank = x.svd(false, false).singular_values.iter().filter(|s| **s > 1e-10).count();
        assert_eq!(zero_mode_kernel(&p, n, 1e-10).unwrap().dimension, 3 * n - 2 * rank);
    }
}
