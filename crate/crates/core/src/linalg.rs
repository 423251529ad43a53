//! Dense Hermitian eigensolvers backed by faer.
//!
//! Matrices whose hopping graph admits a diagonal unitary gauge making every
//! entry real (trees, and cycles with trivial flux) are solved as real
//! symmetric problems, which is roughly three times faster.

use std::collections::VecDeque;

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::HermitianMatrix;

/// Eigen-decomposition with ascending eigenvalues and orthonormal columns.
#[derive(Clone, Debug)]
pub struct Eigh {
    pub values: Vec<f64>,
    dim: usize,
    vectors: Vec<Complex64>,
}

impl Eigh {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The `j`-th eigenvector.
    pub fn vector(&self, j: usize) -> &[Complex64] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }
}

pub fn eigenvalues(m: &HermitianMatrix) -> Result<Vec<f64>> {
    check(m)?;
    let mut values = match real_gauge(m) {
        Some((_, r)) => r.self_adjoint_eigenvalues(Side::Lower).map_err(evd_err)?,
        None => complex_mat(m).self_adjoint_eigenvalues(Side::Lower).map_err(evd_err)?,
    };
    values.sort_by(f64::total_cmp);
    Ok(values)
}

pub fn eigh(m: &HermitianMatrix) -> Result<Eigh> {
    check(m)?;
    let n = m.dim();
    let (values, vectors) = match real_gauge(m) {
        Some((d, r)) => {
            let evd = r.self_adjoint_eigen(Side::Lower).map_err(evd_err)?;
            let s = evd.S().column_vector();
            let u = evd.U();
            let values: Vec<f64> = (0..n).map(|j| s[j]).collect();
            let vectors = (0..n).flat_map(|j| (0..n).map(move |i| (j, i))).map(|(j, i)| d[i] * u[(i, j)]).collect();
            (values, vectors)
        }
        None => {
            let evd = complex_mat(m).self_adjoint_eigen(Side::Lower).map_err(evd_err)?;
            let s = evd.S().column_vector();
            let u = evd.U();
            let values: Vec<f64> = (0..n).map(|j| s[j].re).collect();
            let vectors = (0..n).flat_map(|j| (0..n).map(move |i| (j, i))).map(|(j, i)| u[(i, j)]).collect();
            (values, vectors)
        }
    };
    Ok(Eigh { values, dim: n, vectors })
}

fn check(m: &HermitianMatrix) -> Result<()> {
    if m.dim() == 0 {
        return Err(Error::Structure("empty matrix".into()));
    }
    if !m.row(0).iter().chain((1..m.dim()).flat_map(|i| m.row(i))).all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Numerical("matrix has non-finite entries".into()));
    }
    Ok(())
}

fn evd_err<E: std::fmt::Debug>(e: E) -> Error {
    Error::Numerical(format!("eigensolver failed: {e:?}"))
}

fn complex_mat(m: &HermitianMatrix) -> Mat<faer::c64> {
    Mat::from_fn(m.dim(), m.dim(), |i, j| m.get(i, j))
}

/// Finds unimodular `d` with `conj(d_i) M_ij d_j` real for every entry and
/// returns `d` together with that real matrix.
fn real_gauge(m: &HermitianMatrix) -> Option<(Vec<Complex64>, Mat<f64>)> {
    let n = m.dim();
    let one = Complex64::new(1.0, 0.0);
    let mut d: Vec<Option<Complex64>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(one);
        queue.push_back(root);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for (j, &z) in m.row(i).iter().enumerate() {
                if j != i && d[j].is_none() && z != Complex64::new(0.0, 0.0) {
                    // conj(d_i) z d_j real and positive ⇒ d_j = d_i conj(z)/|z|.
                    d[j] = Some(di * z.conj() / z.norm());
                    queue.push_back(j);
                }
            }
        }
    }
    let d: Vec<Complex64> = d.into_iter().map(Option::unwrap).collect();
    let mut r = Mat::<f64>::zeros(n, n);
    for i in 0..n {
        for (j, &z) in m.row(i).iter().enumerate() {
            if z == Complex64::new(0.0, 0.0) {
                continue;
            }
            let w = d[i].conj() * z * d[j];
            if w.im.abs() > 1e-13 * z.norm() {
                return None;
            }
            r[(i, j)] = w.re;
        }
    }
    Some((d, r))
}
