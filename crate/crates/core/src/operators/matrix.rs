use std::io::{BufRead, Write};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::g17;
use crate::linalg::{self, Eigh};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sublattice {
    A,
    B,
    C,
}

impl Sublattice {
    pub fn offset(self) -> usize {
        match self {
            Sublattice::A => 0,
            Sublattice::B => 1,
            Sublattice::C => 2,
        }
    }
}

/// Position of a site: cell index along the magnetic direction, row index
/// (always 0 for 1D operators), and sublattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SiteLabel {
    pub cell: usize,
    pub row: usize,
    pub sublattice: Sublattice,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Boundary {
    /// Principal submatrix of the infinite operator (Dirichlet truncation).
    Open,
    /// Bloch condition `u_{m+N} = e^{ik} u_m`.
    Periodic { k: f64 },
}

impl Boundary {
    pub fn periodic() -> Boundary {
        Boundary::Periodic { k: 0.0 }
    }

    pub fn tag(&self) -> String {
        match self {
            Boundary::Open => "open".into(),
            Boundary::Periodic { k } => format!("periodic(k={})", g17(*k)),
        }
    }

    fn parse(tag: &str) -> Option<Boundary> {
        if tag == "open" {
            return Some(Boundary::Open);
        }
        let k = tag.strip_prefix("periodic(k=")?.strip_suffix(')')?;
        Some(Boundary::Periodic { k: k.parse().ok()? })
    }
}

/// Dense complex Hermitian matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
    labels: Option<Vec<SiteLabel>>,
    boundary: Boundary,
}

impl HermitianMatrix {
    pub(crate) fn zeros(dim: usize, boundary: Boundary) -> Self {
        HermitianMatrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim], labels: None, boundary }
    }

    pub(crate) fn with_labels(mut self, labels: Vec<SiteLabel>) -> Self {
        debug_assert_eq!(labels.len(), self.dim);
        self.labels = Some(labels);
        self
    }

    /// Adds `v` at `(i, j)` and `conj(v)` at `(j, i)`. A self-loop (`i == j`,
    /// which arises when a boundary wraps onto the same site) contributes
    /// `2 Re v` on the diagonal.
    pub(crate) fn add_hopping(&mut self, i: usize, j: usize, v: Complex64) {
        if i == j {
            self.data[i * self.dim + i] += Complex64::new(2.0 * v.re, 0.0);
        } else {
            self.data[i * self.dim + j] += v;
            self.data[j * self.dim + i] += v.conj();
        }
    }

    pub(crate) fn add_onsite(&mut self, i: usize, v: f64) {
        self.data[i * self.dim + i] += Complex64::new(v, 0.0);
    }

    /// Builds a matrix from a full row-major buffer; the caller guarantees
    /// Hermiticity up to rounding.
    pub(crate) fn from_raw(dim: usize, data: Vec<Complex64>, boundary: Boundary) -> Self {
        assert_eq!(data.len(), dim * dim);
        HermitianMatrix { dim, data, labels: None, boundary }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn labels(&self) -> Option<&[SiteLabel]> {
        self.labels.as_deref()
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `max |M_ij − conj(M_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= 1e-14 * self.max_abs().max(1.0)
    }

    /// Entrywise `max |self − other|`.
    pub fn max_abs_diff(&self, other: &HermitianMatrix) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::Structure(format!("dimension {} vs {}", self.dim, other.dim)));
        }
        Ok(self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        linalg::eigenvalues(self)
    }

    pub fn eigh(&self) -> Result<Eigh> {
        linalg::eigh(self)
    }

    /// Writes the `# lieb-matrix v1` triplet dump (nonzero entries only).
    pub fn write_dump<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# lieb-matrix v1 n={} boundary={}", self.dim, self.boundary.tag())?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let z = self.get(i, j);
                if z.re != 0.0 || z.im != 0.0 {
                    writeln!(w, "{i} {j} {} {}", g17(z.re), g17(z.im))?;
                }
            }
        }
        Ok(())
    }

    /// Parses a `# lieb-matrix v1` dump. Site labels are not part of the format.
    pub fn read_dump<R: BufRead>(r: R) -> Result<HermitianMatrix> {
        let mut lines = r.lines();
        let header = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })??;
        let bad_header = || Error::Parse { line: 1, msg: format!("bad header {header:?}") };
        let rest = header.strip_prefix("# lieb-matrix v1 ").ok_or_else(bad_header)?;
        let (n_part, b_part) = rest.split_once(' ').ok_or_else(bad_header)?;
        let dim: usize = n_part.strip_prefix("n=").and_then(|s| s.parse().ok()).ok_or_else(bad_header)?;
        let boundary = b_part.strip_prefix("boundary=").and_then(Boundary::parse).ok_or_else(bad_header)?;
        let mut m = HermitianMatrix::zeros(dim, boundary);
        for (idx, line) in lines.enumerate() {
            let line = line?;
            let lineno = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: &str| Error::Parse { line: lineno, msg: msg.into() };
            if fields.len() != 4 {
                return Err(parse_err("expected `i j re im`"));
            }
            let i: usize = fields[0].parse().map_err(|_| parse_err("bad row index"))?;
            let j: usize = fields[1].parse().map_err(|_| parse_err("bad column index"))?;
            let re: f64 = fields[2].parse().map_err(|_| parse_err("bad real part"))?;
            let im: f64 = fields[3].parse().map_err(|_| parse_err("bad imaginary part"))?;
            if i >= dim || j >= dim {
                return Err(parse_err("index out of range"));
            }
            m.data[i * dim + j] = Complex64::new(re, im);
        }
        Ok(m)
    }
}
