use rayon::prelude::*;

use super::bands::{BandMeta, BandSet, Interval, Model, MERGE_TOL};
use crate::arithmetic::Flux;
use crate::error::{Error, Result};
use crate::operators::{build_amo, check_coupling, coprime_flux, Boundary};

/// `Δ(E)`: trace of the `q`-step AMO transfer product at the reference phase
/// `θ* = 1/(4q)`, where the phase-dependent term `2λ^q cos(2πqθ)` vanishes.
#[derive(Clone, Debug)]
pub struct DiscriminantPoly {
    p: u64,
    q: u64,
    lambda: f64,
    potential: Vec<f64>,
    ln_threshold: f64,
}

/// `Δ(E) = value · e^{ln_scale}` and `Δ'(E) = slope · e^{ln_scale}`.
#[derive(Clone, Copy, Debug)]
pub struct ScaledValue {
    pub value: f64,
    pub slope: f64,
    pub ln_scale: f64,
}

impl DiscriminantPoly {
    pub fn new(p: u64, q: u64, lambda: f64) -> Result<Self> {
        check_coupling("lambda", lambda)?;
        let alpha = coprime_flux(p, q)?;
        let theta = reference_phase(q);
        let potential = crate::operators::amo_potential(&alpha, theta, lambda, q as usize);
        let a = q as f64 * lambda.ln();
        let ln_threshold = std::f64::consts::LN_2 + if a <= 0.0 { a.exp().ln_1p() } else { a + (-a).exp().ln_1p() };
        Ok(DiscriminantPoly { p, q, lambda, potential, ln_threshold })
    }

    pub fn flux(&self) -> (u64, u64) {
        (self.p, self.q)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `ln(2 + 2λ^q)`.
    pub fn ln_threshold(&self) -> f64 {
        self.ln_threshold
    }

    pub fn threshold(&self) -> f64 {
        self.ln_threshold.exp()
    }

    /// Evaluates `Δ` and `Δ'` with per-step renormalisation.
    pub fn eval_scaled(&self, e: f64) -> ScaledValue {
        // M = T_k ⋯ T_0 and its E-derivative, both stored as 2×2 row-major.
        let mut m = [1.0, 0.0, 0.0, 1.0];
        let mut dm = [0.0; 4];
        let mut ln_scale = 0.0;
        for &v in &self.potential {
            let a = e - v;
            // T = [[a, -1], [1, 0]], dT = [[1, 0], [0, 0]].
            let next = [a * m[0] - m[2], a * m[1] - m[3], m[0], m[1]];
            let dnext = [m[0] + a * dm[0] - dm[2], m[1] + a * dm[1] - dm[3], dm[0], dm[1]];
            let s = next.iter().chain(&dnext).fold(0.0f64, |acc, x| acc.max(x.abs()));
            if s > 0.0 && s.is_finite() {
                m = next.map(|x| x / s);
                dm = dnext.map(|x| x / s);
                ln_scale += s.ln();
            } else {
                m = next;
                dm = dnext;
            }
        }
        ScaledValue { value: m[0] + m[3], slope: dm[0] + dm[3], ln_scale }
    }

    /// `Δ(E)` in plain floating point (may overflow for large `q`, `λ`).
    pub fn eval(&self, e: f64) -> f64 {
        let s = self.eval_scaled(e);
        s.value * s.ln_scale.exp()
    }

    /// `Δ(E) − σ(2 + 2λ^q)` in the scale of `eval_scaled(e)`, with its slope.
    fn offset(&self, e: f64, sigma: f64) -> (f64, f64) {
        let s = self.eval_scaled(e);
        let c = (self.ln_threshold - s.ln_scale).min(700.0).exp();
        (s.value - sigma * c, s.slope)
    }

    /// Sign of `σΔ(E) − (2 + 2λ^q)`.
    fn excess(&self, e: f64, sigma: f64) -> f64 {
        sigma * self.offset(e, sigma).0
    }

    /// Solves `Δ(E) = σ(2 + 2λ^q)` on a bracket with a sign change
    /// (safeguarded Newton).
    fn solve_edge(&self, mut a: f64, mut b: f64, sigma: f64) -> Result<f64> {
        let fa = self.excess(a, sigma);
        let fb = self.excess(b, sigma);
        if fa == 0.0 {
            return Ok(a);
        }
        if fb == 0.0 {
            return Ok(b);
        }
        if fa.signum() == fb.signum() {
            return Err(Error::Bracket { lo: a, hi: b, reason: "band-edge equation has no sign change".into() });
        }
        let left_sign = fa.signum();
        let mut x = 0.5 * (a + b);
        let (mut dx_old, mut dx) = (b - a, b - a);
        for _ in 0..400 {
            let (f, df) = self.offset(x, sigma);
            let (f, df) = (sigma * f, sigma * df);
            if f == 0.0 {
                return Ok(x);
            }
            if f.signum() == left_sign {
                a = x;
            } else {
                b = x;
            }
            let newton = x - f / df;
            if !(newton > a && newton < b) || (2.0 * f).abs() > (dx_old * df).abs() {
                dx_old = dx;
                dx = 0.5 * (b - a);
                x = a + dx;
            } else {
                dx_old = dx;
                dx = f / df;
                x = newton;
            }
            if dx.abs() <= 2.0 * f64::EPSILON * x.abs().max(1.0) || b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
                return Ok(x);
            }
        }
        Ok(0.5 * (a + b))
    }

    /// The critical point of `Δ` in the gap `(a, b)` between consecutive roots,
    /// where `σΔ` increases and then decreases.
    fn critical_point(&self, mut a: f64, mut b: f64, sigma: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
                break;
            }
            if sigma * self.eval_scaled(mid).slope > 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    }

    /// Roots of `Δ`: eigenvalues of the Bloch matrix at `θ*` and `k = π/2`.
    fn roots(&self) -> Result<Vec<f64>> {
        let alpha = Flux::rational(self.p as i64, self.q)?;
        let h = build_amo(&alpha, reference_phase(self.q), self.lambda, self.q as usize, Boundary::Periodic {
            k: std::f64::consts::FRAC_PI_2,
        })?;
        h.eigenvalues()
    }

    /// Band edges `[lo_j, hi_j]` for `j = 0..q`; consecutive bands share an
    /// endpoint where their gap is closed.
    pub fn band_edges(&self) -> Result<Vec<Interval>> {
        let q = self.q as usize;
        let z = self.roots()?;
        let mut edges = vec![Interval::point(0.0); q];
        // Outer edges.
        let sigma_lo = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
        let reach = 2.0 + 2.0 * self.lambda;
        edges[0].lo = self.solve_edge(self.expand_bracket(z[0], -1.0, sigma_lo, reach)?, z[0], sigma_lo)?;
        edges[q - 1].hi = self.solve_edge(z[q - 1], self.expand_bracket(z[q - 1], 1.0, 1.0, reach)?, 1.0)?;
        // Inner gaps.
        let inner: Vec<Result<(f64, f64)>> = (0..q - 1)
            .into_par_iter()
            .map(|j| {
                let sigma = if (q - 1 - j).is_multiple_of(2) { 1.0 } else { -1.0 };
                let (a, b) = (z[j], z[j + 1]);
                if q.is_multiple_of(2) && j == q / 2 - 1 {
                    // The central gap at even q is closed, at E = 0.
                    return Ok((0.0, 0.0));
                }
                let x = self.critical_point(a, b, sigma);
                if self.excess(x, sigma) <= 0.0 {
                    return Ok((x, x));
                }
                Ok((self.solve_edge(a, x, sigma)?, self.solve_edge(x, b, sigma)?))
            })
            .collect();
        for (j, r) in inner.into_iter().enumerate() {
            let (hi, lo) = r?;
            edges[j].hi = hi;
            edges[j + 1].lo = lo;
        }
        for e in &mut edges {
            // Exponentially thin bands can come out inverted by one ulp.
            if e.lo > e.hi {
                let mid = 0.5 * (e.lo + e.hi);
                *e = Interval::point(mid);
            }
        }
        Ok(edges)
    }

    fn expand_bracket(&self, root: f64, dir: f64, sigma: f64, reach: f64) -> Result<f64> {
        let mut x = root + dir * (reach + 1.0 + root.abs());
        for _ in 0..60 {
            if self.excess(x, sigma) > 0.0 {
                return Ok(x);
            }
            x = root + 2.0 * (x - root);
        }
        let (lo, hi) = if dir < 0.0 { (x, root) } else { (root, x) };
        Err(Error::Bracket { lo, hi, reason: "outer band edge not bracketed".into() })
    }
}

/// `θ* = 1/(4q)`.
pub fn reference_phase(q: u64) -> f64 {
    0.25 / q as f64
}

/// `σ(H^AMO)` at flux `p/q`: the set `{E : |Δ(E)| ≤ 2 + 2λ^q}` as at most `q` intervals.
pub fn amo_bands_rational(p: u64, q: u64, lambda: f64) -> Result<BandSet> {
    let disc = DiscriminantPoly::new(p, q, lambda)?;
    let edges = disc.band_edges()?;
    BandSet::from_intervals(edges, MERGE_TOL, BandMeta { model: Model::Amo, p, q, coupling: lambda })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Bands as the union of Bloch eigenvalue ranges at θ ∈ {0, 1/(2q)}, k ∈ {0, π}.
    fn oracle(p: u64, q: u64, lambda: f64) -> Vec<(f64, f64)> {
        let n = q as usize;
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for theta in [0.0, 0.5 / q as f64] {
            for k in [0.0, std::f64::consts::PI] {
                let m = nalgebra::DMatrix::from_fn(n, n, |i, j| {
                    let mut z = nalgebra::Complex::new(0.0, 0.0);
                    if i == j {
                        let x = theta + (i as f64) * p as f64 / q as f64;
                        z += 2.0 * lambda * (std::f64::consts::TAU * x).cos();
                    }
                    if (i + 1) % n == j {
                        z += if i == n - 1 { nalgebra::Complex::from_polar(1.0, k) } else { 1.0.into() };
                    }
                    if (j + 1) % n == i {
                        z += if j == n - 1 { nalgebra::Complex::from_polar(1.0, -k) } else { 1.0.into() };
                    }
                    z
                });
                let mut e: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
                e.sort_by(f64::total_cmp);
                for (j, v) in e.into_iter().enumerate() {
                    lo[j] = lo[j].min(v);
                    hi[j] = hi[j].max(v);
                }
            }
        }
        lo.into_iter().zip(hi).collect()
    }

    #[test]
    fn trivial_flux_single_band() {
        let b = amo_bands_rational(0, 1, 1.0).unwrap();
        assert_eq!(b.len(), 1);
        assert_relative_eq!(b.intervals()[0].lo, -4.0, epsilon = 1e-12);
        assert_relative_eq!(b.intervals()[0].hi, 4.0, epsilon = 1e-12);
    }

    #[test]
    fn half_flux_closed_form() {
        let b = amo_bands_rational(1, 2, 1.0).unwrap();
        let s = 8f64.sqrt();
        assert_eq!(b.len(), 1);
        assert_relative_eq!(b.intervals()[0].lo, -s, epsilon = 1e-12);
        assert_relative_eq!(b.intervals()[0].hi, s, epsilon = 1e-12);
        assert_eq!(b.touching_points(), &[0.0]);
        // Δ(E) = E² − 2 − 2λ², so E² ≤ 4 + 4λ².
        let b = amo_bands_rational(1, 2, 2.0).unwrap();
        assert_relative_eq!(b.intervals()[0].hi, 20f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn discriminant_half_flux_polynomial() {
        let d = DiscriminantPoly::new(1, 2, 1.5).unwrap();
        for e in [-3.0, 0.2, 1.7] {
            assert_relative_eq!(d.eval(e), e * e - 2.0 - 2.0 * 1.5 * 1.5, epsilon = 1e-12);
        }
        assert_relative_eq!(d.threshold(), 2.0 + 2.0 * 1.5f64.powi(2), epsilon = 1e-12);
    }

    #[test]
    fn matches_bloch_oracle() {
        for &(p, q, lambda) in &[(1, 3, 4.0), (2, 5, 1.0 / 0.64), (3, 7, 0.7), (5, 8, 1.0), (4, 9, 2.5)] {
            let got = amo_bands_rational(p, q, lambda).unwrap();
            let raw = oracle(p, q, lambda).into_iter().map(|(a, b)| Interval::new(a, b).unwrap()).collect();
            let want = BandSet::from_intervals(raw, MERGE_TOL, *got.meta()).unwrap();
            assert_eq!(got.len(), want.len(), "{p}/{q}");
            assert!(got.hausdorff(&want).unwrap() < 1e-9, "{p}/{q}: {}", got.hausdorff(&want).unwrap());
        }
    }

    #[test]
    fn large_q_extreme_couplings_stay_finite() {
        for lambda in [0.2, 1.0, 5.0] {
            let b = amo_bands_rational(89, 144, lambda).unwrap();
            assert!(b.measure() > 0.0);
            let reach = 2.0 + 2.0 * lambda;
            assert!(b.hull().unwrap().hi < reach);
            if lambda == 1.0 {
                assert_eq!(b.len(), 143);
            }
        }
        // Duality: σ(λ) = λ σ(1/λ).
        let weak = amo_bands_rational(89, 144, 0.2).unwrap().measure();
        let strong = amo_bands_rational(89, 144, 5.0).unwrap().measure();
        assert_relative_eq!(strong, 5.0 * weak, max_relative = 1e-7);
    }
}
