use super::bands::BandSet;
use crate::error::{Error, Result};

/// Least-squares box-counting dimension with the box counts used for the fit.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionEstimate {
    pub dimension: f64,
    pub counts: Vec<u64>,
    /// RMS residual of the log-log fit.
    pub residual: f64,
}

/// Number of boxes `[iε, (i+1)ε)` meeting the band set.
pub fn box_count(bands: &BandSet, eps: f64) -> u64 {
    let mut count = 0u64;
    let mut last: Option<i64> = None;
    for iv in bands.intervals() {
        let first = (iv.lo / eps).floor() as i64;
        let end = (iv.hi / eps).floor() as i64;
        let start = match last {
            Some(l) if l >= first => l + 1,
            _ => first,
        };
        if end >= start {
            count += (end - start + 1) as u64;
        }
        last = Some(last.map_or(end, |l| l.max(end)));
    }
    count
}

/// Slope of `ln N(ε)` against `ln(1/ε)`. `bands` holds either one band set
/// (used at every scale) or one per scale.
pub fn box_dimension_estimate(bands: &[&BandSet], scales: &[f64]) -> Result<DimensionEstimate> {
    if scales.len() < 4 {
        return Err(Error::Domain(format!("need at least 4 scales, got {}", scales.len())));
    }
    if bands.len() != 1 && bands.len() != scales.len() {
        return Err(Error::Domain(format!("{} band sets for {} scales", bands.len(), scales.len())));
    }
    if let Some(bad) = scales.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
        return Err(Error::Domain(format!("invalid scale {bad}")));
    }
    let counts: Vec<u64> =
        scales.iter().enumerate().map(|(i, &eps)| box_count(bands[if bands.len() == 1 { 0 } else { i }], eps)).collect();
    if counts.contains(&0) {
        return Err(Error::DegenerateFit("a box count is zero".into()));
    }
    let mut distinct = counts.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let mut xs: Vec<f64> = scales.iter().map(|s| -s.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if distinct.len() < 2 || sxx == 0.0 {
        return Err(Error::DegenerateFit("box counts or scales do not vary".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let residual = (xs.iter_mut().zip(&ys).map(|(x, y)| (y - my - slope * (*x - mx)).powi(2)).sum::<f64>() / n).sqrt();
    Ok(DimensionEstimate { dimension: slope, counts, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{BandMeta, Interval, Model, MERGE_TOL};

    fn set(v: &[(f64, f64)]) -> BandSet {
        let meta = BandMeta { model: Model::Amo, p: 0, q: 1, coupling: 1.0 };
        BandSet::from_intervals(v.iter().map(|&(a, b)| Interval::new(a, b).unwrap()).collect(), MERGE_TOL, meta).unwrap()
    }

    #[test]
    fn counts_union_of_boxes() {
        let b = set(&[(0.0, 0.25), (0.375, 0.625), (2.0, 2.0)]);
        assert_eq!(box_count(&b, 0.5), 3);
        assert_eq!(box_count(&b, 0.125), 3 + 3 + 1);
    }

    #[test]
    fn single_interval_has_dimension_one() {
        let b = set(&[(-4.0, 4.0)]);
        let scales: Vec<f64> = (2..=10).map(|k| 2f64.powi(-k)).collect();
        let d = box_dimension_estimate(&[&b], &scales).unwrap();
        assert!((d.dimension - 1.0).abs() < 0.05, "{d:?}");
    }

    #[test]
    fn points_have_dimension_zero() {
        let b = set(&[(0.1, 0.1), (0.7, 0.7)]);
        let scales: Vec<f64> = (2..=8).map(|k| 2f64.powi(-k)).collect();
        assert!(matches!(box_dimension_estimate(&[&b], &scales), Err(Error::DegenerateFit(_))));
    }

    #[test]
    fn too_few_scales() {
        let b = set(&[(0.0, 1.0)]);
        assert!(box_dimension_estimate(&[&b], &[0.1, 0.01, 0.001]).is_err());
    }
}
