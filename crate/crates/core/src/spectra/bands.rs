use serde::Serialize;

use crate::error::{Error, Result};

/// Default merge tolerance for band endpoints.
pub const MERGE_TOL: f64 = 1e-10;

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Interval> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Domain(format!("invalid interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lo - tol && x <= self.hi + tol
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Amo,
    Lieb,
    General,
}

impl Model {
    pub fn tag(self) -> &'static str {
        match self {
            Model::Amo => "amo",
            Model::Lieb => "lieb",
            Model::General => "general",
        }
    }

    pub fn parse(s: &str) -> Option<Model> {
        match s {
            "amo" => Some(Model::Amo),
            "lieb" => Some(Model::Lieb),
            "general" => Some(Model::General),
            _ => None,
        }
    }
}

/// What a band set was computed for. `coupling` is `t` for the Lieb model
/// and the AMO coupling `λ` (or `t₄/(t₂t₃)`) otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BandMeta {
    pub model: Model,
    pub p: u64,
    pub q: u64,
    pub coupling: f64,
}

/// Sorted, pairwise disjoint closed intervals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BandSet {
    intervals: Vec<Interval>,
    touching: Vec<f64>,
    meta: BandMeta,
    warnings: Vec<String>,
}

impl BandSet {
    /// Sorts and merges `raw`; intervals closer than `tol` are joined, and a
    /// join across a gap of width `<= tol` (as opposed to an overlap) is
    /// recorded as a touching point.
    pub fn from_intervals(mut raw: Vec<Interval>, tol: f64, meta: BandMeta) -> Result<BandSet> {
        if let Some(bad) = raw.iter().find(|i| !(i.lo.is_finite() && i.hi.is_finite()) || i.lo > i.hi) {
            return Err(Error::Domain(format!("invalid interval [{}, {}]", bad.lo, bad.hi)));
        }
        raw.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
        let mut intervals: Vec<Interval> = Vec::with_capacity(raw.len());
        let mut touching = Vec::new();
        for iv in raw {
            match intervals.last_mut() {
                Some(last) if iv.lo <= last.hi + tol => {
                    if iv.lo >= last.hi - tol && !iv.is_point() && !last.is_point() {
                        touching.push(0.5 * (iv.lo + last.hi));
                    }
                    last.hi = last.hi.max(iv.hi);
                }
                _ => intervals.push(iv),
            }
        }
        Ok(BandSet { intervals, touching, meta, warnings: Vec::new() })
    }

    pub(crate) fn push_warning(&mut self, w: String) {
        self.warnings.push(w);
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Points where two bands meet without overlapping.
    pub fn touching_points(&self) -> &[f64] {
        &self.touching
    }

    pub fn meta(&self) -> &BandMeta {
        &self.meta
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(Interval::width).sum()
    }

    pub fn contains(&self, e: f64, tol: f64) -> bool {
        self.intervals.iter().any(|i| i.contains(e, tol))
    }

    pub fn hull(&self) -> Option<Interval> {
        Some(Interval { lo: self.intervals.first()?.lo, hi: self.intervals.last()?.hi })
    }

    /// Complement of the bands inside `hull`.
    pub fn gaps(&self, hull: Interval) -> Vec<Interval> {
        let mut out = Vec::new();
        let mut cursor = hull.lo;
        for iv in &self.intervals {
            if iv.lo > cursor && cursor < hull.hi {
                out.push(Interval { lo: cursor, hi: iv.lo.min(hull.hi) });
            }
            cursor = cursor.max(iv.hi);
        }
        if cursor < hull.hi {
            out.push(Interval { lo: cursor, hi: hull.hi });
        }
        out
    }

    /// Number of open gaps between the lowest and highest band edge.
    pub fn open_gap_count(&self) -> usize {
        self.intervals.len().saturating_sub(1)
    }

    /// Distance from 0 to the bands with the degenerate interval `[0, 0]` removed.
    pub fn min_abs_energy(&self) -> Option<f64> {
        self.intervals
            .iter()
            .filter(|i| !(i.lo == 0.0 && i.hi == 0.0))
            .map(|i| if i.lo <= 0.0 && i.hi >= 0.0 { 0.0 } else { i.lo.abs().min(i.hi.abs()) })
            .min_by(f64::total_cmp)
    }

    /// Hausdorff distance between the two unions of intervals.
    pub fn hausdorff(&self, other: &BandSet) -> Result<f64> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::Domain("Hausdorff distance of an empty band set".into()));
        }
        Ok(directed(&self.intervals, &other.intervals).max(directed(&other.intervals, &self.intervals)))
    }

    /// True when the set equals its negation up to `tol` in Hausdorff distance.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let neg: Vec<Interval> = self.intervals.iter().rev().map(|i| Interval { lo: -i.hi, hi: -i.lo }).collect();
        !self.is_empty() && directed(&self.intervals, &neg).max(directed(&neg, &self.intervals)) <= tol
    }
}

fn distance_to(set: &[Interval], x: f64) -> f64 {
    set.iter().map(|i| if x < i.lo { i.lo - x } else if x > i.hi { x - i.hi } else { 0.0 }).fold(f64::INFINITY, f64::min)
}

/// `sup_{x ∈ a} dist(x, b)`: attained at endpoints of `a` or at gap midpoints of `b` inside `a`.
fn directed(a: &[Interval], b: &[Interval]) -> f64 {
    let mut worst = 0.0f64;
    for iv in a {
        worst = worst.max(distance_to(b, iv.lo)).max(distance_to(b, iv.hi));
    }
    for w in b.windows(2) {
        let mid = 0.5 * (w[0].hi + w[1].lo);
        if a.iter().any(|iv| iv.contains(mid, 0.0)) {
            worst = worst.max(distance_to(b, mid));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta() -> BandMeta {
        BandMeta { model: Model::Amo, p: 0, q: 1, coupling: 1.0 }
    }

    fn set(v: &[(f64, f64)]) -> BandSet {
        BandSet::from_intervals(v.iter().map(|&(lo, hi)| Interval::new(lo, hi).unwrap()).collect(), MERGE_TOL, meta())
            .unwrap()
    }

    #[test]
    fn measure_example() {
        assert_eq!(set(&[(2.0, 2.5), (0.0, 1.0)]).measure(), 1.5);
    }

    #[test]
    fn merging_and_touching() {
        let b = set(&[(0.0, 1.0), (1.0 + 1e-12, 2.0), (1.5, 3.0), (5.0, 6.0)]);
        assert_eq!(b.len(), 2);
        assert_eq!(b.intervals()[0], Interval { lo: 0.0, hi: 3.0 });
        assert_eq!(b.touching_points().len(), 1);
        assert_eq!(b.open_gap_count(), 1);
    }

    #[test]
    fn gaps_in_hull() {
        let b = set(&[(-4.0, 4.0)]);
        assert!(b.gaps(Interval { lo: -4.0, hi: 4.0 }).is_empty());
        let b = set(&[(-3.0, -1.0), (0.0, 0.0), (1.0, 3.0)]);
        let g = b.gaps(b.hull().unwrap());
        assert_eq!(g, vec![Interval { lo: -1.0, hi: 0.0 }, Interval { lo: 0.0, hi: 1.0 }]);
    }

    #[test]
    fn min_abs_skips_flat_point() {
        let b = set(&[(-2.6, -1.08), (0.0, 0.0), (1.08, 2.6)]);
        assert_eq!(b.min_abs_energy(), Some(1.08));
        assert!(b.is_symmetric(0.0));
        assert_eq!(set(&[(-1.0, 2.0)]).min_abs_energy(), Some(0.0));
    }

    #[test]
    fn hausdorff_sees_gap_interiors() {
        let a = set(&[(0.0, 10.0)]);
        let b = set(&[(0.0, 1.0), (9.0, 10.0)]);
        assert_eq!(a.hausdorff(&b).unwrap(), 4.0);
        assert_eq!(b.hausdorff(&a).unwrap(), 4.0);
        assert_eq!(a.hausdorff(&a).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(Interval::new(1.0, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 0.0).is_err());
    }
}
