use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

const TWO_POW_64: f64 = 18_446_744_073_709_551_616.0;

/// Distance from `x` to the nearest integer.
pub fn torus_norm(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("torus norm of non-finite value {x}")));
    }
    Ok((x - x.round()).abs())
}

/// A point of ℝ/ℤ stored as a 128-bit binary fraction.
///
/// Addition and integer multiples wrap exactly, so orbits `θ + nα` can be
/// followed for large `n` without the cancellation that plagues `f64`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint(pub u128);

impl TorusPoint {
    pub const ZERO: TorusPoint = TorusPoint(0);
    pub const HALF: TorusPoint = TorusPoint(1 << 127);

    /// Exact conversion of the fractional part of a finite `f64`
    /// (exact down to 2⁻¹²⁸; smaller residues are truncated).
    pub fn from_f64(x: f64) -> TorusPoint {
        assert!(x.is_finite(), "non-finite torus coordinate");
        if x < 0.0 {
            return -Self::from_f64(-x);
        }
        let mut f = x - x.floor();
        if f >= 1.0 {
            f = 0.0;
        }
        let scaled = f * TWO_POW_64;
        let hi = scaled.floor();
        let lo = ((scaled - hi) * TWO_POW_64).floor();
        TorusPoint(((hi as u128) << 64) | lo as u128)
    }

    /// Representative in `[0, 1)`.
    pub fn to_f64(self) -> f64 {
        let hi = (self.0 >> 64) as u64 as f64;
        let lo = (self.0 as u64) as f64;
        hi / TWO_POW_64 + lo / (TWO_POW_64 * TWO_POW_64)
    }

    /// Representative in `[-1/2, 1/2)`.
    pub fn signed(self) -> f64 {
        if self.0 >= Self::HALF.0 {
            -TorusPoint(self.0.wrapping_neg()).to_f64()
        } else {
            self.to_f64()
        }
    }

    /// ‖x‖_𝕋 ∈ [0, 1/2].
    pub fn norm(self) -> f64 {
        TorusPoint(self.0.min(self.0.wrapping_neg())).to_f64()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn mul_int(self, n: i64) -> TorusPoint {
        let v = self.0.wrapping_mul(n.unsigned_abs() as u128);
        if n < 0 {
            TorusPoint(v.wrapping_neg())
        } else {
            TorusPoint(v)
        }
    }

    /// One of the two halves of `self`; the other is `half() + 1/2`.
    pub fn half(self) -> TorusPoint {
        TorusPoint(self.0 >> 1)
    }
}

impl Add for TorusPoint {
    type Output = TorusPoint;
    fn add(self, rhs: TorusPoint) -> TorusPoint {
        TorusPoint(self.0.wrapping_add(rhs.0))
    }
}

impl Sub for TorusPoint {
    type Output = TorusPoint;
    fn sub(self, rhs: TorusPoint) -> TorusPoint {
        TorusPoint(self.0.wrapping_sub(rhs.0))
    }
}

impl Neg for TorusPoint {
    type Output = TorusPoint;
    fn neg(self) -> TorusPoint {
        TorusPoint(self.0.wrapping_neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_norm_examples() {
        assert_eq!(torus_norm(0.5).unwrap(), 0.5);
        assert_eq!(torus_norm(1.25).unwrap(), 0.25);
        assert!((torus_norm(-0.3).unwrap() - 0.3).abs() < 1e-16);
        assert!(matches!(torus_norm(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(torus_norm(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn fixed_point_is_exact_for_dyadics() {
        for x in [0.0, 0.5, 0.25, 0.75, 0.1, 0.13, 3.625] {
            let p = TorusPoint::from_f64(x);
            assert_eq!(p.to_f64(), x - x.floor());
            assert_eq!(TorusPoint::from_f64(-x), -p);
        }
        assert!((TorusPoint::from_f64(-0.3).to_f64() - 0.7).abs() < 1e-16);
        assert_eq!(TorusPoint::from_f64(0.5), TorusPoint::HALF);
        assert_eq!(TorusPoint::from_f64(0.75).norm(), 0.25);
    }

    #[test]
    fn wrapping_arithmetic() {
        let a = TorusPoint::from_f64(0.375);
        assert_eq!(a.mul_int(8), TorusPoint::ZERO);
        assert_eq!(a.mul_int(-1), -a);
        assert_eq!((a + a + a).to_f64(), 0.125);
        assert_eq!((a - TorusPoint::HALF).to_f64(), 0.875);
        assert_eq!(TorusPoint::from_f64(0.75).half().to_f64(), 0.375);
        assert_eq!(TorusPoint::from_f64(0.75).signed(), -0.25);
        assert_eq!(TorusPoint::from_f64(0.25).signed(), 0.25);
        assert_eq!(TorusPoint::HALF.signed(), -0.5);
    }
}
