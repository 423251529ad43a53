use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{ContinuedFraction, TorusPoint};
use crate::error::{Error, Result};

/// Magnetic flux per unit cell in units of 2π.
#[derive(Clone, Debug, PartialEq)]
pub enum Flux {
    /// `p/q` with `0 <= p < q` and `gcd(p, q) = 1`.
    Rational { p: u64, q: u64 },
    /// An irrational in `(0, 1)` given by its continued fraction.
    Irrational(ContinuedFraction),
}

impl Flux {
    /// Reduces `p/q` modulo 1 and to lowest terms.
    pub fn rational(p: i64, q: u64) -> Result<Flux> {
        if q == 0 {
            return Err(Error::Domain("flux denominator must be positive".into()));
        }
        let p = p.rem_euclid(q as i64) as u64;
        let g = p.gcd(&q).max(1);
        Ok(Flux::Rational { p: p / g, q: q / g })
    }

    pub fn irrational(cf: ContinuedFraction) -> Result<Flux> {
        if cf.a0() != 0 || cf.fraction().is_zero() {
            return Err(Error::Domain(format!(
                "irrational flux must lie in (0, 1); got a0 = {}",
                cf.a0()
            )));
        }
        Ok(Flux::Irrational(cf))
    }

    pub fn golden() -> Flux {
        Flux::Irrational(ContinuedFraction::golden())
    }

    pub fn silver() -> Flux {
        Flux::Irrational(ContinuedFraction::silver())
    }

    pub fn e_minus_2() -> Flux {
        Flux::Irrational(ContinuedFraction::e_minus_2())
    }

    /// Named shortcuts `golden`, `silver`, `e2`.
    pub fn named(name: &str) -> Option<Flux> {
        match name {
            "golden" => Some(Flux::golden()),
            "silver" => Some(Flux::silver()),
            "e2" => Some(Flux::e_minus_2()),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Flux::Rational { .. })
    }

    pub fn as_rational(&self) -> Option<(u64, u64)> {
        match *self {
            Flux::Rational { p, q } => Some((p, q)),
            Flux::Irrational(_) => None,
        }
    }

    pub fn continued_fraction(&self) -> Option<&ContinuedFraction> {
        match self {
            Flux::Irrational(cf) => Some(cf),
            Flux::Rational { .. } => None,
        }
    }

    /// α mod 1 in 128-bit fixed point.
    pub fn point(&self) -> TorusPoint {
        match *self {
            Flux::Rational { p, q } => {
                let scaled: BigUint = (BigUint::from(p) << 128u32) / BigUint::from(q);
                TorusPoint(scaled.to_u128().expect("p < q"))
            }
            Flux::Irrational(ref cf) => cf.fraction(),
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            Flux::Rational { p, q } => p as f64 / q as f64,
            Flux::Irrational(ref cf) => cf.value(),
        }
    }

    /// Short description used in reports: `p/q` or the expansion label.
    pub fn label(&self) -> String {
        match self {
            Flux::Rational { p, q } => format!("{p}/{q}"),
            Flux::Irrational(cf) => cf.label().to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced() {
        assert_eq!(Flux::rational(2, 4).unwrap(), Flux::Rational { p: 1, q: 2 });
        assert_eq!(Flux::rational(7, 5).unwrap(), Flux::Rational { p: 2, q: 5 });
        assert_eq!(Flux::rational(-1, 3).unwrap(), Flux::Rational { p: 2, q: 3 });
        assert_eq!(Flux::rational(0, 7).unwrap(), Flux::Rational { p: 0, q: 1 });
        assert!(Flux::rational(1, 0).is_err());
    }

    #[test]
    fn rational_point_is_periodic_to_rounding() {
        let f = Flux::rational(2, 7).unwrap();
        let x = f.point().mul_int(7);
        assert!(x.norm() < 1e-30);
        assert!((f.point().to_f64() - 2.0 / 7.0).abs() < 1e-17);
    }

    #[test]
    fn named_fluxes() {
        assert!((Flux::named("golden").unwrap().value() - 0.6180339887498949).abs() < 1e-16);
        assert!((Flux::named("silver").unwrap().value() - 0.41421356237309503).abs() < 1e-16);
        assert!(Flux::named("pi").is_none());
        assert_eq!(Flux::golden().label(), "golden");
    }
}
