use num_bigint::{BigInt, BigUint};
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use super::{Flux, TorusPoint};
use crate::error::{Error, Result};

/// Largest product `q_k q_{k+1}` trusted when expanding an `f64`.
const F64_HORIZON: f64 = 17_592_186_044_416.0; // 2^44
/// Denominator size at which named constants stop being expanded.
const NAMED_DENOMINATOR_BITS: u64 = 72;

/// A (truncated) simple continued fraction `a0 + 1/(a1 + 1/(a2 + ...))`
/// together with its convergents `p_k/q_k` and a 128-bit value.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuedFraction {
    a0: i64,
    quotients: Vec<BigUint>,
    numerators: Vec<BigInt>,
    denominators: Vec<BigUint>,
    fraction: TorusPoint,
    truncated: bool,
    label: String,
}

impl ContinuedFraction {
    /// Builds the expansion from explicit partial quotients `a1, a2, ...`.
    /// The value is taken from the deepest convergent.
    pub fn from_quotients(a0: i64, quotients: Vec<BigUint>, label: impl Into<String>) -> Result<Self> {
        if quotients.is_empty() {
            return Err(Error::Domain("continued fraction needs at least one partial quotient".into()));
        }
        if let Some(i) = quotients.iter().position(|a| a.is_zero()) {
            return Err(Error::Domain(format!("partial quotient a{} must be >= 1", i + 1)));
        }
        let mut cf = ContinuedFraction {
            a0,
            quotients: Vec::new(),
            numerators: vec![BigInt::from(a0)],
            denominators: vec![BigUint::one()],
            fraction: TorusPoint::ZERO,
            truncated: false,
            label: label.into(),
        };
        for a in quotients {
            cf.push(a);
        }
        cf.fraction = fraction_of(cf.numerators.last().unwrap(), cf.denominators.last().unwrap());
        Ok(cf)
    }

    fn from_small(quotients: impl IntoIterator<Item = u64>, label: &str) -> Self {
        let qs = quotients.into_iter().map(BigUint::from).collect();
        Self::from_quotients(0, qs, label).expect("positive quotients")
    }

    fn push(&mut self, a: BigUint) {
        let k = self.quotients.len();
        let (p_prev2, q_prev2) = if k == 0 {
            (BigInt::one(), BigUint::zero())
        } else {
            (self.numerators[k - 1].clone(), self.denominators[k - 1].clone())
        };
        let p = BigInt::from(a.clone()) * &self.numerators[k] + p_prev2;
        let q = &a * &self.denominators[k] + q_prev2;
        self.quotients.push(a);
        self.numerators.push(p);
        self.denominators.push(q);
    }

    /// Expands partial quotients generated by `next` until the denominator
    /// exceeds 2^72, which pins the value to the full 128-bit resolution.
    fn named(label: &str, mut next: impl FnMut(usize) -> u64) -> Self {
        let mut quotients = Vec::new();
        let (mut q_prev, mut q) = (0u128, 1u128);
        while (q as f64).log2() < NAMED_DENOMINATOR_BITS as f64 + 1.0 {
            let a = next(quotients.len() + 1);
            quotients.push(a);
            let q_next = a as u128 * q + q_prev;
            q_prev = q;
            q = q_next;
        }
        Self::from_small(quotients, label)
    }

    /// (√5 − 1)/2 = [0; 1, 1, 1, ...].
    pub fn golden() -> Self {
        Self::named("golden", |_| 1)
    }

    /// √2 − 1 = [0; 2, 2, 2, ...].
    pub fn silver() -> Self {
        Self::named("silver", |_| 2)
    }

    /// e − 2 = [0; 1, 2, 1, 1, 4, 1, 1, 6, ...].
    pub fn e_minus_2() -> Self {
        Self::named("e2", |i| if i % 3 == 2 { 2 * (i as u64 + 1) / 3 } else { 1 })
    }

    /// Liouville-type expansion with `a1 = 1` and `a_{k+1} = round(exp(rate q_k))`,
    /// so that `ln q_{k+1} / q_k → rate`. Growth is super-exponential: the
    /// expansion stops (and is flagged truncated) as soon as `exp(rate q_k)`
    /// leaves the `f64` range, or at `max_depth` quotients.
    pub fn liouville(rate: f64, max_depth: usize) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) || max_depth == 0 {
            return Err(Error::Domain(format!("liouville construction needs rate > 0 and depth >= 1, got {rate}, {max_depth}")));
        }
        let mut cf = Self::from_quotients(0, vec![BigUint::one()], format!("liouville({rate})"))?;
        while cf.depth() < max_depth {
            let q = cf.denominators.last().unwrap().to_f64().unwrap_or(f64::INFINITY);
            let a = (rate * q).exp().round();
            match BigUint::from_f64(a) {
                Some(a) if !a.is_zero() => cf.push(a),
                _ => {
                    cf.truncated = true;
                    break;
                }
            }
        }
        cf.fraction = fraction_of(cf.numerators.last().unwrap(), cf.denominators.last().unwrap());
        Ok(cf)
    }

    pub fn a0(&self) -> i64 {
        self.a0
    }

    /// Number of stored partial quotients `a1..=a_depth`.
    pub fn depth(&self) -> usize {
        self.quotients.len()
    }

    pub fn quotients(&self) -> &[BigUint] {
        &self.quotients
    }

    /// `(p_k, q_k)` for `0 <= k <= depth`.
    pub fn convergent(&self, k: usize) -> Option<(&BigInt, &BigUint)> {
        Some((self.numerators.get(k)?, self.denominators.get(k)?))
    }

    pub fn denominators(&self) -> &[BigUint] {
        &self.denominators
    }

    /// Natural logarithm of `q_k`, valid far beyond the `f64` range.
    pub fn ln_denominator(&self, k: usize) -> f64 {
        ln_big(&self.denominators[k])
    }

    /// `q_k` as a float (saturates to infinity).
    pub fn denominator_f64(&self, k: usize) -> f64 {
        self.denominators[k].to_f64().unwrap_or(f64::INFINITY)
    }

    /// True when the expansion stopped early because precision ran out.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Fractional part of the value in 128-bit fixed point.
    pub fn fraction(&self) -> TorusPoint {
        self.fraction
    }

    pub fn value(&self) -> f64 {
        self.a0 as f64 + self.fraction.to_f64()
    }
}

/// ⌊frac(p/q) · 2^128⌋.
fn fraction_of(p: &BigInt, q: &BigUint) -> TorusPoint {
    let q_int = BigInt::from(q.clone());
    let mut r = p % &q_int;
    if r.sign() == num_bigint::Sign::Minus {
        r += &q_int;
    }
    let r = r.to_biguint().expect("non-negative remainder");
    let scaled: BigUint = (r << 128u32) / q;
    TorusPoint(scaled.to_u128().unwrap_or(u128::MAX))
}

pub(crate) fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Continued-fraction expansion of `x ∈ (0, 1)` to at most `depth` quotients.
///
/// The `f64` input is expanded exactly (it is a dyadic rational) but only the
/// quotients inside the precision horizon `q_k q_{k+1} <= 2^44` are kept; an
/// expansion cut by the horizon is flagged [`ContinuedFraction::truncated`].
/// Inputs that agree with a convergent of modest denominator to within a few
/// ulps are reported as [`Flux::Rational`] instead.
pub fn cf_expand(x: f64, depth: usize) -> Result<Flux> {
    if !x.is_finite() || x <= 0.0 || x >= 1.0 {
        return Err(Error::Domain(format!("cf_expand needs x in (0, 1), got {x}")));
    }
    if depth == 0 {
        return Err(Error::Domain("cf_expand needs depth >= 1".into()));
    }
    // x = mantissa / 2^shift exactly.
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let (mantissa, shift) = if exp == 0 {
        (bits & ((1 << 52) - 1), 1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), 1075 - exp)
    };
    let mut num = BigUint::from(mantissa);
    let mut den = BigUint::one() << shift as u32;

    let mut quotients: Vec<BigUint> = Vec::new();
    let (mut q_prev, mut q) = (0.0f64, 1.0f64);
    let (mut p_prev, mut p) = (1.0f64, 0.0f64);
    let mut truncated = false;
    while quotients.len() < depth {
        if num.is_zero() {
            break;
        }
        let a = &den / &num;
        let rem = &den % &num;
        let a_f = a.to_f64().unwrap_or(f64::INFINITY);
        let q_next = a_f * q + q_prev;
        if q * q_next > F64_HORIZON {
            truncated = true;
            break;
        }
        let p_next = a_f * p + p_prev;
        quotients.push(a);
        (q_prev, q) = (q, q_next);
        (p_prev, p) = (p, p_next);
        den = std::mem::replace(&mut num, rem);

        if q <= 4_194_304.0 && (p / q - x).abs() <= 4.0 * f64::EPSILON * x {
            return Flux::rational(p as i64, q as u64);
        }
    }
    let mut cf = ContinuedFraction::from_quotients(0, quotients, format!("cf({x})"))?;
    cf.fraction = TorusPoint::from_f64(x);
    cf.truncated = truncated;
    Flux::irrational(cf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn small(cf: &ContinuedFraction) -> Vec<u64> {
        cf.quotients().iter().map_while(|a| a.to_u64()).collect()
    }

    fn check_recurrence(cf: &ContinuedFraction) {
        for k in 0..=cf.depth() {
            let (p, q) = cf.convergent(k).unwrap();
            assert!(p.magnitude().gcd(q).is_one(), "gcd(p_{k}, q_{k}) != 1");
            if k >= 2 {
                let a = &cf.quotients()[k - 1];
                assert_eq!(*q, a * &cf.denominators()[k - 1] + &cf.denominators()[k - 2]);
            }
        }
    }

    #[test]
    fn golden_mean_expansion() {
        let x = (5f64.sqrt() - 1.0) / 2.0;
        let Flux::Irrational(cf) = cf_expand(x, 10).unwrap() else { panic!("rational") };
        assert_eq!(small(&cf), vec![1; 10]);
        check_recurrence(&cf);
    }

    #[test]
    fn one_third_is_rational() {
        match cf_expand(1.0 / 3.0, 10).unwrap() {
            Flux::Rational { p, q } => assert_eq!((p, q), (1, 3)),
            other => panic!("expected rational, got {other:?}"),
        }
    }

    #[test]
    fn e_minus_two_expansion() {
        let x = std::f64::consts::E - 2.0;
        let Flux::Irrational(cf) = cf_expand(x, 9).unwrap() else { panic!("rational") };
        assert_eq!(small(&cf), vec![1, 2, 1, 1, 4, 1, 1, 6, 1]);
        // Named constant follows the same pattern.
        assert_eq!(small(&ContinuedFraction::e_minus_2())[..9], [1, 2, 1, 1, 4, 1, 1, 6, 1]);
    }

    #[test]
    fn horizon_truncates_deep_requests() {
        let Flux::Irrational(cf) = cf_expand(2f64.sqrt() - 1.0, 200).unwrap() else { panic!() };
        assert!(cf.truncated());
        assert!(cf.depth() < 40);
        let d = cf.depth();
        assert!(cf.denominator_f64(d) * cf.denominator_f64(d - 1) <= F64_HORIZON);
    }

    #[test]
    fn named_constants_carry_full_precision() {
        let g = ContinuedFraction::golden();
        check_recurrence(&g);
        assert!((g.value() - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-16);
        assert!(g.denominators().last().unwrap().bits() > 72);
        let s = ContinuedFraction::silver();
        assert!((s.value() - (2f64.sqrt() - 1.0)).abs() < 2.5e-16);
        let e = ContinuedFraction::e_minus_2();
        assert!((e.value() - (std::f64::consts::E - 2.0)).abs() < 5e-16);
        // |α − p_k/q_k| < 1/(q_k q_{k+1}) at shallow depth, in f64.
        for k in 0..20 {
            let (p, q) = g.convergent(k).unwrap();
            let approx = p.to_f64().unwrap() / q.to_f64().unwrap();
            let bound = 1.0 / (g.denominator_f64(k) * g.denominator_f64(k + 1));
            assert!((g.value() - approx).abs() < bound);
        }
    }

    #[test]
    fn liouville_rates() {
        let cf = ContinuedFraction::liouville(3.0, 10).unwrap();
        assert!(cf.truncated());
        assert_eq!(cf.depth(), 3);
        assert_eq!(small(&cf)[..2], [1, 20]);
        check_recurrence(&cf);
        let cf1 = ContinuedFraction::liouville(1.0, 10).unwrap();
        assert_eq!(cf1.depth(), 4);
        assert_eq!(small(&cf1)[..3], [1, 3, 55]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cf_expand(0.0, 3).is_err());
        assert!(cf_expand(1.5, 3).is_err());
        assert!(cf_expand(f64::NAN, 3).is_err());
        assert!(cf_expand(0.3, 0).is_err());
        assert!(ContinuedFraction::from_quotients(0, vec![BigUint::zero()], "x").is_err());
    }
}
