//! Arbitrary-precision decimal fixed-point numbers.
//!
//! [`BigFloat`] stores `mant / 10^scale` with a `BigInt` mantissa. All
//! series evaluation in this crate follows one discipline: terms are
//! computed exactly as rationals, rounded **once** onto a working scale
//! (requested digits plus guard digits), and accumulated with exact
//! fixed-point addition — so rounding error is bounded by one ulp per term
//! and is absorbed by the guard digits.
//!
//! Only the operations the summation engine needs are provided: exact
//! add/sub, rounded mul/div, integer-rooted square roots, scale changes,
//! magnitude probes, and decimal rendering.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rat::Q;

/// Decimal fixed-point value `mant / 10^scale`.
#[derive(Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    scale: u32,
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// Division rounded half away from zero.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    assert!(!b.is_zero(), "division by zero");
    let (q, r) = (a / b, a % b);
    if (&r * 2i32).abs() >= b.abs() {
        let bump = if (a.is_negative()) == (b.is_negative()) {
            1
        } else {
            -1
        };
        q + bump
    } else {
        q
    }
}

impl BigFloat {
    pub fn zero(scale: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn from_int(v: i64, scale: u32) -> Self {
        BigFloat {
            mant: BigInt::from(v) * pow10(scale),
            scale,
        }
    }

    /// Round an exact rational onto the given scale (≤ 1/2 ulp error).
    pub fn from_q(x: &Q, scale: u32) -> Self {
        BigFloat {
            mant: div_round(&(x.numer() * pow10(scale)), x.denom()),
            scale,
        }
    }

    /// The exact rational this value represents.
    pub fn to_q(&self) -> Q {
        Q::new(self.mant.clone(), pow10(self.scale))
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -self.mant.clone(),
            scale: self.scale,
        }
    }

    /// Re-round onto a different scale.
    pub fn with_scale(&self, scale: u32) -> Self {
        if scale == self.scale {
            return self.clone();
        }
        if scale > self.scale {
            BigFloat {
                mant: &self.mant * pow10(scale - self.scale),
                scale,
            }
        } else {
            BigFloat {
                mant: div_round(&self.mant, &pow10(self.scale - scale)),
                scale,
            }
        }
    }

    fn aligned(&self, rhs: &Self) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(rhs.scale);
        let a = &self.mant * pow10(scale - self.scale);
        let b = &rhs.mant * pow10(scale - rhs.scale);
        (a, b, scale)
    }

    /// Exact addition (result at the larger scale).
    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b, scale) = self.aligned(rhs);
        BigFloat { mant: a + b, scale }
    }

    /// Exact subtraction (result at the larger scale).
    pub fn sub(&self, rhs: &Self) -> Self {
        let (a, b, scale) = self.aligned(rhs);
        BigFloat { mant: a - b, scale }
    }

    /// Rounded multiplication at the larger operand scale.
    pub fn mul(&self, rhs: &Self) -> Self {
        let scale = self.scale.max(rhs.scale);
        let prod = &self.mant * &rhs.mant;
        // prod is at scale self.scale + rhs.scale
        let drop = self.scale + rhs.scale - scale;
        BigFloat {
            mant: div_round(&prod, &pow10(drop)),
            scale,
        }
    }

    /// Rounded division at the larger operand scale.
    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "BigFloat division by zero");
        let scale = self.scale.max(rhs.scale);
        // (a / 10^sa) / (b / 10^sb) = a·10^(scale + sb - sa) / b / 10^scale
        let shift = scale + rhs.scale - self.scale;
        BigFloat {
            mant: div_round(&(&self.mant * pow10(shift)), &rhs.mant),
            scale,
        }
    }

    /// Rounded division by an exact integer.
    pub fn div_int(&self, d: &BigInt) -> Self {
        BigFloat {
            mant: div_round(&self.mant, d),
            scale: self.scale,
        }
    }

    /// Rounded multiplication by an exact rational.
    pub fn mul_q(&self, v: &Q) -> Self {
        BigFloat {
            mant: div_round(&(&self.mant * v.numer()), v.denom()),
            scale: self.scale,
        }
    }

    /// √self at this scale (Newton/floor integer square root, then rounded).
    /// Panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        // sqrt(mant / 10^s) = sqrt(mant · 10^s) / 10^s
        let shifted = &self.mant * pow10(self.scale);
        let root = shifted.sqrt();
        // round: compare remainders of root and root+1
        let r0 = &shifted - &root * &root;
        let next = &root + 1;
        let r1 = (&next * &next) - &shifted;
        let mant = if r1 < r0 { next } else { root };
        BigFloat {
            mant,
            scale: self.scale,
        }
    }

    /// |self| < 10^e, exactly.
    pub fn abs_lt_pow10(&self, e: i64) -> bool {
        // |mant| / 10^scale < 10^e  ⇔  |mant| < 10^(e + scale)
        let shift = e + self.scale as i64;
        if shift < 0 {
            return false; // 10^negative beyond scale resolution: only 0 passes
        }
        self.mant.abs() < pow10(shift as u32)
    }

    /// Approximate magnitude as f64 (for heuristics only, never for bounds).
    pub fn approx_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let digits = self.mant.to_string();
        let neg = digits.starts_with('-');
        let ds = if neg { &digits[1..] } else { &digits[..] };
        let lead: f64 = ds[..ds.len().min(15)].parse().unwrap_or(0.0);
        let exp = ds.len() as i32 - ds.len().min(15) as i32 - self.scale as i32;
        let v = lead * 10f64.powi(exp);
        if neg {
            -v
        } else {
            v
        }
    }

    pub fn cmp_abs(&self, rhs: &Self) -> Ordering {
        let (a, b, _) = self.aligned(rhs);
        a.abs().cmp(&b.abs())
    }

    /// Scientific-notation rendering with the given significant digits:
    /// `"1.202056903159594285399738161511e0"`.
    pub fn to_sci(&self, sig: u32) -> String {
        assert!(sig >= 1);
        if self.mant.is_zero() {
            return "0e0".to_string();
        }
        let neg = self.mant.is_negative();
        let mut ds = self.mant.abs().to_string();
        let mut exp = ds.len() as i64 - 1 - self.scale as i64;
        if ds.len() > sig as usize {
            // round to sig digits
            let keep = BigInt::parse_bytes(ds.as_bytes(), 10).unwrap();
            let rounded = div_round(&keep, &pow10((ds.len() - sig as usize) as u32));
            ds = rounded.to_string();
            if ds.len() > sig as usize {
                // carry overflowed (e.g. 99.96 → 100 at 2 digits)
                ds.truncate(sig as usize);
                exp += 1;
            }
        }
        while ds.len() < sig as usize {
            ds.push('0');
        }
        let (head, tail) = ds.split_at(1);
        let body = if tail.is_empty() {
            head.to_string()
        } else {
            format!("{head}.{tail}")
        };
        format!("{}{}e{}", if neg { "-" } else { "" }, body, exp)
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b, _) = self.aligned(other);
        Some(a.cmp(&b))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(self.scale.min(40).max(1)))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat({} @ {})", self.to_sci(20), self.scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    #[test]
    fn rounding_and_arithmetic() {
        let s = 10;
        let a = BigFloat::from_q(&q(1, 3), s);
        assert_eq!(a.mantissa(), &BigInt::from(3333333333u64));
        let b = BigFloat::from_q(&q(2, 3), s);
        assert_eq!(a.add(&b), BigFloat::from_int(1, s)); // 0.3333333333+0.6666666667
        let c = a.mul(&BigFloat::from_int(3, s));
        assert_eq!(c.mantissa(), &BigInt::from(9999999999u64));
        let d = BigFloat::from_int(1, s).div(&BigFloat::from_int(7, s));
        assert_eq!(d, BigFloat::from_q(&q(1, 7), s));
    }

    #[test]
    fn rounding_is_half_away_from_zero() {
        assert_eq!(BigFloat::from_q(&q(5, 10), 0).mantissa(), &BigInt::from(1));
        assert_eq!(
            BigFloat::from_q(&q(-5, 10), 0).mantissa(),
            &BigInt::from(-1)
        );
        assert_eq!(BigFloat::from_q(&q(4, 10), 0).mantissa(), &BigInt::from(0));
    }

    #[test]
    fn sqrt_of_three() {
        let s = 40;
        let r = BigFloat::from_int(3, s).sqrt();
        // 3 = r² to within 2 ulp at the scale
        let back = r.mul(&r).sub(&BigFloat::from_int(3, s));
        assert!(back.abs_lt_pow10(-(s as i64) + 1));
        // leading digits of √3
        assert!(r.to_sci(20).starts_with("1.7320508075688772935"));
    }

    #[test]
    fn magnitude_probes() {
        let x = BigFloat::from_q(&q(1, 1000), 20);
        assert!(x.abs_lt_pow10(-2));
        assert!(!x.abs_lt_pow10(-3)); // equals 10^-3 exactly, not less
        assert!(x.abs_lt_pow10(0));
        let approx = x.approx_f64();
        assert!((approx - 0.001).abs() < 1e-12);
    }

    #[test]
    fn scientific_rendering() {
        let x = BigFloat::from_q(&q(7, 27), 30);
        assert_eq!(x.to_sci(10), "2.592592593e-1");
        let y = BigFloat::from_q(&q(9995, 100), 10);
        assert_eq!(y.to_sci(3), "1.00e2");
        let z = BigFloat::from_int(-12345, 5);
        assert_eq!(z.to_sci(4), "-1.235e4"); // round half away from zero
        assert_eq!(BigFloat::zero(5).to_sci(8), "0e0");
    }

    #[test]
    fn with_scale_round_trip() {
        let x = BigFloat::from_q(&q(355, 113), 30);
        let down = x.with_scale(8);
        let up = down.with_scale(30);
        assert!(x.sub(&up).abs_lt_pow10(-7));
    }
}
