//! Exact rational scalars.
//!
//! `Q` is an arbitrary-precision rational, always reduced, with positive
//! denominator (both guaranteed by the underlying implementation). This
//! module adds the small constructors, parsers, and formatters the rest of
//! the crate leans on:
//!
//! - [`q`] / [`qi`]: literal-style constructors
//! - [`parse_q`]: parse `"p/q"` or `"p"` (used by the CLI and JSON layers)
//! - [`fmt_q`]: canonical `"p/q"` (or `"p"` when the denominator is 1)

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, reduced, denominator > 0.
pub type Q = BigRational;

/// Rational from a numerator/denominator pair of machine integers.
pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parse `"p/q"` or `"p"` into a rational (whitespace-trimmed).
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational numerator: {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad rational denominator: {den:?}")))?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

/// Canonical string form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// True iff `x` is an integer.
pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Rising factorial `(x)_n = x(x+1)⋯(x+n−1)`; `(x)_0 = 1`.
pub fn poch(x: &Q, n: u64) -> Q {
    let mut acc = Q::one();
    let mut v = x.clone();
    for _ in 0..n {
        acc *= &v;
        v += Q::one();
    }
    acc
}

/// True iff `x` is a nonnegative integer.
pub fn is_nonneg_integer(x: &Q) -> bool {
    is_integer(x) && !x.is_negative()
}

/// Extract `x` as a machine integer if it is one and fits.
pub fn as_i64(x: &Q) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    let n = x.numer();
    i64::try_from(n).ok()
}

/// `x^e` for signed machine exponents (errors on `0^negative`).
pub fn q_pow(x: &Q, e: i64) -> Result<Q> {
    if x.is_zero() && e < 0 {
        return Err(Error::Pole("0 raised to a negative power".into()));
    }
    if e >= 0 {
        Ok(num_traits::pow::pow(x.clone(), e as usize))
    } else {
        Ok(num_traits::pow::pow(x.clone(), (-e) as usize).recip())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/2", "-16/27", "0", "7", "-1"] {
            let v = parse_q(s).unwrap();
            assert_eq!(fmt_q(&v), s);
        }
        // Non-canonical inputs reduce.
        assert_eq!(fmt_q(&parse_q("4/6").unwrap()), "2/3");
        assert_eq!(fmt_q(&parse_q("-1024/1728").unwrap()), "-16/27");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_q("a/b").is_err());
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(q_pow(&q(2, 3), 3).unwrap(), q(8, 27));
        assert_eq!(q_pow(&q(2, 3), -2).unwrap(), q(9, 4));
        assert!(q_pow(&qi(0), -1).is_err());
    }
}
