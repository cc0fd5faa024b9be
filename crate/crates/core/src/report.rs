//! Rendering helpers shared by reports: exact fractions as `p/q` strings and
//! ten-significant-digit decimals.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serializer;

/// `p/q` with the denominator always present, e.g. `1/1`.
pub fn fraction_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with ten significant digits.
pub fn decimal_string(r: &BigRational) -> String {
    decimal_f64(r.to_f64().unwrap_or(f64::NAN))
}

pub fn decimal_f64(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let places = (9 - magnitude).max(0) as usize;
    format!("{x:.places$}")
}

/// Parses a `p/q` (or plain integer) string.
pub fn parse_fraction(text: &str) -> Option<BigRational> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (text.trim().parse().ok()?, 1.into()),
    };
    let d: num_bigint::BigInt = d;
    if d.is_zero() || d.is_negative() {
        return None;
    }
    Some(BigRational::new(n, d))
}

pub fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fraction_string(r))
}

pub fn ser_opt_ratio<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&fraction_string(r)),
        None => s.serialize_none(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fractions() {
        assert_eq!(fraction_string(&q(2, 2)), "1/1");
        assert_eq!(fraction_string(&q(-6, 4)), "-3/2");
        assert_eq!(parse_fraction("17/27"), Some(q(17, 27)));
        assert_eq!(parse_fraction("3"), Some(q(3, 1)));
        assert_eq!(parse_fraction("1/0"), None);
        assert_eq!(parse_fraction("x/2"), None);
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal_string(&q(1, 3)), "0.3333333333");
        assert_eq!(decimal_string(&q(4, 3)), "1.333333333");
        assert_eq!(decimal_string(&q(0, 1)), "0");
        assert_eq!(decimal_string(&q(17, 27)), "0.6296296296");
    }
}
