//! Exact decimal numbers for parameter domains.
//!
//! Domain bounds like `0..7` or `3.50..4.25` must survive round-trips and
//! support "one granularity step past the bound" sentinels without floating
//! point drift, so values are kept as an integer mantissa plus a decimal
//! scale.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A decimal number `mantissa * 10^-scale`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Decimal {
    mantissa: i64,
    scale: u8,
}

impl Decimal {
    pub fn new(mantissa: i64, scale: u8) -> Self {
        Self { mantissa, scale }
    }

    pub fn from_int(value: i64) -> Self {
        Self::new(value, 0)
    }

    pub fn scale(&self) -> u8 {
        self.scale
    }

    /// The smallest positive step representable at this value's scale
    /// (1 for integers, 0.1 for one fractional digit, ...).
    pub fn granularity(&self) -> Decimal {
        Decimal::new(1, self.scale)
    }

    /// This value rescaled to `scale` fractional digits. Only widening
    /// rescales are exact; `scale` must be >= the current scale.
    fn rescaled(&self, scale: u8) -> Decimal {
        debug_assert!(scale >= self.scale);
        let factor = 10_i64.pow(u32::from(scale - self.scale));
        Decimal::new(self.mantissa * factor, scale)
    }

    fn aligned(a: Decimal, b: Decimal) -> (i64, i64, u8) {
        let scale = a.scale.max(b.scale);
        (a.rescaled(scale).mantissa, b.rescaled(scale).mantissa, scale)
    }

    pub fn checked_add(self, other: Decimal) -> Option<Decimal> {
        let (a, b, scale) = Self::aligned(self, other);
        Some(Decimal::new(a.checked_add(b)?, scale))
    }

    pub fn checked_sub(self, other: Decimal) -> Option<Decimal> {
        let (a, b, scale) = Self::aligned(self, other);
        Some(Decimal::new(a.checked_sub(b)?, scale))
    }
}

impl PartialEq for Decimal {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Self::aligned(*self, *other);
        a == b
    }
}

impl Eq for Decimal {}

impl PartialOrd for Decimal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Decimal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let (a, b, _) = Self::aligned(*self, *other);
        a.cmp(&b)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 0 {
            return write!(f, "{}", self.mantissa);
        }
        let sign = if self.mantissa < 0 { "-" } else { "" };
        let abs = self.mantissa.unsigned_abs();
        let pow = 10_u64.pow(u32::from(self.scale));
        let int = abs / pow;
        let frac = abs % pow;
        write!(f, "{sign}{int}.{frac:0width$}", width = self.scale as usize)
    }
}

/// Error parsing a decimal literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed decimal literal `{0}`")]
pub struct ParseDecimalError(pub String);

impl FromStr for Decimal {
    type Err = ParseDecimalError;

    /// Parses `-?digits(.digits)?`. The scale is taken from the literal, so
    /// `7` and `7.0` compare equal but keep their own granularity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseDecimalError(s.to_string());
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, fr)) if !fr.is_empty() => (i, fr),
            Some(_) => return Err(err()),
            None => (body, ""),
        };
        if int_part.is_empty()
            || !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        if frac_part.len() > 9 {
            return Err(err());
        }
        let digits = format!("{int_part}{frac_part}");
        let mut mantissa: i64 = digits.parse().map_err(|_| err())?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(Decimal::new(mantissa, frac_part.len() as u8))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "7", "-3", "3.50", "0.01", "-12.340"] {
            let d: Decimal = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "-", "1.", ".5", "1.2.3", "1e3", "abc"] {
            assert!(s.parse::<Decimal>().is_err(), "{s} should not parse");
        }
    }

    #[test]
    fn comparison_aligns_scales() {
        let a: Decimal = "7".parse().unwrap();
        let b: Decimal = "7.0".parse().unwrap();
        assert_eq!(a, b);
        assert!("6.99".parse::<Decimal>().unwrap() < a);
    }

    #[test]
    fn granularity_steps_past_bounds() {
        let upper: Decimal = "7".parse().unwrap();
        let above = upper.checked_add(upper.granularity()).unwrap();
        assert_eq!(above.to_string(), "8");

        let lower: Decimal = "0.50".parse().unwrap();
        let below = lower.checked_sub(lower.granularity()).unwrap();
        assert_eq!(below.to_string(), "0.49");
    }
}
