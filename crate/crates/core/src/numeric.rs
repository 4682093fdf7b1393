//! Decimal formatting and parsing helpers shared by every module.

use rug::float::Round;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Bits needed to carry `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32
}

/// Parses `"p/q"` or `"p"` into a reduced rational with positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("not a rational: `{s}`"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: Integer = num.parse().map_err(|_| bad())?;
    let den: Integer = den.parse().map_err(|_| bad())?;
    if den.cmp0().is_eq() {
        return Err(Error::InvalidArgument(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::from((num, den)))
}

/// Guard digits rounded away before truncating, so that an approximation
/// just below an exact decimal prints as that decimal.
const GUARD_DIGITS: u32 = 10;

/// Decimal string of `value` truncated toward zero after `digits` fractional digits.
pub fn truncate_decimal(value: &Float, digits: u32) -> String {
    match value.to_rational() {
        Some(r) => {
            let scale = Integer::from(Integer::u_pow_u(10, digits + GUARD_DIGITS));
            let rounded = Rational::from((Rational::from(&r * &scale)).round_ref());
            rational_truncated(&(rounded / scale), digits)
        }
        None => value.to_string(),
    }
}

/// Truncated decimal expansion of an exact rational.
pub fn rational_truncated(r: &Rational, digits: u32) -> String {
    let negative = r.cmp0().is_lt();
    let scale = Integer::from(Integer::u_pow_u(10, digits));
    let scaled = Rational::from(r.abs_ref()) * &scale;
    let int = scaled.trunc().into_numer_denom().0;
    let (whole, frac) = int.div_rem(scale);
    let mut out = String::new();
    if negative && (whole.cmp0().is_ne() || frac.cmp0().is_ne()) {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        let f = frac.to_string();
        out.push('.');
        for _ in f.len()..digits as usize {
            out.push('0');
        }
        out.push_str(&f);
    }
    out
}

/// Exact decimal of a rational when it terminates within `max_digits`, else truncated.
pub fn rational_decimal(r: &Rational, max_digits: u32) -> String {
    let mut den = r.denom().clone();
    let mut needed = 0u32;
    for p in [2u32, 5] {
        let mut count = 0;
        while den.is_divisible_u(p) {
            den /= p;
            count += 1;
        }
        needed = needed.max(count);
    }
    if den == 1 && needed <= max_digits {
        rational_truncated(r, needed)
    } else {
        rational_truncated(r, max_digits)
    }
}

/// Number of leading decimal places on which `a` and `b` agree, i.e.
/// `floor(-log10 |a - b|)`, capped by the precision of the operands.
pub fn agreeing_digits(a: &Float, b: &Float) -> u32 {
    let prec = a.prec().min(b.prec());
    let cap = (prec as f64 * std::f64::consts::LOG10_2).floor() as u32;
    let diff = Float::with_val(prec, a - b).abs();
    if diff.is_zero() {
        return cap;
    }
    let lg = diff.log10();
    let d = -lg.to_f64_round(Round::Up);
    if d <= 0.0 {
        0
    } else {
        (d.floor() as u32).min(cap)
    }
}

/// Parses a decimal string such as `-0.4703717...` exactly.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::InvalidArgument(format!("not a decimal: `{s}`"));
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{int}{frac}");
    let n: Integer = digits.parse().map_err(|_| bad())?;
    let scale = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
    let r = Rational::from((n, scale));
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("2/4").unwrap(), Rational::from((1, 2)));
        assert_eq!(parse_rational("3").unwrap(), Rational::from(3));
        assert_eq!(parse_rational("1/-2").unwrap(), Rational::from((-1, 2)));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn truncates_toward_zero() {
        let r = Rational::from((2, 3));
        assert_eq!(rational_truncated(&r, 4), "0.6666");
        assert_eq!(rational_truncated(&-r, 4), "-0.6666");
        assert_eq!(rational_truncated(&Rational::from((1, 20)), 3), "0.050");
        assert_eq!(rational_truncated(&Rational::from(3), 0), "3");
        assert_eq!(rational_truncated(&Rational::from((-1, 1000)), 2), "0.00");
    }

    #[test]
    fn terminating_decimals_are_exact() {
        assert_eq!(rational_decimal(&Rational::from((1, 20)), 20), "0.05");
        assert_eq!(rational_decimal(&Rational::from(2), 20), "2");
        assert_eq!(rational_decimal(&Rational::from((1, 3)), 5), "0.33333");
    }

    #[test]
    fn counts_agreeing_digits() {
        let a = Float::with_val(200, 1.25);
        let b = Float::with_val(200, 1.25000015);
        assert_eq!(agreeing_digits(&a, &b), 6);
        assert_eq!(agreeing_digits(&a, &a), 60);
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(parse_decimal("-0.25").unwrap(), Rational::from((-1, 4)));
        assert_eq!(parse_decimal("3").unwrap(), Rational::from(3));
    }
}
