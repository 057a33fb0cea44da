//! Exact parsing of decimal command-line values, so that `--beta 0.1`
//! feeds the ball tables `1/10` rather than the nearest binary float.

use num::{BigInt, Zero};
use steklov_core::ballspec::Rational;

/// Accepts `p/q`, integers, and decimals with an optional exponent
/// (`-1.25`, `3e-2`, `.5`).
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("invalid numerator in {text:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("invalid denominator in {text:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {text:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| format!("invalid exponent in {text:?}"))?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(format!("not a number: {text:?}"));
    }
    if exponent.unsigned_abs() > 1000 {
        return Err(format!("exponent out of range in {text:?}"));
    }
    let mut numer: BigInt = format!("{whole}{frac}").parse().expect("digits only");
    if negative {
        numer = -numer;
    }
    let shift = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let power = num::pow(ten, shift.unsigned_abs() as usize);
    Ok(if shift >= 0 {
        Rational::from_integer(numer * power)
    } else {
        Rational::new(numer, power)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use steklov_core::ballspec::rational;

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.1").unwrap(), rational(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), rational(-5, 4));
        assert_eq!(parse_rational("3e-2").unwrap(), rational(3, 100));
        assert_eq!(parse_rational("2.5E1").unwrap(), rational(25, 1));
        assert_eq!(parse_rational(".5").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("6/4").unwrap(), rational(3, 2));
        assert_eq!(parse_rational("7").unwrap(), rational(7, 1));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", ".", "abc", "1/0", "1.2.3", "1e", "--1", "nan"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
