//! Exact rational scalars used for model-space tables and exact file entries.

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

pub fn rat(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64()
        .unwrap_or_else(|| *r.numer() as f64 / *r.denom() as f64)
}

/// Parse `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Format(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: i128 = n.trim().parse().map_err(|_| bad())?;
        let d: i128 = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Format(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let digits = frac.len() as u32;
        if digits > 30 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = 10i128.pow(digits);
        let whole: i128 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            w => w.parse().map_err(|_| bad())?,
        };
        let part: i128 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let magnitude = whole
            .checked_mul(scale)
            .and_then(|w| w.checked_add(part))
            .ok_or_else(bad)?;
        let value = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(value, scale));
    }
    let n: i128 = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// The exact rational value of a finite double, when it fits in `i128`.
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some(Rational::zero());
    }
    let (mantissa, exponent, sign) = num_traits::float::FloatCore::integer_decode(x);
    let m = i128::from(sign) * i128::from(mantissa);
    if exponent >= 0 {
        if exponent > 126 - 53 {
            return None;
        }
        Some(Rational::from_integer(m << exponent))
    } else {
        let shift = u32::try_from(-exponent).ok()?;
        if shift > 126 {
            return None;
        }
        Some(Rational::new(m, 1i128 << shift))
    }
}

pub fn format_rational(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
