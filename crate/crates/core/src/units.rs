//! Exact rational helpers.
//!
//! Internal units: `c = 1`, time in units of `τ`, length in units of `cτ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{ClockError, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn uint(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Rational {
    frac(1, 2)
}

/// `"p/q"` form; integers are written as `"p/1"` so every field parses the same way.
pub fn format(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Like [`format`] but integers are written without a denominator.
pub fn format_compact(r: &Rational) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format(r)
    }
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || ClockError::ParseRational(s.to_string());
    let (p, q) = match t.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (t, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| err())?;
    let q: BigInt = q.parse().map_err(|_| err())?;
    if q.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(p, q))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `>= r`.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
