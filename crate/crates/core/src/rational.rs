//! Exact rational helpers. Every coordinate in the library is a `Rational`;
//! no floating point is used anywhere.

use std::str::FromStr;

use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::Rational64;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// True when `q` is of the form `k + 1/2` for an integer `k`.
pub fn is_half_odd(q: Rational) -> bool {
    let twice = q * 2;
    twice.is_integer() && twice.to_integer().is_odd()
}

/// Nearest integer `floor(q + 1/2)`. Callers that need uniqueness must first
/// rule out `is_half_odd(q)`.
pub fn nearest_integer(q: Rational) -> i64 {
    (q + rat(1, 2)).floor().to_integer()
}

/// Generalized binomial `C(m, 2) = m (m - 1) / 2`, valid for every integer `m`.
pub fn binom2(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// Canonical text form: `"p"` for integers, `"p/q"` with `q > 0` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed rational {0:?}")]
pub struct ParseRationalError(pub String);

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p = i64::from_str(p.trim()).map_err(|_| err())?;
            let q = i64::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => i64::from_str(t).map(int).map_err(|_| err()),
    }
}

/// Ceiling of a rational as an integer.
pub fn ceil_int(q: Rational) -> i64 {
    q.ceil().to_integer()
}

/// Floor of a rational as an integer.
pub fn floor_int(q: Rational) -> i64 {
    q.floor().to_integer()
}

pub fn abs(q: Rational) -> Rational {
    q.abs()
}
