//! Exact rational arithmetic used for every position and distance.

use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// A fraction kept in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<i64>;

/// Builds `num/den`, reducing to lowest terms.
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(value)
}

/// `⌊x⌋` as an integer.
pub fn floor_int(x: &Rational) -> i64 {
    x.numer().div_floor(x.denom())
}

/// Fractional part `x − ⌊x⌋`, always in `[0, 1)`.
pub fn frac(x: &Rational) -> Rational {
    x - int(floor_int(x))
}

/// True if `x` can be written with denominator `den`.
pub fn is_multiple_of(x: &Rational, den: i64) -> bool {
    den % x.denom() == 0
}

pub fn half() -> Rational {
    ratio(1, 2)
}

/// Parses `a/b` or an integer. Decimal notation is rejected so that
/// boundary values such as a fractional part of exactly one half are
/// never approximated.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("expected an integer or a fraction a/b, got `{text}`"),
    };
    if text.contains('.') || text.contains('e') || text.contains('E') {
        return Err(bad());
    }
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (
            i64::from_str(a.trim()).map_err(|_| bad())?,
            i64::from_str(b.trim()).map_err(|_| bad())?,
        ),
        None => (i64::from_str(text).map_err(|_| bad())?, 1),
    };
    if den == 0 {
        return Err(bad());
    }
    Ok(ratio(num, den))
}

/// Renders `x` as `a/b`, or as a bare integer when the denominator is one.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn is_positive(x: &Rational) -> bool {
    x.is_positive() && !x.is_zero()
}
