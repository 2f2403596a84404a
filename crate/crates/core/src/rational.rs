//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, k| acc * q(k as i64))
}

/// Always renders as `p/q`, including integers (`3/1`).
pub fn format_q(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Short human form: `3`, `-1/2`.
pub fn display_q(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn is_one(c: &Q) -> bool {
    c.is_one()
}

pub(crate) fn is_negative(c: &Q) -> bool {
    c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), qr(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert_eq!(format_q(&q(5)), "5/1");
        assert_eq!(format_q(&qr(-2, 4)), "-1/2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
