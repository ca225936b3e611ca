//! Exact rational helpers. All exponent arithmetic goes through
//! [`Rational`]; no floating-point value is ever converted into one.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse `"p/q"`, an integer, or a terminating decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::InvalidArgument(format!("not an exact rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return invalid(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = whole.trim_start().starts_with('-');
        let w: BigInt = if whole.is_empty() || whole == "-" { BigInt::zero() } else { whole.parse().map_err(|_| bad())? };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let fpart = Rational::new(f, scale);
        let w = Rational::from_integer(w.abs());
        let v = w + fpart;
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

/// Lossy conversion for display only.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact decimal when the denominator divides a power of ten, otherwise
/// six digits followed by an ellipsis.
pub fn decimal(r: &Rational) -> String {
    let mut d = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut digits = 0usize;
    let (mut twos, mut fives) = (0usize, 0usize);
    while d.is_even() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    let terminating = d.is_one();
    if terminating {
        digits = twos.max(fives);
    }
    let shown = if terminating { digits } else { 6 };
    let scale = num_traits::pow(BigInt::from(10), shown);
    let scaled = (r.abs() * Rational::from_integer(scale.clone())).floor().to_integer();
    let (ip, fp) = scaled.div_rem(&scale);
    let sign = if r.is_negative() { "-" } else { "" };
    let mut out = if shown == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = shown)
    };
    if !terminating {
        out.push('…');
    }
    out
}

/// Reduced fractions `p/q` in the open interval (0, 1) with `q ≤ max_den`, ascending.
pub fn farey_interior(max_den: u32) -> Vec<Rational> {
    let mut out: Vec<Rational> = (2..=max_den as i64)
        .flat_map(|q| (1..q).filter(move |p| p.gcd(&q) == 1).map(move |p| rat(p, q)))
        .collect();
    out.sort();
    out
}
