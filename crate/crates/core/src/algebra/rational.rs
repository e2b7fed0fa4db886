use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Exact field operation; the result is always in lowest terms with a
/// positive denominator (guaranteed by `BigRational`).
pub fn rat_arith(a: &BigRational, b: &BigRational, op: RatOp) -> Result<BigRational> {
    Ok(match op {
        RatOp::Add => a + b,
        RatOp::Sub => a - b,
        RatOp::Mul => a * b,
        RatOp::Div => {
            if b.is_zero() {
                return Err(Error::DivByZero);
            }
            a / b
        }
    })
}

pub fn rat_cmp(a: &BigRational, b: &BigRational) -> Ordering {
    a.cmp(b)
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `7`, `-3/4`, `0.125` or `1e-9` exactly.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (ip, fp) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp).parse().ok()?;
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

/// Decimal string of `q` rounded half away from zero to `digits` places.
pub fn to_decimal(q: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let (whole, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2;
    let rounded = if &twice >= scaled.denom() { whole + 1 } else { whole };
    let (ip, fp) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded_is_zero(&ip, &fp) { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{ip}");
    }
    format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
}

fn rounded_is_zero(ip: &BigInt, fp: &BigInt) -> bool {
    ip.is_zero() && fp.is_zero()
}

pub fn to_f64(q: &BigRational) -> f64 {
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to a shifted division for huge numerators/denominators.
    let nb = q.numer().bits() as i64;
    let db = q.denom().bits() as i64;
    let shift = nb - db - 60;
    let scaled = if shift > 0 {
        q / BigRational::from_integer(BigInt::one() << shift as usize)
    } else {
        q * BigRational::from_integer(BigInt::one() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Rounds `q` down (`up == false`) or up to a dyadic rational with about
/// `prec` significant bits.
pub fn round_dyadic(q: &BigRational, prec: u32, up: bool) -> BigRational {
    if q.is_zero() || q.denom().is_one() && q.numer().bits() <= prec as u64 {
        return q.clone();
    }
    let mag = q.numer().bits() as i64 - q.denom().bits() as i64;
    let k = prec as i64 - mag;
    let scaled = if k >= 0 {
        q * BigRational::from_integer(BigInt::one() << k as usize)
    } else {
        q / BigRational::from_integer(BigInt::one() << (-k) as usize)
    };
    let m = if up { scaled.ceil() } else { scaled.floor() };
    if k >= 0 {
        m / BigRational::from_integer(BigInt::one() << k as usize)
    } else {
        m * BigRational::from_integer(BigInt::one() << (-k) as usize)
    }
}

pub fn sign_of(q: &BigRational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact text form: `n` or `n/d`.
pub fn rat_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
