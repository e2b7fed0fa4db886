//! Closed rational intervals with outward dyadic rounding.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::rational::{rat_string, round_dyadic, to_decimal};
use crate::algebra::Domain;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(format!("[{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn magnitude(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        Interval { lo: (&self.lo).min(&other.lo).clone(), hi: (&self.hi).max(&other.hi).clone() }
    }

    pub fn approx(&self, digits: usize) -> String {
        to_decimal(&self.midpoint(), digits)
    }

    pub fn to_json(&self) -> IntervalJson {
        IntervalJson([rat_string(&self.lo), rat_string(&self.hi)])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalJson(pub [String; 2]);

/// Interval evaluation. Every result endpoint is rounded outward to a
/// dyadic rational with `prec` significant bits, which keeps numbers small
/// while preserving enclosure.
#[derive(Clone, Copy, Debug)]
pub struct Outward {
    pub prec: u32,
}

impl Default for Outward {
    fn default() -> Self {
        Outward { prec: 256 }
    }
}

impl Outward {
    fn round(&self, lo: BigRational, hi: BigRational) -> Interval {
        Interval { lo: round_dyadic(&lo, self.prec, false), hi: round_dyadic(&hi, self.prec, true) }
    }
}

impl Domain for Outward {
    type Value = Interval;

    fn constant(&self, c: &BigRational) -> Interval {
        self.round(c.clone(), c.clone())
    }

    fn add(&self, a: &Interval, b: &Interval) -> Interval {
        self.round(&a.lo + &b.lo, &a.hi + &b.hi)
    }

    fn sub(&self, a: &Interval, b: &Interval) -> Interval {
        self.round(&a.lo - &b.hi, &a.hi - &b.lo)
    }

    fn mul(&self, a: &Interval, b: &Interval) -> Interval {
        let p = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        self.round(lo, hi)
    }

    fn neg(&self, a: &Interval) -> Interval {
        Interval { lo: -&a.hi, hi: -&a.lo }
    }

    fn div(&self, a: &Interval, b: &Interval) -> Result<Interval> {
        if b.contains_zero() {
            return Err(Error::DomainError("interval divisor contains zero".into()));
        }
        let inv = Interval { lo: b.hi.recip(), hi: b.lo.recip() };
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Interval, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(BigRational::from_integer(1.into()));
        }
        let lo_p = num_traits::pow(a.lo.clone(), e as usize);
        let hi_p = num_traits::pow(a.hi.clone(), e as usize);
        if e % 2 == 1 || !a.lo.is_negative() {
            self.round(lo_p, hi_p)
        } else if !a.hi.is_positive() {
            self.round(hi_p, lo_p)
        } else {
            self.round(BigRational::zero(), lo_p.max(hi_p))
        }
    }
}
