use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arithmetic backend for evaluating polynomials and expressions, so the same
/// formula can be evaluated exactly or over intervals.
pub trait Domain {
    type Value: Clone;

    fn constant(&self, c: &BigRational) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;

    fn pow(&self, a: &Self::Value, e: u32) -> Self::Value {
        let mut result = self.constant(&BigRational::one());
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }
}

/// Exact rational evaluation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Domain for Exact {
    type Value = BigRational;

    fn constant(&self, c: &BigRational) -> BigRational {
        c.clone()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn div(&self, a: &BigRational, b: &BigRational) -> Result<BigRational> {
        if b.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(a / b)
    }
}
