//! Scalar abstraction for the matrix and elimination code.
//!
//! Everything in this crate is integral, so the scalar is an exact integer
//! type: a machine integer (`i64`, `i128`) when the caller knows entries stay
//! small, or [`BigInt`] when they may not.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer usable as a matrix entry.
pub trait Scalar:
    Integer + Signed + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync
{
    fn to_bigint(&self) -> BigInt;

    /// Converts from a big integer, `None` when the value does not fit.
    fn from_bigint(v: &BigInt) -> Option<Self>;

    fn from_u64_lossless(v: u64) -> Self {
        Self::from_u64(v).expect("scalar type too narrow for value")
    }
}

impl Scalar for i64 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl Scalar for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
}
