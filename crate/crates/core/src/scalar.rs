//! Integer scalar abstraction shared by characters, Morse heights and the
//! homology engine.
//!
//! Everything that does exact arithmetic is generic over [`Scalar`]. Machine
//! integers (`i64`, `i128`) are fast and report overflow through the checked
//! operations; [`num_bigint::BigInt`] never overflows. The reduction code
//! tries a machine type first and falls back to `BigInt` on overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + Hash
    + Ord
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type holds i64")
    }

    fn to_bigint(&self) -> num_bigint::BigInt;

    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self>;

    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

impl Scalar for i64 {
    fn to_bigint(&self) -> num_bigint::BigInt {
        num_bigint::BigInt::from(*self)
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self> {
        v.to_i64()
    }
}

impl Scalar for i128 {
    fn to_bigint(&self) -> num_bigint::BigInt {
        num_bigint::BigInt::from(*self)
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self> {
        v.to_i128()
    }
}

impl Scalar for num_bigint::BigInt {
    fn to_bigint(&self) -> num_bigint::BigInt {
        self.clone()
    }

    fn from_bigint(v: &num_bigint::BigInt) -> Option<Self> {
        Some(v.clone())
    }
}

pub(crate) fn checked_mul_sub<T: Scalar>(a: &T, q: &T, b: &T) -> Option<T> {
    // a - q*b
    q.checked_mul(b).and_then(|p| a.checked_sub(&p))
}

