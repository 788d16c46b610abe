//! Scalar abstraction: any field with exact-enough arithmetic to run the
//! algebra. `num::BigRational` is the canonical instantiation; `f64` works for
//! floating smoke tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("scalar must represent small integers")
    }

    /// Exact ratio a/b of small integers.
    fn ratio(a: i64, b: i64) -> Self {
        assert!(b != 0, "zero denominator");
        Self::from_int(a) / Self::from_int(b)
    }
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + FromPrimitive
{
}

/// Sign (+1/-1) as a scalar.
pub fn sign_scalar<S: Scalar>(sign: i32) -> S {
    match sign {
        1 => S::one(),
        -1 => -S::one(),
        _ => panic!("sign must be +1 or -1, got {sign}"),
    }
}
