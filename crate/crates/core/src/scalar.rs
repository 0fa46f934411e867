//! Number abstractions shared by the floating, interval and exact paths.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::interval::Interval;

/// The field operations the pinching algebra needs.
pub trait Field:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

/// Field plus the transcendental pieces used by the speed families.
pub trait Real: Field + Copy {
    fn from_f64(x: f64) -> Self;
    fn powf(self, p: f64) -> Self;
    fn sqrt(self) -> Self;
    fn recip(self) -> Self;
}

impl Field for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn recip(self) -> Self {
        1.0 / self
    }
}

impl Field for Interval {
    fn from_i64(n: i64) -> Self {
        Interval::point(n as f64)
    }
}

impl Real for Interval {
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }
    fn powf(self, p: f64) -> Self {
        Interval::powf(self, p)
    }
    fn sqrt(self) -> Self {
        Interval::sqrt(self)
    }
    fn recip(self) -> Self {
        Interval::recip(self)
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}
