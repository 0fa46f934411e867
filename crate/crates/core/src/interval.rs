//! Closed real intervals with outward rounding.
//!
//! Every arithmetic result is widened by one ulp in each direction, which
//! keeps the enclosure valid for the correctly rounded IEEE operations
//! (`+ - * / sqrt`). `powf` goes through libm, which is not correctly
//! rounded, so its endpoints are widened by a few ulps instead.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

const POW_ULPS: u32 = 4;

fn down(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

fn up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

impl Interval {
    /// Builds `[lo, hi]`; panics if the bounds are unordered or NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    fn rounded(lo: f64, hi: f64) -> Self {
        Self {
            lo: down(lo),
            hi: up(hi),
        }
    }

    pub fn recip(self) -> Self {
        assert!(!self.contains_zero(), "reciprocal of {self} contains a pole");
        Self::rounded(1.0 / self.hi, 1.0 / self.lo)
    }

    pub fn sqrt(self) -> Self {
        assert!(self.lo >= 0.0, "sqrt of {self}");
        Self::rounded(self.lo.sqrt(), self.hi.sqrt())
    }

    /// `x^p` for a strictly positive interval and any real exponent.
    pub fn powf(self, p: f64) -> Self {
        assert!(self.lo > 0.0, "powf of non-positive interval {self}");
        if p == 0.0 {
            return Self::point(1.0);
        }
        if p == 1.0 {
            return self;
        }
        let (a, b) = (self.lo.powf(p), self.hi.powf(p));
        let (mut lo, mut hi) = if p > 0.0 { (a, b) } else { (b, a) };
        for _ in 0..POW_ULPS {
            lo = down(lo);
            hi = up(hi);
        }
        Self {
            lo: lo.max(0.0),
            hi,
        }
    }

    pub fn square(self) -> Self {
        if self.lo >= 0.0 {
            Self::rounded(self.lo * self.lo, self.hi * self.hi)
        } else if self.hi <= 0.0 {
            Self::rounded(self.hi * self.hi, self.lo * self.lo)
        } else {
            let m = self.lo.abs().max(self.hi.abs());
            Self {
                lo: 0.0,
                hi: up(m * m),
            }
        }
    }

    pub fn abs(self) -> Self {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            -self
        } else {
            Self::new(0.0, self.lo.abs().max(self.hi))
        }
    }

    /// Splits at the midpoint.
    pub fn bisect(&self) -> (Self, Self) {
        let m = self.mid();
        (Self::new(self.lo, m), Self::new(m, self.hi))
    }

    /// Splits at the geometric mean; used on positive ranges spanning decades.
    pub fn bisect_geometric(&self) -> (Self, Self) {
        assert!(self.lo > 0.0);
        let m = (self.lo * self.hi).sqrt().clamp(self.lo, self.hi);
        (Self::new(self.lo, m), Self::new(m, self.hi))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<f64> for Interval {
    fn from(x: f64) -> Self {
        Self::point(x)
    }
}

impl Neg for Interval {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Add for Interval {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::rounded(self.lo + rhs.lo, self.hi + rhs.hi)
    }
}

impl Sub for Interval {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::rounded(self.lo - rhs.hi, self.hi - rhs.lo)
    }
}

impl Mul for Interval {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let c = [
            self.lo * rhs.lo,
            self.lo * rhs.hi,
            self.hi * rhs.lo,
            self.hi * rhs.hi,
        ];
        // 0 * inf only shows up for unbounded inputs, which we never build
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::rounded(lo, hi)
    }
}

impl Div for Interval {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_encloses_point_results() {
        let a = Interval::new(1.0, 2.0);
        let b = Interval::new(-3.0, 0.5);
        let s = a + b;
        assert!(s.lo() <= -2.0 && s.hi() >= 2.5);
        let p = a * b;
        assert!(p.lo() <= -6.0 && p.hi() >= 1.0);
        let q = b / a;
        assert!(q.lo() <= -3.0 && q.hi() >= 0.5);
    }

    #[test]
    fn third_is_enclosed() {
        let third = Interval::point(1.0) / Interval::point(3.0);
        assert!(third.lo() < third.hi());
        assert!(third.contains(1.0 / 3.0));
    }

    #[test]
    fn powf_monotone_both_signs() {
        let x = Interval::new(2.0, 4.0);
        let p = x.powf(1.5);
        assert!(p.contains(2f64.powf(1.5)) && p.contains(8.0));
        let n = x.powf(-0.5);
        assert!(n.contains(0.5) && n.contains(2f64.powf(-0.5)));
        assert!(n.lo() <= 0.5);
    }

    #[test]
    fn square_straddling_zero() {
        let s = Interval::new(-2.0, 1.0).square();
        assert_eq!(s.lo(), 0.0);
        assert!(s.hi() >= 4.0);
    }

    #[test]
    #[should_panic]
    fn recip_of_zero_straddle_panics() {
        let _ = Interval::new(-1.0, 1.0).recip();
    }
}
