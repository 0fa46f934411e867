//! Homogeneous curvature speeds written in principal-radii coordinates.
//!
//! Each family is defined in curvature variables `κ_i = 1/r_i`:
//!
//! | family        | speed (curvatures)  | `k` (radii, degree one)          |
//! |---------------|---------------------|----------------------------------|
//! | `gauss_power` | `K^{α/2}`           | `(r1 r2)^{1/2}`                  |
//! | `mean_power`  | `H^α`               | `r1 r2 / (r1 + r2)`              |
//! | `norm_power`  | `|A|^α`             | `r1 r2 / (r1² + r2²)^{1/2}`      |
//! | `sum_power`   | `κ1^α + κ2^α`       | `r1 r2 / (r1^α + r2^α)^{1/α}`    |
//!
//! and enters the support-function flow as `f = -k^{-α}`, so `f < 0` and
//! `f(λr) = λ^{-α} f(r)`.
//!
//! There are two independent derivative routes. [`SpeedFunction::eval_f_derivs`]
//! differentiates the curvature-variable expression directly, while
//! [`SpeedFunction::eval_k_derivs`] differentiates `k`; the two are tied
//! together by `ḟ = α k^{-(1+α)} k̇`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpeedError {
    #[error("principal radii must be positive and finite, got ({r1}, {r2})")]
    NonPositiveRadius { r1: f64, r2: f64 },
    #[error("exponent must be positive and finite, got {0}")]
    InvalidExponent(f64),
    #[error("unknown speed family `{0}`")]
    UnknownFamily(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeedFamily {
    GaussPower,
    MeanPower,
    NormPower,
    SumPower,
}

impl SpeedFamily {
    pub const ALL: [SpeedFamily; 4] = [
        SpeedFamily::GaussPower,
        SpeedFamily::MeanPower,
        SpeedFamily::NormPower,
        SpeedFamily::SumPower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpeedFamily::GaussPower => "gauss_power",
            SpeedFamily::MeanPower => "mean_power",
            SpeedFamily::NormPower => "norm_power",
            SpeedFamily::SumPower => "sum_power",
        }
    }
}

impl fmt::Display for SpeedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpeedFamily {
    type Err = SpeedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| SpeedError::UnknownFamily(s.to_string()))
    }
}

/// Ordered pair of principal radii.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadiiPoint {
    r1: f64,
    r2: f64,
}

impl RadiiPoint {
    pub fn new(r1: f64, r2: f64) -> Result<Self, SpeedError> {
        if r1 > 0.0 && r2 > 0.0 && r1.is_finite() && r2.is_finite() {
            Ok(Self { r1, r2 })
        } else {
            Err(SpeedError::NonPositiveRadius { r1, r2 })
        }
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn scaled(&self, lambda: f64) -> Result<Self, SpeedError> {
        Self::new(lambda * self.r1, lambda * self.r2)
    }

    pub fn swapped(&self) -> Self {
        Self {
            r1: self.r2,
            r2: self.r1,
        }
    }

    pub fn is_umbilic(&self) -> bool {
        self.r1 == self.r2
    }
}

/// Value, gradient and Hessian of the speed with respect to `(r1, r2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FDerivs<T> {
    pub f: T,
    pub df: [T; 2],
    pub d2f: [[T; 2]; 2],
}

/// Value, gradient and Hessian of the degree-one normalisation `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KDerivs {
    pub k: f64,
    pub dk: [f64; 2],
    pub d2k: [[f64; 2]; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedFunction {
    pub family: SpeedFamily,
    pub alpha: f64,
}

impl SpeedFunction {
    pub fn new(family: SpeedFamily, alpha: f64) -> Result<Self, SpeedError> {
        if alpha > 0.0 && alpha.is_finite() {
            Ok(Self { family, alpha })
        } else {
            Err(SpeedError::InvalidExponent(alpha))
        }
    }

    pub fn eval_f(&self, r: RadiiPoint) -> f64 {
        self.value(r.r1, r.r2)
    }

    /// `f(r1, r2)` without derivatives, for raw radii already known positive.
    pub fn value(&self, r1: f64, r2: f64) -> f64 {
        let a = self.alpha;
        match self.family {
            SpeedFamily::GaussPower => -(r1 * r2).powf(-0.5 * a),
            SpeedFamily::MeanPower => -(1.0 / r1 + 1.0 / r2).powf(a),
            SpeedFamily::NormPower => -(1.0 / (r1 * r1) + 1.0 / (r2 * r2)).powf(0.5 * a),
            SpeedFamily::SumPower => -(r1.powf(-a) + r2.powf(-a)),
        }
    }

    pub fn eval_f_derivs(&self, r: RadiiPoint) -> FDerivs<f64> {
        self.f_derivs_generic(r.r1, r.r2)
    }

    /// `c` in `f(ρ, ρ) = -c ρ^{-α}`: the sphere constant of the family.
    pub fn sphere_constant(&self) -> f64 {
        -self.f_derivs_generic(1.0, 1.0).f
    }

    /// Speed derivatives over any [`Real`] number type (floats or intervals).
    pub fn f_derivs_generic<T: Real>(&self, r1: T, r2: T) -> FDerivs<T> {
        let a = self.alpha;
        let c = T::from_f64;
        let two = c(2.0);
        match self.family {
            SpeedFamily::GaussPower => {
                let h = 0.5 * a;
                let p = (r1 * r2).powf(-h);
                let d11 = -(c(h) * c(h + 1.0)) * p / (r1 * r1);
                let d22 = -(c(h) * c(h + 1.0)) * p / (r2 * r2);
                let d12 = -(c(h) * c(h)) * p / (r1 * r2);
                FDerivs {
                    f: -p,
                    df: [c(h) * p / r1, c(h) * p / r2],
                    d2f: [[d11, d12], [d12, d22]],
                }
            }
            SpeedFamily::MeanPower => {
                let hm = r1.recip() + r2.recip();
                let h0 = hm.powf(a);
                let h1 = hm.powf(a - 1.0);
                let h2 = hm.powf(a - 2.0);
                let (s1, s2) = (r1 * r1, r2 * r2);
                let aa1 = c(a) * c(a - 1.0);
                let d11 = -aa1 * h2 / (s1 * s1) - two * c(a) * h1 / (s1 * r1);
                let d22 = -aa1 * h2 / (s2 * s2) - two * c(a) * h1 / (s2 * r2);
                let d12 = -aa1 * h2 / (s1 * s2);
                FDerivs {
                    f: -h0,
                    df: [c(a) * h1 / s1, c(a) * h1 / s2],
                    d2f: [[d11, d12], [d12, d22]],
                }
            }
            SpeedFamily::NormPower => {
                let (s1, s2) = (r1 * r1, r2 * r2);
                let q = s1.recip() + s2.recip();
                let q0 = q.powf(0.5 * a);
                let q1 = q.powf(0.5 * a - 1.0);
                let q2 = q.powf(0.5 * a - 2.0);
                let (c1, c2) = (s1 * r1, s2 * r2);
                let aa2 = c(a) * c(a - 2.0);
                let three = c(3.0);
                let d11 = -aa2 * q2 / (c1 * c1) - three * c(a) * q1 / (s1 * s1);
                let d22 = -aa2 * q2 / (c2 * c2) - three * c(a) * q1 / (s2 * s2);
                let d12 = -aa2 * q2 / (c1 * c2);
                FDerivs {
                    f: -q0,
                    df: [c(a) * q1 / c1, c(a) * q1 / c2],
                    d2f: [[d11, d12], [d12, d22]],
                }
            }
            SpeedFamily::SumPower => {
                let p1 = r1.powf(-a);
                let p2 = r2.powf(-a);
                let aa1 = c(a) * c(a + 1.0);
                FDerivs {
                    f: -(p1 + p2),
                    df: [c(a) * p1 / r1, c(a) * p2 / r2],
                    d2f: [
                        [-aa1 * p1 / (r1 * r1), c(0.0)],
                        [c(0.0), -aa1 * p2 / (r2 * r2)],
                    ],
                }
            }
        }
    }

    pub fn eval_k_derivs(&self, r: RadiiPoint) -> KDerivs {
        let (r1, r2) = (r.r1, r.r2);
        match self.family {
            SpeedFamily::GaussPower => {
                let k = (r1 * r2).sqrt();
                let d12 = k / (4.0 * r1 * r2);
                KDerivs {
                    k,
                    dk: [k / (2.0 * r1), k / (2.0 * r2)],
                    d2k: [[-k / (4.0 * r1 * r1), d12], [d12, -k / (4.0 * r2 * r2)]],
                }
            }
            SpeedFamily::MeanPower => {
                let s = r1 + r2;
                let s2 = s * s;
                let s3 = s2 * s;
                let d12 = 2.0 * r1 * r2 / s3;
                KDerivs {
                    k: r1 * r2 / s,
                    dk: [r2 * r2 / s2, r1 * r1 / s2],
                    d2k: [[-2.0 * r2 * r2 / s3, d12], [d12, -2.0 * r1 * r1 / s3]],
                }
            }
            SpeedFamily::NormPower => {
                let q = r1 * r1 + r2 * r2;
                let q12 = q.sqrt();
                let q32 = q * q12;
                let q52 = q32 * q;
                let d12 = 3.0 * r1 * r1 * r2 * r2 / q52;
                KDerivs {
                    k: r1 * r2 / q12,
                    dk: [r2 * r2 * r2 / q32, r1 * r1 * r1 / q32],
                    d2k: [
                        [-3.0 * r1 * r2 * r2 * r2 / q52, d12],
                        [d12, -3.0 * r1 * r1 * r1 * r2 / q52],
                    ],
                }
            }
            SpeedFamily::SumPower => {
                // weights w_i = r_i^{-α} / Σ r_j^{-α}, evaluated through the
                // ratio min/max so large α neither overflows nor underflows k
                let a = self.alpha;
                let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
                let x = (lo / hi).powf(a);
                let k = lo * (1.0 + x).powf(-1.0 / a);
                let (w_lo, w_hi) = (1.0 / (1.0 + x), x / (1.0 + x));
                let (w1, w2) = if r1 <= r2 { (w_lo, w_hi) } else { (w_hi, w_lo) };
                let cross = k * (1.0 + a) * w1 * w2;
                let d12 = cross / (r1 * r2);
                KDerivs {
                    k,
                    dk: [k * w1 / r1, k * w2 / r2],
                    d2k: [[-cross / (r1 * r1), d12], [d12, -cross / (r2 * r2)]],
                }
            }
        }
    }

    /// `f` and its derivatives composed through `k`: `f = -k^{-α}`.
    pub fn f_derivs_via_k(&self, r: RadiiPoint) -> FDerivs<f64> {
        let a = self.alpha;
        let KDerivs { k, dk, d2k } = self.eval_k_derivs(r);
        let km1 = k.powf(-(1.0 + a));
        let km2 = km1 / k;
        let mut d2f = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                d2f[i][j] = -a * (1.0 + a) * km2 * dk[i] * dk[j] + a * km1 * d2k[i][j];
            }
        }
        FDerivs {
            f: -k.powf(-a),
            df: [a * km1 * dk[0], a * km1 * dk[1]],
            d2f,
        }
    }
}

impl fmt::Display for SpeedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(α={})", self.family, self.alpha)
    }
}
