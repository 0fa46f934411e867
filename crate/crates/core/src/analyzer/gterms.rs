//! Pinching algebra for `G = -f (r2 - r1)` at a non-umbilic point.
//!
//! Two normalisations of the gradient coefficients are used:
//!
//! * **raw**: `Q = Q1 T1² + Q2 T2²`, where `T1 = ∇1 r11 / ġ² = -∇1 r22 / ġ¹`
//!   and `T2 = ∇2 r22 / ġ¹ = -∇2 r11 / ġ²` parametrise the gradients allowed
//!   at a critical point of `G`. These are smooth wherever `r2 > r1`.
//! * **normalised** (the default, see [`gradient_terms_general`]): the
//!   coefficients of `(∇1 r22)²` and `(∇2 r11)²`, multiplied by `2k^α = -2/f`.
//!   For Gauss-curvature powers this is exactly the rational closed form in
//!   [`super::closed`]. Normalised `Q2` has a pole where `ġ² = 0`.
//!
//! Both have the same sign wherever the normalised form is defined.

use serde::{Deserialize, Serialize};

use super::AnalyzerError;
use crate::scalar::Field;
use super::closed::{gauss_general_exact, to_rational};
use crate::speeds::{FDerivs, RadiiPoint, SpeedFamily, SpeedFunction};

/// First and second derivatives of `g = -f (r2 - r1)` with respect to the radii.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GDerivs<T = f64> {
    pub dg: [T; 2],
    pub d2g: [[T; 2]; 2],
}

pub(crate) fn require_ordered(r: RadiiPoint) -> Result<f64, AnalyzerError> {
    if r.r2() > r.r1() {
        Ok(r.r2() - r.r1())
    } else {
        Err(AnalyzerError::NotOrdered {
            r1: r.r1(),
            r2: r.r2(),
        })
    }
}

pub(crate) fn g_derivs_generic<T: Field>(d: &FDerivs<T>, gap: &T) -> GDerivs<T> {
    let two = T::from_i64(2);
    let [f1, f2] = d.df.clone();
    let dg1 = d.f.clone() - f1.clone() * gap.clone();
    let dg2 = -d.f.clone() - f2.clone() * gap.clone();
    let g11 = two.clone() * f1.clone() - d.d2f[0][0].clone() * gap.clone();
    let g12 = f2.clone() - f1 - d.d2f[0][1].clone() * gap.clone();
    let g22 = -(two * f2) - d.d2f[1][1].clone() * gap.clone();
    GDerivs {
        dg: [dg1, dg2],
        d2g: [[g11, g12.clone()], [g12, g22]],
    }
}

/// `h(v, v)` for a symmetric 2×2 table and `v = a e1 - b e2`.
fn quad_form<T: Field>(h: &[[T; 2]; 2], a: &T, b: &T) -> T {
    let two = T::from_i64(2);
    h[0][0].clone() * a.clone() * a.clone() - two * h[0][1].clone() * a.clone() * b.clone()
        + h[1][1].clone() * b.clone() * b.clone()
}

/// Raw gradient coefficients multiplied by `(r2 - r1)`, which removes the
/// `1/(r2 - r1)` singularity so the expression can be enclosed on intervals
/// touching the umbilic ratio.
pub(crate) fn raw_q_times_gap<T: Field>(d: &FDerivs<T>, gap: &T) -> [T; 2] {
    let two = T::from_i64(2);
    let g = g_derivs_generic(d, gap);
    let [dg1, dg2] = g.dg;
    let f = d.f.clone();
    let [f1, f2] = d.df.clone();
    let fvv = quad_form(&d.d2f, &dg2, &dg1);
    let common = two.clone() * f.clone() * (f1.clone() + f2.clone());
    let ff = f.clone() * f.clone();
    let cross = f1.clone() * f2.clone() * gap.clone() * gap.clone();
    let q1 = f.clone() * fvv.clone() * gap.clone()
        + common.clone() * (ff.clone() - two.clone() * f.clone() * f1 * gap.clone() - cross.clone());
    let q2 = -(f.clone() * fvv * gap.clone())
        + common * (ff + two * f * f2 * gap.clone() - cross);
    [q1, q2]
}

pub(crate) fn raw_q<T: Field>(d: &FDerivs<T>, gap: &T) -> [T; 2] {
    let [a, b] = raw_q_times_gap(d, gap);
    [a / gap.clone(), b / gap.clone()]
}

/// Raw → normalised: `Q̂_i = -2 Q_i / (f (ġ^i)²)`.
pub(crate) fn normalise<T: Field>(d: &FDerivs<T>, gap: &T, raw: [T; 2]) -> [T; 2] {
    let g = g_derivs_generic(d, gap);
    let [dg1, dg2] = g.dg;
    let m2 = T::from_i64(-2);
    let [a, b] = raw;
    [
        m2.clone() * a / (d.f.clone() * dg1.clone() * dg1),
        m2 * b / (d.f.clone() * dg2.clone() * dg2),
    ]
}

pub fn g_derivs(speed: &SpeedFunction, r: RadiiPoint) -> Result<GDerivs, AnalyzerError> {
    let gap = require_ordered(r)?;
    Ok(g_derivs_generic(&speed.eval_f_derivs(r), &gap))
}

/// Reaction-term residual `Z`; identically zero for any speed, so the
/// returned value measures round-off only.
pub fn zero_order_term(speed: &SpeedFunction, r: RadiiPoint) -> Result<f64, AnalyzerError> {
    zero_order_from(&speed.eval_f_derivs(r), r)
}

/// `Z` from externally supplied speed derivatives.
pub fn zero_order_from(d: &FDerivs<f64>, r: RadiiPoint) -> Result<f64, AnalyzerError> {
    let gap = require_ordered(r)?;
    let g = g_derivs_generic(d, &gap);
    let (r1, r2) = (r.r1(), r.r2());
    let [f1, f2] = d.df;
    let [g1, g2] = g.dg;
    Ok((d.f + f1 * r1 + f2 * r2) * (g1 + g2) - (f1 + f2) * (g1 * r1 + g2 * r2))
}

/// Natural magnitude of the terms in `Z`, used to make the residual relative.
pub fn zero_order_scale(speed: &SpeedFunction, r: RadiiPoint) -> Result<f64, AnalyzerError> {
    let gap = require_ordered(r)?;
    let d = speed.eval_f_derivs(r);
    Ok((d.f.abs() + d.df[0] * r.r1() + d.df[1] * r.r2()) * (d.df[0] + d.df[1]) * gap)
}

/// Coefficients of `T1²` and `T2²`.
pub fn gradient_terms_raw(speed: &SpeedFunction, r: RadiiPoint) -> Result<(f64, f64), AnalyzerError> {
    let gap = require_ordered(r)?;
    let [a, b] = raw_q(&speed.eval_f_derivs(r), &gap);
    Ok((a, b))
}

/// Normalised `(Q1, Q2)`; see the module docs.
///
/// For `gauss_power` the formula is evaluated exactly (inputs converted to
/// rationals, the radical `(r1 r2)^{-α/2}` carried symbolically) and rounded
/// once. In floating point the leading powers of `t = r2/r1` cancel near
/// `α = 2`, which costs about `t²` ulps.
pub fn gradient_terms_general(
    speed: &SpeedFunction,
    r: RadiiPoint,
) -> Result<(f64, f64), AnalyzerError> {
    let gap = require_ordered(r)?;
    if speed.family == SpeedFamily::GaussPower {
        let [a, b] = gauss_general_exact(&to_rational(speed.alpha), &to_rational(r.r1()), &to_rational(r.r2()))?;
        return Ok((a.to_f64(), b.to_f64()));
    }
    let d = speed.eval_f_derivs(r);
    let [a, b] = normalise(&d, &gap, raw_q(&d, &gap));
    Ok((a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionCheck {
    /// The eight-term gradient expression, normalised by `2k^α`.
    pub q_full: f64,
    /// `Q1 w1² + Q2 w2²` with the normalised coefficients.
    pub q_combination: f64,
    pub residual: f64,
    /// Sum of the absolute values of the eight terms, same normalisation.
    pub scale: f64,
}

/// Builds every curvature-gradient component from the two free ones,
/// `w1 = ∇1 r22` and `w2 = ∇2 r11`, using `∇G = 0` and Codazzi, evaluates the
/// full eight-term `Q` and compares it with the two-coefficient reduction.
pub fn q_full_reduction_check(
    speed: &SpeedFunction,
    r: RadiiPoint,
    w1: f64,
    w2: f64,
) -> Result<ReductionCheck, AnalyzerError> {
    let gap = require_ordered(r)?;
    let d = speed.eval_f_derivs(r);
    let g = g_derivs_generic(&d, &gap);
    let [f1, f2] = d.df;
    let [g1, g2] = g.dg;
    let (fh, gh) = (&d.d2f, &g.d2g);

    // ġ¹ = f - ḟ¹(r2 - r1) < 0 always; ġ² may vanish for steep speeds
    let t1 = -w1 / g1;
    let t2 = if w2 == 0.0 {
        0.0
    } else if g2 == 0.0 {
        return Err(AnalyzerError::Pole {
            t: r.r2() / r.r1(),
            factor: "dg2",
        });
    } else {
        -w2 / g2
    };

    let d1_r11 = g2 * t1;
    let d1_r22 = w1;
    let d2_r11 = w2;
    let d2_r22 = g1 * t2;
    let d1_r12 = d2_r11;
    let d2_r12 = d1_r22;

    let x = (g1 * f2 - f1 * g2) / gap;
    let mixed = |gi: f64, fi: f64, a: usize, b: usize| gi * fh[a][b] - fi * gh[a][b];
    let terms = [
        mixed(g1, f1, 0, 0) * d1_r11 * d1_r11,
        mixed(g1, f1, 1, 1) * d1_r22 * d1_r22,
        2.0 * mixed(g1, f1, 0, 1) * d1_r11 * d1_r22,
        2.0 * x * d1_r12 * d1_r12,
        mixed(g2, f2, 0, 0) * d2_r11 * d2_r11,
        mixed(g2, f2, 1, 1) * d2_r22 * d2_r22,
        2.0 * mixed(g2, f2, 0, 1) * d2_r11 * d2_r22,
        2.0 * x * d2_r12 * d2_r12,
    ];
    let q: f64 = terms.iter().sum();
    let scale = 2.0 / d.f.abs() * terms.iter().map(|t| t.abs()).sum::<f64>();
    let q_full = -2.0 / d.f * q;

    let [q1, q2] = normalise(&d, &gap, raw_q(&d, &gap));
    let mut q_combination = 0.0;
    if w1 != 0.0 {
        q_combination += q1 * w1 * w1;
    }
    if w2 != 0.0 {
        q_combination += q2 * w2 * w2;
    }
    Ok(ReductionCheck {
        q_full,
        q_combination,
        residual: q_full - q_combination,
        scale,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexityMargin {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// `2 k̇¹ k̇² (k̇¹ + k̇²) - (r2 - r1) |k̈(u, u)|` with `u = k̇² e1 - k̇¹ e2`.
/// A nonnegative margin makes the cubic-in-α parts of both `Q_i` nonnegative.
pub fn convexity_condition(
    speed: &SpeedFunction,
    r: RadiiPoint,
) -> Result<ConvexityMargin, AnalyzerError> {
    let gap = require_ordered(r)?;
    let k = speed.eval_k_derivs(r);
    let [k1, k2] = k.dk;
    let lhs = 2.0 * k1 * k2 * (k1 + k2);
    let rhs = gap * quad_form(&k.d2k, &k2, &k1).abs();
    Ok(ConvexityMargin {
        lhs,
        rhs,
        margin: lhs - rhs,
    })
}

/// `(r1 - r2)² / (r1 r2)^α`; umbilic points give zero.
pub fn pinching_quantity(r: RadiiPoint, alpha: f64) -> f64 {
    let d = r.r1() - r.r2();
    d * d / (r.r1() * r.r2()).powf(alpha)
}
