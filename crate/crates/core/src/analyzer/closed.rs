//! Closed rational forms of the gradient coefficients for `K^{α/2}` and an
//! exact evaluation path over ℚ.
//!
//! For Gauss-curvature powers every quantity in the pinching algebra is
//! `(r1 r2)^{-α/2}` times a rational function of `(r1, r2, α)`. The exact
//! path keeps that radical factor symbolic ([`ScaledRational`]) and computes
//! the rational cofactor with big rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::gterms::{normalise, raw_q};
use super::poly::Poly;
use super::AnalyzerError;
use crate::scalar::Field;
use crate::speeds::{FDerivs, RadiiPoint};

/// Coefficients of the closed-form numerators, each quadratic in α:
/// `[2α²-5α+2, 4α²-7α+6, 2α²-3α-2, α-2]`.
pub fn numerator_coefficients<T: Field>(alpha: &T) -> [T; 4] {
    let c = T::from_i64;
    let a = alpha.clone();
    let a2 = a.clone() * a.clone();
    [
        c(2) * a2.clone() - c(5) * a.clone() + c(2),
        c(4) * a2.clone() - c(7) * a.clone() + c(6),
        c(2) * a2 - c(3) * a.clone() - c(2),
        a - c(2),
    ]
}

/// Numerators of `Q1/(2α)` and `Q2/(2α)` (homogeneous of degree five).
pub fn numerators<T: Field>(r1: &T, r2: &T, alpha: &T) -> [T; 2] {
    let [ca, cb, cc, cd] = numerator_coefficients(alpha);
    let mono = |p: &T, i: u32, q: &T, j: u32| {
        let mut x = T::from_i64(1);
        for _ in 0..i {
            x = x * p.clone();
        }
        for _ in 0..j {
            x = x * q.clone();
        }
        x
    };
    let side = |p: &T, q: &T| {
        ca.clone() * mono(p, 2, q, 3) - cb.clone() * mono(p, 3, q, 2)
            + cc.clone() * mono(p, 4, q, 1)
            + cd.clone() * mono(p, 5, q, 0)
    };
    [side(r1, r2), side(r2, r1)]
}

/// The numerators at `r1 = 1, r2 = t`, as polynomials in `t`.
pub fn numerator_polys(alpha: &BigRational) -> [Poly; 2] {
    let [ca, cb, cc, cd] = numerator_coefficients(alpha);
    let z = BigRational::zero;
    [
        Poly::new(vec![cd.clone(), cc.clone(), -cb.clone(), ca.clone()]),
        Poly::new(vec![z(), z(), ca, -cb, cc, cd]),
    ]
}

/// Closed-form `(Q1, Q2)` in floating point.
pub fn gradient_terms_gauss_closed(r: RadiiPoint, alpha: f64) -> Result<(f64, f64), AnalyzerError> {
    let gap = super::gterms::require_ordered(r)?;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(AnalyzerError::Speed(crate::speeds::SpeedError::InvalidExponent(alpha)));
    }
    let (r1, r2) = (r.r1(), r.r2());
    let d1 = alpha * r2 + (2.0 - alpha) * r1;
    let d2 = alpha * r1 + (2.0 - alpha) * r2;
    for (d, name) in [(d1, "alpha*r2+(2-alpha)*r1"), (d2, "alpha*r1+(2-alpha)*r2")] {
        if d == 0.0 {
            return Err(AnalyzerError::Pole { t: r2 / r1, factor: name });
        }
    }
    let [n1, n2] = numerators(&r1, &r2, &alpha);
    let base = (r1 * r2).powf(0.5 * alpha + 2.0) * gap;
    Ok((
        2.0 * alpha * n1 / (base * d1 * d1),
        2.0 * alpha * n2 / (base * d2 * d2),
    ))
}

/// Closed form with every numerator term replaced by its absolute value:
/// the magnitude against which disagreements near a zero of `Q_i` are judged.
pub fn gauss_closed_scale(r: RadiiPoint, alpha: f64) -> Result<(f64, f64), AnalyzerError> {
    let gap = super::gterms::require_ordered(r)?;
    let (r1, r2) = (r.r1(), r.r2());
    let c = numerator_coefficients(&alpha).map(f64::abs);
    let side = |p: f64, q: f64| {
        c[0] * p.powi(2) * q.powi(3) + c[1] * p.powi(3) * q.powi(2) + c[2] * p.powi(4) * q + c[3] * p.powi(5)
    };
    let d1 = alpha * r2 + (2.0 - alpha) * r1;
    let d2 = alpha * r1 + (2.0 - alpha) * r2;
    let base = (r1 * r2).powf(0.5 * alpha + 2.0) * gap;
    Ok((
        2.0 * alpha * side(r1, r2) / (base * d1 * d1),
        2.0 * alpha * side(r2, r1) / (base * d2 * d2),
    ))
}

/// `cofactor · base^exponent` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledRational {
    pub cofactor: BigRational,
    pub base: BigRational,
    pub exponent: BigRational,
}

impl ScaledRational {
    pub fn to_f64(&self) -> f64 {
        let c = self.cofactor.to_f64().unwrap_or(f64::NAN);
        let b = self.base.to_f64().unwrap_or(f64::NAN);
        let e = self.exponent.to_f64().unwrap_or(f64::NAN);
        c * b.powf(e)
    }

    /// The exact value when the radical factor is itself rational.
    pub fn exact(&self) -> Option<BigRational> {
        rational_pow(&self.base, &self.exponent).map(|p| &self.cofactor * p)
    }

    pub fn sign(&self) -> i8 {
        super::poly::sign(&self.cofactor)
    }
}

/// `x^e` when it is rational: needs the denominator of `e` as an exact root.
pub fn rational_pow(x: &BigRational, e: &BigRational) -> Option<BigRational> {
    if !x.is_positive() {
        return None;
    }
    let root = e.denom().to_u32()?;
    let num = x.numer().nth_root(root);
    let den = x.denom().nth_root(root);
    if num.pow(root) != *x.numer() || den.pow(root) != *x.denom() {
        return None;
    }
    let p = e.numer().to_i32()?;
    let base = BigRational::new(num, den);
    Some(if p >= 0 {
        num_traits::pow(base, p as usize)
    } else {
        num_traits::pow(base.recip(), (-p) as usize)
    })
}

pub fn to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Gauss-power derivatives divided by `P = (r1 r2)^{-α/2}`.
fn gauss_unscaled_derivs(alpha: &BigRational, r1: &BigRational, r2: &BigRational) -> FDerivs<BigRational> {
    let h = alpha * half();
    let h1 = &h + BigRational::one();
    let d11 = -(&h * &h1) / (r1 * r1);
    let d22 = -(&h * &h1) / (r2 * r2);
    let d12 = -(&h * &h) / (r1 * r2);
    FDerivs {
        f: -BigRational::one(),
        df: [&h / r1, &h / r2],
        d2f: [[d11, d12.clone()], [d12, d22]],
    }
}

fn check_exact_inputs(alpha: &BigRational, r1: &BigRational, r2: &BigRational) -> Result<BigRational, AnalyzerError> {
    if !(r1.is_positive() && r2 > r1 && alpha.is_positive()) {
        return Err(AnalyzerError::NotOrdered {
            r1: r1.to_f64().unwrap_or(f64::NAN),
            r2: r2.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(r2 - r1)
}

fn scaled(cofactor: BigRational, r1: &BigRational, r2: &BigRational, alpha: &BigRational) -> ScaledRational {
    ScaledRational {
        cofactor,
        base: r1 * r2,
        exponent: -(alpha * half()),
    }
}

/// Normalised general `(Q1, Q2)` evaluated exactly for `K^{α/2}`.
pub fn gauss_general_exact(
    alpha: &BigRational,
    r1: &BigRational,
    r2: &BigRational,
) -> Result<[ScaledRational; 2], AnalyzerError> {
    let gap = check_exact_inputs(alpha, r1, r2)?;
    let d = gauss_unscaled_derivs(alpha, r1, r2);
    let dg2 = -d.f.clone() - d.df[1].clone() * gap.clone();
    if dg2.is_zero() {
        return Err(AnalyzerError::Pole {
            t: (r2 / r1).to_f64().unwrap_or(f64::NAN),
            factor: "dg2",
        });
    }
    let [a, b] = normalise(&d, &gap, raw_q(&d, &gap));
    Ok([scaled(a, r1, r2, alpha), scaled(b, r1, r2, alpha)])
}

/// Closed-form `(Q1, Q2)` evaluated exactly.
pub fn gauss_closed_exact(
    alpha: &BigRational,
    r1: &BigRational,
    r2: &BigRational,
) -> Result<[ScaledRational; 2], AnalyzerError> {
    let gap = check_exact_inputs(alpha, r1, r2)?;
    let two = BigRational::from_i64(2);
    let d1 = alpha * r2 + (&two - alpha) * r1;
    let d2 = alpha * r1 + (&two - alpha) * r2;
    if d1.is_zero() || d2.is_zero() {
        return Err(AnalyzerError::Pole {
            t: (r2 / r1).to_f64().unwrap_or(f64::NAN),
            factor: if d1.is_zero() { "alpha*r2+(2-alpha)*r1" } else { "alpha*r1+(2-alpha)*r2" },
        });
    }
    let [n1, n2] = numerators(r1, r2, alpha);
    // (r1 r2)^{α/2+2} = P^{-1} (r1 r2)^2
    let rr = r1 * r2;
    let base = &rr * &rr * &gap;
    let pre = &two * alpha;
    Ok([
        scaled(&pre * n1 / (&base * &d1 * &d1), r1, r2, alpha),
        scaled(&pre * n2 / (&base * &d2 * &d2), r1, r2, alpha),
    ])
}

/// JSON form of an exact value: decimal integer strings plus a flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactNumber {
    pub value: String,
    pub rational: bool,
}

impl From<&BigRational> for ExactNumber {
    fn from(x: &BigRational) -> Self {
        Self {
            value: x.to_string(),
            rational: true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn closed_form_examples() {
        let (q1, q2) = gradient_terms_gauss_closed(RadiiPoint::new(1.0, 2.0).unwrap(), 2.0).unwrap();
        assert!((q1 + 1.0).abs() < 1e-15 && (q2 + 8.0).abs() < 1e-14);
        let (q1, _) = gradient_terms_gauss_closed(RadiiPoint::new(1.0, 2.0).unwrap(), 1.0).unwrap();
        let expected = -27.0 / (9.0 * 2f64.powf(1.5));
        assert!((q1 - expected).abs() < 1e-14, "{q1} vs {expected}");
        assert!((q1 + 1.06066).abs() < 1e-5);
        let (_, q2) = gradient_terms_gauss_closed(RadiiPoint::new(1.0, 1000.0).unwrap(), 2.1).unwrap();
        assert!(q2 > 0.0);
    }

    #[test]
    fn closed_form_pole() {
        // α r1 + (2-α) r2 = 0 at α=3, r=(1,3)
        let e = gradient_terms_gauss_closed(RadiiPoint::new(1.0, 3.0).unwrap(), 3.0).unwrap_err();
        assert!(matches!(e, AnalyzerError::Pole { .. }));
        assert!(gauss_closed_exact(&q(3, 1), &q(1, 1), &q(3, 1)).is_err());
    }

    #[test]
    fn coefficients_at_two() {
        let c = numerator_coefficients(&q(2, 1));
        assert_eq!(c, [q(0, 1), q(8, 1), q(0, 1), q(0, 1)]);
        let c = numerator_coefficients(&q(3, 2));
        assert_eq!(c[0], q(-1, 1));
        assert_eq!(c[3], q(-1, 2));
    }

    #[test]
    fn exact_paths_agree_at_one_two() {
        let (a, r1, r2) = (q(2, 1), q(1, 1), q(2, 1));
        let g = gauss_general_exact(&a, &r1, &r2).unwrap();
        let c = gauss_closed_exact(&a, &r1, &r2).unwrap();
        assert_eq!(g[0].exact().unwrap(), q(-1, 1));
        assert_eq!(g[1].exact().unwrap(), q(-8, 1));
        assert_eq!(g, c);
    }

    #[test]
    fn alpha_one_exact_cofactor() {
        // Q1 = -27 / (9 * 2^{3/2}) = -3 * 2^{-3/2}; radical (r1 r2)^{-1/2} = 2^{-1/2}
        let c = gauss_closed_exact(&q(1, 1), &q(1, 1), &q(2, 1)).unwrap();
        assert_eq!(c[0].cofactor, q(-3, 2));
        assert!(c[0].exact().is_none());
        assert!((c[0].to_f64() + 1.0606601717798212).abs() < 1e-15);
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rational_pow(&q(4, 9), &q(1, 2)), Some(q(2, 3)));
        assert_eq!(rational_pow(&q(4, 9), &q(-3, 2)), Some(q(27, 8)));
        assert_eq!(rational_pow(&q(2, 1), &q(1, 2)), None);
        assert_eq!(rational_pow(&q(8, 1), &q(-1, 3)), Some(q(1, 2)));
    }

    #[test]
    fn polys_match_homogeneous_numerators() {
        let a = q(7, 4);
        let [p1, p2] = numerator_polys(&a);
        for t in [q(3, 2), q(5, 1), q(101, 7)] {
            let [n1, n2] = numerators(&q(1, 1), &t, &a);
            assert_eq!(p1.eval(&t), n1);
            assert_eq!(p2.eval(&t), n2);
        }
    }
}
