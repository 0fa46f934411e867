use super::profile::SupportProfile;
use super::radii::{check, fill, RadiiField};
use super::SimError;
use crate::speeds::SpeedFunction;

/// Largest stable-looking step: `safety · Δθ² / max(ḟ¹ + ḟ²)`.
pub fn adaptive_dt(profile: &SupportProfile, speed: &SpeedFunction, safety: f64) -> Result<f64, SimError> {
    if !(safety > 0.0 && safety <= 0.5) {
        return Err(SimError::InvalidParameter { name: "safety", value: safety });
    }
    let r = profile.radii()?;
    Ok(dt_from_radii(profile.dtheta(), &r, speed, safety))
}

pub(crate) fn dt_from_radii(h: f64, r: &RadiiField, speed: &SpeedFunction, safety: f64) -> f64 {
    let stiff = r
        .r1
        .iter()
        .zip(&r.r2)
        .map(|(&a, &b)| {
            let d = speed.f_derivs_generic(a, b);
            d.df[0] + d.df[1]
        })
        .fold(0.0, f64::max);
    safety * h * h / stiff
}

/// One explicit midpoint step of `∂s/∂t = f(r1, r2)`.
///
/// The result is revalidated; a non-positive support value or radius comes
/// back as [`SimError::StepRejected`] so the caller can retry with a smaller
/// `dt`.
pub fn step(profile: &SupportProfile, speed: &SpeedFunction, dt: f64) -> Result<SupportProfile, SimError> {
    if !(dt >= 0.0 && dt.is_finite()) {
        return Err(SimError::InvalidParameter { name: "dt", value: dt });
    }
    if dt == 0.0 {
        return Ok(profile.clone());
    }
    let reject = |cause| SimError::StepRejected { dt, cause: Box::new(cause) };
    let (s0, cot, h) = (profile.s(), profile.cot(), profile.dtheta());
    let n = s0.len();
    let mut r = RadiiField { r1: vec![0.0; n], r2: vec![0.0; n] };

    fill(s0, cot, h, &mut r.r1, &mut r.r2);
    check(&r).map_err(reject)?;
    let half: Vec<f64> = (0..n).map(|j| s0[j] + 0.5 * dt * speed.value(r.r1[j], r.r2[j])).collect();

    fill(&half, cot, h, &mut r.r1, &mut r.r2);
    check(&r).map_err(reject)?;
    let next: Vec<f64> = (0..n).map(|j| s0[j] + dt * speed.value(r.r1[j], r.r2[j])).collect();

    let out = profile.with_values(next, profile.time() + dt);
    out.check_support().map_err(reject)?;
    fill(out.s(), cot, h, &mut r.r1, &mut r.r2);
    check(&r).map_err(reject)?;
    Ok(out)
}
