use serde::{Deserialize, Serialize};

use super::profile::SupportProfile;
use super::SimError;
use crate::speeds::SpeedFunction;

/// Per-step diagnostics of one profile.
///
/// `circumradius` is the largest distance from the Steiner point to the
/// sampled boundary points and `inradius` is `min_j (s_j - p·u_j)`, the
/// largest ball about the Steiner point that fits under the sampled support
/// planes. Both only look at nodes, so they slightly underestimate and
/// overestimate their continuous counterparts respectively.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub step: usize,
    pub time: f64,
    /// `sup (r1 - r2)² / (r1 r2)^α`.
    pub pinching_sup: f64,
    pub max_radius: f64,
    pub min_radius: f64,
    /// `sup max(r1, r2) / min(r1, r2)`.
    pub max_ratio: f64,
    pub circumradius: f64,
    pub inradius: f64,
    /// `min |f|` over nodes.
    pub min_speed: f64,
    pub max_speed: f64,
    pub min_support: f64,
    pub min_half_width: f64,
    pub steiner_z: f64,
}

impl TraceRecord {
    pub fn roundness(&self) -> f64 {
        self.circumradius / self.inradius
    }
}

pub fn diagnostics(profile: &SupportProfile, speed: &SpeedFunction) -> Result<TraceRecord, SimError> {
    let r = profile.radii()?;
    let alpha = speed.alpha;
    let mut pinching_sup = 0.0f64;
    let mut max_ratio = 1.0f64;
    let (mut min_speed, mut max_speed) = (f64::INFINITY, 0.0f64);
    for (&a, &b) in r.r1.iter().zip(&r.r2) {
        pinching_sup = pinching_sup.max((a - b) * (a - b) / (a * b).powf(alpha));
        max_ratio = max_ratio.max(a.max(b) / a.min(b));
        let f = speed.value(a, b).abs();
        min_speed = min_speed.min(f);
        max_speed = max_speed.max(f);
    }
    let steiner_z = steiner_z(profile);
    let (circumradius, inradius) = ball_estimates(profile, steiner_z);
    Ok(TraceRecord {
        step: 0,
        time: profile.time(),
        pinching_sup,
        max_radius: r.max_radius(),
        min_radius: r.min_radius(),
        max_ratio,
        circumradius,
        inradius,
        min_speed,
        max_speed,
        min_support: profile.min_support(),
        min_half_width: profile.min_half_width(),
        steiner_z,
    })
}

/// `(3/2) ∫_0^π s cos θ sin θ dθ` by composite Simpson.
pub(crate) fn steiner_z(profile: &SupportProfile) -> f64 {
    let (s, sin, cos) = (profile.s(), profile.sin(), profile.cos());
    let n = s.len() - 1;
    let g = |j: usize| s[j] * cos[j] * sin[j];
    let mut acc = g(0) + g(n);
    for j in 1..n {
        acc += if j % 2 == 1 { 4.0 * g(j) } else { 2.0 * g(j) };
    }
    1.5 * acc * profile.dtheta() / 3.0
}

fn ball_estimates(profile: &SupportProfile, pz: f64) -> (f64, f64) {
    let (s, sins, coss) = (profile.s(), profile.sin(), profile.cos());
    let n = s.len() - 1;
    let inv_2h = 0.5 / profile.dtheta();
    let mut circ = 0.0f64;
    let mut inr = f64::INFINITY;
    for j in 0..=n {
        let (sin, cos) = (sins[j], coss[j]);
        let st = if j == 0 || j == n { 0.0 } else { (s[j + 1] - s[j - 1]) * inv_2h };
        let x = s[j] * sin + st * cos;
        let z = s[j] * cos - st * sin;
        circ = circ.max(x.hypot(z - pz));
        inr = inr.min(s[j] - pz * cos);
    }
    (circ, inr)
}

/// Largest rise of a series above its running minimum (0 for a non-increasing series).
pub fn increase_drift(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut low = f64::INFINITY;
    let mut drift = 0.0f64;
    for v in values {
        drift = drift.max(v - low);
        low = low.min(v);
    }
    drift
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::profile::ellipsoid_support;
    use crate::speeds::SpeedFamily;

    fn gauss(alpha: f64) -> SpeedFunction {
        SpeedFunction::new(SpeedFamily::GaussPower, alpha).unwrap()
    }

    #[test]
    fn sphere_is_round() {
        let p = SupportProfile::sphere(1.0, 201).unwrap();
        let d = diagnostics(&p, &gauss(2.0)).unwrap();
        assert!(d.pinching_sup < 1e-20);
        assert!((d.max_ratio - 1.0).abs() < 1e-12);
        assert!((d.roundness() - 1.0).abs() < 1e-12);
        assert!(d.steiner_z.abs() < 1e-15);
    }

    #[test]
    fn translated_sphere_centre() {
        let p = SupportProfile::translated_sphere(1.0, 0.3, 201).unwrap();
        let d = diagnostics(&p, &gauss(1.0)).unwrap();
        assert!((d.steiner_z - 0.3).abs() < 1e-8, "{}", d.steiner_z);
        assert!((d.circumradius - 1.0).abs() < 1e-6);
        assert!((d.inradius - 1.0).abs() < 1e-8);
    }

    #[test]
    fn ellipsoid_initial_values() {
        let p = ellipsoid_support(2.0, 1.0, 201).unwrap();
        let d = diagnostics(&p, &gauss(2.0)).unwrap();
        let h2 = p.dtheta().powi(2);
        assert!((d.max_radius - 4.0).abs() < 40.0 * h2);
        assert!((d.circumradius - 2.0).abs() < 1e-12);
        assert!((d.inradius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn drift_of_series() {
        assert_eq!(increase_drift([3.0, 2.0, 1.0]), 0.0);
        assert_eq!(increase_drift([3.0, 1.0, 1.5, 0.5]), 0.5);
        assert_eq!(increase_drift(std::iter::empty()), 0.0);
    }
}
