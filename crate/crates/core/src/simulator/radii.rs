use super::profile::SupportProfile;
use super::SimError;

/// Principal radii at every node: meridional `r1 = s_θθ + s` and azimuthal
/// `r2 = cot θ · s_θ + s`. Both equal `s_θθ + s` at the poles.
#[derive(Clone, Debug, PartialEq)]
pub struct RadiiField {
    pub r1: Vec<f64>,
    pub r2: Vec<f64>,
}

impl RadiiField {
    pub fn len(&self) -> usize {
        self.r1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r1.is_empty()
    }

    pub fn max_radius(&self) -> f64 {
        self.r1.iter().chain(&self.r2).copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_radius(&self) -> f64 {
        self.r1.iter().chain(&self.r2).copied().fold(f64::INFINITY, f64::min)
    }
}

pub fn radii_from_support(profile: &SupportProfile) -> Result<RadiiField, SimError> {
    let n = profile.n_nodes();
    let mut field = RadiiField { r1: vec![0.0; n], r2: vec![0.0; n] };
    fill(profile.s(), profile.cot(), profile.dtheta(), &mut field.r1, &mut field.r2);
    check(&field)?;
    Ok(field)
}

/// Central differences with ghost values `s_{-1} = s_1`, `s_{N+1} = s_{N-1}`.
pub(crate) fn fill(s: &[f64], cot: &[f64], h: f64, r1: &mut [f64], r2: &mut [f64]) {
    let n = s.len() - 1;
    let inv_h2 = 1.0 / (h * h);
    let inv_2h = 0.5 / h;
    for j in 1..n {
        let stt = ((s[j + 1] + s[j - 1]) - 2.0 * s[j]) * inv_h2;
        let st = (s[j + 1] - s[j - 1]) * inv_2h;
        r1[j] = stt + s[j];
        r2[j] = cot[j] * st + s[j];
    }
    for (j, k) in [(0, 1), (n, n - 1)] {
        let r = 2.0 * (s[k] - s[j]) * inv_h2 + s[j];
        r1[j] = r;
        r2[j] = r;
    }
}

pub(crate) fn check(field: &RadiiField) -> Result<(), SimError> {
    let bad = field
        .r1
        .iter()
        .zip(&field.r2)
        .position(|(&a, &b)| !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()));
    match bad {
        Some(index) => Err(SimError::ConvexityLoss {
            index,
            r1: field.r1[index],
            r2: field.r2[index],
        }),
        None => Ok(()),
    }
}
