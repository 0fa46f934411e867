use std::f64::consts::PI;
use std::sync::Arc;

use super::radii::{radii_from_support, RadiiField};
use super::SimError;

/// Smallest accepted node count (including both poles).
pub const MIN_NODES: usize = 33;

/// Support function of a convex surface of revolution on a uniform polar grid.
///
/// The grid is built so that `θ_{N-j} = π - θ_j` holds bit for bit and the
/// cotangent table is exactly odd about the equator. Together with the
/// stencil in [`radii_from_support`] this makes the discrete operator commute
/// with the reflection `θ ↦ π - θ` in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportProfile {
    grid: Arc<Grid>,
    s: Vec<f64>,
    time: f64,
}

/// Node angles and the trigonometric tables every step needs.
#[derive(Debug, PartialEq)]
struct Grid {
    theta: Vec<f64>,
    cot: Vec<f64>,
    sin: Vec<f64>,
    cos: Vec<f64>,
}

impl SupportProfile {
    /// Samples `support` on `n_nodes` nodes and checks every invariant.
    pub fn from_fn(n_nodes: usize, support: impl Fn(f64) -> f64) -> Result<Self, SimError> {
        let theta = grid(n_nodes)?;
        let s = theta.iter().map(|&t| support(t)).collect();
        Self::from_values(s, 0.0)
    }

    /// Wraps raw samples (node count taken from `s`) at time `time`.
    pub fn from_values(s: Vec<f64>, time: f64) -> Result<Self, SimError> {
        let theta = grid(s.len())?;
        if !(time.is_finite() && time >= 0.0) {
            return Err(SimError::InvalidParameter { name: "time", value: time });
        }
        let cot = cot_table(&theta);
        let (sin, cos) = theta.iter().map(|t| t.sin_cos()).unzip();
        let p = Self { grid: Arc::new(Grid { theta, cot, sin, cos }), s, time };
        p.check_support()?;
        radii_from_support(&p)?;
        Ok(p)
    }

    pub fn sphere(rho: f64, n_nodes: usize) -> Result<Self, SimError> {
        positive("rho", rho)?;
        Self::from_fn(n_nodes, |_| rho)
    }

    /// Sphere of radius `rho` centred at `(0, 0, c)`: `s = ρ + c cos θ`.
    pub fn translated_sphere(rho: f64, c: f64, n_nodes: usize) -> Result<Self, SimError> {
        positive("rho", rho)?;
        if !(c.abs() < rho) {
            return Err(SimError::InvalidParameter { name: "c", value: c });
        }
        Self::from_fn(n_nodes, |t| rho + c * t.cos())
    }

    pub fn theta(&self) -> &[f64] {
        &self.grid.theta
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn n_nodes(&self) -> usize {
        self.s.len()
    }

    pub fn dtheta(&self) -> f64 {
        PI / (self.s.len() - 1) as f64
    }

    pub fn radii(&self) -> Result<RadiiField, SimError> {
        radii_from_support(self)
    }

    pub fn min_support(&self) -> f64 {
        self.s.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Smallest half-width `(s(θ) + s(π-θ)) / 2`, which ignores translations.
    pub fn min_half_width(&self) -> f64 {
        let n = self.s.len() - 1;
        (0..=n / 2)
            .map(|j| 0.5 * (self.s[j] + self.s[n - j]))
            .fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn cot(&self) -> &[f64] {
        &self.grid.cot
    }

    pub(crate) fn sin(&self) -> &[f64] {
        &self.grid.sin
    }

    pub(crate) fn cos(&self) -> &[f64] {
        &self.grid.cos
    }

    /// Same grid, new values; invariants are the caller's business.
    pub(crate) fn with_values(&self, s: Vec<f64>, time: f64) -> Self {
        Self { grid: Arc::clone(&self.grid), s, time }
    }

    pub(crate) fn check_support(&self) -> Result<(), SimError> {
        match self.s.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
            Some(index) => Err(SimError::NonPositiveSupport { index, value: self.s[index] }),
            None => Ok(()),
        }
    }
}

/// `s(θ) = (a² cos²θ + b² sin²θ)^{1/2}` for polar semi-axis `a`, equatorial `b`.
pub fn ellipsoid_support(a: f64, b: f64, n_nodes: usize) -> Result<SupportProfile, SimError> {
    positive("a", a)?;
    positive("b", b)?;
    let theta = grid(n_nodes)?;
    let n = n_nodes - 1;
    let mut s = vec![0.0; n_nodes];
    // evaluate one hemisphere and mirror, so the samples are exactly even
    for j in 0..=n / 2 {
        s[j] = (a * theta[j].cos()).hypot(b * theta[j].sin());
        s[n - j] = s[j];
    }
    SupportProfile::from_values(s, 0.0)
}

impl SupportProfile {
    pub fn ellipsoid(a: f64, b: f64, n_nodes: usize) -> Result<Self, SimError> {
        ellipsoid_support(a, b, n_nodes)
    }
}

fn positive(name: &'static str, value: f64) -> Result<(), SimError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(SimError::InvalidParameter { name, value })
    }
}

fn grid(n_nodes: usize) -> Result<Vec<f64>, SimError> {
    if n_nodes < MIN_NODES || n_nodes % 2 == 0 {
        return Err(SimError::Resolution { n_nodes, min: MIN_NODES });
    }
    let n = n_nodes - 1;
    let h = PI / n as f64;
    let mut theta = vec![0.0; n_nodes];
    for j in 0..=n / 2 {
        theta[j] = j as f64 * h;
    }
    for j in n / 2 + 1..=n {
        theta[j] = PI - theta[n - j];
    }
    theta[n / 2] = 0.5 * PI;
    Ok(theta)
}

fn cot_table(theta: &[f64]) -> Vec<f64> {
    let n = theta.len() - 1;
    let mut cot = vec![0.0; theta.len()];
    for j in 1..n / 2 {
        cot[j] = theta[j].cos() / theta[j].sin();
        cot[n - j] = -cot[j];
    }
    cot
}
