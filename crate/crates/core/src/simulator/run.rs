use serde::{Deserialize, Serialize};

use super::diagnostics::{diagnostics, increase_drift, TraceRecord};
use super::profile::SupportProfile;
use super::stepper::{dt_from_radii, step};
use super::SimError;
use crate::speeds::{SpeedFamily, SpeedFunction};

/// Allowed rise of a monotone diagnostic above its running minimum.
pub const DRIFT_TOLERANCE: f64 = 1e-3;
/// Relative misfit of the extinction fit above which it is flagged.
pub const FIT_RESIDUAL_THRESHOLD: f64 = 1e-3;
/// Consecutive step halvings tried before a rejection becomes fatal.
pub const MAX_HALVINGS: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StopOptions {
    pub safety: f64,
    pub min_support_fraction: f64,
    pub max_steps: usize,
    pub record_stride: usize,
}

impl Default for StopOptions {
    fn default() -> Self {
        Self { safety: 0.25, min_support_fraction: 0.1, max_steps: 10_000_000, record_stride: 1 }
    }
}

impl StopOptions {
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |name, value| Err(SimError::InvalidParameter { name, value });
        if !(self.safety > 0.0 && self.safety <= 0.5) {
            return bad("safety", self.safety);
        }
        if !(self.min_support_fraction > 0.0 && self.min_support_fraction <= 0.2) {
            return bad("min_support_fraction", self.min_support_fraction);
        }
        if self.max_steps == 0 {
            return bad("max_steps", 0.0);
        }
        if self.record_stride == 0 {
            return bad("record_stride", 0.0);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    SupportFraction,
    StepBudget,
    ConvexityLoss,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extinction {
    pub time: f64,
    /// On-axis z-coordinate of the extinction point.
    pub point_z: f64,
    pub fit_residual: f64,
    pub fit_records: usize,
    pub low_confidence: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monotonicity {
    pub tolerance: f64,
    pub pinching_drift: f64,
    pub max_radius_drift: f64,
    pub ratio_drift: f64,
    pub pinching_non_increasing: bool,
    pub max_radius_non_increasing: bool,
    pub ratio_non_increasing: bool,
}

impl Monotonicity {
    pub fn from_records(records: &[TraceRecord]) -> Self {
        let pinching_drift = increase_drift(records.iter().map(|r| r.pinching_sup));
        let max_radius_drift = increase_drift(records.iter().map(|r| r.max_radius));
        let ratio_drift = increase_drift(records.iter().map(|r| r.max_ratio));
        Self {
            tolerance: DRIFT_TOLERANCE,
            pinching_drift,
            max_radius_drift,
            ratio_drift,
            pinching_non_increasing: pinching_drift <= DRIFT_TOLERANCE,
            max_radius_non_increasing: max_radius_drift <= DRIFT_TOLERANCE,
            ratio_non_increasing: ratio_drift <= DRIFT_TOLERANCE,
        }
    }

    pub fn all(&self) -> bool {
        self.pinching_non_increasing && self.max_radius_non_increasing && self.ratio_non_increasing
    }
}

/// Terminal fields of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowSummary {
    pub family: SpeedFamily,
    pub alpha: f64,
    pub n_nodes: usize,
    pub steps: usize,
    pub rejected_steps: usize,
    pub stop_reason: StopReason,
    pub final_time: f64,
    pub initial_min_support: f64,
    pub final_min_support: f64,
    pub extinction: Option<Extinction>,
    pub rescaled_deviation: Option<f64>,
    pub monotonicity: Monotonicity,
    pub initial_roundness: f64,
    pub final_roundness: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowTrace {
    pub records: Vec<TraceRecord>,
    pub summary: FlowSummary,
    pub final_profile: SupportProfile,
}

/// Drives the flow until the smallest support value falls to
/// `min_support_fraction` of its initial value or the step budget runs out.
///
/// Rejected steps are retried with half the step up to [`MAX_HALVINGS`]
/// times. If the profile still cannot advance, the trace so far comes back
/// inside [`SimError::RunFailed`].
pub fn run(profile: &SupportProfile, speed: &SpeedFunction, stop: &StopOptions) -> Result<FlowTrace, SimError> {
    stop.validate()?;
    let mut p = profile.clone();
    let s_min0 = p.min_support();
    let h = p.dtheta();
    let mut records = vec![diagnostics(&p, speed)?];
    let mut steps = 0usize;
    let mut rejected = 0usize;

    let reason = loop {
        if p.min_support() <= stop.min_support_fraction * s_min0 {
            break StopReason::SupportFraction;
        }
        if steps >= stop.max_steps {
            break StopReason::StepBudget;
        }
        let outcome = p
            .radii()
            .map(|r| dt_from_radii(h, &r, speed, stop.safety))
            .and_then(|dt| advance(&p, speed, dt, &mut rejected));
        match outcome {
            Ok(next) => p = next,
            Err(cause) => {
                let trace = finish(records, p, speed, steps, rejected, s_min0, StopReason::ConvexityLoss);
                return Err(SimError::RunFailed { trace: Box::new(trace), cause: Box::new(cause) });
            }
        }
        steps += 1;
        if steps % stop.record_stride == 0 {
            records.push(record(&p, speed, steps)?);
        }
    };
    if records.last().map(|r| r.step) != Some(steps) {
        records.push(record(&p, speed, steps)?);
    }
    Ok(finish(records, p, speed, steps, rejected, s_min0, reason))
}

fn advance(p: &SupportProfile, speed: &SpeedFunction, mut dt: f64, rejected: &mut usize) -> Result<SupportProfile, SimError> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(SimError::DegenerateStep { dt });
    }
    for _ in 0..MAX_HALVINGS {
        match step(p, speed, dt) {
            Ok(q) => return Ok(q),
            Err(SimError::StepRejected { .. }) => {
                *rejected += 1;
                dt *= 0.5;
            }
            Err(e) => return Err(e),
        }
    }
    step(p, speed, dt)
}

fn record(p: &SupportProfile, speed: &SpeedFunction, step: usize) -> Result<TraceRecord, SimError> {
    let mut r = diagnostics(p, speed)?;
    r.step = step;
    Ok(r)
}

fn finish(
    records: Vec<TraceRecord>,
    p: SupportProfile,
    speed: &SpeedFunction,
    steps: usize,
    rejected: usize,
    s_min0: f64,
    reason: StopReason,
) -> FlowTrace {
    let extinction = match reason {
        StopReason::ConvexityLoss => None,
        _ => extinction_estimate(&records, speed.alpha).ok().map(|mut e| {
            e.low_confidence |= reason != StopReason::SupportFraction;
            e
        }),
    };
    let rescaled_deviation = extinction.and_then(|e| rescale_deviation(&p, speed, e.time, e.point_z).ok());
    let first = records.first().copied();
    let last = records.last().copied();
    let summary = FlowSummary {
        family: speed.family,
        alpha: speed.alpha,
        n_nodes: p.n_nodes(),
        steps,
        rejected_steps: rejected,
        stop_reason: reason,
        final_time: p.time(),
        initial_min_support: s_min0,
        final_min_support: p.min_support(),
        extinction,
        rescaled_deviation,
        monotonicity: Monotonicity::from_records(&records),
        initial_roundness: first.map_or(f64::NAN, |r| r.roundness()),
        final_roundness: last.map_or(f64::NAN, |r| r.roundness()),
    };
    FlowTrace { records, summary, final_profile: p }
}

/// Extinction time and point from the records of the final 10% of steps.
///
/// The smallest half-width `w` of a shrinking sphere obeys
/// `w^{α+1} = w0^{α+1} - (α+1) c t`; a straight-line fit of `w^{α+1}`
/// against time is extrapolated to zero. The point is the Steiner point of
/// the last recorded profile.
pub fn extinction_estimate(records: &[TraceRecord], alpha: f64) -> Result<Extinction, SimError> {
    let last = records.last().ok_or(SimError::ShortTrace(0))?;
    let cutoff = last.step - last.step / 10;
    let mut tail: Vec<&TraceRecord> = records.iter().filter(|r| r.step >= cutoff).collect();
    if tail.len() < 3 {
        let k = records.len().min(3);
        tail = records[records.len() - k..].iter().collect();
    }
    if tail.len() < 2 {
        return Err(SimError::ShortTrace(tail.len()));
    }
    let m = tail.len() as f64;
    let ys: Vec<f64> = tail.iter().map(|r| r.min_half_width.powf(alpha + 1.0)).collect();
    let t_mean = tail.iter().map(|r| r.time).sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (r, y) in tail.iter().zip(&ys) {
        sxy += (r.time - t_mean) * (y - y_mean);
        sxx += (r.time - t_mean).powi(2);
    }
    let slope = sxy / sxx;
    let y_scale = ys.iter().fold(0.0f64, |a, &y| a.max(y.abs()));
    let misfit = tail
        .iter()
        .zip(&ys)
        .map(|(r, y)| (y - (y_mean + slope * (r.time - t_mean))).abs())
        .fold(0.0f64, f64::max);
    let fit_residual = misfit / y_scale;
    let ok = slope < 0.0 && slope.is_finite();
    let time = if ok { t_mean - y_mean / slope } else { last.time };
    Ok(Extinction {
        time,
        point_z: last.steiner_z,
        fit_residual,
        fit_records: tail.len(),
        low_confidence: !ok || !(fit_residual <= FIT_RESIDUAL_THRESHOLD),
    })
}

/// `max_j |s̃_j - 1|` for the profile recentred at `(0, 0, q_z)` and divided by
/// `((α+1) c (T - t))^{1/(α+1)}`, `c` the sphere constant of the speed.
pub fn rescale_deviation(
    profile: &SupportProfile,
    speed: &SpeedFunction,
    extinction_time: f64,
    q_z: f64,
) -> Result<f64, SimError> {
    let t = profile.time();
    if !(t < extinction_time) {
        return Err(SimError::PastExtinction { t, extinction: extinction_time });
    }
    let a1 = speed.alpha + 1.0;
    let scale = (a1 * speed.sphere_constant() * (extinction_time - t)).powf(1.0 / a1);
    Ok(profile
        .s()
        .iter()
        .zip(profile.theta())
        .map(|(&s, &th)| ((s - q_z * th.cos()) / scale - 1.0).abs())
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(alpha: f64) -> SpeedFunction {
        SpeedFunction::new(SpeedFamily::GaussPower, alpha).unwrap()
    }

    #[test]
    fn sphere_extinction_time() {
        let p = SupportProfile::sphere(1.0, 65).unwrap();
        let tr = run(&p, &gauss(2.0), &StopOptions::default()).unwrap();
        let e = tr.summary.extinction.unwrap();
        assert_eq!(tr.summary.stop_reason, StopReason::SupportFraction);
        assert!((e.time - 1.0 / 3.0).abs() < 1e-3, "{}", e.time);
        assert!(e.point_z.abs() < 1e-12);
        assert!(!e.low_confidence);
        let w = tr.records.windows(2).all(|w| w[1].time > w[0].time);
        assert!(w);
    }

    #[test]
    fn exact_sphere_has_no_deviation() {
        let sp = gauss(1.5);
        let t_ext = 0.7;
        let rho0 = (2.5f64 * t_ext).powf(1.0 / 2.5);
        let p = SupportProfile::sphere(rho0, 65).unwrap();
        assert!(rescale_deviation(&p, &sp, t_ext, 0.0).unwrap() < 1e-15);
        assert!(matches!(
            rescale_deviation(&p, &sp, 0.0, 0.0),
            Err(SimError::PastExtinction { .. })
        ));
    }

    #[test]
    fn step_budget_flags_low_confidence() {
        let p = SupportProfile::sphere(1.0, 65).unwrap();
        let stop = StopOptions { max_steps: 50, ..StopOptions::default() };
        let tr = run(&p, &gauss(1.0), &stop).unwrap();
        assert_eq!(tr.summary.stop_reason, StopReason::StepBudget);
        assert_eq!(tr.summary.steps, 50);
        assert!(tr.summary.extinction.unwrap().low_confidence);
    }

    #[test]
    fn stop_options_checked() {
        let p = SupportProfile::sphere(1.0, 65).unwrap();
        let stop = StopOptions { min_support_fraction: 0.5, ..StopOptions::default() };
        assert!(matches!(run(&p, &gauss(1.0), &stop), Err(SimError::InvalidParameter { .. })));
    }
}
