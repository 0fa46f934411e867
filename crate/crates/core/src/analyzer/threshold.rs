//! Bisection on the exponent for the largest α whose gradient terms stay
//! nonpositive.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certify::{certify_nonpositive, log_ratio_grid, sign_scan, Verdict};
use super::AnalyzerError;
use crate::speeds::{SpeedFamily, SpeedFunction};

/// Grid used when interval certification is inconclusive.
pub const FALLBACK_SCAN_POINTS: usize = 20_001;
/// Uniform α probes checked for a monotone verdict pattern before bisecting.
pub const MONOTONICITY_PROBES: usize = 9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdConfig {
    pub t_max: f64,
    pub depth_limit: usize,
    pub tol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Probe {
    pub alpha: f64,
    pub verdict: Verdict,
    /// True when interval certification was inconclusive and the dense scan decided.
    pub fallback: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub family: SpeedFamily,
    /// `[α_lo, α_hi]`: passes at `α_lo`, fails at `α_hi`.
    pub bracket: [f64; 2],
    pub width: f64,
    pub t_max: f64,
    pub probes: Vec<Probe>,
}

impl ThresholdResult {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.bracket[0] + self.bracket[1])
    }

    pub fn contains(&self, alpha: f64) -> bool {
        self.bracket[0] <= alpha && alpha <= self.bracket[1]
    }
}

/// One α probe: certification first, dense sampling if that is inconclusive.
pub fn probe(family: SpeedFamily, alpha: f64, t_max: f64, depth_limit: usize) -> Result<Probe, AnalyzerError> {
    let speed = SpeedFunction::new(family, alpha)?;
    let report = certify_nonpositive(&speed, t_max, depth_limit)?;
    if report.verdict != Verdict::Inconclusive {
        return Ok(Probe { alpha, verdict: report.verdict, fallback: false });
    }
    let scan = sign_scan(&speed, &log_ratio_grid(t_max, FALLBACK_SCAN_POINTS))?;
    Ok(Probe { alpha, verdict: scan.verdict, fallback: true })
}

/// Bisects `alpha_range` until the pass/fail bracket is at most `tol` wide.
///
/// The range must pass at its low end and fail at its high end. A coarse
/// sweep of interior probes runs first (in parallel, merged in α order); a
/// failing probe below a passing one is reported as
/// [`AnalyzerError::NonMonotoneVerdict`].
pub fn find_threshold(
    family: SpeedFamily,
    alpha_range: (f64, f64),
    cfg: &ThresholdConfig,
) -> Result<ThresholdResult, AnalyzerError> {
    let (lo0, hi0) = alpha_range;
    if !(lo0 > 0.0 && hi0 > lo0 && hi0.is_finite()) {
        return Err(AnalyzerError::InvalidRange { lo: lo0, hi: hi0 });
    }
    if !(cfg.tol > 0.0) {
        return Err(AnalyzerError::InvalidTolerance(cfg.tol));
    }
    let mut probes = Vec::new();
    let ends: Vec<Probe> = [lo0, hi0]
        .par_iter()
        .map(|&a| probe(family, a, cfg.t_max, cfg.depth_limit))
        .collect::<Result<_, _>>()?;
    probes.extend(ends.iter().copied());
    if !ends[0].verdict.passes() || ends[1].verdict.passes() {
        return Err(AnalyzerError::NonBracketing {
            lo: ends[0].alpha,
            lo_verdict: ends[0].verdict,
            hi: ends[1].alpha,
            hi_verdict: ends[1].verdict,
        });
    }

    let sweep: Vec<f64> = (1..MONOTONICITY_PROBES)
        .map(|i| lo0 + (hi0 - lo0) * i as f64 / MONOTONICITY_PROBES as f64)
        .collect();
    let swept: Vec<Probe> = sweep
        .par_iter()
        .map(|&a| probe(family, a, cfg.t_max, cfg.depth_limit))
        .collect::<Result<_, _>>()?;
    let mut ordered = vec![ends[0]];
    ordered.extend(swept.iter().copied());
    ordered.push(ends[1]);
    let first_fail = ordered.iter().position(|p| !p.verdict.passes()).unwrap();
    if let Some(bad) = ordered[first_fail..].iter().find(|p| p.verdict.passes()) {
        return Err(AnalyzerError::NonMonotoneVerdict {
            failing: ordered[first_fail].alpha,
            failing_verdict: ordered[first_fail].verdict,
            passing: bad.alpha,
            passing_verdict: bad.verdict,
        });
    }
    probes.extend(swept);

    // plain bisection on the original range; the sweep only guards monotonicity
    let (mut lo, mut hi) = (lo0, hi0);
    while hi - lo > cfg.tol {
        let mid = 0.5 * (lo + hi);
        let p = match probes.iter().find(|p| p.alpha == mid) {
            Some(p) => *p,
            None => {
                let p = probe(family, mid, cfg.t_max, cfg.depth_limit)?;
                probes.push(p);
                p
            }
        };
        if p.verdict.passes() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    probes.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
    Ok(ThresholdResult {
        family,
        bracket: [lo, hi],
        width: hi - lo,
        t_max: cfg.t_max,
        probes,
    })
}
