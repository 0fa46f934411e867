//! Pinching algebra, sign certification and exponent thresholds.

pub mod certify;
pub mod closed;
pub mod gterms;
pub mod poly;
pub mod threshold;

use thiserror::Error;

use crate::speeds::SpeedError;

pub use certify::{
    certify_nonpositive, log_ratio_grid, sign_scan, Method, QReport, RatioRegion, Verdict, Witness,
    DEFAULT_DEPTH_LIMIT, DEFAULT_SCAN_POINTS, DEFAULT_T_MAX,
};
pub use closed::{
    gauss_closed_exact, gauss_closed_scale, gauss_general_exact, gradient_terms_gauss_closed, ScaledRational,
};
pub use gterms::{
    convexity_condition, g_derivs, gradient_terms_general, gradient_terms_raw, pinching_quantity,
    q_full_reduction_check, zero_order_from, zero_order_scale, zero_order_term, ConvexityMargin,
    GDerivs, ReductionCheck,
};
pub use threshold::{find_threshold, Probe, ThresholdConfig, ThresholdResult};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalyzerError {
    #[error(transparent)]
    Speed(#[from] SpeedError),
    #[error("requires r2 > r1 > 0 (non-umbilic, ordered), got ({r1}, {r2})")]
    NotOrdered { r1: f64, r2: f64 },
    #[error("pole at t = {t}: factor {factor} vanishes")]
    Pole { t: f64, factor: &'static str },
    #[error("ratio grid must be non-empty with every t > 1 and finite")]
    InvalidGrid,
    #[error("t_max must be finite and at least 2, got {0}")]
    InvalidTMax(f64),
    #[error("invalid exponent range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("range does not bracket the threshold: {lo_verdict:?} at α={lo}, {hi_verdict:?} at α={hi}")]
    NonBracketing {
        lo: f64,
        lo_verdict: Verdict,
        hi: f64,
        hi_verdict: Verdict,
    },
    #[error("verdict is not monotone in α: {failing_verdict:?} at α={failing} but {passing_verdict:?} at α={passing}")]
    NonMonotoneVerdict {
        failing: f64,
        failing_verdict: Verdict,
        passing: f64,
        passing_verdict: Verdict,
    },
}
