//! Axisymmetric support-function flow `∂s/∂t = f(r1, r2)`.
//!
//! A convex surface of revolution about the z-axis is stored through its
//! support function sampled on a polar-angle grid `θ ∈ [0, π]`. Radii come
//! from second-order central differences with even reflection at the poles,
//! time stepping is explicit midpoint with a parabolic step cap.

mod diagnostics;
mod io;
mod profile;
mod radii;
mod run;
mod stepper;

use thiserror::Error;

use crate::speeds::SpeedError;

pub use diagnostics::{diagnostics, increase_drift, TraceRecord};
pub use io::{read_flow_config, write_summary_json, write_trace_csv, FlowConfig, CSV_HEADER};
pub use profile::{ellipsoid_support, SupportProfile, MIN_NODES};
pub use radii::{radii_from_support, RadiiField};
pub use run::{
    extinction_estimate, rescale_deviation, run, Extinction, FlowSummary, FlowTrace, Monotonicity,
    StopOptions, StopReason, DRIFT_TOLERANCE, FIT_RESIDUAL_THRESHOLD, MAX_HALVINGS,
};
pub use stepper::{adaptive_dt, step};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error(transparent)]
    Speed(#[from] SpeedError),
    #[error("need an odd node count of at least {min}, got {n_nodes}")]
    Resolution { n_nodes: usize, min: usize },
    #[error("invalid parameter `{name}`: {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("support value {value} at node {index} is not positive")]
    NonPositiveSupport { index: usize, value: f64 },
    #[error("convexity lost at node {index}: (r1, r2) = ({r1}, {r2})")]
    ConvexityLoss { index: usize, r1: f64, r2: f64 },
    #[error("step of size {dt} rejected: {cause}")]
    StepRejected { dt: f64, cause: Box<SimError> },
    #[error("step size {dt} is not positive and finite (speed overflow)")]
    DegenerateStep { dt: f64 },
    #[error("time {t} is not before the extinction time {extinction}")]
    PastExtinction { t: f64, extinction: f64 },
    #[error("trace has {0} records, too few to fit")]
    ShortTrace(usize),
    #[error("run failed after {} steps: {cause}", .trace.records.last().map_or(0, |r| r.step))]
    RunFailed { trace: Box<FlowTrace>, cause: Box<SimError> },
}
