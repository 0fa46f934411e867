//! Curvature pinching for convex surfaces contracting by homogeneous
//! functions of their principal radii.
//!
//! The crate has three layers:
//!
//! * [`speeds`]: the speed families `K^{α/2}`, `H^α`, `|A|^α` and
//!   `κ1^α + κ2^α`, with exact first and second radii-derivatives.
//! * [`analyzer`]: the algebra behind the pinching estimate for
//!   `G = -f (r2 - r1)` (the gradient coefficients `Q1`, `Q2`, the reaction
//!   term `Z`), sign certification over the ratio `r2/r1`, and bisection
//!   for the largest admissible exponent.
//! * [`simulator`]: an explicit solver for the support-function flow
//!   `∂s/∂t = f(r1, r2)` of convex surfaces of revolution, with diagnostics
//!   for the monotone quantities and the rescaled shape near extinction.
//!
//! [`cli`] wraps both as batch commands that emit JSON and CSV reports.

pub mod analyzer;
pub mod cli;
pub mod interval;
pub mod scalar;
pub mod simulator;
pub mod speeds;

pub use speeds::{FDerivs, KDerivs, RadiiPoint, SpeedError, SpeedFamily, SpeedFunction};
