use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::profile::{ellipsoid_support, SupportProfile};
use super::run::{FlowSummary, FlowTrace, StopOptions};
use super::SimError;
use crate::speeds::{SpeedFamily, SpeedFunction};

pub const CSV_HEADER: [&str; 13] = [
    "step",
    "time",
    "pinching_sup",
    "max_radius",
    "min_radius",
    "max_ratio",
    "circumradius",
    "inradius",
    "min_speed",
    "max_speed",
    "min_support",
    "min_half_width",
    "steiner_z",
];

/// Flow run description as read from a JSON document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowConfig {
    pub family: SpeedFamily,
    pub alpha: f64,
    /// Polar semi-axis.
    pub a: f64,
    /// Equatorial semi-axis.
    pub b: f64,
    pub n_nodes: usize,
    #[serde(default = "default_safety")]
    pub safety: f64,
    #[serde(default = "default_stop_fraction")]
    pub stop_fraction: f64,
    #[serde(default = "default_stride")]
    pub record_stride: usize,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
}

fn default_safety() -> f64 {
    0.25
}

fn default_stop_fraction() -> f64 {
    0.1
}

fn default_stride() -> usize {
    1
}

fn default_max_steps() -> usize {
    StopOptions::default().max_steps
}

impl FlowConfig {
    pub fn speed(&self) -> Result<SpeedFunction, SimError> {
        Ok(SpeedFunction::new(self.family, self.alpha)?)
    }

    pub fn profile(&self) -> Result<SupportProfile, SimError> {
        ellipsoid_support(self.a, self.b, self.n_nodes)
    }

    pub fn stop(&self) -> StopOptions {
        StopOptions {
            safety: self.safety,
            min_support_fraction: self.stop_fraction,
            max_steps: self.max_steps,
            record_stride: self.record_stride,
        }
    }

    /// Checks every field without running anything.
    pub fn validate(&self) -> Result<(), SimError> {
        self.speed()?;
        self.profile()?;
        self.stop().validate()
    }
}

/// Reads and parses a [`FlowConfig`]; validation is separate.
pub fn read_flow_config(path: &Path) -> Result<FlowConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// One row per record, floats with 17 significant digits.
pub fn write_trace_csv(trace: &FlowTrace, path: &Path) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(CSV_HEADER)?;
    for r in &trace.records {
        let row = [
            r.step.to_string(),
            sci(r.time),
            sci(r.pinching_sup),
            sci(r.max_radius),
            sci(r.min_radius),
            sci(r.max_ratio),
            sci(r.circumradius),
            sci(r.inradius),
            sci(r.min_speed),
            sci(r.max_speed),
            sci(r.min_support),
            sci(r.min_half_width),
            sci(r.steiner_z),
        ];
        w.write_record(&row)?;
    }
    w.flush()
}

pub fn write_summary_json(summary: &FlowSummary, path: &Path) -> std::io::Result<()> {
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, summary)?;
    f.write_all(b"\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_and_rejects() {
        let c: FlowConfig = serde_json::from_str(
            r#"{"family":"gauss_power","alpha":2,"a":2,"b":1,"n_nodes":65}"#,
        )
        .unwrap();
        assert_eq!(c.safety, 0.25);
        assert_eq!(c.record_stride, 1);
        assert!(c.validate().is_ok());
        let bad = FlowConfig { n_nodes: 64, ..c.clone() };
        assert!(matches!(bad.validate(), Err(SimError::Resolution { .. })));
        let bad = FlowConfig { stop_fraction: 0.3, ..c };
        assert!(bad.validate().is_err());
        assert!(serde_json::from_str::<FlowConfig>(r#"{"family":"gauss_power","alpha":2,"a":2,"b":1,"n_nodes":65,"typo":1}"#).is_err());
    }
}
