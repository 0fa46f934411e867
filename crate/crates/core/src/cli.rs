//! Batch commands behind the `pinchflow` binary.
//!
//! Every command resolves a [`RunConfig`] into a typed plan first, so a bad
//! field is reported (exit 2) before anything is computed or written. Reports
//! are pretty-printed JSON whose only run-dependent key is `generated_at`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analyzer::gterms::{normalise, raw_q};
use crate::analyzer::{
    certify_nonpositive, find_threshold, gauss_closed_scale, gradient_terms_gauss_closed,
    gradient_terms_general, log_ratio_grid, q_full_reduction_check, sign_scan, zero_order_from,
    zero_order_scale, AnalyzerError, QReport, ThresholdConfig, ThresholdResult, Verdict,
    DEFAULT_DEPTH_LIMIT, DEFAULT_SCAN_POINTS, DEFAULT_T_MAX,
};
use crate::simulator::{
    run, write_trace_csv, FlowConfig, FlowSummary, SimError, StopOptions,
};
use crate::speeds::{RadiiPoint, SpeedFamily, SpeedFunction};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_SAMPLES: usize = 10_000;
pub const Z_BOUND: f64 = 1e-12;
pub const CLOSED_BOUND: f64 = 1e-10;
pub const REDUCTION_BOUND: f64 = 1e-12;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Success,
    PropertyViolation,
    ConfigError,
    NumericalFailure,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::PropertyViolation => 1,
            Status::ConfigError => 2,
            Status::NumericalFailure => 3,
        }
    }

    fn worst(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn config(field: &str, message: impl fmt::Display) -> Self {
        Self { status: Status::ConfigError, message: format!("{field}: {message}") }
    }

    fn numerical(message: impl fmt::Display) -> Self {
        Self { status: Status::NumericalFailure, message: message.to_string() }
    }

    fn io(path: &Path, e: impl fmt::Display) -> Self {
        Self { status: Status::NumericalFailure, message: format!("writing {}: {e}", path.display()) }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// What a command printed and wrote.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub lines: Vec<String>,
    pub files: Vec<PathBuf>,
}

/// Union of every command's parameters. Unset fields fall back to defaults;
/// fields a command does not use are ignored by it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<SpeedFamily>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_range: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_limit: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub safety: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_fraction: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub record_stride: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    /// Sweep axes: exponents and polar/equatorial aspect ratios (`b = 1`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aspects: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($field:ident),*) => {
        RunConfig { $($field: $top.$field.or($base.$field)),* }
    };
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::config("config", format!("{}: {e}", path.display())))
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        overlay!(
            self, top, family, alpha, alpha_range, t_max, tolerance, grid_size, depth_limit, samples, seed, a, b,
            n_nodes, safety, stop_fraction, record_stride, max_steps, alphas, aspects, workers, out
        )
    }

    fn out_dir(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| PathBuf::from("reports"))
    }

    fn family(&self) -> Result<SpeedFamily, CliError> {
        self.family.ok_or_else(|| CliError::config("family", "required"))
    }

    fn speed(&self) -> Result<SpeedFunction, CliError> {
        let alpha = self.alpha.ok_or_else(|| CliError::config("alpha", "required"))?;
        SpeedFunction::new(self.family()?, alpha).map_err(|e| CliError::config("alpha", e))
    }

    fn t_max(&self) -> Result<f64, CliError> {
        let t = self.t_max.unwrap_or(DEFAULT_T_MAX);
        if t >= 2.0 && t.is_finite() {
            Ok(t)
        } else {
            Err(CliError::config("t_max", format!("must be finite and at least 2, got {t}")))
        }
    }

    fn flow_config(&self, alpha: f64, a: f64) -> FlowConfig {
        let d = StopOptions::default();
        FlowConfig {
            family: self.family.unwrap_or(SpeedFamily::GaussPower),
            alpha,
            a,
            b: self.b.unwrap_or(1.0),
            n_nodes: self.n_nodes.unwrap_or(201),
            safety: self.safety.unwrap_or(d.safety),
            stop_fraction: self.stop_fraction.unwrap_or(d.min_support_fraction),
            record_stride: self.record_stride.unwrap_or(d.record_stride),
            max_steps: self.max_steps.unwrap_or(d.max_steps),
        }
    }
}

fn sim_config_error(e: SimError) -> CliError {
    let field = match &e {
        SimError::Resolution { .. } => "n_nodes",
        SimError::InvalidParameter { name, .. } => match *name {
            "min_support_fraction" => "stop_fraction",
            other => other,
        },
        SimError::Speed(_) => "alpha",
        _ => "flow",
    };
    CliError::config(field, e)
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'static str,
    generated_at: u64,
    config: &'a RunConfig,
    result: &'a T,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn prepare_out(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::config("out", format!("{}: {e}", dir.display())))
}

fn write_report<T: Serialize>(path: &Path, command: &'static str, config: &RunConfig, result: &T) -> Result<(), CliError> {
    let env = Envelope { command, generated_at: now(), config, result };
    let mut text = serde_json::to_string_pretty(&env).map_err(|e| CliError::io(path, e))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

// ---------------------------------------------------------------- identities

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub draws: usize,
    pub max_residual: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

/// Speed derivative tampering for negative-control runs: `ḟ¹ ← (1 + ε) ḟ¹`
/// on the general path of the closed-form comparison. (`Z` vanishes for any
/// derivative values, so tampering there would go unnoticed.)
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corruption(pub f64);

fn draw_point(rng: &mut ChaCha8Rng) -> RadiiPoint {
    let r1 = 10f64.powf(rng.gen_range(-2.0..2.0));
    let t = 1.0 + 10f64.powf(rng.gen_range(-3.0..3.0));
    RadiiPoint::new(r1, r1 * t).expect("positive draw")
}

fn suite(name: &str, residuals: &[f64], bound: f64) -> SuiteResult {
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    let passed = residuals.iter().all(|r| *r <= bound);
    SuiteResult { name: name.to_string(), draws: residuals.len(), max_residual, bound, passed }
}

/// Randomised identity suites: `Z = 0`, closed vs general Gauss-power
/// coefficients, and the two-coefficient reduction of the full gradient term.
pub fn verify_identities(seed: u64, samples: usize, corruption: Option<Corruption>) -> Result<IdentityReport, AnalyzerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut z = Vec::with_capacity(samples);
    let mut closed = Vec::with_capacity(samples);
    let mut reduction = Vec::with_capacity(samples);

    for _ in 0..samples {
        let family = SpeedFamily::ALL[rng.gen_range(0..4)];
        let speed = SpeedFunction::new(family, rng.gen_range(0.5..10.0))?;
        let r = draw_point(&mut rng);
        let d = speed.eval_f_derivs(r);
        z.push(zero_order_from(&d, r)?.abs() / zero_order_scale(&speed, r)?);
    }

    for _ in 0..samples {
        let alpha = rng.gen_range(0.5..10.0);
        let speed = SpeedFunction::new(SpeedFamily::GaussPower, alpha)?;
        let r = draw_point(&mut rng);
        let (g1, g2) = match corruption {
            None => gradient_terms_general(&speed, r)?,
            Some(Corruption(eps)) => {
                let mut d = speed.eval_f_derivs(r);
                d.df[0] *= 1.0 + eps;
                let gap = r.r2() - r.r1();
                let [a, b] = normalise(&d, &gap, raw_q(&d, &gap));
                (a, b)
            }
        };
        let (c1, c2) = gradient_terms_gauss_closed(r, alpha)?;
        let (s1, s2) = gauss_closed_scale(r, alpha)?;
        closed.push(((g1 - c1).abs() / s1).max((g2 - c2).abs() / s2));
    }

    for _ in 0..samples {
        let family = SpeedFamily::ALL[rng.gen_range(0..4)];
        let speed = SpeedFunction::new(family, rng.gen_range(0.5..10.0))?;
        let r = draw_point(&mut rng);
        let (w1, w2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let c = q_full_reduction_check(&speed, r, w1, w2)?;
        reduction.push(c.residual.abs() / c.scale);
    }

    let suites = vec![
        suite("zero_order_residual", &z, Z_BOUND),
        suite("closed_form_agreement", &closed, CLOSED_BOUND),
        suite("reduction_identity", &reduction, REDUCTION_BOUND),
    ];
    let passed = suites.iter().all(|s| s.passed);
    Ok(IdentityReport { seed, suites, passed })
}

pub fn cmd_verify_identities(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cmd_verify_identities_with(cfg, None)
}

/// [`cmd_verify_identities`] with an optional derivative corruption hook.
pub fn cmd_verify_identities_with(cfg: &RunConfig, corruption: Option<Corruption>) -> Result<Outcome, CliError> {
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        return Err(CliError::config("samples", "must be positive"));
    }
    let dir = cfg.out_dir();
    prepare_out(&dir)?;

    let report = verify_identities(seed, samples, corruption).map_err(CliError::numerical)?;
    let path = dir.join("identities.json");
    write_report(&path, "verify-identities", cfg, &report)?;
    let mut lines: Vec<String> = report
        .suites
        .iter()
        .map(|s| {
            format!(
                "{:<24} draws={:<6} max={:.3e} bound={:.0e} {}",
                s.name,
                s.draws,
                s.max_residual,
                s.bound,
                if s.passed { "ok" } else { "FAIL" }
            )
        })
        .collect();
    lines.push(format!("seed {seed}: {}", if report.passed { "all identities hold" } else { "identity violated" }));
    Ok(Outcome {
        status: if report.passed { Status::Success } else { Status::PropertyViolation },
        lines,
        files: vec![path],
    })
}

// ---------------------------------------------------------------- q-sign

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::NonpositiveCertified | Verdict::NonpositiveSampled => Status::Success,
        Verdict::Violated => Status::PropertyViolation,
        Verdict::Inconclusive => Status::NumericalFailure,
    }
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default()
}

#[derive(Serialize)]
struct QSignResult<'a> {
    report: &'a QReport,
    /// Dense sample of the same range, for orientation only.
    scan: &'a QReport,
}

pub fn cmd_q_sign(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let speed = cfg.speed()?;
    let t_max = cfg.t_max()?;
    let depth = cfg.depth_limit.unwrap_or(DEFAULT_DEPTH_LIMIT);
    let grid = cfg.grid_size.unwrap_or(DEFAULT_SCAN_POINTS);
    if grid < 2 {
        return Err(CliError::config("grid_size", "must be at least 2"));
    }
    let dir = cfg.out_dir();
    prepare_out(&dir)?;

    let report = certify_nonpositive(&speed, t_max, depth).map_err(CliError::numerical)?;
    let scan = sign_scan(&speed, &log_ratio_grid(t_max, grid)).map_err(CliError::numerical)?;
    let path = dir.join("q_sign.json");
    write_report(&path, "q-sign", cfg, &QSignResult { report: &report, scan: &scan })?;

    let mut line = format!("{} alpha={}: {}", speed.family, speed.alpha, verdict_name(report.verdict));
    if let Some(w) = &report.witness {
        line.push_str(&format!(" (Q{} = {:.6e} at t = {:.6e})", w.component, w.q, w.t));
    }
    Ok(Outcome { status: verdict_status(report.verdict), lines: vec![line], files: vec![path] })
}

// ---------------------------------------------------------------- threshold

/// Search range used when none is given.
pub fn default_alpha_range(family: SpeedFamily) -> [f64; 2] {
    match family {
        SpeedFamily::GaussPower => [1.0, 3.0],
        SpeedFamily::MeanPower => [1.0, 8.0],
        SpeedFamily::NormPower => [1.0, 12.0],
        SpeedFamily::SumPower => [1.5, 100.0],
    }
}

pub fn cmd_threshold(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let family = cfg.family()?;
    let [lo, hi] = cfg.alpha_range.unwrap_or_else(|| default_alpha_range(family));
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(CliError::config("alpha_range", format!("need 0 < lo < hi, got [{lo}, {hi}]")));
    }
    let tol = cfg.tolerance.unwrap_or(0.01);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::config("tolerance", format!("must be positive, got {tol}")));
    }
    let tc = ThresholdConfig { t_max: cfg.t_max()?, depth_limit: cfg.depth_limit.unwrap_or(DEFAULT_DEPTH_LIMIT), tol };
    let dir = cfg.out_dir();
    prepare_out(&dir)?;

    let result: ThresholdResult = match pool(cfg)?.install(|| find_threshold(family, (lo, hi), &tc)) {
        Ok(r) => r,
        Err(e @ AnalyzerError::NonBracketing { .. }) => return Err(CliError::config("alpha_range", e)),
        Err(e) => return Err(CliError::numerical(e)),
    };
    let path = dir.join("threshold.json");
    write_report(&path, "threshold", cfg, &result)?;
    let line = format!(
        "{family}: threshold in [{:.6}, {:.6}], midpoint {:.6}, width {:.3e}",
        result.bracket[0],
        result.bracket[1],
        result.midpoint(),
        result.width
    );
    Ok(Outcome { status: Status::Success, lines: vec![line], files: vec![path] })
}

fn pool(cfg: &RunConfig) -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        if n == 0 {
            return Err(CliError::config("workers", "must be positive"));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::config("workers", e))
}

// ---------------------------------------------------------------- flow

fn flow_lines(s: &FlowSummary) -> Vec<String> {
    let m = &s.monotonicity;
    let mut lines = vec![
        format!("{} alpha={} nodes={}: {} steps, stop {:?}", s.family, s.alpha, s.n_nodes, s.steps, s.stop_reason),
        format!(
            "monotone: pinching {} ({:.2e}), max radius {} ({:.2e}), ratio {} ({:.2e})",
            m.pinching_non_increasing, m.pinching_drift, m.max_radius_non_increasing, m.max_radius_drift,
            m.ratio_non_increasing, m.ratio_drift
        ),
        format!("roundness {:.6} -> {:.6}", s.initial_roundness, s.final_roundness),
    ];
    if let Some(e) = s.extinction {
        lines.push(format!(
            "extinction T = {:.9} q_z = {:.3e}{}",
            e.time,
            e.point_z,
            if e.low_confidence { " (low confidence)" } else { "" }
        ));
    }
    if let Some(d) = s.rescaled_deviation {
        lines.push(format!("rescaled deviation {d:.6}"));
    }
    lines
}

pub fn cmd_flow(cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.family()?;
    let alpha = cfg.alpha.ok_or_else(|| CliError::config("alpha", "required"))?;
    let a = cfg.a.ok_or_else(|| CliError::config("a", "required"))?;
    let fc = cfg.flow_config(alpha, a);
    fc.validate().map_err(sim_config_error)?;
    let dir = cfg.out_dir();
    prepare_out(&dir)?;

    let csv = dir.join("trace.csv");
    let json = dir.join("summary.json");
    let (trace, status, failure) = match run(&fc.profile().map_err(sim_config_error)?, &fc.speed().map_err(sim_config_error)?, &fc.stop()) {
        Ok(t) => {
            let ok = t.summary.monotonicity.all();
            (t, if ok { Status::Success } else { Status::PropertyViolation }, None)
        }
        Err(SimError::RunFailed { trace, cause }) => (*trace, Status::NumericalFailure, Some(cause.to_string())),
        Err(e) => return Err(CliError::numerical(e)),
    };
    write_trace_csv(&trace, &csv).map_err(|e| CliError::io(&csv, e))?;
    write_report(&json, "flow", cfg, &trace.summary)?;
    let mut lines = flow_lines(&trace.summary);
    if let Some(f) = failure {
        lines.push(format!("run failed: {f} (partial trace kept)"));
    }
    Ok(Outcome { status, lines, files: vec![csv, json] })
}

// ---------------------------------------------------------------- sweep

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub alpha: f64,
    pub aspect: f64,
    pub summary: FlowSummary,
    pub failure: Option<String>,
}

/// Flow runs over `alphas × aspects` on a worker pool, merged in input order.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let alphas = cfg.alphas.clone().unwrap_or_else(|| vec![1.0, 1.5, 2.0]);
    let aspects = cfg.aspects.clone().unwrap_or_else(|| vec![2.0]);
    if alphas.is_empty() || aspects.is_empty() {
        return Err(CliError::config("alphas/aspects", "must be non-empty"));
    }
    let b = cfg.b.unwrap_or(1.0);
    let mut jobs = Vec::new();
    for &alpha in &alphas {
        for &aspect in &aspects {
            let fc = cfg.flow_config(alpha, aspect * b);
            fc.validate().map_err(sim_config_error)?;
            jobs.push((alpha, aspect, fc));
        }
    }
    let pool = pool(cfg)?;
    let dir = cfg.out_dir();
    prepare_out(&dir)?;

    let results: Vec<Result<SweepEntry, SimError>> = pool.install(|| {
        jobs.par_iter()
            .map(|(alpha, aspect, fc)| {
                let out = run(&fc.profile()?, &fc.speed()?, &fc.stop());
                let (summary, failure) = match out {
                    Ok(t) => (t.summary, None),
                    Err(SimError::RunFailed { trace, cause }) => (trace.summary, Some(cause.to_string())),
                    Err(e) => return Err(e),
                };
                Ok(SweepEntry { alpha: *alpha, aspect: *aspect, summary, failure })
            })
            .collect()
    });
    let entries: Vec<SweepEntry> = results.into_iter().collect::<Result<_, _>>().map_err(CliError::numerical)?;

    let path = dir.join("sweep.json");
    write_report(&path, "sweep", cfg, &entries)?;
    let mut status = Status::Success;
    let mut lines = Vec::new();
    for e in &entries {
        let s = &e.summary;
        let st = if e.failure.is_some() {
            Status::NumericalFailure
        } else if !s.monotonicity.all() {
            Status::PropertyViolation
        } else {
            Status::Success
        };
        status = status.worst(st);
        lines.push(format!(
            "alpha={:<6} aspect={:<5} steps={:<8} monotone={} deviation={}",
            e.alpha,
            e.aspect,
            s.steps,
            s.monotonicity.all(),
            s.rescaled_deviation.map_or("n/a".to_string(), |d| format!("{d:.5}"))
        ));
    }
    Ok(Outcome { status, lines, files: vec![path] })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlay_prefers_top() {
        let base = RunConfig { alpha: Some(1.0), seed: Some(3), ..Default::default() };
        let top = RunConfig { alpha: Some(2.0), ..Default::default() };
        let m = base.overlay(top);
        assert_eq!(m.alpha, Some(2.0));
        assert_eq!(m.seed, Some(3));
    }

    #[test]
    fn unknown_config_field_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"alpah": 2}"#).is_err());
    }

    #[test]
    fn identities_hold_and_corruption_trips() {
        let r = verify_identities(1, 500, None).unwrap();
        assert!(r.passed, "{r:?}");
        let r = verify_identities(1, 500, Some(Corruption(1e-6))).unwrap();
        assert!(!r.suites[1].passed);
        assert!(r.suites[0].passed && r.suites[2].passed);
    }

    #[test]
    fn status_codes() {
        assert_eq!(Status::Success.code(), 0);
        assert_eq!(Status::PropertyViolation.code(), 1);
        assert_eq!(Status::ConfigError.code(), 2);
        assert_eq!(Status::NumericalFailure.code(), 3);
        assert_eq!(Status::PropertyViolation.worst(Status::NumericalFailure), Status::NumericalFailure);
    }
}
