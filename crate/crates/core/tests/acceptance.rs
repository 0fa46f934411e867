//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the shared ellipsoid runs are
//! computed once and the report comes out in criterion order. The process
//! exits nonzero when a criterion fails, unless every failing case is listed
//! in [`EXPECTED_FAILURES`]. An expected failure that starts passing is also
//! an error, so the list cannot go stale silently.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use pinchflow::analyzer::threshold::probe;
use pinchflow::analyzer::{
    certify_nonpositive, find_threshold, gauss_closed_exact, gauss_closed_scale, gauss_general_exact,
    gradient_terms_gauss_closed, gradient_terms_general, q_full_reduction_check, zero_order_scale, zero_order_term,
    Method, ScaledRational, ThresholdConfig, Verdict, DEFAULT_DEPTH_LIMIT,
};
use pinchflow::simulator::{ellipsoid_support, run, FlowTrace, StopOptions, SupportProfile};
use pinchflow::{RadiiPoint, SpeedFamily, SpeedFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(criterion, case)` pairs known to miss their tolerance. The reason for
/// each is recorded in the decisions ledger next to the measured numbers.
const EXPECTED_FAILURES: &[(u32, &str)] = &[(8, "alpha=1")];

const SEED: u64 = 20_240_601;
const ALPHAS: [f64; 3] = [1.0, 1.5, 2.0];

struct Report {
    id: u32,
    name: &'static str,
    elapsed: Duration,
    limit: Duration,
    /// Cases outside tolerance; the criterion passes when this is empty.
    failing: Vec<String>,
    detail: Vec<String>,
}

impl Report {
    fn new(id: u32, name: &'static str, limit_secs: u64) -> Self {
        Self { id, name, elapsed: Duration::ZERO, limit: Duration::from_secs(limit_secs), failing: vec![], detail: vec![] }
    }

    fn check(&mut self, ok: bool, case: impl Into<String>, detail: String) {
        if !ok {
            self.failing.push(case.into());
        }
        self.detail.push(detail);
    }

    fn finish(mut self, t0: Instant) -> Self {
        self.elapsed = t0.elapsed();
        if self.elapsed > self.limit {
            self.failing.push("runtime".into());
        }
        self
    }
}

fn draw_point(rng: &mut ChaCha8Rng) -> RadiiPoint {
    let r1 = 10f64.powf(rng.gen_range(-2.0..2.0));
    let t = 1.0 + 10f64.powf(rng.gen_range(-3.0..3.0));
    RadiiPoint::new(r1, r1 * t).unwrap()
}

fn draw_speed(rng: &mut ChaCha8Rng) -> SpeedFunction {
    let fam = SpeedFamily::ALL[rng.gen_range(0..4)];
    SpeedFunction::new(fam, rng.gen_range(0.5..10.0)).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn zero_order() -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(1, "zero-order identity", 5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let s = draw_speed(&mut rng);
        let r = draw_point(&mut rng);
        let rel = zero_order_term(&s, r).unwrap().abs() / zero_order_scale(&s, r).unwrap();
        worst = worst.max(rel);
    }
    rep.check(worst <= 1e-12, "residual", format!("10^4 draws, max relative residual {worst:.2e}"));
    rep.finish(t0)
}

fn closed_vs_general() -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(2, "closed form vs general Q", 5);
    let mut worst = 0.0f64;
    for i in 1..=64 {
        let r = RadiiPoint::new(1.0, 10f64.powf(3.0 * i as f64 / 64.0)).unwrap();
        for j in 0..64 {
            let alpha = 0.5 + 1.5 * j as f64 / 63.0;
            let s = SpeedFunction::new(SpeedFamily::GaussPower, alpha).unwrap();
            let (g1, g2) = gradient_terms_general(&s, r).unwrap();
            let (c1, c2) = gradient_terms_gauss_closed(r, alpha).unwrap();
            worst = worst.max((g1 - c1).abs() / c1.abs()).max((g2 - c2).abs() / c2.abs());
        }
    }
    rep.check(worst <= 1e-10, "grid", format!("64x64 grid, max relative gap {worst:.2e}"));

    let want = [Some(q(-1)), Some(q(-8))];
    let g = gauss_general_exact(&q(2), &q(1), &q(2)).unwrap();
    let c = gauss_closed_exact(&q(2), &q(1), &q(2)).unwrap();
    let exact = |v: &[ScaledRational; 2]| [v[0].exact(), v[1].exact()];
    let (ge, ce) = (exact(&g), exact(&c));
    let show = |v: &[Option<BigRational>; 2]| v.iter().map(|x| x.as_ref().map_or("inexact".into(), |x| x.to_string())).collect::<Vec<_>>().join(", ");
    rep.check(
        ge == want && ce == want,
        "exact",
        format!("(1,2,2): general ({}), closed ({})", show(&ge), show(&ce)),
    );
    // keep the scale helper honest on the same point
    let (s1, s2) = gauss_closed_scale(RadiiPoint::new(1.0, 2.0).unwrap(), 2.0).unwrap();
    rep.check(s1 >= 1.0 && s2 >= 8.0, "scale", format!("closed scales ({s1}, {s2})"));
    rep.finish(t0)
}

fn gauss_sign_range() -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(3, "gauss sign range", 30);
    for alpha in [0.5, 1.0, 1.25, 1.5, 1.75, 2.0] {
        let s = SpeedFunction::new(SpeedFamily::GaussPower, alpha).unwrap();
        let r = certify_nonpositive(&s, 1e6, DEFAULT_DEPTH_LIMIT).unwrap();
        let ok = r.verdict == Verdict::NonpositiveCertified && r.region.tail != Method::Sampled;
        rep.check(ok, format!("alpha={alpha}"), format!("α={alpha}: {:?}, tail {:?}", r.verdict, r.region.tail));
    }
    for alpha in [0.4, 2.1] {
        let s = SpeedFunction::new(SpeedFamily::GaussPower, alpha).unwrap();
        let r = certify_nonpositive(&s, 1e6, DEFAULT_DEPTH_LIMIT).unwrap();
        let ok = r.verdict == Verdict::Violated && r.witness.as_ref().is_some_and(|w| w.q > 0.0);
        let w = r.witness.map(|w| format!("Q{}({:.4}) = {:.3e}", w.component, w.t, w.q)).unwrap_or_default();
        rep.check(ok, format!("alpha={alpha}"), format!("α={alpha}: {:?} {w}", r.verdict));
    }
    rep.finish(t0)
}

fn thresholds() -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(4, "exponent thresholds", 300);
    for (fam, range, tol, target) in [
        (SpeedFamily::MeanPower, (1.0, 8.0), 0.05, 5.16),
        (SpeedFamily::NormPower, (1.0, 12.0), 0.05, 8.15),
        (SpeedFamily::GaussPower, (1.0, 3.0), 0.01, 2.0),
    ] {
        let cfg = ThresholdConfig { t_max: 1e6, depth_limit: DEFAULT_DEPTH_LIMIT, tol };
        match find_threshold(fam, range, &cfg) {
            Ok(r) => {
                let ok = r.width <= tol && r.contains(target);
                let [lo, hi] = r.bracket;
                rep.check(ok, fam.to_string(), format!("{fam}: [{lo:.4}, {hi:.4}] width {:.4} vs {target}", r.width));
            }
            Err(e) => rep.check(false, fam.to_string(), format!("{fam}: {e}")),
        }
    }
    let mut verdicts = vec![];
    for alpha in [1.5, 3.0, 10.0, 50.0, 100.0] {
        let p = probe(SpeedFamily::SumPower, alpha, 1e6, DEFAULT_DEPTH_LIMIT).unwrap();
        rep.check(p.verdict.passes(), format!("sum_power alpha={alpha}"), String::new());
        verdicts.push(format!("{alpha}:{:?}", p.verdict));
    }
    rep.detail.retain(|d| !d.is_empty());
    rep.detail.push(format!("sum_power {}", verdicts.join(" ")));
    rep.finish(t0)
}

fn reduction() -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(5, "reduction identity", 5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut worst = 0.0f64;
    for _ in 0..1_000 {
        let s = draw_speed(&mut rng);
        let r = draw_point(&mut rng);
        let (w1, w2) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let c = q_full_reduction_check(&s, r, w1, w2).unwrap();
        worst = worst.max(c.residual.abs() / c.scale);
    }
    rep.check(worst <= 1e-12, "residual", format!("10^3 draws, max scaled residual {worst:.2e}"));
    rep.finish(t0)
}

fn gauss(alpha: f64) -> SpeedFunction {
    SpeedFunction::new(SpeedFamily::GaussPower, alpha).unwrap()
}

fn sphere_oracle() -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(6, "sphere oracle", 120);
    let rho0: f64 = 1.3;
    for alpha in ALPHAS {
        let tr = run(&SupportProfile::sphere(rho0, 201).unwrap(), &gauss(alpha), &StopOptions::default()).unwrap();
        let law = |t: f64| (rho0.powf(alpha + 1.0) - (alpha + 1.0) * t).powf(1.0 / (alpha + 1.0));
        let mut worst = 0.0f64;
        for rec in &tr.records {
            let exact = law(rec.time);
            worst = worst.max((rec.min_support / exact - 1.0).abs()).max((rec.circumradius / exact - 1.0).abs());
        }
        let fin = &tr.final_profile;
        let exact = law(fin.time());
        worst = fin.s().iter().fold(worst, |w, &s| w.max((s / exact - 1.0).abs()));
        let reached = tr.summary.final_min_support <= 0.1 * rho0 * 1.000_001;
        let t_want = rho0.powf(alpha + 1.0) / (alpha + 1.0);
        let t_err = tr.summary.extinction.map_or(f64::INFINITY, |e| (e.time - t_want).abs());
        rep.check(
            worst <= 1e-3 && t_err <= 1e-3 && reached,
            format!("alpha={alpha}"),
            format!("α={alpha}: radius error {worst:.2e}, |T - T*| {t_err:.2e}"),
        );
    }
    rep.finish(t0)
}

struct EllipsoidRuns {
    /// `(alpha, trace at N = 200, trace at N = 400)`
    runs: Vec<(f64, FlowTrace, FlowTrace)>,
    elapsed: Duration,
}

fn ellipsoid_runs() -> EllipsoidRuns {
    let t0 = Instant::now();
    let stop = StopOptions::default();
    let runs = ALPHAS
        .iter()
        .map(|&alpha| {
            let go = |n| run(&ellipsoid_support(2.0, 1.0, n).unwrap(), &gauss(alpha), &stop).unwrap();
            (alpha, go(201), go(401))
        })
        .collect();
    EllipsoidRuns { runs, elapsed: t0.elapsed() }
}

fn pinching_monotonicity(e: &EllipsoidRuns) -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(7, "pinching monotonicity", 600);
    for (alpha, coarse, fine) in &e.runs {
        let (mc, mf) = (&coarse.summary.monotonicity, &fine.summary.monotonicity);
        let pairs = [
            ("pinching", mc.pinching_drift, mf.pinching_drift),
            ("max_radius", mc.max_radius_drift, mf.max_radius_drift),
            ("max_ratio", mc.ratio_drift, mf.ratio_drift),
        ];
        for (name, d1, d2) in pairs {
            let ok = d1 <= 1e-3 && d2 <= 1e-3 && d2 <= 0.5 * d1;
            rep.check(ok, format!("alpha={alpha} {name}"), format!("α={alpha} {name} drift {d1:.2e} -> {d2:.2e}"));
        }
    }
    // the runs themselves are charged here
    rep.finish(t0 - e.elapsed)
}

fn rescaled_roundness(e: &EllipsoidRuns) -> Report {
    let t0 = Instant::now();
    let mut rep = Report::new(8, "roundness under rescaling", 600);
    for (alpha, coarse, fine) in &e.runs {
        let dev = |t: &FlowTrace| t.summary.rescaled_deviation.unwrap_or(f64::INFINITY);
        let (d1, d2) = (dev(coarse), dev(fine));
        rep.check(
            d1 <= 0.02 && d2 <= 0.02 && d2 <= d1,
            format!("alpha={alpha}"),
            format!("α={alpha} deviation {d1:.4e} -> {d2:.4e}"),
        );
    }
    rep.finish(t0)
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags through; only the name filter matters
    if std::env::args().skip(1).any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut reports = vec![zero_order(), closed_vs_general(), gauss_sign_range(), thresholds(), reduction(), sphere_oracle()];
    let e = ellipsoid_runs();
    reports.push(pinching_monotonicity(&e));
    reports.push(rescaled_roundness(&e));

    let mut bad = 0;
    for r in &reports {
        let expected: Vec<&str> = EXPECTED_FAILURES.iter().filter(|(id, _)| *id == r.id).map(|(_, c)| *c).collect();
        let unexpected: Vec<&String> = r.failing.iter().filter(|c| !expected.contains(&c.as_str())).collect();
        let stale: Vec<&&str> = expected.iter().filter(|c| !r.failing.iter().any(|f| f == *c)).collect();
        let verdict = if r.failing.is_empty() { "PASS" } else { "FAIL" };
        let mut note = String::new();
        if !r.failing.is_empty() {
            note = format!(" [failing: {}]", r.failing.join(", "));
            if unexpected.is_empty() {
                note.push_str(" (expected, see decisions ledger)");
            }
        }
        println!("criterion {}: {verdict} {} ({:.1} s){note}", r.id, r.name, r.elapsed.as_secs_f64());
        for d in &r.detail {
            println!("    {d}");
        }
        if !unexpected.is_empty() {
            bad += 1;
        }
        if !stale.is_empty() {
            println!("    expected failure now passes: {stale:?}");
            bad += 1;
        }
    }
    if bad == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{bad} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
