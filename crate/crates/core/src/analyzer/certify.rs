//! Sign analysis of the gradient coefficients over the ratio `t = r2/r1 > 1`.
//!
//! Both `Q_i` are homogeneous in `(r1, r2)`, so their signs only depend on
//! `t`; everything here works at `r = (1, t)`.
//!
//! * [`sign_scan`] samples the normalised coefficients on a grid.
//! * [`certify_nonpositive`] produces a rigorous verdict. For `K^{α/2}` it
//!   runs Sturm root isolation on the exact closed-form numerators over
//!   `(1, t_max]` and `(t_max, ∞)`. For the other families it encloses
//!   `(r2 - r1)·Q_i` with interval arithmetic on an adaptive subdivision of
//!   `(1, t_max]` and samples the tail.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::closed::{gauss_closed_exact, numerator_polys, to_rational, ExactNumber};
use super::gterms::{gradient_terms_general, raw_q_times_gap};
use super::poly::{isolate_roots, Poly, SturmChain};
use super::AnalyzerError;
use crate::interval::Interval;
use crate::speeds::{RadiiPoint, SpeedFamily, SpeedFunction};

pub const DEFAULT_T_MAX: f64 = 1e6;
pub const DEFAULT_DEPTH_LIMIT: usize = 40;
pub const DEFAULT_SCAN_POINTS: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NonpositiveCertified,
    NonpositiveSampled,
    Violated,
    Inconclusive,
}

impl Verdict {
    pub fn passes(self) -> bool {
        matches!(self, Verdict::NonpositiveCertified | Verdict::NonpositiveSampled)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Sampled,
    ExactSturm,
    IntervalSubdivision,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioRegion {
    /// Open lower end; always the umbilic ratio 1.
    pub t_min: f64,
    pub t_max: f64,
    /// How `t > t_max` was handled.
    pub tail: Method,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// 1 or 2.
    pub component: u8,
    pub t: f64,
    /// Normalised `Q_component` at `r = (1, t)`; strictly positive.
    pub q: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t_exact: Option<ExactNumber>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QReport {
    pub family: SpeedFamily,
    pub alpha: f64,
    pub region: RatioRegion,
    /// Largest normalised `Q1` seen on the diagnostic samples.
    pub q1_max: f64,
    pub q2_max: f64,
    pub method: Method,
    /// Rigorous upper bound on both `Q_i` over the region, when certified.
    pub certified_bound: Option<f64>,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    /// Subdivision cells (or isolation steps) processed.
    pub work: usize,
}

/// `t_i = t_max^{i/n}`, `i = 1..=n`: log-uniform on `(1, t_max]`.
pub fn log_ratio_grid(t_max: f64, n: usize) -> Vec<f64> {
    assert!(t_max > 1.0 && n > 0);
    let l = t_max.ln();
    (1..=n)
        .map(|i| if i == n { t_max } else { (l * i as f64 / n as f64).exp() })
        .collect()
}

fn eval_normalised(speed: &SpeedFunction, t: f64) -> Result<(f64, f64), AnalyzerError> {
    gradient_terms_general(speed, RadiiPoint::new(1.0, t)?)
}

struct Scan {
    q1_max: f64,
    q2_max: f64,
    witness: Option<Witness>,
}

fn scan_points(speed: &SpeedFunction, ts: &[f64]) -> Result<Scan, AnalyzerError> {
    let values: Vec<(f64, f64)> = ts
        .par_iter()
        .map(|&t| eval_normalised(speed, t))
        .collect::<Result<_, _>>()?;
    let mut out = Scan {
        q1_max: f64::NEG_INFINITY,
        q2_max: f64::NEG_INFINITY,
        witness: None,
    };
    for (&t, &(q1, q2)) in ts.iter().zip(&values) {
        // a pole of the normalised Q2 shows up as ±inf; only finite maxima count
        if q1.is_finite() {
            out.q1_max = out.q1_max.max(q1);
        }
        if q2.is_finite() {
            out.q2_max = out.q2_max.max(q2);
        }
        if out.witness.is_none() {
            if q1 > 0.0 && q1.is_finite() {
                out.witness = Some(Witness { component: 1, t, q: q1, t_exact: None });
            } else if q2 > 0.0 && q2.is_finite() {
                out.witness = Some(Witness { component: 2, t, q: q2, t_exact: None });
            }
        }
    }
    Ok(out)
}

/// Samples the normalised `(Q1, Q2)` at `r = (1, t)` for every grid ratio.
pub fn sign_scan(speed: &SpeedFunction, ratio_grid: &[f64]) -> Result<QReport, AnalyzerError> {
    if ratio_grid.is_empty() || ratio_grid.iter().any(|&t| !(t > 1.0 && t.is_finite())) {
        return Err(AnalyzerError::InvalidGrid);
    }
    let scan = scan_points(speed, ratio_grid)?;
    let t_max = ratio_grid.iter().copied().fold(f64::MIN, f64::max);
    Ok(QReport {
        family: speed.family,
        alpha: speed.alpha,
        region: RatioRegion { t_min: 1.0, t_max, tail: Method::Sampled },
        q1_max: scan.q1_max,
        q2_max: scan.q2_max,
        method: Method::Sampled,
        certified_bound: None,
        verdict: if scan.witness.is_some() { Verdict::Violated } else { Verdict::NonpositiveSampled },
        witness: scan.witness,
        work: ratio_grid.len(),
    })
}

enum PolySign {
    Nonpositive,
    Positive(BigRational),
    Inconclusive,
}

/// Sign of `p` on `(lo, hi]`, `hi = None` meaning `(lo, ∞)`. `p(lo) != 0`.
fn poly_sign(p: &Poly, chain: &SturmChain, lo: &BigRational, hi: Option<&BigRational>, depth: usize, work: &mut usize) -> PolySign {
    if p.eval(lo).is_positive() {
        return PolySign::Positive(lo.clone());
    }
    let upper = match hi {
        Some(h) => h.clone(),
        None => {
            let b = p.cauchy_bound();
            if &b > lo { b } else { lo + BigRational::one() }
        }
    };
    // nudge a root-valued finite upper end outward to keep the endpoint clean
    let mut upper = upper;
    while p.eval(&upper).is_zero() {
        upper = &upper + BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    }
    let roots = match isolate_roots(p, chain, lo, &upper, depth) {
        Ok(r) => r,
        Err(_) => return PolySign::Inconclusive,
    };
    *work += roots.len() + 1;
    // between consecutive distinct roots the sign is constant; the isolating
    // endpoints hit every gap, and the upper end covers the last one
    let mut samples: Vec<BigRational> = roots.iter().map(|(_, b)| b.clone()).collect();
    samples.push(upper.clone());
    for x in samples {
        if p.eval(&x).is_positive() {
            return PolySign::Positive(x);
        }
    }
    if hi.is_none() && p.sign_at_infinity() > 0 {
        return PolySign::Positive(upper + BigRational::one());
    }
    PolySign::Nonpositive
}

fn gauss_witness(alpha: &BigRational, component: usize, t: &BigRational) -> Result<Witness, AnalyzerError> {
    let vals = gauss_closed_exact(alpha, &BigRational::one(), t)?;
    Ok(Witness {
        component: component as u8 + 1,
        t: t.to_f64().unwrap_or(f64::INFINITY),
        q: vals[component].to_f64(),
        t_exact: Some(ExactNumber::from(t)),
    })
}

fn certify_gauss(speed: &SpeedFunction, t_max: f64, depth_limit: usize) -> Result<QReport, AnalyzerError> {
    let alpha = to_rational(speed.alpha);
    let one = BigRational::one();
    let tm = to_rational(t_max);
    let polys = numerator_polys(&alpha);
    let mut work = 0;
    let mut verdict = Verdict::NonpositiveCertified;
    let mut witness = None;

    'outer: for (i, p) in polys.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let chain = SturmChain::new(p);
        for hi in [Some(&tm), None] {
            let lo = if hi.is_some() { &one } else { &tm };
            match poly_sign(p, &chain, lo, hi, depth_limit, &mut work) {
                PolySign::Nonpositive => {}
                PolySign::Positive(x) => {
                    // a witness must sit strictly inside the region
                    let x = if &x == lo { lo + (&x - lo + BigRational::new(BigInt::one(), BigInt::from(1024))) } else { x };
                    verdict = Verdict::Violated;
                    let w = gauss_witness(&alpha, i, &x);
                    match w {
                        Ok(w) => witness = Some(w),
                        // exactly on a pole of the closed form; fall back to the general path
                        Err(AnalyzerError::Pole { .. }) => {
                            let t = x.to_f64().unwrap_or(f64::INFINITY);
                            let (q1, q2) = eval_normalised(speed, t)?;
                            witness = Some(Witness {
                                component: i as u8 + 1,
                                t,
                                q: if i == 0 { q1 } else { q2 },
                                t_exact: Some(ExactNumber::from(&x)),
                            });
                        }
                        Err(e) => return Err(e),
                    }
                    break 'outer;
                }
                PolySign::Inconclusive => verdict = Verdict::Inconclusive,
            }
        }
    }

    let diag = scan_points(speed, &log_ratio_grid(t_max, 257))?;
    Ok(QReport {
        family: speed.family,
        alpha: speed.alpha,
        region: RatioRegion { t_min: 1.0, t_max, tail: Method::ExactSturm },
        q1_max: diag.q1_max,
        q2_max: diag.q2_max,
        method: Method::ExactSturm,
        certified_bound: (verdict == Verdict::NonpositiveCertified).then_some(0.0),
        verdict,
        witness,
        work,
    })
}

enum CellOutcome {
    Certified,
    Violated(Witness),
    Inconclusive,
}

fn enclose(speed: &SpeedFunction, t: Interval) -> [Interval; 2] {
    let one = Interval::point(1.0);
    let gap = t - one;
    let gap = Interval::new(gap.lo().max(0.0), gap.hi());
    let d = speed.f_derivs_generic(one, t);
    raw_q_times_gap(&d, &gap)
}

fn witness_at(speed: &SpeedFunction, t: f64) -> Option<Witness> {
    let enc = enclose(speed, Interval::point(t));
    let component = enc.iter().position(|e| e.lo() > 0.0)?;
    let (q1, q2) = eval_normalised(speed, t).ok()?;
    let q = if component == 0 { q1 } else { q2 };
    (q > 0.0).then_some(Witness { component: component as u8 + 1, t, q, t_exact: None })
}

fn certify_cell(speed: &SpeedFunction, cell: Interval, depth_limit: usize, work: &mut usize) -> CellOutcome {
    let mut stack = vec![(cell, 0usize)];
    let mut inconclusive = false;
    while let Some((c, depth)) = stack.pop() {
        *work += 1;
        let enc = enclose(speed, c);
        if enc.iter().all(|e| e.hi() <= 0.0) {
            continue;
        }
        if let Some(w) = witness_at(speed, c.mid()) {
            return CellOutcome::Violated(w);
        }
        if depth >= depth_limit || c.width() <= 4.0 * f64::EPSILON * c.hi() {
            inconclusive = true;
            continue;
        }
        let (a, b) = if c.lo() > 1.0 + 1e-3 { c.bisect_geometric() } else { c.bisect() };
        stack.push((b, depth + 1));
        stack.push((a, depth + 1));
    }
    if inconclusive {
        CellOutcome::Inconclusive
    } else {
        CellOutcome::Certified
    }
}

const TOP_CELLS: usize = 64;
const TAIL_DECADES: f64 = 4.0;
const TAIL_POINTS: usize = 512;

fn top_level_cells(t_max: f64) -> Vec<Interval> {
    let first = (1.0f64 + 1.0 / 1024.0).min(t_max);
    let mut edges = vec![1.0, first];
    let l0 = first.ln();
    let l1 = t_max.ln();
    for i in 1..=TOP_CELLS {
        edges.push(if i == TOP_CELLS { t_max } else { (l0 + (l1 - l0) * i as f64 / TOP_CELLS as f64).exp() });
    }
    edges.dedup();
    edges.windows(2).map(|w| Interval::new(w[0], w[1])).collect()
}

fn certify_interval(speed: &SpeedFunction, t_max: f64, depth_limit: usize) -> Result<QReport, AnalyzerError> {
    let cells = top_level_cells(t_max);
    let outcomes: Vec<(CellOutcome, usize)> = cells
        .par_iter()
        .map(|&c| {
            let mut work = 0;
            (certify_cell(speed, c, depth_limit, &mut work), work)
        })
        .collect();

    let mut work = 0;
    let mut range_verdict = Verdict::NonpositiveCertified;
    let mut witness = None;
    for (o, w) in outcomes {
        work += w;
        match o {
            CellOutcome::Certified => {}
            CellOutcome::Violated(wit) => {
                if witness.is_none() {
                    witness = Some(wit);
                }
                range_verdict = Verdict::Violated;
            }
            CellOutcome::Inconclusive => {
                if range_verdict != Verdict::Violated {
                    range_verdict = Verdict::Inconclusive;
                }
            }
        }
    }

    let diag = scan_points(speed, &log_ratio_grid(t_max, 257))?;
    let tail_grid: Vec<f64> = (1..=TAIL_POINTS)
        .map(|i| t_max * 10f64.powf(TAIL_DECADES * i as f64 / TAIL_POINTS as f64))
        .collect();
    let tail = scan_points(speed, &tail_grid)?;
    work += TAIL_POINTS;

    let verdict = match range_verdict {
        Verdict::Violated => Verdict::Violated,
        _ if tail.witness.is_some() => {
            witness = tail.witness.clone();
            Verdict::Violated
        }
        Verdict::Inconclusive => Verdict::Inconclusive,
        // the tail is only sampled, so the overall claim is sampled
        _ => Verdict::NonpositiveSampled,
    };
    Ok(QReport {
        family: speed.family,
        alpha: speed.alpha,
        region: RatioRegion { t_min: 1.0, t_max, tail: Method::Sampled },
        q1_max: diag.q1_max.max(tail.q1_max),
        q2_max: diag.q2_max.max(tail.q2_max),
        method: Method::IntervalSubdivision,
        certified_bound: None,
        verdict,
        witness,
        work,
    })
}

/// Rigorous nonpositivity check of both coefficients on `t > 1`.
///
/// Returns [`Verdict::Inconclusive`] (not an error) when the depth limit
/// stops the subdivision before every cell is decided.
pub fn certify_nonpositive(speed: &SpeedFunction, t_max: f64, depth_limit: usize) -> Result<QReport, AnalyzerError> {
    if !(t_max >= 2.0 && t_max.is_finite()) {
        return Err(AnalyzerError::InvalidTMax(t_max));
    }
    match speed.family {
        SpeedFamily::GaussPower => certify_gauss(speed, t_max, depth_limit),
        _ => certify_interval(speed, t_max, depth_limit),
    }
}
