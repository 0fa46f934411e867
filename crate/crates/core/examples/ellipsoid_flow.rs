//! Flows the 2:1 ellipsoid of revolution by a power of Gauss curvature and
//! reports the monotone diagnostics and the rescaled shape at the stop.
//!
//! `cargo run --release --example ellipsoid_flow -- [alpha] [n_nodes]`

use pinchflow::simulator::{ellipsoid_support, run, StopOptions};
use pinchflow::{SpeedFamily, SpeedFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let alpha: f64 = args.next().map_or(Ok(2.0), |a| a.parse())?;
    let n_nodes: usize = args.next().map_or(Ok(201), |a| a.parse())?;

    let speed = SpeedFunction::new(SpeedFamily::GaussPower, alpha)?;
    let profile = ellipsoid_support(2.0, 1.0, n_nodes)?;
    let stop = StopOptions { record_stride: 10, ..StopOptions::default() };
    let trace = run(&profile, &speed, &stop)?;
    let s = &trace.summary;
    let m = &s.monotonicity;

    println!("alpha = {alpha}, nodes = {n_nodes}, steps = {}, rejected = {}", s.steps, s.rejected_steps);
    println!("pinching sup  {:.6} -> {:.6}  (drift {:.3e})",
        trace.records[0].pinching_sup, trace.records.last().unwrap().pinching_sup, m.pinching_drift);
    println!("max radius    {:.6} -> {:.6}  (drift {:.3e})",
        trace.records[0].max_radius, trace.records.last().unwrap().max_radius, m.max_radius_drift);
    println!("max ratio     {:.6} -> {:.6}  (drift {:.3e})",
        trace.records[0].max_ratio, trace.records.last().unwrap().max_ratio, m.ratio_drift);
    println!("roundness     {:.6} -> {:.6}", s.initial_roundness, s.final_roundness);
    if let Some(e) = s.extinction {
        println!("extinction    T = {:.9}, q_z = {:.3e}, fit residual {:.2e}", e.time, e.point_z, e.fit_residual);
    }
    if let Some(d) = s.rescaled_deviation {
        println!("rescaled deviation from the unit sphere: {d:.5}");
    }
    Ok(())
}
