//! A sphere of radius 1 centred at `(0, 0, 0.4)` shrinks to its centre; the
//! Steiner point of the final profile locates it.
//!
//! Also writes the trace as CSV to the path given as the first argument.

use std::path::PathBuf;

use pinchflow::simulator::{run, write_trace_csv, StopOptions, SupportProfile};
use pinchflow::{SpeedFamily, SpeedFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let speed = SpeedFunction::new(SpeedFamily::GaussPower, 1.0)?;
    let profile = SupportProfile::translated_sphere(1.0, 0.4, 129)?;
    let stop = StopOptions { record_stride: 20, ..StopOptions::default() };
    let trace = run(&profile, &speed, &stop)?;
    let e = trace.summary.extinction.expect("reached the stop fraction");
    println!("T = {:.6} (exact 0.5), q_z = {:.6}", e.time, e.point_z);
    if let Some(path) = std::env::args().nth(1).map(PathBuf::from) {
        write_trace_csv(&trace, &path)?;
        println!("trace written to {}", path.display());
    }
    Ok(())
}
