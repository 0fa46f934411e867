//! Shrinking spheres are exact solutions: `ρ^{α+1} = ρ0^{α+1} - (α+1) c t`.
//! Compares the simulated radius and extinction time with that law.

use pinchflow::simulator::{run, StopOptions, SupportProfile};
use pinchflow::{SpeedFamily, SpeedFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let stop = StopOptions { record_stride: 50, ..StopOptions::default() };
    for family in [SpeedFamily::GaussPower, SpeedFamily::MeanPower] {
        for alpha in [1.0, 1.5, 2.0] {
            let speed = SpeedFunction::new(family, alpha)?;
            let c = speed.sphere_constant();
            let trace = run(&SupportProfile::sphere(1.0, 201)?, &speed, &stop)?;
            let worst = trace
                .records
                .iter()
                .map(|r| {
                    let exact = (1.0 - (alpha + 1.0) * c * r.time).powf(1.0 / (alpha + 1.0));
                    (r.min_support / exact - 1.0).abs()
                })
                .fold(0.0, f64::max);
            let t_exact = 1.0 / ((alpha + 1.0) * c);
            let t_est = trace.summary.extinction.map_or(f64::NAN, |e| e.time);
            println!(
                "{family:<12} alpha={alpha:<3}  max rel. radius error {worst:.2e}  T = {t_est:.6} (exact {t_exact:.6})"
            );
        }
    }
    Ok(())
}
