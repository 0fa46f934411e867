//! Sign certificates for the gradient coefficients of Gauss-curvature powers
//! on the ratio range `(1, 10^6]` plus its tail, and an interval-arithmetic
//! certificate for a power of the mean curvature.

use pinchflow::analyzer::{certify_nonpositive, DEFAULT_DEPTH_LIMIT, DEFAULT_T_MAX};
use pinchflow::{SpeedFamily, SpeedFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        (SpeedFamily::GaussPower, 0.4),
        (SpeedFamily::GaussPower, 0.5),
        (SpeedFamily::GaussPower, 1.5),
        (SpeedFamily::GaussPower, 2.0),
        (SpeedFamily::GaussPower, 2.1),
        (SpeedFamily::MeanPower, 3.0),
        (SpeedFamily::MeanPower, 6.0),
    ];
    for (family, alpha) in cases {
        let speed = SpeedFunction::new(family, alpha)?;
        let rep = certify_nonpositive(&speed, DEFAULT_T_MAX, DEFAULT_DEPTH_LIMIT)?;
        print!("{family:<12} alpha={alpha:<4} {:?} via {:?}", rep.verdict, rep.method);
        if let Some(w) = rep.witness {
            print!("  witness Q{} = {:.3e} at t = {:.4e}", w.component, w.q, w.t);
        }
        println!();
    }
    Ok(())
}
