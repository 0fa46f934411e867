//! Bisection for the largest exponent at which the gradient coefficients stay
//! nonpositive, for the Gauss, mean and norm families.

use pinchflow::analyzer::{find_threshold, ThresholdConfig, DEFAULT_DEPTH_LIMIT, DEFAULT_T_MAX};
use pinchflow::cli::default_alpha_range;
use pinchflow::SpeedFamily;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (family, tol) in [
        (SpeedFamily::GaussPower, 0.01),
        (SpeedFamily::MeanPower, 0.05),
        (SpeedFamily::NormPower, 0.05),
    ] {
        let [lo, hi] = default_alpha_range(family);
        let cfg = ThresholdConfig { t_max: DEFAULT_T_MAX, depth_limit: DEFAULT_DEPTH_LIMIT, tol };
        let res = find_threshold(family, (lo, hi), &cfg)?;
        println!(
            "{family:<12} [{:.4}, {:.4}]  midpoint {:.4}  ({} probes)",
            res.bracket[0],
            res.bracket[1],
            res.midpoint(),
            res.probes.len()
        );
    }
    Ok(())
}
