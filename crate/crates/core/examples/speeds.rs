//! Evaluates the four speed families and checks that the two derivative
//! routes (curvature variables vs. the degree-one normalisation `k`) agree.

use pinchflow::{RadiiPoint, SpeedFamily, SpeedFunction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = RadiiPoint::new(1.0, 2.0)?;
    for family in SpeedFamily::ALL {
        let speed = SpeedFunction::new(family, 2.0)?;
        let d = speed.eval_f_derivs(r);
        let via_k = speed.f_derivs_via_k(r);
        let route_gap = (d.df[0] - via_k.df[0]).abs().max((d.df[1] - via_k.df[1]).abs());
        // Euler: r·∇f = -α f for a speed of degree -α
        let euler = d.df[0] * r.r1() + d.df[1] * r.r2() + speed.alpha * d.f;
        println!(
            "{family:<12} f = {:+.6}  df = [{:+.6}, {:+.6}]  sphere c = {:.3}  routes {route_gap:.1e}  euler {euler:.1e}",
            d.f,
            d.df[0],
            d.df[1],
            speed.sphere_constant()
        );
    }
    Ok(())
}
