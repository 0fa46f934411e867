//! The pinching algebra at a single point: the reaction term `Z`, the
//! gradient coefficients from the general formula and from the closed form,
//! an exact rational evaluation, and the reduction of the full gradient term.

use num_bigint::BigInt;
use num_rational::BigRational;
use pinchflow::analyzer::{
    gauss_closed_exact, gauss_general_exact, gradient_terms_gauss_closed, gradient_terms_general,
    q_full_reduction_check, zero_order_term,
};
use pinchflow::{RadiiPoint, SpeedFamily, SpeedFunction};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = RadiiPoint::new(1.0, 2.0)?;
    let gauss = SpeedFunction::new(SpeedFamily::GaussPower, 2.0)?;

    for family in SpeedFamily::ALL {
        let z = zero_order_term(&SpeedFunction::new(family, 3.5)?, r)?;
        println!("Z for {family} alpha=3.5 at (1, 2): {z:.3e}");
    }

    println!("general Q at (1, 2), alpha=2: {:?}", gradient_terms_general(&gauss, r)?);
    println!("closed  Q at (1, 2), alpha=2: {:?}", gradient_terms_gauss_closed(r, 2.0)?);

    let [g1, g2] = gauss_general_exact(&rat(2), &rat(1), &rat(2))?;
    let [c1, c2] = gauss_closed_exact(&rat(2), &rat(1), &rat(2))?;
    let show = |x: &pinchflow::analyzer::ScaledRational| x.exact().map_or("irrational".into(), |v| v.to_string());
    println!("exact general: ({}, {})", show(&g1), show(&g2));
    println!("exact closed:  ({}, {})", show(&c1), show(&c2));

    let check = q_full_reduction_check(&gauss, r, 0.3, -0.7)?;
    println!(
        "full gradient term {:.12} vs reduction {:.12} (residual {:.1e})",
        check.q_full, check.q_combination, check.residual
    );
    Ok(())
}
