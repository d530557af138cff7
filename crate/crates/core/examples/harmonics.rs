//! Angular factors built from the angular-momentum direction and their
//! averages.

use std::f64::consts::PI;

use relhydrogen::harmonics::{
    angular_momentum_moments, cal_y, lhat, nu_average, sphere_normalization, y1m_squared, AngularFactor, Y1_SUM,
};

fn main() -> relhydrogen::Result<()> {
    for m in -1..=1 {
        let mom = angular_momentum_moments(m)?;
        println!(
            "m={m:+}: norm {:.12}  (Lz, Lx, Ly) = ({:+.12}, {:+.1e}, {:+.1e})",
            sphere_normalization(m)?,
            mom.lz,
            mom.lx,
            mom.ly
        );
        for theta in [0.3, PI / 2.0] {
            println!("    nu-average at {theta:.3}: {:.14} vs {:.14}", nu_average(m, theta)?, y1m_squared(m, theta));
        }
    }
    let axis = [1.0, 2.0, -0.5];
    let l = lhat(0.7, 1.9, 2.4);
    let sum: f64 = (-1..=1)
        .map(|m| Ok(cal_y(&AngularFactor::new(m, axis)?, &l)))
        .sum::<relhydrogen::Result<f64>>()?;
    println!("sum over m about a tilted axis: {sum:.15} (3/4pi = {Y1_SUM:.15})");
    Ok(())
}
