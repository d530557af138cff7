//! The momentum marginal of each density against the squared wavefunction,
//! in closed form and by brute-force quadrature over momentum space.

use std::f64::consts::PI;

use relhydrogen::numerics::{marginal_quadrature, normalization_quadrature, QuadratureSpec};
use relhydrogen::phasespace::{momentum_marginal, scale_marginal};
use relhydrogen::spectrum::radial_wavefunction;
use relhydrogen::{Coupling, StateDensity};

fn main() -> relhydrogen::Result<()> {
    let c = Coupling::new(0.2)?;
    let spec = QuadratureSpec::default();
    for sd in [StateDensity::yrast(1, c)?, StateDensity::yrast(2, c)?, StateDensity::two_s_mix(0.5, c)?] {
        let rs = sd.radial_state();
        println!("{:?}", sd.kind());
        for r in [0.5, 1.0, 3.0, 6.0] {
            let psi2 = radial_wavefunction(&rs, r).powi(2) / (4.0 * PI);
            println!(
                "  r={r:<4} R^2/4pi={psi2:.10e}  closed={:.10e}  quadrature={:.10e}",
                momentum_marginal(&sd, r),
                marginal_quadrature(&sd, r, &spec)?
            );
        }
        println!("  density of R at R=2: {:.8}", scale_marginal(&sd, 2.0));
        println!("  norm = {:.12}", normalization_quadrature(&sd, &QuadratureSpec::new(1e-12, 1e-9)?)?);
    }
    Ok(())
}
