//! Ground-state momentum marginals: the Wigner function against the
//! classical density.

use std::f64::consts::PI;

use relhydrogen::numerics::wigner::{
    asymptotic_exponent, classical_initial_slope, classical_normalization, crossings, log_grid, log_log_slope,
    wigner_normalization,
};
use relhydrogen::numerics::{classical_marginal, figure_data, wigner_marginal, QuadratureSpec};

fn main() -> relhydrogen::Result<()> {
    let spec = QuadratureSpec::default();
    for row in figure_data(&[0.0, 0.5, 1.0, 2.0, 4.0], &spec)? {
        println!("p={:<4} W={:.10}  P={:.10}", row.p, row.wigner, row.classical);
    }
    println!("W(0) - 8/pi^2 = {:.1e}", wigner_marginal(0.0) - 8.0 / (PI * PI));
    println!("initial slope {:.10} (11.25/pi = {:.10})", classical_initial_slope(&spec)?, 11.25 / PI);
    println!("norms {:.12} {:.12}", wigner_normalization(&spec)?, classical_normalization(&spec)?);

    let ps = log_grid(10.0, 100.0, 41);
    let w: Vec<f64> = ps.iter().map(|&p| wigner_marginal(p)).collect();
    let c: Vec<f64> = ps.iter().map(|&p| classical_marginal(p, &spec)).collect::<Result<_, _>>()?;
    println!("tail slopes: W {:.4}, P {:.4}", log_log_slope(&ps, &w)?, log_log_slope(&ps, &c)?);
    println!("asymptotic exponent of P: {:.4}", asymptotic_exponent(&ps, &c)?);
    println!("W = P at {:?}", crossings(0.0, 5.0, 500, &spec)?);
    Ok(())
}
