//! Evaluating the phase-space densities at phase points and in the chart,
//! and scanning the 2s proposal for negative values.

use relhydrogen::phasespace::{
    chart_to_phase, density_eval, gap_sign_changes, measure_factor, negativity_scan, orbital_elements,
};
use relhydrogen::{ChartPoint, Coupling, PhasePoint, StateDensity};

fn main() -> relhydrogen::Result<()> {
    let c = Coupling::new(0.2)?;
    let ground = StateDensity::yrast(1, c)?;

    let pt = PhasePoint::new([1.0, 0.3, 0.0], [0.1, 0.8, 0.2]);
    let el = orbital_elements(&pt, c)?;
    println!("E = {:.10}  L = {:.10}  R = {:.10}", el.energy, el.angular_momentum, el.scale);
    println!("P(r, p) = {:.10e}", density_eval(&ground, &pt)?);

    let cp = ChartPoint {
        r: 0.8,
        theta: 1.0,
        phi: 0.5,
        scale: 2.0,
        mu: 1.2,
        nu: 0.3,
    };
    let chart = ground.chart_density().value(cp.r, cp.scale, cp.mu);
    let direct = measure_factor(&cp, c)? * density_eval(&ground, &chart_to_phase(&cp, c)?)?;
    println!("chart {chart:.12e}  via phase point {direct:.12e}");

    for sd in [ground, StateDensity::two_s_a(c)?, StateDensity::two_s_b(c)?] {
        let scan = negativity_scan(&sd, 48)?;
        println!(
            "{:?}: min {:+.3e} at r = {:.4}, R = {:.4}",
            sd.kind(),
            scan.min_value,
            scan.location.r,
            scan.location.scale
        );
    }
    let band = gap_sign_changes(&StateDensity::two_s_a(Coupling::NONRELATIVISTIC)?, 12.0);
    println!("negative band in r(R - r) at alphaZ = 0: {band:?}");
    Ok(())
}
