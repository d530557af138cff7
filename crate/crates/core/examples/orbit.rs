//! A relativistic Coulomb orbit: conserved quantities and the density
//! along it.

use relhydrogen::numerics::orbit::period_of;
use relhydrogen::numerics::orbit_integrate;
use relhydrogen::phasespace::density_eval;
use relhydrogen::{Coupling, PhasePoint, StateDensity};

fn main() -> relhydrogen::Result<()> {
    let c = Coupling::new(0.2)?;
    let start = PhasePoint::new([1.5, 0.0, 0.0], [0.2, 0.6, 0.0]);
    let period = period_of(&start, c)?;
    let traj = orbit_integrate(&start, c, 100.0 * period, 1e-12)?;
    let sd = StateDensity::yrast(1, c)?;
    let d0 = density_eval(&sd, &start)?;
    let mut worst: f64 = 0.0;
    for pt in &traj.points {
        worst = worst.max((density_eval(&sd, pt)? / d0 - 1.0).abs());
    }
    println!("radial period {period:.10}, {} steps", traj.times.len() - 1);
    println!("energy drift {:.2e}, angular momentum drift {:.2e}", traj.energy_drift, traj.angmom_drift);
    println!("density drift {worst:.2e}");
    let end = traj.points.last().expect("non-empty");
    println!("perihelion shift moves the end point to {:?}", end.position);
    Ok(())
}
