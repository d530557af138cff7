//! Exact sampling of a Yrast density and Monte Carlo averages.

use relhydrogen::expectations::expectations;
use relhydrogen::numerics::{mc_expectation, sample_yrast_parallel};
use relhydrogen::{Coupling, StateDensity};

fn main() -> relhydrogen::Result<()> {
    let sd = StateDensity::yrast(2, Coupling::new(0.2)?)?;
    let batch = sample_yrast_parallel(&sd, 400_000, 42, 4)?;
    let rep = expectations(&sd);
    let inv_r = mc_expectation(&batch, |cp, _| 1.0 / cp.r)?;
    let inv_scale = mc_expectation(&batch, |cp, _| 1.0 / cp.scale)?;
    let pr2 = mc_expectation(&batch, |_, pt| pt.radial_momentum().powi(2))?;
    println!("{} samples", batch.len());
    println!("<1/r>   {:.6} +- {:.6}  (exact {:.6})", inv_r.mean, inv_r.stderr, rep.inv_r);
    println!("<1/R>   {:.6} +- {:.6}  (exact {:.6})", inv_scale.mean, inv_scale.stderr, rep.inv_scale);
    println!("<p_r^2> {:.6} +- {:.6}", pr2.mean, pr2.stderr);
    Ok(())
}
