//! Bound-state energies and their fine-structure expansion.

use relhydrogen::spectrum::{coupling_from_energy, effective_ell, level_energy, level_energy_series};
use relhydrogen::{Coupling, QuantumNumbers};

fn main() -> relhydrogen::Result<()> {
    for az in [0.05, 0.2, 0.4] {
        let c = Coupling::new(az)?;
        println!("alphaZ = {az}");
        for n in 1..=3 {
            for l in 0..n {
                let qn = QuantumNumbers::new(n, l)?;
                let e = level_energy(qn, c)?;
                println!(
                    "  n={n} l={l}  ell={:+.10}  E={e:.12}  series={:.12}",
                    effective_ell(l, c)?,
                    level_energy_series(qn, c)
                );
            }
        }
    }
    // and back again
    let qn = QuantumNumbers::new(2, 1)?;
    let e = level_energy(qn, Coupling::new(0.3)?)?;
    println!("a^2 recovered from E_21: {:.15} (want 0.09)", coupling_from_energy(qn, e)?);
    Ok(())
}
