//! Radial wavefunctions of the Yrast and 2s levels, checked against the
//! radial equation.

use relhydrogen::spectrum::{radial_wavefunction, schrodinger_residual, RadialState};
use relhydrogen::Coupling;

fn main() -> relhydrogen::Result<()> {
    let c = Coupling::new(0.2)?;
    let states = [RadialState::ground(c)?, RadialState::yrast(3, c)?, RadialState::two_s(c)?];
    let grid: Vec<f64> = (1..=40).map(|i| 0.25 * i as f64).collect();
    for s in &states {
        let qn = s.quantum_numbers();
        println!(
            "n={} l={}  ell={:.6}  node={:?}  residual={:.2e}",
            qn.n(),
            qn.l(),
            s.ell(),
            s.node(),
            schrodinger_residual(s, &grid)?
        );
        for r in [0.5, 2.0, 6.0] {
            println!("    R({r}) = {:.10}", radial_wavefunction(s, r));
        }
    }
    Ok(())
}
