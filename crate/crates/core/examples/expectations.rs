//! Expectation values, and the energies recovered by neglecting
//! correlations.

use relhydrogen::expectations::{expectations, naive_energy_discrepancy, yrast_expectations};
use relhydrogen::numerics::{quadrature_expectations, QuadratureSpec};
use relhydrogen::{Coupling, QuantumNumbers, StateDensity};

fn main() -> relhydrogen::Result<()> {
    let c = Coupling::new(0.3)?;
    for n in 1..=4 {
        let rep = yrast_expectations(n, c)?;
        println!(
            "n={n}: <1/r>={:.10} <1/R^2>={:.10}  E={:.14}  <<E>>={:.14}  naive={:.14}",
            rep.inv_r,
            rep.inv_scale2,
            rep.quantum_energy,
            rep.double_bracket_energy,
            rep.naive_energy.unwrap_or(f64::NAN)
        );
        let qn = QuantumNumbers::yrast(n)?;
        println!("      naive - E ~ {:.3e}", naive_energy_discrepancy(qn, c));
    }

    let sd = StateDensity::two_s_a(c)?;
    let rep = expectations(&sd);
    let q = quadrature_expectations(&sd, &QuadratureSpec::new(1e-12, 1e-9)?)?;
    println!("2s <1/r>: closed {:.12} quadrature {:.12}", rep.inv_r, q.inv_r);
    println!("2s <1/R>: closed {:.12} quadrature {:.12}", rep.inv_scale, q.inv_scale);
    println!("{}", serde_json::to_string_pretty(&rep).expect("serializable"));
    Ok(())
}
