//! Expectation values over the phase-space densities and the energy
//! functionals obtained by replacing averages of products with products of
//! averages.
//!
//! Single-bracket values `<f>` are ordinary phase-space averages. The
//! double-bracket values `<<f>>` factor the orbit energy out of `p_r^2` and
//! `omega^2 L^2 / r^2` as `<<E>>`, and replace `<<a^2 / r^2>>` with
//! `a^2 <1/r>^2`.

use serde::Serialize;

use crate::error::Result;
use crate::phasespace::{DensityKind, StateDensity};
use crate::spectrum::{Coupling, QuantumNumbers};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectationReport {
    pub state: DensityKind,
    pub alpha_z: f64,
    pub inv_r: f64,
    pub inv_r2: f64,
    #[serde(rename = "inv_R")]
    pub inv_scale: f64,
    #[serde(rename = "inv_R2")]
    pub inv_scale2: f64,
    /// `<<p_r^2>> = 2 <<E>> <(1/r - 1/R) cos^2 mu>`.
    pub pr2: f64,
    /// `<omega^2 L^2 / r^2> = 2 <<E>> <(1/r - 1/R) sin^2 mu>`.
    #[serde(rename = "L2_over_r2")]
    pub l2_over_r2: f64,
    /// `<<p^2>>`.
    pub p2: f64,
    /// Classical energy to order `a^4`; only defined for Yrast states.
    pub naive_energy: Option<f64>,
    pub double_bracket_energy: f64,
    pub double_bracket_energy_prime: f64,
    pub quantum_energy: f64,
}

/// `<1/r>` and `<1/R>` in closed form.
fn inverse_moments(sd: &StateDensity) -> (f64, f64) {
    let l = sd.ell();
    match sd.kind() {
        DensityKind::Yrast(_) => {
            let inv_r = sd.level_energy() / (1.0 + l).powi(2);
            (inv_r, 0.5 * inv_r)
        }
        _ => {
            let inv_r = 1.0 / ((2.0 + l) * (4.0 + 3.0 * l).sqrt());
            (inv_r, 0.5 * inv_r)
        }
    }
}

/// `sqrt(1 + a^4 <1/R>^2) - a^2 <1/R>`.
pub fn double_bracket_energy(sd: &StateDensity) -> f64 {
    let a2 = sd.coupling().squared();
    let y = a2 * inverse_moments(sd).1;
    (1.0 + y * y).sqrt() - y
}

/// `<<p^2>> = 2 <<E>> (<1/r> - <1/R>) + a^2 <1/r>^2`.
fn double_bracket_p2(sd: &StateDensity, db_energy: f64) -> f64 {
    let (inv_r, inv_scale) = inverse_moments(sd);
    2.0 * db_energy * (inv_r - inv_scale) + sd.coupling().squared() * inv_r * inv_r
}

/// `sqrt(1 + a^2 <<p^2>>) - a^2 <1/r>`.
pub fn double_bracket_energy_prime(sd: &StateDensity) -> f64 {
    let a2 = sd.coupling().squared();
    let p2 = expectations(sd).p2;
    (1.0 + a2 * p2).sqrt() - a2 * inverse_moments(sd).0
}

/// `1 - a^2 <1/R> + a^4 <1/R^2> / 2`, the order-`a^4` expansion of the
/// orbit energy averaged without neglecting correlations.
pub fn naive_classical_energy(n: u32, coupling: Coupling) -> Result<f64> {
    let rep = yrast_expectations(n, coupling)?;
    let a2 = coupling.squared();
    Ok(1.0 - a2 * rep.inv_scale + 0.5 * a2 * a2 * rep.inv_scale2)
}

/// Closed-form expectation table of Yrast level `n`.
pub fn yrast_expectations(n: u32, coupling: Coupling) -> Result<ExpectationReport> {
    let sd = StateDensity::yrast(n, coupling)?;
    let l = sd.ell();
    let e = sd.level_energy();
    let a2 = coupling.squared();
    let l1 = 1.0 + l;

    let inv_r = e / (l1 * l1);
    let inv_r2 = 2.0 * e * e / (l1.powi(3) * (1.0 + 2.0 * l));
    let inv_scale = 0.5 * inv_r;
    let inv_scale2 = e * e / (l1.powi(3) * (3.0 + 4.0 * l));
    let db = double_bracket_energy(&sd);
    // <(1/r - 1/R)> = E / (2 l1^2); <cos^2 mu> = 1/(4 l1); <sin^2 mu> = (3+4l)/(4 l1)
    let gap = e / (2.0 * l1 * l1);
    let pr2 = 2.0 * db * gap / (4.0 * l1);
    let l2_over_r2 = 2.0 * db * gap * (3.0 + 4.0 * l) / (4.0 * l1);
    let p2 = pr2 + l2_over_r2 + a2 * inv_r * inv_r;
    let naive = 1.0 - a2 * inv_scale + 0.5 * a2 * a2 * inv_scale2;
    Ok(ExpectationReport {
        state: sd.kind(),
        alpha_z: coupling.alpha_z(),
        inv_r,
        inv_r2,
        inv_scale,
        inv_scale2,
        pr2,
        l2_over_r2,
        p2,
        naive_energy: Some(naive),
        double_bracket_energy: db,
        double_bracket_energy_prime: (1.0 + a2 * p2).sqrt() - a2 * inv_r,
        quantum_energy: e,
    })
}

/// Expectation table for any implemented density.
///
/// Yrast states use the closed forms of [`yrast_expectations`]. For the 2s
/// family `<1/r>` and `<1/R>` are closed forms shared by every mixture; the
/// remaining single-bracket entries come from the chart-term moments.
pub fn expectations(sd: &StateDensity) -> ExpectationReport {
    if let DensityKind::Yrast(n) = sd.kind() {
        return yrast_expectations(n, sd.coupling()).expect("validated at construction");
    }
    let cd = sd.chart_density();
    let a2 = sd.coupling().squared();
    let (inv_r, inv_scale) = inverse_moments(sd);
    let db = double_bracket_energy(sd);
    let gap_cos2 = cd.moment_cos2(-1.0, 0.0) - cd.moment_cos2(0.0, -1.0);
    let gap_sin2 = cd.moment(-1.0, 0.0, 2.0) - cd.moment(0.0, -1.0, 2.0);
    let p2 = double_bracket_p2(sd, db);
    ExpectationReport {
        state: sd.kind(),
        alpha_z: sd.coupling().alpha_z(),
        inv_r,
        inv_r2: cd.moment(-2.0, 0.0, 0.0),
        inv_scale,
        inv_scale2: cd.moment(0.0, -2.0, 0.0),
        pr2: 2.0 * db * gap_cos2,
        l2_over_r2: 2.0 * db * gap_sin2,
        p2,
        naive_energy: None,
        double_bracket_energy: db,
        double_bracket_energy_prime: (1.0 + a2 * p2).sqrt() - a2 * inv_r,
        quantum_energy: sd.level_energy(),
    }
}

/// Leading discrepancy `a^4 / (8 n^4 (4n - 1))` of [`naive_classical_energy`].
pub fn naive_energy_discrepancy(qn: QuantumNumbers, coupling: Coupling) -> f64 {
    let n = qn.n() as f64;
    let a2 = coupling.squared();
    a2 * a2 / (8.0 * n.powi(4) * (4.0 * n - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{effective_ell, level_energy};

    fn c(a: f64) -> Coupling {
        Coupling::new(a).unwrap()
    }

    #[test]
    fn hydrogen_ground_state_values() {
        let rep = yrast_expectations(1, c(0.0)).unwrap();
        assert_eq!(rep.inv_r, 1.0);
        assert_eq!(rep.inv_r2, 2.0);
        assert_eq!(rep.p2, 1.0);
    }

    #[test]
    fn p2_is_inverse_square() {
        let ell = effective_ell(0, c(0.2)).unwrap();
        let rep = yrast_expectations(1, c(0.2)).unwrap();
        assert!((rep.p2 - 1.0 / (1.0 + ell).powi(2)).abs() < 1e-14);
        let sd = StateDensity::two_s_a(c(0.25)).unwrap();
        let rep = expectations(&sd);
        assert!((rep.p2 - 1.0 / (2.0 + sd.ell()).powi(2)).abs() < 1e-14);
    }

    #[test]
    fn double_bracket_energies_are_exact() {
        for n in 1..=5 {
            let sd = StateDensity::yrast(n, c(0.2)).unwrap();
            let e = level_energy(QuantumNumbers::yrast(n).unwrap(), c(0.2)).unwrap();
            assert!((double_bracket_energy(&sd) - e).abs() < 1e-14);
            assert!((double_bracket_energy_prime(&sd) - e).abs() < 1e-14);
        }
        let sd = StateDensity::two_s_b(c(0.3)).unwrap();
        let l = sd.ell();
        let want = (2.0 + l) / (4.0 + 3.0 * l).sqrt();
        assert!((double_bracket_energy(&sd) - want).abs() < 1e-14);
        assert!((double_bracket_energy_prime(&sd) - want).abs() < 1e-14);
    }

    #[test]
    fn naive_energy_discrepancy_orders() {
        let a: f64 = 0.1;
        let e1 = level_energy(QuantumNumbers::yrast(1).unwrap(), c(a)).unwrap();
        let d1 = naive_classical_energy(1, c(a)).unwrap() - e1;
        assert!((d1 / a.powi(4) - 1.0 / 24.0).abs() < 10.0 * a * a / 24.0);
        let e2 = level_energy(QuantumNumbers::yrast(2).unwrap(), c(a)).unwrap();
        let d2 = naive_classical_energy(2, c(a)).unwrap() - e2;
        assert!((d2 / a.powi(4) - 1.0 / 896.0).abs() < 10.0 * a * a / 896.0);
        // Bohr limit
        let tiny = 1e-3;
        let en = naive_classical_energy(3, c(tiny)).unwrap();
        assert!(((1.0 - en) / (tiny * tiny) - 1.0 / 18.0).abs() < 1e-6);
    }

    #[test]
    fn series_of_products_of_averages() {
        // Expanding sqrt(1 + y^2) - y with <R^-k> -> <R^-1>^k and truncating
        // at y^4 (order a^8) reproduces E_nl up to order a^12.
        for a in [0.05, 0.1] {
            for n in 1..=3 {
                let sd = StateDensity::yrast(n, c(a)).unwrap();
                let y = c(a).squared() * expectations(&sd).inv_scale;
                let series = 1.0 - y + y * y / 2.0 - y.powi(4) / 8.0;
                assert!((series - sd.level_energy()).abs() < 2.0 * y.powi(6) + 1e-15);
            }
        }
    }

    #[test]
    fn two_s_inverse_moments_match_terms() {
        for sd in [
            StateDensity::two_s_a(c(0.2)).unwrap(),
            StateDensity::two_s_b(c(0.2)).unwrap(),
            StateDensity::two_s_mix(0.3, c(0.2)).unwrap(),
        ] {
            let cd = sd.chart_density();
            let (inv_r, inv_scale) = inverse_moments(&sd);
            assert!((cd.moment(-1.0, 0.0, 0.0) - inv_r).abs() < 1e-13);
            assert!((cd.moment(0.0, -1.0, 0.0) - inv_scale).abs() < 1e-13);
        }
    }

    #[test]
    fn yrast_table_matches_terms() {
        let sd = StateDensity::yrast(3, c(0.3)).unwrap();
        let cd = sd.chart_density();
        let rep = yrast_expectations(3, c(0.3)).unwrap();
        assert!((cd.moment(-2.0, 0.0, 0.0) - rep.inv_r2).abs() < 1e-13);
        assert!((cd.moment(0.0, -2.0, 0.0) - rep.inv_scale2).abs() < 1e-13);
        let gap_cos2 = cd.moment_cos2(-1.0, 0.0) - cd.moment_cos2(0.0, -1.0);
        assert!((2.0 * rep.quantum_energy * gap_cos2 - rep.pr2).abs() < 1e-13);
    }
}
