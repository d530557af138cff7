//! Relativistic Coulomb orbits from Hamilton's equations of the scaled
//! Hamiltonian `H = sqrt(1 + a^2 p^2) - a^2 / r`:
//!
//! ```text
//! dr/dt =  a^2 p / gamma
//! dp/dt = -a^2 r / |r|^3
//! ```
//!
//! Integration is by Gragg-Bulirsch-Stoer extrapolation with adaptive step.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::phasespace::{norm, orbital_elements, OrbitalElements, PhasePoint};
use crate::spectrum::Coupling;

/// Radius below which a trajectory is reported as a collision.
pub const R_MIN: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<PhasePoint>,
    /// Largest `|E(t) - E(0)| / |E(0)|`.
    pub energy_drift: f64,
    /// Largest `|L(t) - L(0)| / |L(0)|`, with `L` the vector.
    pub angmom_drift: f64,
}

type State = [f64; 6];

fn rhs(y: &State, a2: f64) -> Result<State> {
    let r = norm(&[y[0], y[1], y[2]]);
    if r < R_MIN {
        return Err(Error::Collision { time: f64::NAN, radius: r });
    }
    let p2 = y[3] * y[3] + y[4] * y[4] + y[5] * y[5];
    let gamma = (1.0 + a2 * p2).sqrt();
    let k = -a2 / (r * r * r);
    Ok([
        a2 * y[3] / gamma,
        a2 * y[4] / gamma,
        a2 * y[5] / gamma,
        k * y[0],
        k * y[1],
        k * y[2],
    ])
}

// Step counts 2, 4, 6, ... of the modified-midpoint sequence.
const COLUMNS: usize = 8;

fn midpoint(y0: &State, h: f64, steps: usize, a2: f64) -> Result<State> {
    let sub = h / steps as f64;
    let f0 = rhs(y0, a2)?;
    let mut prev = *y0;
    let mut cur: State = std::array::from_fn(|i| y0[i] + sub * f0[i]);
    for _ in 1..steps {
        let f = rhs(&cur, a2)?;
        let next: State = std::array::from_fn(|i| prev[i] + 2.0 * sub * f[i]);
        prev = cur;
        cur = next;
    }
    let f = rhs(&cur, a2)?;
    Ok(std::array::from_fn(|i| 0.5 * (prev[i] + cur[i] + sub * f[i])))
}

/// One extrapolated step; returns the new state and the scaled error
/// `|T_kk - T_k,k-1|` of the last table row.
fn gbs_step(y: &State, h: f64, a2: f64, tol: f64) -> Result<(State, f64)> {
    let steps = |k: usize| 2 * (k + 1);
    let mut prev_row: Vec<State> = Vec::new();
    let mut err = f64::INFINITY;
    for k in 0..COLUMNS {
        let mut row = vec![midpoint(y, h, steps(k), a2)?];
        for j in 1..=k {
            let ratio = (steps(k) as f64 / steps(k - j) as f64).powi(2);
            let (a, b) = (row[j - 1], prev_row[j - 1]);
            row.push(std::array::from_fn(|i| a[i] + (a[i] - b[i]) / (ratio - 1.0)));
        }
        if k > 0 {
            let (hi, lo) = (row[k], row[k - 1]);
            err = (0..6)
                .map(|i| ((hi[i] - lo[i]) / (tol * (1.0 + y[i].abs().max(hi[i].abs())))).abs())
                .fold(0.0, f64::max);
        }
        prev_row = row;
    }
    Ok((prev_row[COLUMNS - 1], err))
}

fn to_state(pt: &PhasePoint) -> State {
    [
        pt.position[0],
        pt.position[1],
        pt.position[2],
        pt.momentum[0],
        pt.momentum[1],
        pt.momentum[2],
    ]
}

fn to_point(y: &State) -> PhasePoint {
    PhasePoint::new([y[0], y[1], y[2]], [y[3], y[4], y[5]])
}

/// Integrates from `start` over `[0, t_end]`, recording every accepted step.
pub fn orbit_integrate(start: &PhasePoint, coupling: Coupling, t_end: f64, tol: f64) -> Result<Trajectory> {
    let a2 = coupling.squared();
    if a2 == 0.0 {
        return Err(Error::OutOfRange {
            what: "alpha Z (the scaled dynamics freezes at 0)",
            value: 0.0,
        });
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::OutOfRange {
            what: "integrator tolerance",
            value: tol,
        });
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::OutOfRange {
            what: "end time",
            value: t_end,
        });
    }
    let e0 = start.energy(coupling);
    if !(e0 < 1.0) {
        return Err(Error::Unbound { energy: e0 });
    }
    let l0 = start.angular_momentum();
    let l0_norm = norm(&l0);

    let mut y = to_state(start);
    let mut t = 0.0;
    let mut h = initial_step(start, coupling, t_end);
    let mut times = vec![0.0];
    let mut points = vec![*start];
    let mut energy_drift: f64 = 0.0;
    let mut angmom_drift: f64 = 0.0;
    let collision = |e: Error, t: f64| match e {
        Error::Collision { radius, .. } => Error::Collision { time: t, radius },
        other => other,
    };
    let mut rejections = 0;
    while t < t_end {
        let step = h.min(t_end - t);
        let (y_new, err) = gbs_step(&y, step, a2, tol).map_err(|e| collision(e, t))?;
        if err <= 1.0 {
            t = if step == t_end - t { t_end } else { t + step };
            y = y_new;
            rejections = 0;
            let pt = to_point(&y);
            if pt.radius() < R_MIN {
                return Err(Error::Collision {
                    time: t,
                    radius: pt.radius(),
                });
            }
            energy_drift = energy_drift.max(((pt.energy(coupling) - e0) / e0).abs());
            let l = pt.angular_momentum();
            let dl = norm(&[l[0] - l0[0], l[1] - l0[1], l[2] - l0[2]]);
            if l0_norm > 0.0 {
                angmom_drift = angmom_drift.max(dl / l0_norm);
            }
            times.push(t);
            points.push(pt);
            let grow = 0.94 * err.max(1e-10).powf(-1.0 / (2.0 * COLUMNS as f64 - 1.0));
            h = step * grow.clamp(0.2, 4.0);
        } else {
            rejections += 1;
            let shrink = 0.94 * err.powf(-1.0 / (2.0 * COLUMNS as f64 - 1.0));
            h = step * shrink.clamp(0.05, 0.7);
            if rejections > 50 || h <= 1e-15 * t.max(1.0) {
                return Err(Error::ToleranceFailure { time: t, step: h });
            }
        }
    }
    Ok(Trajectory {
        times,
        points,
        energy_drift,
        angmom_drift,
    })
}

fn initial_step(start: &PhasePoint, coupling: Coupling, t_end: f64) -> f64 {
    let r = start.radius();
    let p = norm(&start.momentum).max(1e-3);
    // a fraction of the local crossing time r / (a^2 p)
    let h = 0.05 * r / (coupling.squared() * p);
    if t_end > 0.0 {
        h.min(t_end)
    } else {
        h
    }
}

/// Radial period in the time units of the equations above:
/// `pi (E R + 2 a^2) / (a^2 sqrt(2E/R))`.
pub fn radial_period(el: &OrbitalElements, coupling: Coupling) -> f64 {
    let a2 = coupling.squared();
    PI * (el.energy * el.scale + 2.0 * a2) / (a2 * (2.0 * el.energy / el.scale).sqrt())
}

/// Orbital elements and radial period of a bound start point.
pub fn period_of(start: &PhasePoint, coupling: Coupling) -> Result<f64> {
    let el = orbital_elements(start, coupling)?;
    Ok(radial_period(&el, coupling))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasespace::{circular_orbit, density_eval, StateDensity};

    fn c(a: f64) -> Coupling {
        Coupling::new(a).unwrap()
    }

    #[test]
    fn circular_orbit_keeps_radius() {
        let cp = c(0.2);
        let start = circular_orbit(1.5, cp).unwrap();
        let p = norm(&start.momentum);
        let gamma = (1.0 + cp.squared() * p * p).sqrt();
        let period = 2.0 * PI * 1.5 * gamma / (cp.squared() * p);
        let traj = orbit_integrate(&start, cp, 100.0 * period, 1e-12).unwrap();
        let dev = traj.points.iter().map(|pt| (pt.radius() - 1.5).abs() / 1.5).fold(0.0, f64::max);
        assert!(dev < 1e-9, "{dev}");
    }

    #[test]
    fn kepler_limit_period() {
        // small a: T = 2 pi (R/2)^(3/2) / a^2
        let cp = c(1e-3);
        let start = PhasePoint::new([1.0, 0.0, 0.0], [0.2, 0.9, 0.0]);
        let el = orbital_elements(&start, cp).unwrap();
        let t = radial_period(&el, cp);
        let kepler = 2.0 * PI * (el.scale / 2.0).powf(1.5) / cp.squared();
        assert!((t / kepler - 1.0).abs() < 1e-5);
    }

    #[test]
    fn returns_to_pericentre_after_one_period() {
        let cp = c(0.2);
        let start = PhasePoint::new([1.2, 0.0, 0.0], [0.0, 0.7, 0.1]);
        let t = period_of(&start, cp).unwrap();
        let traj = orbit_integrate(&start, cp, t, 1e-12).unwrap();
        let end = traj.points.last().unwrap();
        assert!((end.radius() - 1.2).abs() < 1e-8);
        assert!(end.radial_momentum().abs() < 1e-8);
    }

    #[test]
    fn conserved_quantities_and_density() {
        let cp = c(0.2);
        let start = PhasePoint::new([1.5, 0.0, 0.0], [0.2, 0.6, 0.0]);
        let t = 20.0 * period_of(&start, cp).unwrap();
        let traj = orbit_integrate(&start, cp, t, 1e-12).unwrap();
        assert!(traj.energy_drift < 1e-10, "{}", traj.energy_drift);
        assert!(traj.angmom_drift < 1e-10, "{}", traj.angmom_drift);
        let sd = StateDensity::yrast(1, cp).unwrap();
        let d0 = density_eval(&sd, &start).unwrap();
        for pt in &traj.points {
            assert!((density_eval(&sd, pt).unwrap() / d0 - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn drift_shrinks_with_tolerance() {
        let cp = c(0.3);
        let start = PhasePoint::new([2.0, 0.0, 0.0], [0.1, 0.45, 0.0]);
        let t = 5.0 * period_of(&start, cp).unwrap();
        let loose = orbit_integrate(&start, cp, t, 1e-6).unwrap();
        let tight = orbit_integrate(&start, cp, t, 1e-10).unwrap();
        assert!(tight.energy_drift < loose.energy_drift);
    }

    #[test]
    fn rejects_bad_input() {
        let start = PhasePoint::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert!(orbit_integrate(&start, c(0.0), 1.0, 1e-10).is_err());
        assert!(orbit_integrate(&start, c(0.2), 1.0, 0.0).is_err());
        let fast = PhasePoint::new([1.0, 0.0, 0.0], [0.0, 100.0, 0.0]);
        assert!(matches!(orbit_integrate(&fast, c(0.2), 1.0, 1e-10), Err(Error::Unbound { .. })));
    }
}
