use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectrum::Coupling;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Instantaneous particle state in scaled atomic units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub position: Vec3,
    pub momentum: Vec3,
}

impl PhasePoint {
    pub fn new(position: Vec3, momentum: Vec3) -> Self {
        Self { position, momentum }
    }

    pub fn radius(&self) -> f64 {
        norm(&self.position)
    }

    pub fn angular_momentum(&self) -> Vec3 {
        cross(&self.position, &self.momentum)
    }

    /// Radial momentum `p . r / r`.
    pub fn radial_momentum(&self) -> f64 {
        dot(&self.position, &self.momentum) / self.radius()
    }

    /// Lorentz factor `sqrt(1 + a^2 p^2)` of the scaled Hamiltonian.
    pub fn gamma(&self, coupling: Coupling) -> f64 {
        (1.0 + coupling.squared() * dot(&self.momentum, &self.momentum)).sqrt()
    }

    /// Scaled energy `gamma - a^2 / r`.
    pub fn energy(&self, coupling: Coupling) -> f64 {
        self.gamma(coupling) - coupling.squared() / self.radius()
    }
}

/// Conserved quantities of a bound relativistic Kepler orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitalElements {
    /// Energy in units of `m c^2`.
    pub energy: f64,
    /// `|r x p|` in units of `hbar`.
    pub angular_momentum: f64,
    /// `sqrt(1 - a^2 / L^2)`.
    pub omega: f64,
    /// Orbit scale `R(E)`.
    pub scale: f64,
}

impl OrbitalElements {
    /// `omega L = sqrt(L^2 - a^2)`.
    pub fn omega_l(&self) -> f64 {
        self.omega * self.angular_momentum
    }
}

/// Energy belonging to orbit scale `R`: `sqrt(1 + a^4/R^2) - a^2/R`.
///
/// Evaluated as the reciprocal of `sqrt(1 + a^4/R^2) + a^2/R`, which has no
/// cancellation.
pub fn orbit_energy(scale: f64, coupling: Coupling) -> f64 {
    let q = coupling.squared() / scale;
    1.0 / ((1.0 + q * q).sqrt() + q)
}

/// Closed-form inverse of [`orbit_energy`]: `R = 2 a^2 E / (1 - E^2)`.
///
/// Undefined at `a = 0`, where every bound orbit has `E = 1`; use
/// [`orbital_elements`] there.
pub fn orbit_scale(energy: f64, coupling: Coupling) -> Result<f64> {
    if !(energy > 0.0 && energy < 1.0) {
        return Err(Error::OutOfRange {
            what: "energy",
            value: energy,
        });
    }
    Ok(2.0 * coupling.squared() * energy / ((1.0 - energy) * (1.0 + energy)))
}

/// `Phi(E) = sqrt(1 + a^4/R^2) / (2 E^2)`; tends to 1/2 non-relativistically.
pub fn phi_factor(scale: f64, coupling: Coupling) -> f64 {
    let e = orbit_energy(scale, coupling);
    let q = coupling.squared() / scale;
    (1.0 + q * q).sqrt() / (2.0 * e * e)
}

/// Energy, angular momentum and orbit scale of a phase point.
///
/// The binding `2 gamma / r - p^2 - a^2 / r^2 = (1 - E^2) / a^2` is formed
/// directly near the non-relativistic limit and from `E` close to the
/// nucleus.
pub fn orbital_elements(pt: &PhasePoint, coupling: Coupling) -> Result<OrbitalElements> {
    let r = pt.radius();
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("radius {r} must be positive")));
    }
    let a2 = coupling.squared();
    let p2 = dot(&pt.momentum, &pt.momentum);
    let gamma = (1.0 + a2 * p2).sqrt();
    let energy = gamma - a2 / r;
    if !(energy > 0.0) {
        return Err(Error::Domain(format!("orbit energy {energy} is not positive")));
    }
    // both forms equal (1 - E^2) / a^2; take the one with less cancellation
    let direct = 2.0 * gamma / r + p2 + a2 / (r * r);
    let binding = if a2 > 0.0 && (gamma + a2 / r) < a2 * direct {
        (1.0 - energy) * (1.0 + energy) / a2
    } else {
        2.0 * gamma / r - p2 - a2 / (r * r)
    };
    if !(binding > 0.0) {
        return Err(Error::Unbound { energy });
    }
    let scale = 2.0 * energy / binding;
    let l = norm(&pt.angular_momentum());
    let alpha_z = coupling.alpha_z();
    // orbits on the barrier itself come back below it by the rounding of r x p
    let slack = 1e-12 * alpha_z + 16.0 * f64::EPSILON * r * p2.sqrt();
    if l < alpha_z - slack {
        return Err(Error::SubBarrier { l, alpha_z });
    }
    let omega = if a2 == 0.0 {
        1.0
    } else {
        ((l - alpha_z) * (l + alpha_z)).max(0.0).sqrt() / l
    };
    Ok(OrbitalElements {
        energy,
        angular_momentum: l,
        omega,
        scale,
    })
}

/// A point in the chart `(r, theta, phi; R, mu, nu)`: spherical position
/// coordinates plus the orbit scale and two momentum angles.
///
/// In the frame `(theta_hat, phi_hat, r_hat)` the momentum is
/// `(p_perp cos nu, p_perp sin nu, p_r)` with `p_perp = L / r`, and
/// `(p_r, omega L / r) = sqrt(2E(1/r - 1/R)) (cos mu, sin mu)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartPoint {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
    /// Orbit scale `R`.
    pub scale: f64,
    pub mu: f64,
    pub nu: f64,
}

fn position_frame(theta: f64, phi: f64) -> [Vec3; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [
        [ct * cp, ct * sp, -st],
        [-sp, cp, 0.0],
        [st * cp, st * sp, ct],
    ]
}

fn check_chart(cp: &ChartPoint) -> Result<()> {
    if !(cp.r > 0.0 && cp.r.is_finite()) {
        return Err(Error::Domain(format!("chart radius {} must be positive", cp.r)));
    }
    if !(cp.r <= cp.scale && cp.scale.is_finite()) {
        return Err(Error::Domain(format!(
            "chart radius {} exceeds the orbit scale {}",
            cp.r, cp.scale
        )));
    }
    if !(0.0..=PI).contains(&cp.mu) {
        return Err(Error::Domain(format!("mu = {} outside [0, pi]", cp.mu)));
    }
    Ok(())
}

/// `2E(1/r - 1/R)`, the squared radius of the `(p_r, omega L / r)` circle.
fn momentum_radius_sq(r: f64, scale: f64, energy: f64) -> f64 {
    2.0 * energy * (scale - r) / (r * scale)
}

pub fn chart_to_phase(cp: &ChartPoint, coupling: Coupling) -> Result<PhasePoint> {
    check_chart(cp)?;
    let energy = orbit_energy(cp.scale, coupling);
    let rho = momentum_radius_sq(cp.r, cp.scale, energy).sqrt();
    let (sm, cm) = cp.mu.sin_cos();
    let p_r = rho * cm;
    let omega_l = cp.r * rho * sm;
    let l = (omega_l * omega_l + coupling.squared()).sqrt();
    let p_perp = l / cp.r;
    let (sn, cn) = cp.nu.sin_cos();
    let [e_theta, e_phi, e_r] = position_frame(cp.theta, cp.phi);
    let mut position = [0.0; 3];
    let mut momentum = [0.0; 3];
    for i in 0..3 {
        position[i] = cp.r * e_r[i];
        momentum[i] = p_perp * cn * e_theta[i] + p_perp * sn * e_phi[i] + p_r * e_r[i];
    }
    Ok(PhasePoint { position, momentum })
}

pub fn phase_to_chart(pt: &PhasePoint, coupling: Coupling) -> Result<ChartPoint> {
    let el = orbital_elements(pt, coupling)?;
    let r = pt.radius();
    let [x, y, z] = pt.position;
    let theta = (z / r).clamp(-1.0, 1.0).acos();
    let phi = y.atan2(x).rem_euclid(2.0 * PI);
    let [e_theta, e_phi, e_r] = position_frame(theta, phi);
    let p_r = dot(&pt.momentum, &e_r);
    let nu = dot(&pt.momentum, &e_phi)
        .atan2(dot(&pt.momentum, &e_theta))
        .rem_euclid(2.0 * PI);
    let mu = (el.omega_l() / r).atan2(p_r);
    Ok(ChartPoint {
        r,
        theta,
        phi,
        scale: el.scale,
        mu,
        nu,
    })
}

/// Density of the invariant momentum measure `d^3p / gamma` with respect to
/// `dmu dnu dR` at fixed position:
/// `(1 / (2 R^2 Phi)) sqrt(2/(E r) - 2/(E R)) sin mu`.
pub fn measure_factor(cp: &ChartPoint, coupling: Coupling) -> Result<f64> {
    check_chart(cp)?;
    let energy = orbit_energy(cp.scale, coupling);
    let phi = phi_factor(cp.scale, coupling);
    let root = (2.0 * (cp.scale - cp.r) / (energy * cp.r * cp.scale)).sqrt();
    Ok(root * cp.mu.sin() / (2.0 * cp.scale * cp.scale * phi))
}

/// Circular orbit of radius `r` in the `x-y` plane, moving counter-clockwise.
///
/// From `p^2 / gamma = 1 / r`: `p^2 = (a^2 + sqrt(a^4 + 4 r^2)) / (2 r^2)`.
pub fn circular_orbit(r: f64, coupling: Coupling) -> Result<PhasePoint> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::OutOfRange {
            what: "radius",
            value: r,
        });
    }
    let a2 = coupling.squared();
    let p2 = (a2 + (a2 * a2 + 4.0 * r * r).sqrt()) / (2.0 * r * r);
    Ok(PhasePoint::new([r, 0.0, 0.0], [0.0, p2.sqrt(), 0.0]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(a: f64) -> Coupling {
        Coupling::new(a).unwrap()
    }

    #[test]
    fn nonrelativistic_circular_orbit() {
        let pt = PhasePoint::new([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let el = orbital_elements(&pt, c(0.0)).unwrap();
        assert_eq!(el.energy, 1.0);
        assert!((el.scale - 2.0).abs() < 1e-15);
        let a = 1e-4;
        let el = orbital_elements(&pt, c(a)).unwrap();
        assert!(((el.energy - 1.0) / (a * a) + 0.5).abs() < 1e-6);
        assert!((el.scale - 2.0).abs() < 1e-6);
    }

    #[test]
    fn scale_closed_form_matches_root_find() {
        let cp = c(0.2);
        let e = 0.978_906_3;
        let r = orbit_scale(e, cp).unwrap();
        assert!((r - 1.87609).abs() < 1e-4);
        // bisection on orbit_energy(R) = e; orbit_energy increases with R
        let (mut lo, mut hi) = (1e-6, 1e6);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if orbit_energy(mid, cp) < e {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((r - 0.5 * (lo + hi)).abs() < 1e-10 * r);
    }

    #[test]
    fn turning_point() {
        let cp = c(0.2);
        let r = 1.7;
        let pt = PhasePoint::new([0.0, 0.0, r], [0.0, 0.0, 0.0]);
        assert!((pt.energy(cp) - (1.0 - 0.04 / r)).abs() < 1e-15);
        assert!(matches!(orbital_elements(&pt, cp), Err(Error::SubBarrier { .. })));
        let el = orbital_elements(&pt, c(0.0)).unwrap();
        assert!((el.scale - r).abs() < 1e-15);
    }

    #[test]
    fn unbound_detected() {
        let pt = PhasePoint::new([1.0, 0.0, 0.0], [0.0, 2.0, 0.0]);
        assert!(matches!(orbital_elements(&pt, c(0.1)), Err(Error::Unbound { .. })));
        let origin = PhasePoint::new([0.0; 3], [0.0, 1.0, 0.0]);
        assert!(orbital_elements(&origin, c(0.1)).is_err());
    }

    #[test]
    fn elements_satisfy_invariants() {
        let cp = c(0.3);
        let pt = PhasePoint::new([0.3, -0.8, 0.5], [0.6, 0.4, -0.2]);
        let el = orbital_elements(&pt, cp).unwrap();
        let a2 = cp.squared();
        let l = el.angular_momentum;
        assert!((el.omega_l().powi(2) - (l * l - a2)).abs() < 1e-14);
        assert!((orbit_energy(el.scale, cp) - el.energy).abs() < 1e-12);
        assert!(el.scale >= pt.radius());
        assert!(l >= cp.alpha_z());
    }

    #[test]
    fn mu_zero_gives_minimal_angular_momentum() {
        let cp = c(0.2);
        let ch = ChartPoint {
            r: 0.8,
            theta: 1.1,
            phi: 0.3,
            scale: 2.5,
            mu: 0.0,
            nu: 1.0,
        };
        let pt = chart_to_phase(&ch, cp).unwrap();
        let el = orbital_elements(&pt, cp).unwrap();
        assert!((el.angular_momentum - 0.2).abs() < 1e-14);
        assert!(el.omega_l().abs() < 1e-6);
    }

    #[test]
    fn turning_point_in_chart() {
        let cp = c(0.2);
        let ch = ChartPoint {
            r: 2.5,
            theta: 0.4,
            phi: 2.0,
            scale: 2.5,
            mu: PI / 2.0,
            nu: 0.0,
        };
        let pt = chart_to_phase(&ch, cp).unwrap();
        assert!(pt.radial_momentum().abs() < 1e-15);
        let el = orbital_elements(&pt, cp).unwrap();
        assert!(el.omega_l() < 1e-6);
        assert!(measure_factor(&ch, cp).unwrap() == 0.0);
    }

    #[test]
    fn chart_domain_errors() {
        let cp = c(0.1);
        let mut ch = ChartPoint {
            r: 3.0,
            theta: 0.0,
            phi: 0.0,
            scale: 2.0,
            mu: 1.0,
            nu: 0.0,
        };
        assert!(chart_to_phase(&ch, cp).is_err());
        assert!(measure_factor(&ch, cp).is_err());
        ch.r = 1.0;
        ch.mu = 4.0;
        assert!(chart_to_phase(&ch, cp).is_err());
    }

    #[test]
    fn phi_nonrelativistic() {
        assert_eq!(phi_factor(3.0, c(0.0)), 0.5);
        let ch = ChartPoint {
            r: 1.0,
            theta: 0.0,
            phi: 0.0,
            scale: 2.0,
            mu: 0.0,
            nu: 0.0,
        };
        assert_eq!(measure_factor(&ch, c(0.1)).unwrap(), 0.0);
    }

    #[test]
    fn circular_orbit_has_turning_radius() {
        let cp = c(0.2);
        let pt = circular_orbit(1.3, cp).unwrap();
        let el = orbital_elements(&pt, cp).unwrap();
        // circular: r = R/2 and omega^2 L^2 = E r
        assert!((el.scale - 2.6).abs() < 1e-12);
        assert!((el.omega_l().powi(2) - el.energy * 1.3).abs() < 1e-12);
    }
}
