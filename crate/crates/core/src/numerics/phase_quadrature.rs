//! Brute-force phase-space integrals of a density, evaluated point by point
//! through [`chart_to_phase`] and [`density_eval`]. These serve as oracles
//! for the closed-form marginals and moments.

use std::f64::consts::PI;

use super::quadrature::{tanh_sinh_run, tanh_sinh_vec, try_integrate_semi_infinite, QuadratureSpec};
use crate::error::{Error, Result};
use crate::phasespace::{chart_to_phase, density_eval, measure_factor, ChartPoint, PhasePoint, StateDensity};

// Off-axis position and momentum azimuth; the density does not depend on them.
const THETA: f64 = 1.1;
const PHI: f64 = 0.4;
const NU: f64 = 0.7;

/// Points closer to the nucleus are dropped: their energy may not survive
/// rounding, and even `<1/r^2>` gets only about `CORE` from them.
const CORE: f64 = 1e-12;
/// Between `CORE` and this fraction of the scale length, points whose
/// energy is lost to rounding are dropped too.
const NEAR_CORE: f64 = 1e-6;
/// Orbits smaller than this fraction of the scale length are skipped; their
/// mass goes as `R^5`.
const SMALL_ORBIT: f64 = 1e-4;

fn scale_length(sd: &StateDensity) -> f64 {
    (5.0 + 4.0 * sd.ell()) / sd.decay()
}

/// Agreement asked of the inner tanh-sinh levels; their error is roughly
/// the square of it.
fn inner_tol(spec: &QuadratureSpec) -> f64 {
    spec.rel_tol.sqrt().min(1e-4)
}

/// An inner level that does not settle (rounding noise near the nucleus)
/// contributes its finest estimate; the outermost level still checks
/// convergence.
fn inner_vec<F, const N: usize>(f: F, a: f64, b: f64, tol: f64) -> Result<[f64; N]>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    Ok(tanh_sinh_run(f, a, b, tol)?.value)
}

fn inner<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok(inner_vec(|x| Ok([f(x)?]), a, b, tol)?[0])
}

/// `2 pi * measure * density` at a chart point, together with the phase point.
fn weighted_point(sd: &StateDensity, r: f64, scale: f64, mu: f64) -> Result<(f64, ChartPoint, PhasePoint)> {
    let cp = ChartPoint {
        r,
        theta: THETA,
        phi: PHI,
        scale,
        mu,
        nu: NU,
    };
    let pt = chart_to_phase(&cp, sd.coupling())?;
    if r < CORE {
        return Ok((0.0, cp, pt));
    }
    let d = match density_eval(sd, &pt) {
        Err(_) if r < NEAR_CORE * scale_length(sd) => return Ok((0.0, cp, pt)),
        d => d?,
    };
    if !d.is_finite() {
        return Err(Error::Domain(format!("density {d} at r = {r}")));
    }
    Ok((2.0 * PI * measure_factor(&cp, sd.coupling())? * d, cp, pt))
}

/// `int dV_p P` at radius `r` by nested quadrature over `(R, mu)`.
pub fn marginal_quadrature(sd: &StateDensity, r: f64, spec: &QuadratureSpec) -> Result<f64> {
    let tol = inner_tol(spec);
    let outer = try_integrate_semi_infinite(
        |scale| {
            if scale <= r {
                return Ok(0.0);
            }
            inner(|mu| Ok(weighted_point(sd, r, scale, mu)?.0), 0.0, PI, tol)
        },
        r,
        scale_length(sd),
        spec,
    )?;
    Ok(outer.value)
}

/// A function on phase space, given in both coordinate systems.
pub type Observable<'a> = &'a dyn Fn(&ChartPoint, &PhasePoint) -> f64;

/// `int d^3r dV_p P f` by nested quadrature over `(R, r, mu)`.
pub fn phase_average<F>(sd: &StateDensity, observable: F, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(&ChartPoint, &PhasePoint) -> f64,
{
    Ok(phase_averages(sd, [&observable], spec)?[0])
}

/// Several averages from one pass of nested tanh-sinh rules. `R` runs over
/// `(0, inf)` through `R = s x / (1 - x)`.
pub fn phase_averages<const N: usize>(
    sd: &StateDensity,
    observables: [Observable<'_>; N],
    spec: &QuadratureSpec,
) -> Result<[f64; N]> {
    let tol = inner_tol(spec);
    let s = scale_length(sd);
    let at_scale = |scale: f64| -> Result<[f64; N]> {
        inner_vec(
            |r| {
                if r <= 0.0 || r >= scale {
                    return Ok([0.0; N]);
                }
                let ang = inner_vec(
                    |mu| {
                        let (w, cp, pt) = weighted_point(sd, r, scale, mu)?;
                        Ok(if w == 0.0 {
                            [0.0; N]
                        } else {
                            observables.map(|f| w * f(&cp, &pt))
                        })
                    },
                    0.0,
                    PI,
                    tol,
                )?;
                Ok(ang.map(|v| 4.0 * PI * r * r * v))
            },
            0.0,
            scale,
            tol,
        )
    };
    let (values, _) = tanh_sinh_vec(
        |x| {
            let scale = s * x / (1.0 - x);
            // exp(-decay R) underflows long before E rounds to 1
            if !(scale > SMALL_ORBIT * s && scale * sd.decay() < 750.0) {
                return Ok([0.0; N]);
            }
            let jac = s / ((1.0 - x) * (1.0 - x));
            Ok(at_scale(scale)?.map(|v| v * jac))
        },
        0.0,
        1.0,
        spec.rel_tol.sqrt(),
    )?;
    Ok(values)
}

/// `int d^3r dV_p P`.
pub fn normalization_quadrature(sd: &StateDensity, spec: &QuadratureSpec) -> Result<f64> {
    phase_average(sd, |_, _| 1.0, spec)
}

/// Single-bracket averages by quadrature, from phase-point observables.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadratureExpectations {
    pub inv_r: f64,
    pub inv_r2: f64,
    pub inv_scale: f64,
    pub inv_scale2: f64,
    /// `<(1/r - 1/R) cos^2 mu> = <p_r^2 / 2E>`.
    pub gap_cos2: f64,
    /// `<(1/r - 1/R) sin^2 mu> = <(L^2 - a^2) / (2E r^2)>`.
    pub gap_sin2: f64,
}

pub fn quadrature_expectations(sd: &StateDensity, spec: &QuadratureSpec) -> Result<QuadratureExpectations> {
    let c = sd.coupling();
    let a2 = c.squared();
    let inv_scale = |pt: &PhasePoint| {
        let e = pt.energy(c);
        // 1/R from E = sqrt(1 + a^4/R^2) - a^2/R
        if a2 == 0.0 {
            1.0 / pt.radius() - 0.5 * norm_sq(&pt.momentum)
        } else {
            (1.0 - e * e) / (2.0 * a2 * e)
        }
    };
    let [inv_r, inv_r2, inv_scale_avg, inv_scale2, gap_cos2, gap_sin2] = phase_averages(
        sd,
        [
            &|_, pt| 1.0 / pt.radius(),
            &|_, pt| pt.radius().powi(-2),
            &|_, pt| inv_scale(pt),
            &|_, pt| inv_scale(pt).powi(2),
            &|_, pt| pt.radial_momentum().powi(2) / (2.0 * pt.energy(c)),
            &|_, pt| (norm_sq(&pt.angular_momentum()) - a2) / (2.0 * pt.energy(c) * pt.radius().powi(2)),
        ],
        spec,
    )?;
    Ok(QuadratureExpectations {
        inv_r,
        inv_r2,
        inv_scale: inv_scale_avg,
        inv_scale2,
        gap_cos2,
        gap_sin2,
    })
}

fn norm_sq(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum()
}
