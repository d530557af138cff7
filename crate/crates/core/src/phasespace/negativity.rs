use std::f64::consts::PI;

use serde::Serialize;

use super::coords::ChartPoint;
use super::density::{ChartDensity, StateDensity};
use crate::error::{Error, Result};

/// Result of [`negativity_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NegativityScan {
    pub min_value: f64,
    /// Where the minimum sits. The momentum angles are integrated out, so
    /// `mu`, `nu`, `theta` and `phi` carry placeholder values.
    pub location: ChartPoint,
}

impl NegativityScan {
    /// `r (R - r)` at the minimum.
    pub fn gap_product(&self) -> f64 {
        self.location.r * (self.location.scale - self.location.r)
    }
}

fn radial_density(cd: &ChartDensity, u: f64, scale: f64) -> f64 {
    if !(u > 0.0 && u < 1.0 && scale > 0.0) {
        return f64::INFINITY;
    }
    cd.angle_integrated(u * scale, scale)
}

/// Nelder-Mead on `(u, R)`, `u = r/R`.
fn refine(cd: &ChartDensity, start: [f64; 2], step: [f64; 2], tol: f64) -> ([f64; 2], f64) {
    let f = |p: &[f64; 2]| radial_density(cd, p[0], p[1]);
    let mut simplex = [
        start,
        [start[0] + step[0], start[1]],
        [start[0], start[1] + step[1]],
    ];
    let mut values = simplex.map(|p| f(&p));
    for _ in 0..2000 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let [best, mid, worst] = idx;
        let spread = (0..2)
            .map(|k| (simplex[worst][k] - simplex[best][k]).abs().max((simplex[mid][k] - simplex[best][k]).abs()))
            .fold(0.0, f64::max);
        if spread < tol {
            return (simplex[best], values[best]);
        }
        let centroid = [
            0.5 * (simplex[best][0] + simplex[mid][0]),
            0.5 * (simplex[best][1] + simplex[mid][1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (simplex[worst][0] - centroid[0]),
                centroid[1] + t * (simplex[worst][1] - centroid[1]),
            ]
        };
        let reflected = along(-1.0);
        let fr = f(&reflected);
        if fr < values[best] {
            let expanded = along(-2.0);
            let fe = f(&expanded);
            if fe < fr {
                simplex[worst] = expanded;
                values[worst] = fe;
            } else {
                simplex[worst] = reflected;
                values[worst] = fr;
            }
        } else if fr < values[mid] {
            simplex[worst] = reflected;
            values[worst] = fr;
        } else {
            let contracted = along(0.5);
            let fc = f(&contracted);
            if fc < values[worst] {
                simplex[worst] = contracted;
                values[worst] = fc;
            } else {
                for &k in &[mid, worst] {
                    simplex[k] = [
                        simplex[best][0] + 0.5 * (simplex[k][0] - simplex[best][0]),
                        simplex[best][1] + 0.5 * (simplex[k][1] - simplex[best][1]),
                    ];
                    values[k] = f(&simplex[k]);
                }
            }
        }
    }
    let best = (0..3).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
    (simplex[best], values[best])
}

/// Global minimum of the radial phase-space density
/// `int dmu dnu rho(r, R, mu)` over `0 < r < R`.
///
/// A `resolution x resolution` grid in `(r/R, R)` seeds Nelder-Mead
/// refinements from the lowest few cells; location tolerance `1e-6`.
pub fn negativity_scan(sd: &StateDensity, resolution: usize) -> Result<NegativityScan> {
    if resolution < 2 {
        return Err(Error::OutOfRange {
            what: "scan resolution",
            value: resolution as f64,
        });
    }
    let cd = sd.chart_density();
    let scale_max = 40.0 / sd.decay();
    let n = resolution as f64;
    let mut cells = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let u = (i as f64 + 0.5) / n;
        for j in 0..resolution {
            let scale = scale_max * (j as f64 + 0.5) / n;
            cells.push((radial_density(&cd, u, scale), u, scale));
        }
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));

    let step = [0.5 / n, 0.5 * scale_max / n];
    let mut best = (cells[0].1, cells[0].2, cells[0].0);
    for &(_, u, scale) in cells.iter().take(4) {
        let (p, v) = refine(&cd, [u, scale], step, 1e-7);
        if v < best.2 {
            best = (p[0], p[1], v);
        }
    }
    let (u, scale, min_value) = best;
    Ok(NegativityScan {
        min_value,
        location: ChartPoint {
            r: u * scale,
            theta: 0.0,
            phi: 0.0,
            scale,
            mu: PI / 2.0,
            nu: 0.0,
        },
    })
}

/// Values of `x = r(R - r)` at which the radial phase-space density changes
/// sign along `0 < r <= R/2` at fixed orbit scale `R`.
pub fn gap_sign_changes(sd: &StateDensity, scale: f64) -> Vec<f64> {
    let cd = sd.chart_density();
    let r_of = |x: f64| 0.5 * (scale - (scale * scale - 4.0 * x).max(0.0).sqrt());
    let f = |x: f64| cd.angle_integrated(r_of(x), scale);
    let x_max = 0.25 * scale * scale;
    let steps = 4000;
    let mut roots = Vec::new();
    let mut x_prev = x_max / steps as f64;
    let mut f_prev = f(x_prev);
    for i in 2..=steps {
        let x = x_max * i as f64 / steps as f64;
        let fx = f(x);
        if f_prev.signum() != fx.signum() {
            let (mut lo, mut hi, mut flo) = (x_prev, x, f_prev);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm.signum() == flo.signum() {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-14 * hi {
                    break;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    roots
}
