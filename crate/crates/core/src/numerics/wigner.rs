//! Momentum marginals of the hydrogen ground state: the Wigner function's
//! `W(p) = 8 / (pi^2 (1 + p^2)^4)` against the non-relativistic classical
//! density `P(r, p) = (2/pi^3) L R^3 exp(-2R)`.
//!
//! Both are densities per `d^3p`, normalized under `4 pi p^2 dp`.

use std::f64::consts::PI;

use serde::Serialize;

use super::quadrature::{integrate, integrate_semi_infinite, try_integrate_semi_infinite, QuadratureSpec};
use crate::error::{Error, Result};

pub fn wigner_marginal(p: f64) -> f64 {
    8.0 / (PI * PI * (1.0 + p * p).powi(4))
}

/// `(2p/pi) int_0^inf dR R^6 exp(-2R) / (1 + p^2 R / 2)^5`.
pub fn classical_marginal(p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::GridOutOfDomain(p));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let q = 0.5 * p * p;
    let i = if q <= 1.0 {
        integrate_semi_infinite(|r| r.powi(6) * (-2.0 * r).exp() / (1.0 + q * r).powi(5), 0.0, 1.0, spec)?.value
    } else {
        // q^-5 R^6 exp(-2R) / (1/q + R)^5 keeps the integrand of order one
        let c = 1.0 / q;
        let v = integrate_semi_infinite(|r| r.powi(6) * (-2.0 * r).exp() / (c + r).powi(5), 0.0, 1.0, spec)?.value;
        v * c.powi(5)
    };
    Ok(2.0 * p / PI * i)
}

/// `d P / dp` at `p = 0`: `(2/pi) int R^6 exp(-2R) dR`.
pub fn classical_initial_slope(spec: &QuadratureSpec) -> Result<f64> {
    let i = integrate(|r| r.powi(6) * (-2.0 * r).exp(), 0.0, f64::INFINITY, spec)?;
    Ok(2.0 / PI * i.value)
}

/// The classical marginal from its definition: `P(r, p)` integrated over
/// positions in spherical coordinates about `p`,
/// `(2p/pi) int_0^{2/p^2} r^3 R^3 exp(-2R) dr` with `1/R = 1/r - p^2/2`.
pub fn classical_marginal_from_positions(p: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::GridOutOfDomain(p));
    }
    if p == 0.0 {
        return Ok(0.0);
    }
    let r_max = 2.0 / (p * p);
    let i = integrate(
        |r| {
            let inv = 1.0 / r - 0.5 * p * p;
            if inv <= 0.0 {
                return 0.0;
            }
            let big = 1.0 / inv;
            let v = r.powi(3) * big.powi(3) * (-2.0 * big).exp();
            if v.is_finite() {
                v
            } else {
                0.0
            }
        },
        0.0,
        r_max,
        spec,
    )?;
    Ok(2.0 * p / PI * i.value)
}

/// `int_0^inf 4 pi p^2 W(p) dp`.
pub fn wigner_normalization(spec: &QuadratureSpec) -> Result<f64> {
    Ok(integrate(|p| 4.0 * PI * p * p * wigner_marginal(p), 0.0, f64::INFINITY, spec)?.value)
}

/// `int_0^inf 4 pi p^2 P(p) dp`.
pub fn classical_normalization(spec: &QuadratureSpec) -> Result<f64> {
    let inner = spec.tightened(1e-2);
    let i = try_integrate_semi_infinite(|p| Ok(4.0 * PI * p * p * classical_marginal(p, &inner)?), 0.0, 1.0, spec)?;
    Ok(i.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FigureRow {
    pub p: f64,
    pub wigner: f64,
    pub classical: f64,
}

/// Both marginals on a sorted, non-negative grid.
pub fn figure_data(p_grid: &[f64], spec: &QuadratureSpec) -> Result<Vec<FigureRow>> {
    let mut last = 0.0;
    for &p in p_grid {
        if !(p >= last && p.is_finite()) {
            return Err(Error::GridOutOfDomain(p));
        }
        last = p;
    }
    p_grid
        .iter()
        .map(|&p| {
            Ok(FigureRow {
                p,
                wigner: wigner_marginal(p),
                classical: classical_marginal(p, spec)?,
            })
        })
        .collect()
}

/// `count` points evenly spaced in `log p` on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1).max(1) as f64).exp())
        .collect()
}

/// Least-squares slope of `ln f` against `ln p`.
pub fn log_log_slope(ps: &[f64], values: &[f64]) -> Result<f64> {
    if ps.len() != values.len() || ps.len() < 2 {
        return Err(Error::Domain("slope fit needs at least two matching points".into()));
    }
    let xs: Vec<f64> = ps.iter().map(|p| p.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Asymptotic exponent `k` from the fit
/// `ln f = c + k ln p + d / p^2 + e / p^4`.
///
/// The classical tail is `p^-9 (1 - 20/p^2 + O(ln p / p^4))`, so a plain
/// log-log fit over a finite window is biased; the extra columns absorb
/// the leading corrections.
pub fn asymptotic_exponent(ps: &[f64], values: &[f64]) -> Result<f64> {
    if ps.len() != values.len() || ps.len() < 4 {
        return Err(Error::Domain("exponent fit needs at least four matching points".into()));
    }
    let rows: Vec<[f64; 4]> = ps
        .iter()
        .map(|p| {
            [1.0, p.ln(), p.powi(-2), p.powi(-4)]
        })
        .collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    Ok(least_squares(&rows, &ys)?[1])
}

/// Normal equations solved by Gaussian elimination with partial pivoting.
fn least_squares<const N: usize>(rows: &[[f64; N]], ys: &[f64]) -> Result<[f64; N]> {
    let mut a = [[0.0; N]; N];
    let mut b = [0.0; N];
    for (row, y) in rows.iter().zip(ys) {
        for i in 0..N {
            b[i] += row[i] * y;
            for j in 0..N {
                a[i][j] += row[i] * row[j];
            }
        }
    }
    for col in 0..N {
        let piv = (col..N)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty");
        if a[piv][col] == 0.0 {
            return Err(Error::Domain("singular fit".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for i in col + 1..N {
            let f = a[i][col] / a[col][col];
            let pivot = a[col];
            for (x, p) in a[i].iter_mut().zip(pivot).skip(col) {
                *x -= f * p;
            }
            b[i] -= f * b[col];
        }
    }
    let mut x = [0.0; N];
    for i in (0..N).rev() {
        let s: f64 = (i + 1..N).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Ok(x)
}

/// Points in `(lo, hi)` where `W - P` changes sign, from a uniform scan of
/// `steps` cells refined by bisection.
pub fn crossings(lo: f64, hi: f64, steps: usize, spec: &QuadratureSpec) -> Result<Vec<f64>> {
    let diff = |p: f64| -> Result<f64> { Ok(wigner_marginal(p) - classical_marginal(p, spec)?) };
    let mut out = Vec::new();
    let h = (hi - lo) / steps as f64;
    let mut x0 = lo + 0.5 * h;
    let mut f0 = diff(x0)?;
    for i in 1..steps {
        let x1 = lo + (i as f64 + 0.5) * h;
        let f1 = diff(x1)?;
        if f0.signum() != f1.signum() {
            let (mut a, mut b, mut fa) = (x0, x1, f0);
            while b - a > 1e-13 * b {
                let m = 0.5 * (a + b);
                let fm = diff(m)?;
                if fm.signum() == fa.signum() {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(out)
}
