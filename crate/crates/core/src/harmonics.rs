//! Phase-space forms of squared `l = 1` spherical harmonics.
//!
//! With `L_hat` the direction of the angular momentum, a position direction
//! `(theta, phi)` and the azimuth `nu` of `L_hat` about it, the factors are
//!
//! ```text
//! Y_{1,+-1} = 3/(4 pi) [ (n.L)^2 +- n.L ]
//! Y_{1,0}   = 3/(4 pi) [ 1 - 2 (n.L)^2 ]
//! ```
//!
//! Averaging over `nu` gives back `|Y_1m(theta)|^2`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::quadrature::gauss_legendre;
use crate::phasespace::{dot, norm, Vec3};

/// Direction of the angular momentum for a particle at polar angles
/// `(theta, phi)`; `nu` is measured from the polar unit vector.
pub fn lhat(theta: f64, phi: f64, nu: f64) -> Vec3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let (sn, cn) = nu.sin_cos();
    [-ct * cp * sn - sp * cn, -ct * sp * sn + cp * cn, st * sn]
}

/// `3/(4 pi)`.
pub const Y1_SUM: f64 = 3.0 / (4.0 * PI);

/// `Y_1m` factor with quantization axis `axis`. Odd parts are linear in
/// `n . L_hat`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularFactor {
    m: i32,
    axis: Vec3,
}

impl AngularFactor {
    /// Normalizes `axis`. Fails for `|m| > 1` or a zero axis.
    pub fn new(m: i32, axis: Vec3) -> Result<Self> {
        if !(-1..=1).contains(&m) {
            return Err(Error::OutOfRange {
                what: "magnetic number m",
                value: m as f64,
            });
        }
        let len = norm(&axis);
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::OutOfRange {
                what: "axis length",
                value: len,
            });
        }
        Ok(Self {
            m,
            axis: axis.map(|x| x / len),
        })
    }

    /// Quantization along `z`.
    pub fn z(m: i32) -> Result<Self> {
        Self::new(m, [0.0, 0.0, 1.0])
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn value(&self, l_hat: &Vec3) -> f64 {
        let c = dot(&self.axis, l_hat);
        match self.m {
            0 => Y1_SUM * (1.0 - 2.0 * c * c),
            m => Y1_SUM * (c * c + m as f64 * c),
        }
    }
}

pub fn cal_y(af: &AngularFactor, l_hat: &Vec3) -> f64 {
    af.value(l_hat)
}

/// `|Y_1m(theta)|^2`.
pub fn y1m_squared(m: i32, theta: f64) -> f64 {
    if m == 0 {
        Y1_SUM * theta.cos().powi(2)
    } else {
        0.5 * Y1_SUM * theta.sin().powi(2)
    }
}

// The integrands are trigonometric polynomials of degree <= 3 in nu, so the
// periodic trapezoid rule with this many nodes is exact.
const NU_NODES: usize = 16;

/// `(1/2 pi) int dnu f(L_hat) Y_1m(L_hat)` with axis `z` at `phi = 0`.
pub fn nu_average_with<F: Fn(&Vec3) -> f64>(m: i32, theta: f64, phi: f64, f: F) -> Result<f64> {
    let af = AngularFactor::z(m)?;
    let h = 2.0 * PI / NU_NODES as f64;
    let sum: f64 = (0..NU_NODES)
        .map(|k| {
            let l = lhat(theta, phi, k as f64 * h);
            f(&l) * af.value(&l)
        })
        .sum();
    Ok(sum / NU_NODES as f64)
}

/// `(1/2 pi) int dnu Y_1m`, by quadrature.
pub fn nu_average(m: i32, theta: f64) -> Result<f64> {
    nu_average_with(m, theta, 0.0, |_| 1.0)
}

/// Angular-momentum moments of `Y_1m` about `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub lz: f64,
    pub lx: f64,
    pub ly: f64,
}

/// `int dOmega (1/2 pi) int dnu L_hat Y_1m` by Gauss-Legendre in `cos theta`
/// and trapezoid in `phi` and `nu`.
pub fn angular_momentum_moments(m: i32) -> Result<Moments> {
    let (nodes, weights) = gauss_legendre(12);
    let n_phi = 16;
    let h_phi = 2.0 * PI / n_phi as f64;
    let mut acc = [0.0; 3];
    for (x, w) in nodes.iter().zip(&weights) {
        let theta = x.acos();
        for j in 0..n_phi {
            let phi = j as f64 * h_phi;
            for (k, slot) in acc.iter_mut().enumerate() {
                *slot += w * h_phi * nu_average_with(m, theta, phi, |l| l[k])?;
            }
        }
    }
    Ok(Moments {
        lx: acc[0],
        ly: acc[1],
        lz: acc[2],
    })
}

/// `int dOmega (1/2 pi) int dnu Y_1m`.
pub fn sphere_normalization(m: i32) -> Result<f64> {
    let (nodes, weights) = gauss_legendre(12);
    let mut acc = 0.0;
    for (x, w) in nodes.iter().zip(&weights) {
        acc += w * 2.0 * PI * nu_average(m, x.acos())?;
    }
    Ok(acc)
}
