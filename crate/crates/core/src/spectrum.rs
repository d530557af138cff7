//! Quantum reference layer: effective angular momenta, the Klein-Gordon
//! Coulomb spectrum, normalized radial wavefunctions and unit conversions.
//!
//! All quantities are in the scaled units of the problem: lengths in Bohr
//! radii `a0 = hbar / (alphaZ m c)`, energies in units of `m c^2`, angular
//! momenta in units of `hbar`.

use serde::Serialize;

use crate::error::{Error, Result};

/// The dimensionless coupling `alphaZ`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Coupling {
    alpha_z: f64,
}

impl Coupling {
    /// The non-relativistic limit `alphaZ = 0`.
    pub const NONRELATIVISTIC: Coupling = Coupling { alpha_z: 0.0 };

    pub fn new(alpha_z: f64) -> Result<Self> {
        if !alpha_z.is_finite() || alpha_z < 0.0 {
            return Err(Error::OutOfRange {
                what: "alphaZ",
                value: alpha_z,
            });
        }
        Ok(Self { alpha_z })
    }

    pub fn alpha_z(&self) -> f64 {
        self.alpha_z
    }

    /// `alpha^2 Z^2`, the combination that enters every formula.
    pub fn squared(&self) -> f64 {
        self.alpha_z * self.alpha_z
    }

    /// Whether angular momentum `l` still has a real effective value.
    pub fn admits(&self, l: u32) -> bool {
        let two_l1 = 2.0 * l as f64 + 1.0;
        two_l1 * two_l1 - 4.0 * self.squared() > 0.0
    }
}

/// Principal and orbital quantum numbers `(n, l)` with `0 <= l <= n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    n: u32,
    l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 || l >= n {
            return Err(Error::InvalidQuantumNumbers { n, l });
        }
        Ok(Self { n, l })
    }

    /// The Yrast level `(n, n-1)`.
    pub fn yrast(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumbers { n, l: 0 });
        }
        Ok(Self { n, l: n - 1 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn is_yrast(&self) -> bool {
        self.l + 1 == self.n
    }
}

/// Effective angular momentum `ell` solving `ell(ell+1) = l(l+1) - alpha^2 Z^2`.
///
/// Evaluated as `l - 2a^2 / (sqrt(d) + 2l + 1)` with `d = (2l+1)^2 - 4a^2`,
/// which equals `-1/2 + sqrt(d)/2` without the cancellation at weak coupling.
pub fn effective_ell(l: u32, coupling: Coupling) -> Result<f64> {
    let a2 = coupling.squared();
    let two_l1 = 2.0 * l as f64 + 1.0;
    let disc = two_l1 * two_l1 - 4.0 * a2;
    if disc <= 0.0 {
        return Err(Error::DegenerateCoupling {
            l,
            alpha_z: coupling.alpha_z(),
        });
    }
    Ok(l as f64 - 2.0 * a2 / (disc.sqrt() + two_l1))
}

/// Effective principal number `n - l + ell_l`.
fn effective_principal(qn: QuantumNumbers, coupling: Coupling) -> Result<f64> {
    Ok((qn.n() - qn.l()) as f64 + effective_ell(qn.l(), coupling)?)
}

/// Energy `E_nl` of level `(n, l)` in units of `m c^2`.
pub fn level_energy(qn: QuantumNumbers, coupling: Coupling) -> Result<f64> {
    let big_n = effective_principal(qn, coupling)?;
    let a2 = coupling.squared();
    Ok(1.0 / (1.0 + a2 / (big_n * big_n)).sqrt())
}

/// Fine-structure expansion of `E_nl` through order `alpha^4 Z^4`.
pub fn level_energy_series(qn: QuantumNumbers, coupling: Coupling) -> f64 {
    let n = qn.n() as f64;
    let l = qn.l() as f64;
    let a2 = coupling.squared();
    1.0 - a2 / (2.0 * n * n) - a2 * a2 * (1.0 / (n.powi(3) * (2.0 * l + 1.0)) - 3.0 / (8.0 * n.powi(4)))
}

/// Inverts [`level_energy`]: returns `alpha^2 Z^2` for which level `qn` has
/// energy `energy`.
///
/// Solves `x = (1-E^2)/E^2 (n - l + ell_l(x))^2` by Newton iteration
/// kept inside the bracket `0 < x < (l + 1/2)^2`, bisecting when a step
/// leaves it.
pub fn coupling_from_energy(qn: QuantumNumbers, energy: f64) -> Result<f64> {
    if !(energy > 0.0 && energy < 1.0) {
        return Err(Error::OutOfRange {
            what: "energy",
            value: energy,
        });
    }
    let s = (1.0 - energy) * (1.0 + energy) / (energy * energy);
    let half = qn.l() as f64 + 0.5;
    let base = (qn.n() - qn.l()) as f64 - 0.5;
    let n = qn.n() as f64;
    let g = |x: f64| x - s * (base + (half * half - x).sqrt()).powi(2);

    let (mut lo, mut hi) = (0.0, half * half);
    // g increases from g(0) < 0; no root when it stays negative up to the branch point
    if g(hi) <= 0.0 {
        return Err(Error::DegenerateCoupling {
            l: qn.l(),
            alpha_z: half,
        });
    }
    let mut x = (s * n * n).min(0.5 * hi);
    for _ in 0..200 {
        let gx = g(x);
        if gx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let root = (half * half - x).sqrt();
        let dg = 1.0 + s * (base + root) / root;
        let mut next = x - gx / dg;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - x).abs() <= 1e-16 * x.abs().max(f64::MIN_POSITIVE);
        x = next;
        if done || hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    Ok(x)
}

/// Which radial eigenfunction a [`RadialState`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RadialKind {
    /// `(n, n-1)`; `Yrast(1)` is the ground state.
    Yrast(u32),
    /// The `(2, 0)` state with one radial node.
    TwoS,
}

/// A normalized radial wavefunction `C r^ell (1 - c r) exp(-k r)`, with
/// `c = 0` except for the 2s state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialState {
    kind: RadialKind,
    qn: QuantumNumbers,
    coupling: Coupling,
    ell: f64,
    energy: f64,
    norm_constant: f64,
    decay: f64,
    node_coeff: f64,
}

impl RadialState {
    pub fn ground(coupling: Coupling) -> Result<Self> {
        Self::yrast(1, coupling)
    }

    pub fn yrast(n: u32, coupling: Coupling) -> Result<Self> {
        let qn = QuantumNumbers::yrast(n)?;
        let ell = effective_ell(qn.l(), coupling)?;
        let energy = level_energy(qn, coupling)?;
        let decay = energy / (ell + 1.0);
        // int r^2 C^2 r^(2ell) e^(-2kr) dr = C^2 Gamma(2ell+3) / (2k)^(2ell+3)
        let norm_constant = ((2.0 * decay).powf(2.0 * ell + 3.0) / libm::tgamma(2.0 * ell + 3.0)).sqrt();
        Ok(Self {
            kind: RadialKind::Yrast(n),
            qn,
            coupling,
            ell,
            energy,
            norm_constant,
            decay,
            node_coeff: 0.0,
        })
    }

    pub fn two_s(coupling: Coupling) -> Result<Self> {
        let qn = QuantumNumbers::new(2, 0)?;
        let ell = effective_ell(0, coupling)?;
        let energy = level_energy(qn, coupling)?;
        let root = (4.0 + 3.0 * ell).sqrt();
        let norm_sq = (1.0 + ell) * 2f64.powf(3.0 + 2.0 * ell)
            / ((2.0 + ell) * root.powf(3.0 + 2.0 * ell) * libm::tgamma(2.0 + 2.0 * ell));
        Ok(Self {
            kind: RadialKind::TwoS,
            qn,
            coupling,
            ell,
            energy,
            norm_constant: norm_sq.sqrt(),
            decay: 1.0 / root,
            node_coeff: 1.0 / ((1.0 + ell) * root),
        })
    }

    pub fn kind(&self) -> RadialKind {
        self.kind
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        self.qn
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    /// Exponential decay rate `k` in `exp(-k r)`.
    pub fn decay(&self) -> f64 {
        self.decay
    }

    /// Coefficient `c` of the radial node factor `(1 - c r)`; zero for Yrast states.
    pub fn node_coeff(&self) -> f64 {
        self.node_coeff
    }

    /// Position of the radial node, if any.
    pub fn node(&self) -> Option<f64> {
        (self.node_coeff > 0.0).then(|| 1.0 / self.node_coeff)
    }

    /// `R(r)`. At `r = 0` this is `+inf` when `ell < 0`; negative `r` gives NaN.
    pub fn value(&self, r: f64) -> f64 {
        if r < 0.0 {
            return f64::NAN;
        }
        self.norm_constant * r.powf(self.ell) * (1.0 - self.node_coeff * r) * (-self.decay * r).exp()
    }
}

/// Evaluates the radial wavefunction of `state` at `r`.
pub fn radial_wavefunction(state: &RadialState, r: f64) -> f64 {
    state.value(r)
}

/// `1/R` of the scaled equation: `(1 - E^2) / (2 a^2 E^2)`, the magnitude of
/// the associated non-relativistic energy.
pub fn inverse_orbit_scale(qn: QuantumNumbers, coupling: Coupling) -> Result<f64> {
    let a2 = coupling.squared();
    if a2 == 0.0 {
        let n = qn.n() as f64;
        return Ok(0.5 / (n * n));
    }
    let e = level_energy(qn, coupling)?;
    Ok((1.0 - e) * (1.0 + e) / (2.0 * a2 * e * e))
}

/// Largest relative residual of the scaled radial equation
/// `(-1/2 d^2 - (1/r) d + (l(l+1) - a^2)/(2r^2) - 1/r + 1/R) psi = 0`
/// over `grid`, with `psi(r) = R(r/E)` and analytic derivatives.
pub fn schrodinger_residual(state: &RadialState, grid: &[f64]) -> Result<f64> {
    let qn = state.quantum_numbers();
    let l = qn.l() as f64;
    let a2 = state.coupling().squared();
    let inv_scale = inverse_orbit_scale(qn, state.coupling())?;
    let e = state.energy();
    let ell = state.ell();
    let k = state.decay() / e;
    let c = state.node_coeff() / e;

    let mut worst: f64 = 0.0;
    for &r in grid {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::GridOutOfDomain(r));
        }
        // psi = f g with f = r^ell e^(-k r), g = 1 - c r; everything divided by f.
        let u = ell / r - k;
        let g = 1.0 - c * r;
        let d1 = u * g - c;
        let d2 = (u * u - ell / (r * r)) * g - 2.0 * u * c;
        let potential = (l * (l + 1.0) - a2) / (2.0 * r * r) - 1.0 / r + inv_scale;
        let h = -0.5 * d2 - d1 / r + potential * g;
        worst = worst.max((h / g).abs());
    }
    Ok(worst)
}

/// Bohr radius and Bohr time for nuclear charge `Z` (electron values).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomicUnits {
    pub bohr_radius_m: f64,
    pub bohr_time_s: f64,
    /// Electron rest energy in eV; scaled energies are multiples of it.
    pub rest_energy_ev: f64,
}

pub fn atomic_units(z: f64) -> Result<AtomicUnits> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::OutOfRange {
            what: "nuclear charge Z",
            value: z,
        });
    }
    Ok(AtomicUnits {
        bohr_radius_m: 5.29e-11 / z,
        bohr_time_s: 2.418e-17 / (z * z),
        rest_energy_ev: 510_998.95,
    })
}
