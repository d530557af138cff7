use std::f64::consts::PI;

use serde::Serialize;

use super::coords::{orbital_elements, phi_factor, OrbitalElements, PhasePoint};
use crate::error::{Error, Result};
use crate::spectrum::{effective_ell, level_energy, Coupling, QuantumNumbers, RadialState};

pub(crate) fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub(crate) fn beta(x: f64, y: f64) -> f64 {
    gamma(x) * gamma(y) / gamma(x + y)
}

/// `int_0^pi sin^s(mu) dmu = B((s+1)/2, 1/2)`.
pub(crate) fn sin_power_integral(s: f64) -> f64 {
    beta(0.5 * (s + 1.0), 0.5)
}

/// Which phase-space density a [`StateDensity`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DensityKind {
    /// Yrast level `(n, n-1)`; `Yrast(1)` is the ground state.
    Yrast(u32),
    /// 2s density with the bracket quadratic in `omega^2 L^2 R / 2E`.
    TwoSA,
    /// 2s density with the bracket quadratic in `R`.
    TwoSB,
    /// `(1 - lambda) TwoSA + lambda TwoSB`.
    TwoSMix(f64),
}

/// One term `coef r^a (R-r)^b R^c sin^s(mu)` of a chart density; all terms
/// of a state share the factor `exp(-beta R)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartTerm {
    pub coef: f64,
    pub r_pow: f64,
    pub gap_pow: f64,
    pub scale_pow: u32,
    pub sin_pow: f64,
}

/// A state's density in chart form: `d^3r dV_p P = d^3r dmu dnu dR rho` with
/// `rho = exp(-beta R) sum(terms)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartDensity {
    pub decay: f64,
    pub terms: Vec<ChartTerm>,
}

impl ChartDensity {
    /// `rho(r, R, mu)`.
    pub fn value(&self, r: f64, scale: f64, mu: f64) -> f64 {
        let s = mu.sin();
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                t.coef
                    * r.powf(t.r_pow)
                    * (scale - r).powf(t.gap_pow)
                    * scale.powi(t.scale_pow as i32)
                    * s.powf(t.sin_pow)
            })
            .sum();
        sum * (-self.decay * scale).exp()
    }

    /// `int dmu dnu rho`: the radial phase-space density in `(r, R)`.
    pub fn angle_integrated(&self, r: f64, scale: f64) -> f64 {
        let gap = scale - r;
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                2.0 * PI
                    * t.coef
                    * sin_power_integral(t.sin_pow)
                    * r.powf(t.r_pow)
                    * gap.powf(t.gap_pow)
                    * scale.powi(t.scale_pow as i32)
            })
            .sum();
        sum * (-self.decay * scale).exp()
    }

    /// `int_{R >= r} dR int dmu dnu rho`, the position-space density.
    pub fn momentum_marginal(&self, r: f64) -> f64 {
        let b = self.decay;
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                // R^c = sum_k C(c,k) r^(c-k) (R-r)^k
                let c = t.scale_pow;
                let mut inner = 0.0;
                let mut binom = 1.0;
                for k in 0..=c {
                    let p = t.gap_pow + k as f64 + 1.0;
                    inner += binom * r.powi((c - k) as i32) * gamma(p) / b.powf(p);
                    binom *= (c - k) as f64 / (k + 1) as f64;
                }
                2.0 * PI * t.coef * sin_power_integral(t.sin_pow) * r.powf(t.r_pow) * inner
            })
            .sum();
        sum * (-b * r).exp()
    }

    /// Density of the orbit scale `R` after integrating over all positions
    /// and both momentum angles.
    pub fn scale_marginal(&self, scale: f64) -> f64 {
        let sum: f64 = self
            .terms
            .iter()
            .map(|t| {
                8.0 * PI * PI
                    * t.coef
                    * sin_power_integral(t.sin_pow)
                    * beta(t.r_pow + 3.0, t.gap_pow + 1.0)
                    * scale.powf(t.r_pow + t.gap_pow + t.scale_pow as f64 + 3.0)
            })
            .sum();
        sum * (-self.decay * scale).exp()
    }

    /// Phase-space average of `r^dr R^ds sin^dsin(mu)` (unnormalized: the
    /// full integral with the monomial inserted).
    pub fn moment(&self, dr: f64, ds: f64, dsin: f64) -> f64 {
        let b = self.decay;
        self.terms
            .iter()
            .map(|t| {
                let a = t.r_pow + dr;
                let total = a + t.gap_pow + t.scale_pow as f64 + ds + 4.0;
                8.0 * PI * PI
                    * t.coef
                    * sin_power_integral(t.sin_pow + dsin)
                    * beta(a + 3.0, t.gap_pow + 1.0)
                    * gamma(total)
                    / b.powf(total)
            })
            .sum()
    }

    /// Phase-space average of `r^dr R^ds cos^2(mu)`.
    pub fn moment_cos2(&self, dr: f64, ds: f64) -> f64 {
        self.moment(dr, ds, 0.0) - self.moment(dr, ds, 2.0)
    }

    pub fn normalization(&self) -> f64 {
        self.moment(0.0, 0.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct Bracket {
    /// Coefficients of `1, X, X^2` with `X = omega^2 L^2 R / 2E`.
    in_x: [f64; 3],
    /// Coefficients of `1, R, R^2`.
    in_scale: [f64; 3],
}

/// A stationary phase-space density built from the conserved quantities
/// `E`, `L` and `R(E)`.
///
/// All densities carry the `1/4pi` of the angular factor, so they integrate
/// to one over `d^3r d^3p / gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateDensity {
    kind: DensityKind,
    coupling: Coupling,
    ell: f64,
    level_energy: f64,
    decay: f64,
    bracket: Bracket,
}

impl StateDensity {
    pub fn new(kind: DensityKind, coupling: Coupling) -> Result<Self> {
        match kind {
            DensityKind::Yrast(n) => Self::yrast(n, coupling),
            DensityKind::TwoSA => Self::two_s_mix(0.0, coupling).map(|d| d.with_kind(kind)),
            DensityKind::TwoSB => Self::two_s_mix(1.0, coupling).map(|d| d.with_kind(kind)),
            DensityKind::TwoSMix(lambda) => Self::two_s_mix(lambda, coupling),
        }
    }

    fn with_kind(mut self, kind: DensityKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn yrast(n: u32, coupling: Coupling) -> Result<Self> {
        let qn = QuantumNumbers::yrast(n)?;
        let ell = effective_ell(qn.l(), coupling)?;
        let e = level_energy(qn, coupling)?;
        let k = 2f64.powf(6.0 + 8.0 * ell) * e.powf(5.0 + 4.0 * ell)
            / ((1.0 + ell).powf(6.0 + 4.0 * ell) * gamma(3.0 + 4.0 * ell));
        let c = k / (2.0 * PI * PI) / (4.0 * PI);
        Ok(Self {
            kind: DensityKind::Yrast(n),
            coupling,
            ell,
            level_energy: e,
            decay: 2.0 * e / (1.0 + ell),
            bracket: Bracket {
                in_x: [c, 0.0, 0.0],
                in_scale: [0.0; 3],
            },
        })
    }

    pub fn two_s_a(coupling: Coupling) -> Result<Self> {
        Self::new(DensityKind::TwoSA, coupling)
    }

    pub fn two_s_b(coupling: Coupling) -> Result<Self> {
        Self::new(DensityKind::TwoSB, coupling)
    }

    pub fn two_s_mix(lambda: f64, coupling: Coupling) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange {
                what: "mixing parameter lambda",
                value: lambda,
            });
        }
        let qn = QuantumNumbers::new(2, 0)?;
        let l = effective_ell(0, coupling)?;
        let e = level_energy(qn, coupling)?;
        let q = 4.0 + 3.0 * l;
        let root = q.sqrt();
        let quarter_pi = 1.0 / (4.0 * PI);

        // The X-bracket normalization is 2^(8+8l); 2^(7+8l) integrates to 1/2.
        let ka = 2f64.powf(8.0 + 8.0 * l)
            / ((2.0 + l) * PI * PI * gamma(6.0 + 4.0 * l) * q.powf(4.5 + 2.0 * l))
            * quarter_pi;
        let a = [
            ka * (1.0 + l).powi(2) * q * q * (3.0 + 4.0 * l) * (5.0 + 4.0 * l),
            -ka * 8.0 * (1.0 + l) * q * (5.0 + 4.0 * l),
            ka * 16.0,
        ];
        let kb = 2f64.powf(6.0 + 4.0 * l) * (1.0 + l)
            / ((2.0 + l) * gamma(3.0 + 2.0 * l).powi(2) * q.powf(3.5 + 2.0 * l))
            / (2.0 * PI * beta(1.5 + 2.0 * l, 0.5))
            * quarter_pi;
        let b = [
            kb * (1.0 + l) * q * (7.0 + 8.0 * l),
            -kb * 8.0 * (1.0 + l) * root,
            kb * 2.0,
        ];
        let w = 1.0 - lambda;
        Ok(Self {
            kind: DensityKind::TwoSMix(lambda),
            coupling,
            ell: l,
            level_energy: e,
            decay: 2.0 / root,
            bracket: Bracket {
                in_x: a.map(|v| w * v),
                in_scale: b.map(|v| lambda * v),
            },
        })
    }

    pub fn kind(&self) -> DensityKind {
        self.kind
    }

    pub fn coupling(&self) -> Coupling {
        self.coupling
    }

    /// Effective angular momentum of the underlying level.
    pub fn ell(&self) -> f64 {
        self.ell
    }

    /// Quantum energy `E_nl` of the underlying level.
    pub fn level_energy(&self) -> f64 {
        self.level_energy
    }

    /// Rate `beta` in the `exp(-beta R)` factor.
    pub fn decay(&self) -> f64 {
        self.decay
    }

    pub fn is_yrast(&self) -> bool {
        matches!(self.kind, DensityKind::Yrast(_))
    }

    /// Quantum numbers of the level this density reproduces.
    pub fn quantum_numbers(&self) -> QuantumNumbers {
        match self.kind {
            DensityKind::Yrast(n) => QuantumNumbers::yrast(n).expect("validated at construction"),
            _ => QuantumNumbers::new(2, 0).expect("valid"),
        }
    }

    /// The radial wavefunction whose square the momentum marginal reproduces.
    pub fn radial_state(&self) -> RadialState {
        match self.kind {
            DensityKind::Yrast(n) => RadialState::yrast(n, self.coupling),
            _ => RadialState::two_s(self.coupling),
        }
        .expect("validated at construction")
    }

    /// Density as a function of the conserved quantities.
    pub fn at_elements(&self, el: &OrbitalElements) -> f64 {
        let ell = self.ell;
        let scale = el.scale;
        let e = el.energy;
        let wl = el.omega_l();
        // omega L R^3 Phi X^(2 ell), with X^(2ell) split so omega L = 0 stays finite
        let half_ratio = scale / (2.0 * e);
        let base = wl.powf(1.0 + 4.0 * ell) * half_ratio.powf(2.0 * ell) * scale.powi(3) * phi_factor(scale, self.coupling);
        let x = wl * wl * half_ratio;
        let [x0, x1, x2] = self.bracket.in_x;
        let [s0, s1, s2] = self.bracket.in_scale;
        let poly = x0 + x * (x1 + x * x2) + s0 + scale * (s1 + scale * s2);
        base * poly * (-self.decay * scale).exp()
    }

    /// Chart form of the density, used for closed-form marginals and moments.
    pub fn chart_density(&self) -> ChartDensity {
        let l2 = 2.0 * self.ell;
        let mut terms = Vec::with_capacity(6);
        for (k, &coef) in self.bracket.in_x.iter().enumerate() {
            if coef != 0.0 {
                let k = k as f64;
                terms.push(ChartTerm {
                    coef,
                    r_pow: l2 + k,
                    gap_pow: 1.0 + l2 + k,
                    scale_pow: 0,
                    sin_pow: 2.0 + 2.0 * l2 + 2.0 * k,
                });
            }
        }
        for (k, &coef) in self.bracket.in_scale.iter().enumerate() {
            if coef != 0.0 {
                terms.push(ChartTerm {
                    coef,
                    r_pow: l2,
                    gap_pow: 1.0 + l2,
                    scale_pow: k as u32,
                    sin_pow: 2.0 + 2.0 * l2,
                });
            }
        }
        ChartDensity {
            decay: self.decay,
            terms,
        }
    }
}

/// Evaluates the phase-space density at a phase point.
pub fn density_eval(sd: &StateDensity, pt: &PhasePoint) -> Result<f64> {
    let el = orbital_elements(pt, sd.coupling())?;
    Ok(sd.at_elements(&el))
}

/// Position-space density `int dV_p P` at radius `r`; equals `R(r)^2 / 4pi`.
pub fn momentum_marginal(sd: &StateDensity, r: f64) -> f64 {
    sd.chart_density().momentum_marginal(r)
}

/// Density of the orbit scale `R` over the whole phase space.
pub fn scale_marginal(sd: &StateDensity, scale: f64) -> f64 {
    sd.chart_density().scale_marginal(scale)
}
