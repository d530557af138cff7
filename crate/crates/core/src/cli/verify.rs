//! The identity suite behind `relhydrogen verify`.
//!
//! Every row compares a computed number with a reference under an absolute
//! tolerance; `--tol` replaces every tolerance.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::output::Table;
use super::RunConfig;
use crate::error::Result;
use crate::expectations::{double_bracket_energy, double_bracket_energy_prime, expectations, naive_classical_energy};
use crate::harmonics::{angular_momentum_moments, cal_y, lhat, nu_average, y1m_squared, AngularFactor, Y1_SUM};
use crate::numerics::orbit::period_of;
use crate::numerics::wigner::{
    asymptotic_exponent, classical_initial_slope, classical_marginal_from_positions, classical_normalization,
    crossings, log_grid, log_log_slope, wigner_normalization,
};
use crate::numerics::{
    classical_marginal, marginal_quadrature, normalization_quadrature, orbit_integrate, quadrature_expectations,
    wigner_marginal, QuadratureSpec,
};
use crate::phasespace::{density_eval, gap_sign_changes, negativity_scan, DensityKind, PhasePoint, StateDensity};
use crate::spectrum::{effective_ell, level_energy, radial_wavefunction, Coupling, QuantumNumbers};

/// One verification row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub computed: f64,
    pub reference: f64,
    pub tol: f64,
    pub pass: bool,
}

struct Suite {
    override_tol: Option<f64>,
    checks: Vec<Check>,
}

impl Suite {
    fn add(&mut self, name: impl Into<String>, anchor: &str, computed: Result<f64>, reference: f64, tol: f64) {
        let tol = self.override_tol.unwrap_or(tol);
        let computed = computed.unwrap_or(f64::NAN);
        let pass = (computed - reference).abs() <= tol;
        self.checks.push(Check {
            name: name.into(),
            anchor: anchor.into(),
            computed,
            reference,
            tol,
            pass,
        });
    }
}

fn label(kind: DensityKind) -> String {
    match kind {
        DensityKind::Yrast(n) => format!("yrast{n}"),
        DensityKind::TwoSA => "2s-a".into(),
        DensityKind::TwoSB => "2s-b".into(),
        DensityKind::TwoSMix(l) => format!("2s-mix{l}"),
    }
}

pub fn table(checks: &[Check]) -> Table {
    let mut t = Table::new(&["name", "anchor", "computed", "reference", "tol", "pass"]);
    for c in checks {
        t.push(vec![
            c.name.clone().into(),
            c.anchor.clone().into(),
            c.computed.into(),
            c.reference.into(),
            c.tol.into(),
            c.pass.into(),
        ]);
    }
    t
}

/// Runs every check at the configured coupling.
pub fn run_checks(cfg: &RunConfig) -> Vec<Check> {
    let mut s = Suite {
        override_tol: cfg.tol,
        checks: Vec::new(),
    };
    let c = cfg.coupling;
    // absolute tolerance well below the smallest marginal value checked
    let spec = QuadratureSpec {
        abs_tol: 1e-16,
        ..QuadratureSpec::default()
    };
    spectrum_checks(&mut s, c);
    density_checks(&mut s, c, &spec);
    energy_checks(&mut s, c);
    harmonic_checks(&mut s, cfg.seed);
    if c.squared() > 0.0 {
        orbit_checks(&mut s, c);
    }
    figure_checks(&mut s, &spec);
    negativity_checks(&mut s, c);
    s.checks
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut m: f64 = 0.0;
    for v in values {
        m = m.max(v?);
    }
    Ok(m)
}

fn spectrum_checks(s: &mut Suite, c: Coupling) {
    let a2 = c.squared();
    let residuals = (1..=6u32).flat_map(|n| 0..n).filter(|&l| c.admits(l)).map(|l| {
        let ell = effective_ell(l, c)?;
        let l = l as f64;
        Ok((ell * (ell + 1.0) + a2 - l * (l + 1.0)).abs())
    });
    s.add("spectrum.ell_identity", "ell(ell+1) + a^2 - l(l+1), max over n <= 6", max_of(residuals), 0.0, 1e-14);
    s.add(
        "spectrum.ground_energy",
        "E_10^2 = 1 + ell_0",
        (|| {
            let e = level_energy(QuantumNumbers::new(1, 0)?, c)?;
            Ok(e * e - effective_ell(0, c)?)
        })(),
        1.0,
        1e-14,
    );
    s.add(
        "spectrum.two_s_energy",
        "E_20 = (2 + ell_0) / sqrt(4 + 3 ell_0)",
        (|| {
            let l = effective_ell(0, c)?;
            Ok(level_energy(QuantumNumbers::new(2, 0)?, c)? - (2.0 + l) / (4.0 + 3.0 * l).sqrt())
        })(),
        0.0,
        1e-14,
    );
}

fn density_checks(s: &mut Suite, c: Coupling, spec: &QuadratureSpec) {
    let kinds = [
        DensityKind::Yrast(1),
        DensityKind::Yrast(2),
        DensityKind::Yrast(3),
        DensityKind::TwoSA,
        DensityKind::TwoSB,
    ];
    for kind in kinds {
        let sd = StateDensity::new(kind, c);
        s.add(
            format!("normalization.closed_form.{}", label(kind)),
            "int d^3r dV_p P = 1 (chart moments)",
            sd.as_ref().map(|sd| sd.chart_density().normalization()).map_err(clone_err),
            1.0,
            1e-12,
        );
    }
    for kind in [DensityKind::Yrast(1), DensityKind::Yrast(2), DensityKind::TwoSA] {
        let sd = StateDensity::new(kind, c);
        s.add(
            format!("normalization.quadrature.{}", label(kind)),
            "int d^3r dV_p P = 1 (phase-point quadrature)",
            sd.and_then(|sd| normalization_quadrature(&sd, spec)),
            1.0,
            1e-8,
        );
    }
    for kind in kinds {
        let dev = StateDensity::new(kind, c).and_then(|sd| {
            let rs = sd.radial_state();
            max_of([0.5, 1.0, 3.0, 5.0, 8.0].map(|r| {
                let want = radial_wavefunction(&rs, r).powi(2) / (4.0 * PI);
                Ok(((marginal_quadrature(&sd, r, spec)? - want) / want).abs())
            }))
        });
        s.add(
            format!("marginal.{}", label(kind)),
            "int dV_p P = R_nl(r)^2 / 4pi, max relative deviation at r = 0.5, 1, 3, 5, 8",
            dev,
            0.0,
            1e-8,
        );
    }
    for kind in [DensityKind::Yrast(1), DensityKind::Yrast(2), DensityKind::TwoSA] {
        let sd = match StateDensity::new(kind, c) {
            Ok(sd) => sd,
            Err(e) => {
                s.add(format!("expectation.{}", label(kind)), "closed form vs quadrature", Err(e), 0.0, 0.0);
                continue;
            }
        };
        let rep = expectations(&sd);
        let q = quadrature_expectations(&sd, spec);
        let e2 = 2.0 * double_bracket_energy(&sd);
        let rows: [(&str, &str, f64, Pick); 6] = [
            ("inv_r", "<1/r>", rep.inv_r, |q, _| q.inv_r),
            ("inv_r2", "<1/r^2>", rep.inv_r2, |q, _| q.inv_r2),
            ("inv_R", "<1/R>", rep.inv_scale, |q, _| q.inv_scale),
            ("inv_R2", "<1/R^2>", rep.inv_scale2, |q, _| q.inv_scale2),
            ("pr2", "<<p_r^2>> = 2<<E>> <p_r^2 / 2E>", rep.pr2, |q, e2| e2 * q.gap_cos2),
            (
                "L2_over_r2",
                "<omega^2 L^2/r^2> = 2<<E>> <(L^2 - a^2) / 2E r^2>",
                rep.l2_over_r2,
                |q, e2| e2 * q.gap_sin2,
            ),
        ];
        for (name, anchor, reference, pick) in rows {
            s.add(
                format!("expectation.{}.{name}", label(kind)),
                anchor,
                q.as_ref().map(|q| pick(q, e2)).map_err(clone_err),
                reference,
                1e-8 * reference.abs(),
            );
        }
    }
}

/// Reads one quadrature average, given `2<<E>>`.
type Pick = fn(&crate::numerics::QuadratureExpectations, f64) -> f64;

fn clone_err(e: &crate::Error) -> crate::Error {
    crate::Error::Domain(e.to_string())
}

fn energy_checks(s: &mut Suite, c: Coupling) {
    let states = || {
        (1..=6)
            .map(DensityKind::Yrast)
            .chain([DensityKind::TwoSA])
            .map(move |k| StateDensity::new(k, c))
    };
    s.add(
        "energy.double_bracket",
        "sqrt(1 + a^4 <1/R>^2) - a^2 <1/R> = E_nl, max over Yrast n <= 6 and 2s",
        max_of(states().map(|sd| sd.map(|sd| (double_bracket_energy(&sd) - sd.level_energy()).abs()))),
        0.0,
        1e-12,
    );
    s.add(
        "energy.double_bracket_prime",
        "<<E>> from <<p^2>> and <1/r> = E_nl, max over Yrast n <= 6 and 2s",
        max_of(states().map(|sd| sd.map(|sd| (double_bracket_energy_prime(&sd) - sd.level_energy()).abs()))),
        0.0,
        1e-12,
    );
    let weak = Coupling::new(0.05).expect("valid coupling");
    for n in 1..=3u32 {
        let ratio = (|| {
            let e = level_energy(QuantumNumbers::yrast(n)?, weak)?;
            let a4 = weak.squared().powi(2);
            let nf = n as f64;
            Ok((naive_classical_energy(n, weak)? - e) * 8.0 * nf.powi(4) * (4.0 * nf - 1.0) / a4)
        })();
        s.add(
            format!("energy.naive_ratio.n{n}"),
            "(E_naive - E_nl) 8 n^4 (4n - 1) / a^4 at alphaZ = 0.05",
            ratio,
            1.0,
            0.03,
        );
    }
    let lambdas = [0.0, 0.25, 0.5, 0.75, 1.0];
    let spread = |f: fn(&crate::expectations::ExpectationReport) -> f64| -> Result<f64> {
        let base = f(&expectations(&StateDensity::two_s_mix(0.0, c)?));
        max_of(lambdas.map(|l| Ok((f(&expectations(&StateDensity::two_s_mix(l, c)?)) - base).abs())))
    };
    s.add(
        "lambda.inv_r",
        "<1/r> of (1 - lambda) 2s-a + lambda 2s-b, spread over lambda",
        spread(|r| r.inv_r),
        0.0,
        1e-10,
    );
    s.add(
        "lambda.inv_R",
        "<1/R> of (1 - lambda) 2s-a + lambda 2s-b, spread over lambda",
        spread(|r| r.inv_scale),
        0.0,
        1e-10,
    );
}

fn harmonic_checks(s: &mut Suite, seed: u64) {
    let dev = max_of((-1..=1).flat_map(|m| {
        (0..=32).map(move |i| {
            let theta = PI * i as f64 / 32.0;
            Ok((nu_average(m, theta)? - y1m_squared(m, theta)).abs())
        })
    }));
    s.add("harmonics.nu_average", "(1/2pi) int dnu Y_1m(L_hat) = |Y_1m(theta)|^2", dev, 0.0, 1e-10);
    for m in -1..=1 {
        let mom = angular_momentum_moments(m);
        s.add(
            format!("harmonics.lz.m{m}"),
            "int dOmega dnu/2pi L_z Y_1m = m",
            mom.as_ref().map(|x| x.lz).map_err(clone_err),
            m as f64,
            1e-10,
        );
        s.add(
            format!("harmonics.transverse.m{m}"),
            "int dOmega dnu/2pi (L_x, L_y) Y_1m = 0",
            mom.as_ref().map(|x| x.lx.hypot(x.ly)).map_err(clone_err),
            0.0,
            1e-10,
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum_dev: f64 = 0.0;
    let mut pm_min = f64::INFINITY;
    let mut err = None;
    for _ in 0..100_000 {
        let axis = [rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5];
        let l = lhat(
            (1.0 - 2.0 * rng.random::<f64>()).acos(),
            2.0 * PI * rng.random::<f64>(),
            2.0 * PI * rng.random::<f64>(),
        );
        let factors: Result<Vec<AngularFactor>> = (-1..=1).map(|m| AngularFactor::new(m, axis)).collect();
        match factors {
            Ok(f) => {
                let v: Vec<f64> = f.iter().map(|af| cal_y(af, &l)).collect();
                sum_dev = sum_dev.max((v.iter().sum::<f64>() - Y1_SUM).abs());
                pm_min = pm_min.min(v[0] + v[2]);
            }
            Err(e) => err = Some(e),
        }
    }
    let (sum, pm) = match err {
        Some(e) => (Err(clone_err(&e)), Err(e)),
        None => (Ok(sum_dev), Ok(pm_min.min(0.0))),
    };
    s.add("harmonics.sum_over_m", "sum_m Y_1m(L_hat) = 3/4pi on 1e5 random points", sum, 0.0, 1e-12);
    s.add("harmonics.pm_nonnegative", "min(Y_11 + Y_1-1, 0) on 1e5 random points", pm, 0.0, 0.0);
}

fn orbit_checks(s: &mut Suite, c: Coupling) {
    let start = PhasePoint::new([1.5, 0.0, 0.0], [0.2, 0.6, 0.0]);
    let run = (|| {
        let traj = orbit_integrate(&start, c, 100.0 * period_of(&start, c)?, 1e-12)?;
        let sd = StateDensity::yrast(1, c)?;
        let d0 = density_eval(&sd, &start)?;
        let dens = max_of(traj.points.iter().map(|p| Ok((density_eval(&sd, p)? / d0 - 1.0).abs())))?;
        Ok((traj.energy_drift, traj.angmom_drift, dens))
    })();
    let pick = |f: fn(&(f64, f64, f64)) -> f64| run.as_ref().map(f).map_err(clone_err);
    let anchor = "relative drift over 100 radial periods, integrator tolerance 1e-12";
    s.add("orbit.energy_drift", anchor, pick(|r| r.0), 0.0, 1e-9);
    s.add("orbit.angmom_drift", anchor, pick(|r| r.1), 0.0, 1e-9);
    s.add("orbit.density_drift", anchor, pick(|r| r.2), 0.0, 1e-9);
}

fn figure_checks(s: &mut Suite, spec: &QuadratureSpec) {
    s.add("figure.wigner_origin", "W(0) = 8/pi^2", Ok(wigner_marginal(0.0)), 8.0 / (PI * PI), 1e-10);
    s.add("figure.classical_origin", "P(0) = 0", classical_marginal(0.0, spec), 0.0, 1e-15);
    s.add(
        "figure.classical_slope",
        "dP/dp at 0 = (2/pi) int R^6 exp(-2R) dR = 11.25/pi",
        classical_initial_slope(spec),
        11.25 / PI,
        1e-6,
    );
    s.add("figure.wigner_norm", "int 4 pi p^2 W dp = 1", wigner_normalization(spec), 1.0, 1e-8);
    s.add("figure.classical_norm", "int 4 pi p^2 P dp = 1", classical_normalization(spec), 1.0, 1e-8);
    let ps = log_grid(10.0, 100.0, 41);
    let w: Vec<f64> = ps.iter().map(|&p| wigner_marginal(p)).collect();
    s.add(
        "figure.wigner_tail",
        "log-log slope of W on [10, 100]",
        log_log_slope(&ps, &w),
        -8.0,
        0.05,
    );
    let tail: Result<Vec<f64>> = ps.iter().map(|&p| classical_marginal(p, spec)).collect();
    s.add(
        "figure.classical_tail",
        "exponent k of P ~ p^k (1 + d/p^2 + e/p^4) on [10, 100]",
        tail.and_then(|c| asymptotic_exponent(&ps, &c)),
        -9.0,
        0.05,
    );
    let dev = max_of([0.2, 0.5, 1.0, 2.0].map(|p| {
        let a = classical_marginal(p, spec)?;
        Ok(((classical_marginal_from_positions(p, spec)? - a) / a).abs())
    }));
    s.add(
        "figure.position_integral",
        "P(p) from spherical coordinates about p, max relative deviation",
        dev,
        0.0,
        1e-6,
    );
    s.add(
        "figure.crossings",
        "sign changes of W - P on (0, 5)",
        crossings(0.0, 5.0, 500, spec).map(|c| c.len() as f64),
        4.0,
        0.0,
    );
}

fn negativity_checks(s: &mut Suite, c: Coupling) {
    let two_s = StateDensity::two_s_a(c).and_then(|sd| negativity_scan(&sd, 64));
    s.add(
        "negativity.two_s_a",
        "min of the angle-integrated 2s-a density is negative (1 = yes)",
        two_s.map(|scan| if scan.min_value < 0.0 { 1.0 } else { 0.0 }),
        1.0,
        0.0,
    );
    let yrast = StateDensity::yrast(1, c).and_then(|sd| negativity_scan(&sd, 64));
    s.add(
        "negativity.yrast1",
        "min(min of the angle-integrated ground-state density, 0)",
        yrast.map(|scan| scan.min_value.min(0.0)),
        0.0,
        0.0,
    );
    let roots = StateDensity::two_s_a(Coupling::NONRELATIVISTIC).map(|sd| gap_sign_changes(&sd, 12.0));
    let s3 = 3f64.sqrt();
    for (i, (name, want)) in [("lower", 6.0 - 2.0 * s3), ("upper", 6.0 + 2.0 * s3)].into_iter().enumerate() {
        s.add(
            format!("negativity.band_{name}"),
            "edges of the negative band in r(R - r) at alphaZ = 0: 6 -/+ 2 sqrt 3",
            roots
                .as_ref()
                .map_err(clone_err)
                .and_then(|r| r.get(i).copied().ok_or_else(|| crate::Error::Domain("missing root".into()))),
            want,
            1e-4,
        );
    }
}
