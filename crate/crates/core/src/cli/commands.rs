use std::f64::consts::PI;

use super::output::{Cell, Table};
use super::{CliError, Command, RadialGrid, RunConfig, StateArgs};
use crate::expectations::expectations;
use crate::numerics::orbit::period_of;
use crate::numerics::{
    figure_data, marginal_quadrature, mc_expectation, orbit_integrate, sample_yrast_parallel, QuadratureSpec,
};
use crate::phasespace::{momentum_marginal, negativity_scan, PhasePoint, StateDensity};
use crate::spectrum::{effective_ell, level_energy, level_energy_series, radial_wavefunction, QuantumNumbers};

/// An observable of `(r, R)`.
type RadialObservable = fn(f64, f64) -> f64;

pub(super) fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Table, CliError> {
    match cmd {
        Command::Spectrum { n_max } => spectrum(*n_max, cfg),
        Command::Wavefn { state, grid } => wavefn(state, grid, cfg),
        Command::Density {
            state,
            scale,
            mu,
            points,
            scan,
            resolution,
        } => {
            let sd = state.density(cfg.coupling)?;
            if *scan {
                density_scan(&sd, *resolution)
            } else {
                density_slice(&sd, *scale, *mu, *points)
            }
        }
        Command::Marginal { state, grid, quadrature } => marginal(state, grid, *quadrature, cfg),
        Command::Expect { state } => expect(state, cfg),
        Command::Sample { n, samples, summary } => sample(*n, *samples, *summary, cfg),
        Command::Orbit {
            radius,
            pr,
            pt,
            periods,
        } => orbit(*radius, *pr, *pt, *periods, cfg),
        Command::Figure { p_max, points } => figure(*p_max, *points, cfg),
        Command::Verify => unreachable!("handled by the caller"),
    }
}

pub(super) fn quadrature_spec(cfg: &RunConfig) -> Result<QuadratureSpec, CliError> {
    let mut spec = QuadratureSpec::default();
    if let Some(t) = cfg.tol {
        spec.rel_tol = t;
    }
    Ok(spec.validated()?)
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn spectrum(n_max: u32, cfg: &RunConfig) -> Result<Table, CliError> {
    if n_max == 0 {
        return Err(usage("--n-max must be at least 1"));
    }
    let mut t = Table::new(&["n", "l", "ell", "energy", "series", "difference"]);
    for n in 1..=n_max {
        for l in 0..n {
            let qn = QuantumNumbers::new(n, l)?;
            let ell = effective_ell(l, cfg.coupling)?;
            let e = level_energy(qn, cfg.coupling)?;
            let s = level_energy_series(qn, cfg.coupling);
            t.push(vec![n.into(), l.into(), ell.into(), e.into(), s.into(), (e - s).into()]);
        }
    }
    Ok(t)
}

fn radii(grid: &RadialGrid) -> Result<Vec<f64>, CliError> {
    if !(grid.r_max > 0.0 && grid.r_max.is_finite()) {
        return Err(usage(format!("--r-max must be positive, got {}", grid.r_max)));
    }
    if grid.points == 0 {
        return Err(usage("--points must be at least 1"));
    }
    Ok((1..=grid.points).map(|i| grid.r_max * i as f64 / grid.points as f64).collect())
}

fn wavefn(state: &StateArgs, grid: &RadialGrid, cfg: &RunConfig) -> Result<Table, CliError> {
    let sd = state.density(cfg.coupling)?;
    let rs = sd.radial_state();
    let mut t = Table::new(&["r", "wavefunction", "density", "marginal"]);
    for r in radii(grid)? {
        let psi = radial_wavefunction(&rs, r);
        t.push(vec![
            r.into(),
            psi.into(),
            (psi * psi / (4.0 * PI)).into(),
            momentum_marginal(&sd, r).into(),
        ]);
    }
    Ok(t)
}

fn density_slice(sd: &StateDensity, scale: f64, mu: f64, points: usize) -> Result<Table, CliError> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(usage(format!("--scale must be positive, got {scale}")));
    }
    if !(0.0..=PI).contains(&mu) {
        return Err(usage(format!("--mu must lie in [0, pi], got {mu}")));
    }
    if points == 0 {
        return Err(usage("--points must be at least 1"));
    }
    let cd = sd.chart_density();
    let mut t = Table::new(&["r", "density", "angle_integrated"]);
    for i in 1..=points {
        let r = scale * i as f64 / (points + 1) as f64;
        t.push(vec![
            r.into(),
            cd.value(r, scale, mu).into(),
            cd.angle_integrated(r, scale).into(),
        ]);
    }
    Ok(t)
}

fn density_scan(sd: &StateDensity, resolution: usize) -> Result<Table, CliError> {
    let scan = negativity_scan(sd, resolution)?;
    let mut t = Table::new(&["min_value", "r", "R", "gap_product"]);
    t.push(vec![
        scan.min_value.into(),
        scan.location.r.into(),
        scan.location.scale.into(),
        scan.gap_product().into(),
    ]);
    Ok(t)
}

fn marginal(state: &StateArgs, grid: &RadialGrid, quadrature: bool, cfg: &RunConfig) -> Result<Table, CliError> {
    let sd = state.density(cfg.coupling)?;
    let rs = sd.radial_state();
    let spec = quadrature_spec(cfg)?;
    let mut cols = vec!["r", "marginal", "wavefunction_sq"];
    if quadrature {
        cols.push("quadrature");
    }
    let mut t = Table::new(&cols);
    for r in radii(grid)? {
        let mut row: Vec<Cell> = vec![
            r.into(),
            momentum_marginal(&sd, r).into(),
            (radial_wavefunction(&rs, r).powi(2) / (4.0 * PI)).into(),
        ];
        if quadrature {
            row.push(marginal_quadrature(&sd, r, &spec)?.into());
        }
        t.push(row);
    }
    Ok(t)
}

fn expect(state: &StateArgs, cfg: &RunConfig) -> Result<Table, CliError> {
    let sd = state.density(cfg.coupling)?;
    let rep = expectations(&sd);
    let mut t = Table::new(&["quantity", "value"]);
    let mut rows = vec![
        ("inv_r", rep.inv_r),
        ("inv_r2", rep.inv_r2),
        ("inv_R", rep.inv_scale),
        ("inv_R2", rep.inv_scale2),
        ("pr2", rep.pr2),
        ("L2_over_r2", rep.l2_over_r2),
        ("p2", rep.p2),
    ];
    if let Some(e) = rep.naive_energy {
        rows.push(("naive_energy", e));
    }
    rows.extend([
        ("double_bracket_energy", rep.double_bracket_energy),
        ("double_bracket_energy_prime", rep.double_bracket_energy_prime),
        ("quantum_energy", rep.quantum_energy),
    ]);
    for (name, v) in rows {
        t.push(vec![name.into(), v.into()]);
    }
    Ok(t)
}

fn sample(n: u32, samples: usize, summary: bool, cfg: &RunConfig) -> Result<Table, CliError> {
    let sd = StateDensity::yrast(n, cfg.coupling)?;
    let batch = sample_yrast_parallel(&sd, samples, cfg.seed, cfg.workers)?;
    if !summary {
        let mut t = Table::new(&["r", "theta", "phi", "R", "mu", "nu"]);
        for p in &batch.points {
            t.push(vec![
                p.r.into(),
                p.theta.into(),
                p.phi.into(),
                p.scale.into(),
                p.mu.into(),
                p.nu.into(),
            ]);
        }
        return Ok(t);
    }
    let rep = expectations(&sd);
    let mut t = Table::new(&["quantity", "mean", "stderr", "analytic"]);
    let rows: [(&str, RadialObservable, f64); 4] = [
        ("inv_r", |r, _| 1.0 / r, rep.inv_r),
        ("inv_r2", |r, _| 1.0 / (r * r), rep.inv_r2),
        ("inv_R", |_, s| 1.0 / s, rep.inv_scale),
        ("inv_R2", |_, s| 1.0 / (s * s), rep.inv_scale2),
    ];
    for (name, f, analytic) in rows {
        let est = mc_expectation(&batch, |cp, _| f(cp.r, cp.scale))?;
        t.push(vec![name.into(), est.mean.into(), est.stderr.into(), analytic.into()]);
    }
    Ok(t)
}

fn orbit(radius: f64, pr: f64, pt: f64, periods: f64, cfg: &RunConfig) -> Result<Table, CliError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(usage(format!("--radius must be positive, got {radius}")));
    }
    if !(periods > 0.0 && periods.is_finite()) {
        return Err(usage(format!("--periods must be positive, got {periods}")));
    }
    let start = PhasePoint::new([radius, 0.0, 0.0], [pr, pt, 0.0]);
    if cfg.coupling.squared() == 0.0 {
        return Err(usage("orbit needs alpha Z > 0 (the scaled dynamics is frozen at 0)"));
    }
    let t_end = periods * period_of(&start, cfg.coupling)?;
    let traj = orbit_integrate(&start, cfg.coupling, t_end, cfg.tol.unwrap_or(1e-12))?;
    let mut t = Table::new(&["t", "x", "y", "z", "px", "py", "pz", "energy", "angular_momentum"]);
    for (time, p) in traj.times.iter().zip(&traj.points) {
        let l = p.angular_momentum();
        t.push(vec![
            (*time).into(),
            p.position[0].into(),
            p.position[1].into(),
            p.position[2].into(),
            p.momentum[0].into(),
            p.momentum[1].into(),
            p.momentum[2].into(),
            p.energy(cfg.coupling).into(),
            (l[0] * l[0] + l[1] * l[1] + l[2] * l[2]).sqrt().into(),
        ]);
    }
    Ok(t)
}

fn figure(p_max: f64, points: usize, cfg: &RunConfig) -> Result<Table, CliError> {
    if !(p_max > 0.0 && p_max.is_finite()) {
        return Err(usage(format!("--p-max must be positive, got {p_max}")));
    }
    if points < 2 {
        return Err(usage("--points must be at least 2"));
    }
    let grid: Vec<f64> = (0..points).map(|i| p_max * i as f64 / (points - 1) as f64).collect();
    let rows = figure_data(&grid, &quadrature_spec(cfg)?)?;
    let mut t = Table::new(&["p", "wigner", "classical"]);
    for row in rows {
        t.push(vec![row.p.into(), row.wigner.into(), row.classical.into()]);
    }
    Ok(t)
}
