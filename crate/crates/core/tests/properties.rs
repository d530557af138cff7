use std::f64::consts::PI;

use proptest::prelude::*;

use relhydrogen::harmonics::{cal_y, lhat, AngularFactor, Y1_SUM};
use relhydrogen::numerics::{integrate, sample_yrast_parallel, tanh_sinh, QuadratureSpec};
use relhydrogen::phasespace::{
    chart_to_phase, density_eval, measure_factor, orbit_energy, orbit_scale, orbital_elements, phase_to_chart,
};
use relhydrogen::spectrum::{coupling_from_energy, effective_ell, level_energy};
use relhydrogen::{ChartPoint, Coupling, QuantumNumbers, StateDensity};

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn angle_close(a: f64, b: f64, tol: f64) -> bool {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d) <= tol
}

prop_compose! {
    fn chart_point()(
        r in 0.05f64..6.0,
        stretch in 1.02f64..15.0,
        mu in 0.05f64..(PI - 0.05),
        theta in 0.05f64..(PI - 0.05),
        phi in 0.0f64..(2.0 * PI),
        nu in 0.0f64..(2.0 * PI),
    ) -> ChartPoint {
        ChartPoint { r, theta, phi, scale: r * stretch, mu, nu }
    }
}

fn coupling() -> impl Strategy<Value = Coupling> {
    (0.01f64..0.45).prop_map(|az| Coupling::new(az).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn chart_round_trip(cp in chart_point(), c in coupling()) {
        let back = phase_to_chart(&chart_to_phase(&cp, c).unwrap(), c).unwrap();
        prop_assert!(close(back.r, cp.r, 1e-12));
        prop_assert!(close(back.scale, cp.scale, 1e-8), "{} vs {}", back.scale, cp.scale);
        prop_assert!((back.mu - cp.mu).abs() < 1e-7);
        prop_assert!((back.theta - cp.theta).abs() < 1e-10);
        prop_assert!(angle_close(back.phi, cp.phi, 1e-10));
        prop_assert!(angle_close(back.nu, cp.nu, 1e-10));
    }

    #[test]
    fn orbit_scale_inverts_energy(scale in 0.01f64..100.0, c in coupling()) {
        let e = orbit_energy(scale, c);
        prop_assert!(e > 0.0 && e < 1.0);
        prop_assert!(close(orbit_scale(e, c).unwrap(), scale, 1e-9));
    }

    #[test]
    fn chart_point_has_its_orbit(cp in chart_point(), c in coupling()) {
        let el = orbital_elements(&chart_to_phase(&cp, c).unwrap(), c).unwrap();
        prop_assert!(close(el.scale, cp.scale, 1e-8));
    }

    #[test]
    fn density_ignores_orientation(
        cp in chart_point(),
        c in coupling(),
        nu in 0.0f64..(2.0 * PI),
        theta in 0.05f64..(PI - 0.05),
        phi in 0.0f64..(2.0 * PI),
    ) {
        for sd in [StateDensity::yrast(1, c).unwrap(), StateDensity::yrast(3, c).unwrap(), StateDensity::two_s_a(c).unwrap()] {
            let a = density_eval(&sd, &chart_to_phase(&cp, c).unwrap()).unwrap();
            let moved = ChartPoint { nu, theta, phi, ..cp };
            let b = density_eval(&sd, &chart_to_phase(&moved, c).unwrap()).unwrap();
            prop_assert!(close(a, b, 1e-9), "{a} vs {b}");
        }
    }

    #[test]
    fn chart_density_matches_phase_density(cp in chart_point(), c in coupling()) {
        let sd = StateDensity::two_s_mix(0.3, c).unwrap();
        let direct = measure_factor(&cp, c).unwrap() * density_eval(&sd, &chart_to_phase(&cp, c).unwrap()).unwrap();
        let chart = sd.chart_density().value(cp.r, cp.scale, cp.mu);
        prop_assert!((direct - chart).abs() <= 1e-9 * direct.abs().max(chart.abs()) + 1e-300);
    }

    #[test]
    fn lhat_is_a_unit_vector(theta in 0.0f64..PI, phi in 0.0f64..(2.0 * PI), nu in 0.0f64..(2.0 * PI)) {
        let l = lhat(theta, phi, nu);
        prop_assert!(((l[0] * l[0] + l[1] * l[1] + l[2] * l[2]).sqrt() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn harmonics_sum_over_m(
        axis in prop::array::uniform3(-1.0f64..1.0).prop_filter("nonzero", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-6),
        theta in 0.0f64..PI,
        phi in 0.0f64..(2.0 * PI),
        nu in 0.0f64..(2.0 * PI),
    ) {
        let l = lhat(theta, phi, nu);
        let v: Vec<f64> = (-1..=1).map(|m| cal_y(&AngularFactor::new(m, axis).unwrap(), &l)).collect();
        prop_assert!((v.iter().sum::<f64>() - Y1_SUM).abs() < 1e-13);
        prop_assert!(v[0] + v[2] >= -1e-15);
    }

    #[test]
    fn effective_ell_solves_its_equation(l in 0u32..8, c in coupling()) {
        prop_assume!(c.admits(l));
        let ell = effective_ell(l, c).unwrap();
        let lf = l as f64;
        prop_assert!((ell * (ell + 1.0) + c.squared() - lf * (lf + 1.0)).abs() < 1e-13);
    }

    #[test]
    fn levels_are_bound_and_ordered(n in 1u32..8, c in coupling()) {
        let e = |n, l| level_energy(QuantumNumbers::new(n, l).unwrap(), c).unwrap();
        for l in 0..n {
            prop_assert!(e(n, l) > 0.0 && e(n, l) < 1.0);
            prop_assert!(e(n, l) < e(n + 1, l));
            if l + 1 < n {
                prop_assert!(e(n, l) < e(n, l + 1));
            }
        }
    }

    #[test]
    fn coupling_recovered_from_energy(n in 1u32..6, c in coupling()) {
        let qn = QuantumNumbers::new(n, n - 1).unwrap();
        let a2 = coupling_from_energy(qn, level_energy(qn, c).unwrap()).unwrap();
        prop_assert!(close(a2, c.squared(), 1e-10), "{a2} vs {}", c.squared());
    }

    #[test]
    fn quadrature_is_linear_and_additive(k in 0.1f64..5.0, a in -2.0f64..0.0, m in 0.0f64..1.0, b in 1.0f64..3.0) {
        let spec = QuadratureSpec::default();
        let f = |x: f64| (k * x).sin() + x * x;
        let whole = integrate(f, a, b, &spec).unwrap().value;
        let split = integrate(f, a, m, &spec).unwrap().value + integrate(f, m, b, &spec).unwrap().value;
        let exact = (1.0 - (k * b).cos()) / k - (1.0 - (k * a).cos()) / k + (b.powi(3) - a.powi(3)) / 3.0;
        prop_assert!((whole - exact).abs() < 1e-10 * (1.0 + exact.abs()));
        prop_assert!((whole - split).abs() < 1e-10 * (1.0 + exact.abs()));
        let ts = tanh_sinh(|x| Ok(f(x)), a, b, 1e-8).unwrap().value;
        prop_assert!((ts - exact).abs() < 1e-10 * (1.0 + exact.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampling_ignores_worker_count(seed in any::<u64>(), count in 1usize..20_000, workers in 2usize..6) {
        let sd = StateDensity::yrast(2, Coupling::new(0.2).unwrap()).unwrap();
        let one = sample_yrast_parallel(&sd, count, seed, 1).unwrap();
        let many = sample_yrast_parallel(&sd, count, seed, workers).unwrap();
        prop_assert_eq!(one.points, many.points);
    }
}
