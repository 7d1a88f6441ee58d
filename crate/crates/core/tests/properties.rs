//! Property-based invariants over randomized valid parameters.

use proptest::prelude::*;
use std::f64::consts::PI;

use wavephase::params::{
    normalize_phi, wrap_to_pi, Amplitude, C3Branch, NonstaticityParams, WaveConfig,
};
use wavephase::phase;
use wavephase::timefunc;

fn params_strategy() -> impl Strategy<Value = NonstaticityParams> {
    (
        0.0_f64..15.0,
        0.0_f64..1.0,
        prop::bool::ANY,
        -PI / 2.0..PI / 2.0,
    )
        .prop_map(|(d, split, positive, phi)| {
            let s = (8.0 * d * d + 4.0).sqrt();
            let r = 1.0 + split * (s * s / 4.0 - 1.0);
            let root = (s * s - 4.0 * r).max(0.0).sqrt();
            let branch = if positive {
                C3Branch::Positive
            } else {
                C3Branch::Negative
            };
            NonstaticityParams::new(0.5 * (s + root), 0.5 * (s - root), branch, phi)
                .expect("strategy yields valid params")
        })
}

fn config_strategy() -> impl Strategy<Value = WaveConfig> {
    (0.2_f64..3.0, 0.0_f64..1.5, -PI..PI, -PI..PI).prop_map(|(omega, a0, theta, theta0)| {
        WaveConfig {
            omega,
            amplitude: Amplitude::Eigenvalue(a0),
            theta,
            theta0,
            ..WaveConfig::default()
        }
    })
}

proptest! {
    /// The determinant constraint holds for anything the constructor accepts.
    #[test]
    fn determinant_invariant(p in params_strategy()) {
        prop_assert!((p.c1() * p.c2() - p.c3() * p.c3() - 1.0).abs() <= 1e-12);
    }

    /// The nonstaticity measure is symmetric in (c1, c2) and nondecreasing
    /// in c1 + c2.
    #[test]
    fn measure_symmetry_and_monotonicity(p in params_strategy(), bump in 0.0_f64..5.0) {
        let d = p.nonstaticity_measure().value();
        let swapped = NonstaticityParams::new(p.c2(), p.c1(), C3Branch::Positive, p.phi()).unwrap();
        prop_assert!((swapped.nonstaticity_measure().value() - d).abs() <= 1e-12);
        let bigger = NonstaticityParams::new(p.c1() + bump, p.c2(), C3Branch::Positive, p.phi()).unwrap();
        prop_assert!(bigger.nonstaticity_measure().value() >= d - 1e-12);
    }

    /// f stays positive and repeats exactly after one period pi/omega.
    #[test]
    fn time_function_positive_and_periodic(p in params_strategy(), omega in 0.2_f64..3.0, t in 0.0_f64..20.0) {
        let cfg = WaveConfig { omega, ..WaveConfig::default() };
        let v = timefunc::eval_f(&p, &cfg, t).unwrap();
        prop_assert!(v.f > 0.0);
        let shifted = timefunc::eval_f(&p, &cfg, t + PI / omega).unwrap();
        prop_assert!((shifted.f - v.f).abs() <= 1e-9 * v.f.max(1.0));
    }

    /// Closed-form first derivative against a central difference.
    #[test]
    fn derivative_consistency(p in params_strategy(), t in 0.1_f64..10.0) {
        let cfg = WaveConfig::default();
        let h = 1e-5;
        let v = timefunc::eval_f(&p, &cfg, t).unwrap();
        let fp = timefunc::eval_f(&p, &cfg, t + h).unwrap().f;
        let fm = timefunc::eval_f(&p, &cfg, t - h).unwrap().f;
        let fd = (fp - fm) / (2.0 * h);
        prop_assert!((v.f_dot - fd).abs() <= 1e-6 * v.f.max(1.0));
    }

    /// The governing ODE residual vanishes within the scaled contract.
    #[test]
    fn ode_residual_contract(p in params_strategy(), omega in 0.2_f64..3.0, t in 0.0_f64..20.0) {
        let cfg = WaveConfig { omega, ..WaveConfig::default() };
        let f = timefunc::eval_f(&p, &cfg, t).unwrap().f;
        let r = timefunc::ode_residual(&p, &cfg, t).unwrap();
        prop_assert!(r.abs() <= 1e-9 * (omega * omega * f).max(1.0) * p.c1().max(p.c2()).max(1.0));
    }

    /// T is strictly increasing and continuous across branch nodes.
    #[test]
    fn phase_time_monotone_and_continuous(p in params_strategy(), omega in 0.2_f64..3.0) {
        let cfg = WaveConfig { omega, ..WaveConfig::default() };
        let span = 3.0 * cfg.period();
        let mut prev = 0.0;
        for i in 1..=200 {
            let t = span * i as f64 / 200.0;
            let big_t = phase::phase_time(&p, &cfg, t).unwrap();
            prop_assert!(big_t > prev, "T not strictly increasing at t = {t}");
            prev = big_t;
        }
        for node in phase::quarter_period_marks(&p, &cfg, span) {
            let below = phase::phase_time(&p, &cfg, (node - 1e-12).max(0.0)).unwrap();
            let above = phase::phase_time(&p, &cfg, node + 1e-12).unwrap();
            prop_assert!((above - below).abs() <= 1e-9, "jump at node {node}");
        }
    }

    /// Adding multiples of pi to phi changes nothing downstream.
    #[test]
    fn phi_shift_invariance(p in params_strategy(), k in -3_i64..=3, a0 in 0.0_f64..1.5, t in 0.0_f64..9.0) {
        let shifted = NonstaticityParams::new(
            p.c1(),
            p.c2(),
            if p.c3() >= 0.0 { C3Branch::Positive } else { C3Branch::Negative },
            p.phi() + k as f64 * PI,
        ).unwrap();
        let cfg = WaveConfig::with_a0(a0);
        let a = phase::gamma_total(&p, &cfg, t).unwrap();
        let b = phase::gamma_total(&shifted, &cfg, t).unwrap();
        prop_assert!((a.gamma_g - b.gamma_g).abs() <= 1e-9);
        prop_assert!((a.gamma_d - b.gamma_d).abs() <= 1e-9);
        prop_assert!((a.gamma_total - b.gamma_total).abs() <= 1e-9);
    }

    /// Rate identity Gamma_G(t) + Gamma_D = -omega / (2 f(t)).
    #[test]
    fn rate_identity(p in params_strategy(), cfg in config_strategy(), t in 0.0_f64..15.0) {
        let sum = phase::gamma_g_rate_at(&p, &cfg, t).unwrap()
            + phase::gamma_d_rate_at(&p, &cfg, t).unwrap();
        let f = timefunc::eval_f(&p, &cfg, t).unwrap().f;
        let scale = (p.c1() + p.c2()) * cfg.omega * (1.0 + 4.0 * match cfg.amplitude {
            Amplitude::Eigenvalue(a0) => a0 * a0,
            Amplitude::Quadrature(_) => 0.0,
        });
        prop_assert!((sum + cfg.omega / (2.0 * f)).abs() <= 1e-10 * scale.max(1.0));
    }

    /// PhaseSample internal invariants.
    #[test]
    fn phase_sample_invariants(p in params_strategy(), cfg in config_strategy(), t in 0.0_f64..15.0) {
        let s = phase::gamma_total(&p, &cfg, t).unwrap();
        prop_assert!((s.gamma_total - (s.gamma_g + s.gamma_d)).abs() <= 1e-10);
        prop_assert!((s.gamma_g - (s.gamma_nl + s.gamma_l)).abs() <= 1e-10);
        let fock = phase::fock_phases(&p, &cfg, 3, t).unwrap();
        prop_assert!((fock.gamma_total - (fock.gamma_g + fock.gamma_d)).abs() <= 1e-10);
        prop_assert!((fock.gamma_g - (fock.gamma_nl + fock.gamma_l)).abs() <= 1e-10);
    }

    /// Angle helpers stay in their windows.
    #[test]
    fn angle_windows(x in -50.0_f64..50.0) {
        let phi = normalize_phi(x);
        prop_assert!((-PI / 2.0..PI / 2.0).contains(&phi));
        let w = wrap_to_pi(x);
        prop_assert!(w > -PI && w <= PI);
    }
}

/// Dense positivity scan (10^4 points per period) on a fixed stress set.
#[test]
fn time_function_positive_on_dense_grid() {
    let cases = [
        (1.0, 1.0, C3Branch::Positive, 0.0),
        (2.5, 0.5, C3Branch::Positive, 0.0),
        (2.5, 0.5, C3Branch::Negative, -0.7),
        (20.0, 20.0, C3Branch::Positive, PI / 8.0),
        (40.0, 0.05, C3Branch::Negative, 1.2),
    ];
    let cfg = WaveConfig::default();
    for (c1, c2, branch, phi) in cases {
        let p = NonstaticityParams::new(c1, c2, branch, phi).unwrap();
        let mut min_f = f64::INFINITY;
        for i in 0..10_000 {
            let t = cfg.period() * i as f64 / 10_000.0;
            min_f = min_f.min(timefunc::eval_f(&p, &cfg, t).unwrap().f);
        }
        assert!(min_f > 0.0, "f dipped to {min_f} for {p:?}");
        // The closed-form minimum agrees with the scan.
        let (lo, _) = p.f_range();
        assert!(min_f >= lo - 1e-9 && min_f <= lo + 1e-2 * lo.max(1.0));
    }
}
