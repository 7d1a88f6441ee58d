//! Differential tests: every closed form against its independent oracle,
//! over randomized parameter draws spanning the full nonstaticity range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wavephase::params::{Amplitude, C3Branch, NonstaticityParams, WaveConfig};
use wavephase::phase;
use wavephase::quad;
use wavephase::timefunc;
use wavephase::verify::{self, Perturbation, ResidualGrids};

/// Draw valid parameters with nonstaticity measure up to `d_max`, plus a
/// config with random angles and amplitude.
fn draw(rng: &mut ChaCha8Rng, d_max: f64) -> (NonstaticityParams, WaveConfig) {
    let d: f64 = rng.gen_range(0.0..=d_max);
    let s = (8.0 * d * d + 4.0).sqrt();
    let r = rng.gen_range(1.0..=s * s / 4.0);
    let root = (s * s - 4.0 * r).max(0.0).sqrt();
    let (mut c1, mut c2) = (0.5 * (s + root), 0.5 * (s - root));
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut c1, &mut c2);
    }
    let branch = if rng.gen_bool(0.5) {
        C3Branch::Positive
    } else {
        C3Branch::Negative
    };
    let phi = rng.gen_range(-std::f64::consts::FRAC_PI_2..std::f64::consts::FRAC_PI_2);
    let p = NonstaticityParams::new(c1, c2, branch, phi).expect("draw is valid");
    let amplitude = if rng.gen_bool(0.5) {
        Amplitude::Eigenvalue(rng.gen_range(0.0..=2.0))
    } else {
        Amplitude::Quadrature(rng.gen_range(-2.0..=2.0))
    };
    let cfg = WaveConfig {
        amplitude,
        theta: rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        theta0: rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        ..WaveConfig::default()
    };
    (p, cfg)
}

/// Sample times over three periods: interior points, exact node times,
/// and points hugging the nodes from both sides.
fn sample_times(p: &NonstaticityParams, cfg: &WaveConfig, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let span = 3.0 * cfg.period();
    let mut ts: Vec<f64> = (0..4)
        .map(|_| cfg.t0 + rng.gen_range(0.0..=span))
        .collect();
    for mark in phase::quarter_period_marks(p, cfg, cfg.t0 + span) {
        ts.push(mark);
        ts.push(mark + 1e-7);
        if mark - 1e-7 > cfg.t0 {
            ts.push(mark - 1e-7);
        }
    }
    ts.push(cfg.t0 + span);
    ts
}

#[test]
fn phase_time_matches_quadrature_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..60 {
        let (p, cfg) = draw(&mut rng, 15.0);
        for t in sample_times(&p, &cfg, &mut rng) {
            let closed = phase::phase_time(&p, &cfg, t).unwrap();
            let oracle = verify::quad_phase_time(&p, &cfg, t).unwrap();
            assert!(
                (closed - oracle).abs() <= 1e-9,
                "T mismatch {} at t = {t} for {p:?}",
                (closed - oracle).abs()
            );
        }
    }
}

#[test]
fn phase_integrals_match_quadrature_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let (p, cfg) = draw(&mut rng, 15.0);
        for t in sample_times(&p, &cfg, &mut rng).into_iter().take(6) {
            let g_closed = phase::gamma_g(&p, &cfg, t).unwrap();
            let g_oracle = verify::quad_gamma_g(&p, &cfg, t).unwrap();
            assert!(
                (g_closed - g_oracle).abs() <= 1e-8,
                "gamma_G mismatch {} at t = {t} for {p:?}",
                (g_closed - g_oracle).abs()
            );
            let d_closed = phase::gamma_d(&p, &cfg, t).unwrap();
            let d_oracle = verify::quad_gamma_d(&p, &cfg, t).unwrap();
            assert!(
                (d_closed - d_oracle).abs() <= 1e-9,
                "gamma_D mismatch {} at t = {t} for {p:?}",
                (d_closed - d_oracle).abs()
            );
        }
    }
}

#[test]
fn dynamical_rate_routes_agree_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    for _ in 0..200 {
        let (p, cfg) = draw(&mut rng, 15.0);
        let fixed = phase::gamma_d_rate(&p, &cfg).unwrap();
        for _ in 0..5 {
            let t = cfg.t0 + rng.gen_range(0.0..=3.0 * cfg.period());
            let via_g = phase::gamma_d_rate_at(&p, &cfg, t).unwrap();
            assert!(
                (fixed - via_g).abs() <= 1e-10 * fixed.abs().max(1.0),
                "Gamma_D route mismatch {} at t = {t} for {p:?}",
                (fixed - via_g).abs()
            );
        }
    }
}

#[test]
fn amplitude_is_time_constant_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..120 {
        let (p, mut cfg) = draw(&mut rng, 15.0);
        cfg.amplitude = Amplitude::Quadrature(rng.gen_range(0.1..=2.0));
        let base = phase::amplitude_a0(&p, &cfg, cfg.t0).unwrap();
        for _ in 0..6 {
            let t = cfg.t0 + rng.gen_range(0.0..=3.0 * cfg.period());
            let a = phase::amplitude_a0(&p, &cfg, t).unwrap();
            assert!(
                (a - base).abs() <= 1e-9 * base.max(1.0),
                "A0 drift {} at t = {t} for {p:?}",
                (a - base).abs()
            );
        }
    }
}

#[test]
fn quadrature_halved_tolerance_stays_within_estimate() {
    let p = NonstaticityParams::new(5.0, 0.5, C3Branch::Positive, 0.4).unwrap();
    let cfg = WaveConfig::default();
    let marks = phase::quarter_period_marks(&p, &cfg, 9.0);
    for tol in [1e-8, 1e-10] {
        let coarse = quad::integrate(
            |t| 1.0 / timefunc::eval_f(&p, &cfg, t).unwrap().f,
            cfg.t0,
            9.0,
            tol,
            &marks,
        )
        .unwrap();
        let fine = quad::integrate(
            |t| 1.0 / timefunc::eval_f(&p, &cfg, t).unwrap().f,
            cfg.t0,
            9.0,
            tol / 2.0,
            &marks,
        )
        .unwrap();
        assert!(
            (coarse.value - fine.value).abs() <= coarse.error_estimate + 1e-15,
            "tolerance halving moved the result beyond the reported estimate"
        );
    }
}

#[test]
fn schrodinger_check_fails_loudly_under_perturbations() {
    // Light grids keep this quick; the acceptance suite runs the full
    // figure-level configuration.
    let p = NonstaticityParams::new(2.5, 0.5, C3Branch::Positive, 0.0).unwrap();
    let cfg = WaveConfig::with_a0(0.1);
    let mut grids = ResidualGrids::default_for(&p, &cfg);
    grids.t_span *= 0.5;
    grids.n_t = grids.n_t / 2 + 1;
    grids.n_q = 1024;

    let base = verify::schrodinger_residual(&p, &cfg, &grids, Perturbation::None).unwrap();
    assert!(base.rms <= 1e-5, "baseline rms {} too large", base.rms);

    let no_phase =
        verify::schrodinger_residual(&p, &cfg, &grids, Perturbation::DropTotalPhase).unwrap();
    assert!(
        no_phase.rms >= 100.0 * base.rms,
        "dropping the phase inflated rms only {}x",
        no_phase.rms / base.rms
    );

    let ode = verify::schrodinger_residual(
        &p,
        &cfg,
        &grids,
        Perturbation::OdeViolation { fddot_scale: 1.01 },
    )
    .unwrap();
    assert!(
        ode.rms >= 100.0 * base.rms,
        "1% equation violation inflated rms only {}x",
        ode.rms / base.rms
    );
}

#[test]
fn fock_and_coherent_phases_harmonize_on_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..100 {
        let (p, cfg) = draw(&mut rng, 15.0);
        let t = cfg.t0 + rng.gen_range(0.0..=3.0 * cfg.period());
        // Total phase does not depend on the displacement.
        let with = |a0: f64| {
            let c = WaveConfig {
                amplitude: Amplitude::Eigenvalue(a0),
                ..cfg
            };
            phase::gamma_total(&p, &c, t).unwrap().gamma_total
        };
        let base = with(0.0);
        for a0 in [0.5, 1.0, 2.0] {
            assert!(
                (with(a0) - base).abs() <= 1e-10,
                "gamma_total moved with A0 = {a0}"
            );
        }
        // And equals the zero-point Fock total phase.
        let fock = phase::fock_phases(&p, &cfg, 0, t).unwrap().gamma_total;
        assert!((base - fock).abs() <= 1e-10, "coherent/Fock total mismatch");
    }
}
