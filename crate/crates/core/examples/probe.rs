// Scratch probe for numeric levels; not part of the deliverable API.
use wavephase::config::VerifyHooks;
use wavephase::params::{C3Branch, NonstaticityParams, WaveConfig};
use wavephase::verify::{self, Perturbation, ResidualGrids};

fn main() {
    let p = NonstaticityParams::new(2.5, 0.5, C3Branch::Positive, 0.0).unwrap();
    let cfg = WaveConfig::with_a0(0.1);

    let grids = ResidualGrids::default_for(&p, &cfg);
    println!("grids: n_t = {}, n_q = {}", grids.n_t, grids.n_q);

    let t = std::time::Instant::now();
    let base = verify::schrodinger_residual(&p, &cfg, &grids, Perturbation::None).unwrap();
    println!("base: rms = {:.3e}, max = {:.3e}  ({:?})", base.rms, base.max_abs, t.elapsed());

    let t = std::time::Instant::now();
    let nophase =
        verify::schrodinger_residual(&p, &cfg, &grids, Perturbation::DropTotalPhase).unwrap();
    println!(
        "drop-phase: rms = {:.3e}, max = {:.3e}, inflation = {:.1}x  ({:?})",
        nophase.rms,
        nophase.max_abs,
        nophase.rms / base.rms,
        t.elapsed()
    );

    let t = std::time::Instant::now();
    let ode = verify::schrodinger_residual(
        &p,
        &cfg,
        &grids,
        Perturbation::OdeViolation { fddot_scale: 1.01 },
    )
    .unwrap();
    println!(
        "ode-1%: rms = {:.3e}, max = {:.3e}, inflation = {:.1}x  ({:?})",
        ode.rms,
        ode.max_abs,
        ode.rms / base.rms,
        t.elapsed()
    );

    let t = std::time::Instant::now();
    let refined = verify::schrodinger_residual(&p, &cfg, &grids.refined(), Perturbation::None).unwrap();
    println!(
        "refined: rms = {:.3e}, ratio = {:.2}  ({:?})",
        refined.rms,
        base.rms / refined.rms,
        t.elapsed()
    );

    // Gauge invariance numbers.
    for (name, alpha) in [
        ("zero", Box::new(|_t: f64| 0.0) as Box<dyn Fn(f64) -> f64 + Sync>),
        ("3t", Box::new(|t: f64| 3.0 * t)),
        ("sin2t", Box::new(|t: f64| (2.0 * t).sin())),
    ] {
        let t_end = 2.0 * cfg.period();
        let now = std::time::Instant::now();
        let (plain, gauged) = verify::gauge_invariance_check(&p, &cfg, alpha.as_ref(), t_end).unwrap();
        let closed = wavephase::phase::gamma_g(&p, &cfg, t_end).unwrap();
        println!(
            "gauge[{name}]: plain = {plain:.9}, gauged = {gauged:.9}, diff = {:.3e}, closed gamma_g = {closed:.9}, plain-closed = {:.3e}  ({:?})",
            (plain - gauged).abs(),
            (plain - closed).abs(),
            now.elapsed()
        );
    }

    // Static config gauge check too.
    let ps = NonstaticityParams::static_wave();
    let (plain, gauged) =
        verify::gauge_invariance_check(&ps, &cfg, &|t: f64| 3.0 * t, 2.0 * cfg.period()).unwrap();
    let closed = wavephase::phase::gamma_g(&ps, &cfg, 2.0 * cfg.period()).unwrap();
    println!(
        "gauge static[3t]: diff = {:.3e}, plain-closed = {:.3e}",
        (plain - gauged).abs(),
        (plain - closed).abs()
    );

    // Generic (non-period-multiple) endpoint: the overlap functional
    // differs from the closed form by the bounded eigenfunction-overlap
    // argument.
    for t_end in [1.0, 2.3] {
        let (plain, _) = verify::gauge_invariance_check(&p, &cfg, &|_| 0.0, t_end).unwrap();
        let closed = wavephase::phase::gamma_g(&p, &cfg, t_end).unwrap();
        println!("generic t = {t_end}: plain - closed = {:.4e}", (plain - closed).abs());
    }

    // Full suite timing.
    let now = std::time::Instant::now();
    let records = verify::run_full_suite(&p, &cfg, &VerifyHooks::default()).unwrap();
    println!("suite in {:?}:", now.elapsed());
    for r in &records {
        println!("  {}: metric = {:.3e} tol = {:.1e} pass = {}", r.name, r.metric, r.tolerance, r.pass);
    }
}
