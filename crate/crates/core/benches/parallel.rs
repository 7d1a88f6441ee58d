//! Rayon vs sequential throughput on the data-parallel hot paths:
//! phase-trajectory sampling and coherent-grid evaluation.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use wavephase::exec;
use wavephase::params::{C3Branch, NonstaticityParams, WaveConfig};
use wavephase::phase;
use wavephase::wavefunction::{self, GridSpec};

fn bench_trajectory(c: &mut Criterion) {
    let p = NonstaticityParams::new(2.5, 0.5, C3Branch::Positive, 0.0).unwrap();
    let cfg = WaveConfig::with_a0(0.1);
    let mut group = c.benchmark_group("phase_trajectory");
    group.sample_size(20);
    for &n in &[10_000usize, 100_000] {
        let times: Vec<f64> = (0..n).map(|i| 1e-4 * i as f64).collect();
        group.bench_with_input(BenchmarkId::new("parallel", n), &times, |b, ts| {
            b.iter(|| {
                let out = exec::map_slice(ts, |&t| phase::gamma_total(&p, &cfg, t).unwrap());
                black_box(out)
            })
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &times, |b, ts| {
            b.iter(|| {
                let out: Vec<_> = ts
                    .iter()
                    .map(|&t| phase::gamma_total(&p, &cfg, t).unwrap())
                    .collect();
                black_box(out)
            })
        });
    }
    group.finish();
}

fn bench_grid(c: &mut Criterion) {
    let p = NonstaticityParams::new(2.5, 0.5, C3Branch::Positive, 0.0).unwrap();
    let cfg = WaveConfig::with_a0(0.1);
    let t = 0.9;
    let mut group = c.benchmark_group("coherent_grid");
    group.sample_size(20);
    for &n in &[4096usize, 65_536] {
        let spec = GridSpec::policy(&p, &cfg, t, n).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n), &spec, |b, s| {
            b.iter(|| black_box(wavefunction::sample_coherent_wavefunction(&p, &cfg, s, t).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &spec, |b, s| {
            let a0 = phase::resolve_a0(&p, &cfg).unwrap();
            let tf = wavephase::timefunc::eval_f(&p, &cfg, t).unwrap();
            let big_t = phase::phase_time(&p, &cfg, t).unwrap();
            b.iter(|| {
                let d = (s.q_max - s.q_min) / (s.n_points - 1) as f64;
                let out = exec::map_indexed_seq(s.n_points, |i| {
                    let q = s.q_min + i as f64 * d;
                    // Same arithmetic as the grid sampler, minus the fan-out.
                    let amp = phase::ComplexAmplitude {
                        a0,
                        accumulated_phase: cfg.omega * big_t + cfg.theta,
                    };
                    let z = cfg.epsilon * cfg.omega / (cfg.hbar * tf.f);
                    let a = amp.value();
                    let gauss =
                        num_complex::Complex64::new(-0.5 * z, 0.25 * z * tf.f_dot / cfg.omega)
                            * q
                            * q;
                    let exponent = gauss + (2.0 * z).sqrt() * a * q
                        - 0.5 * (a0 * a0)
                        - 0.5 * a * a
                        + num_complex::Complex64::new(0.0, -0.5 * cfg.omega * big_t);
                    (z / std::f64::consts::PI).powf(0.25) * exponent.exp()
                });
                black_box(out)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_trajectory, bench_grid);
criterion_main!(benches);
