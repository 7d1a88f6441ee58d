//! `figure`: reproduce a figure preset into CSV (one per panel) plus a
//! matching SVG rendering. Presets carry the caption constants; every
//! caption-sourced value is echoed into the CSV metadata together with
//! its citation string.

use std::path::Path;

use wavephase::exec;
use wavephase::params::{Amplitude, C3Branch, NonstaticityParams, WaveConfig};
use wavephase::phase;
use wavephase::wavefunction::{self, GridSpec};

use crate::output::{fmt, linspace, Csv, OutputSet};
use crate::presets::{Preset, PresetSet};
use crate::svg::{self, LineStyle, Series};
use crate::{manifest, CliError, CliResult};

pub fn run(id: &str, presets: &PresetSet, out_dir: &Path, argv: &[String]) -> CliResult<()> {
    let Some(preset) = presets.get(id) else {
        let ids: Vec<&str> = presets.ids().collect();
        return Err(CliError::Usage(format!(
            "unknown preset `{id}`; valid presets: {}",
            ids.join(", ")
        )));
    };
    let mut outputs = OutputSet::create(out_dir)?;
    match id {
        "fig1" => fig1(preset, &mut outputs)?,
        "fig2" => fig2(preset, &mut outputs)?,
        "fig3" => fig3(preset, &mut outputs)?,
        "fig4" => fig4(preset, &mut outputs)?,
        "fig5" | "fig6" | "fig7" => fig567(id, preset, &mut outputs)?,
        "fig8" => fig8(preset, &mut outputs)?,
        "fig9" => fig9(preset, &mut outputs)?,
        "fig10" => fig10(preset, &mut outputs)?,
        "fig11" => fig11(preset, &mut outputs)?,
        other => {
            return Err(CliError::Usage(format!(
                "preset `{other}` has no renderer; built-in renderers cover fig1..fig11"
            )))
        }
    }
    manifest::write(outputs, None, argv)?;
    Ok(())
}

fn positive(c1: f64, c2: f64, phi: f64) -> CliResult<NonstaticityParams> {
    NonstaticityParams::new(c1, c2, C3Branch::Positive, phi).map_err(CliError::from)
}

fn preset_comments(csv: &mut Csv, id: &str, preset: &Preset) {
    csv.comment("preset", id);
    csv.comment("citation", &preset.citation);
    for (key, value) in &preset.values {
        csv.comment(key, value);
    }
}

fn fig1(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let q0 = preset.number("q0")?;
    let n = preset.count("n_points")?;
    let cs = linspace(preset.number("c_min")?, preset.number("c_max")?, n);
    for group in ["a", "b"] {
        let phi = preset.number(&format!("phi_{group}"))?;
        let theta = preset.number(&format!("theta_{group}"))?;
        let theta0 = preset.number(&format!("theta0_{group}"))?;
        for sub in 1..=3 {
            let panel = format!("{group}{sub}");
            let rows: Vec<(f64, f64, f64)> = exec::map_slice(&cs, |&c| {
                let (c1, c2) = match sub {
                    1 => (c, 1.0),
                    2 => (1.0, c),
                    _ => (c, c),
                };
                let p = positive(c1, c2, phi).expect("c >= 1 keeps the product valid");
                let cfg = WaveConfig {
                    amplitude: Amplitude::Quadrature(q0),
                    theta,
                    theta0,
                    ..WaveConfig::default()
                };
                let i = wavefunction::expectation_i(&p, &cfg).expect("valid point");
                let h = wavefunction::expectation_h(&p, &cfg).expect("valid point");
                (c, i, h)
            });
            let mut csv = Csv::new();
            preset_comments(&mut csv, "fig1", preset);
            csv.comment("panel", &panel);
            let x_label = match sub {
                1 => "c1 (c2 = 1)",
                2 => "c2 (c1 = 1)",
                _ => "c1 = c2",
            };
            csv.header(&["c", "expectation_I", "expectation_H"]);
            for (c, i, h) in &rows {
                csv.row(&[fmt(*c), fmt(*i), fmt(*h)]);
            }
            outputs.write(&format!("fig1_{panel}.csv"), csv.finish())?;
            let series = vec![
                Series {
                    label: "<I>".to_string(),
                    style: LineStyle::Solid,
                    points: rows.iter().map(|r| (r.0, r.1)).collect(),
                },
                Series {
                    label: "<H>".to_string(),
                    style: LineStyle::Dashed,
                    points: rows.iter().map(|r| (r.0, r.2)).collect(),
                },
            ];
            outputs.write(
                &format!("fig1_{panel}.svg"),
                &svg::line_plot(&format!("fig1 {panel}"), x_label, "expectation value", &series),
            )?;
        }
    }
    Ok(())
}

fn fig2(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let q0 = preset.number("q0")?;
    let n = preset.count("n_grid")?;
    let lo = preset.number("angle_min")?;
    let hi = preset.number("angle_max")?;
    let angles = linspace(lo, hi, n);
    for group in ["a", "b"] {
        let theta0 = preset.number(&format!("theta0_{group}"))?;
        for sub in 1..=2 {
            let c1 = preset.number(&format!("c1_panel{sub}"))?;
            let c2 = preset.number(&format!("c2_panel{sub}"))?;
            let panel = format!("{group}{sub}");
            // Row-major over theta rows, phi columns.
            let values: Vec<f64> = exec::map_indexed(n * n, |flat| {
                let theta = angles[flat / n];
                let phi = angles[flat % n];
                let p = positive(c1, c2, phi).expect("caption product >= 1");
                let cfg = WaveConfig {
                    amplitude: Amplitude::Quadrature(q0),
                    theta,
                    theta0,
                    ..WaveConfig::default()
                };
                phase::gamma_d_rate(&p, &cfg).expect("valid point")
            });
            let mut csv = Csv::new();
            preset_comments(&mut csv, "fig2", preset);
            csv.comment("panel", &panel);
            csv.comment("c1", c1);
            csv.comment("c2", c2);
            csv.comment("theta0", theta0);
            csv.header(&["phi", "theta", "gamma_d_rate"]);
            for (flat, v) in values.iter().enumerate() {
                csv.row(&[fmt(angles[flat % n]), fmt(angles[flat / n]), fmt(*v)]);
            }
            outputs.write(&format!("fig2_{panel}.csv"), csv.finish())?;
            outputs.write(
                &format!("fig2_{panel}.svg"),
                &svg::density_plot(
                    &format!("fig2 {panel}: dynamical-phase rate"),
                    "phi",
                    "theta",
                    n,
                    n,
                    (lo, hi, lo, hi),
                    &values,
                ),
            )?;
        }
    }
    Ok(())
}

fn fig3(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let p = positive(preset.number("c1")?, preset.number("c2")?, 0.0)?;
    let a0 = preset.number("a0")?;
    let omegas = preset.list("omega_list")?;
    let t_end = preset.number("t_end")?;
    let n = preset.count("n_points")?;
    let times = linspace(0.0, t_end, n);

    let kinds: [(&str, fn(&phase::PhaseSample) -> f64); 3] = [
        ("a", |s| s.gamma_g),
        ("b", |s| s.gamma_d),
        ("c", |s| s.gamma_total),
    ];
    let trajectories: Vec<Vec<phase::PhaseSample>> = omegas
        .iter()
        .map(|&omega| {
            let cfg = WaveConfig {
                omega,
                amplitude: Amplitude::Eigenvalue(a0),
                ..WaveConfig::default()
            };
            phase::phase_trajectory(&p, &cfg, &times).map_err(CliError::from)
        })
        .collect::<CliResult<_>>()?;

    for (panel, extract) in kinds {
        let mut csv = Csv::new();
        preset_comments(&mut csv, "fig3", preset);
        csv.comment("panel", panel);
        let mut columns = vec!["t".to_string()];
        columns.extend(omegas.iter().map(|om| format!("omega_{om}")));
        csv.header(&columns.iter().map(String::as_str).collect::<Vec<_>>());
        for (i, &t) in times.iter().enumerate() {
            let mut row = vec![fmt(t)];
            row.extend(trajectories.iter().map(|tr| fmt(extract(&tr[i]))));
            csv.row(&row);
        }
        outputs.write(&format!("fig3_{panel}.csv"), csv.finish())?;
        let series: Vec<Series> = omegas
            .iter()
            .zip(&trajectories)
            .map(|(om, tr)| Series {
                label: format!("omega = {om}"),
                style: LineStyle::Solid,
                points: times.iter().zip(tr).map(|(&t, s)| (t, extract(s))).collect(),
            })
            .collect();
        let y_label = match panel {
            "a" => "geometric phase",
            "b" => "dynamical phase",
            _ => "total phase",
        };
        outputs.write(
            &format!("fig3_{panel}.svg"),
            &svg::line_plot(&format!("fig3 {panel}"), "t", y_label, &series),
        )?;
    }

    // Probability-density panel at omega = 1.
    let cfg = WaveConfig {
        amplitude: Amplitude::Eigenvalue(a0),
        ..WaveConfig::default()
    };
    let nt = preset.count("density_nt")?;
    let nq = preset.count("density_nq")?;
    let spec = GridSpec::policy(&p, &cfg, 0.0, nq)?;
    let density_times = linspace(0.0, t_end, nt);
    let grids: Vec<Vec<f64>> = exec::map_slice(&density_times, |&t| {
        wavefunction::sample_coherent_eigenfunction(&p, &cfg, &spec, t)
            .expect("valid grid")
            .values()
            .iter()
            .map(|v| v.norm_sqr())
            .collect()
    });
    let mut csv = Csv::new();
    preset_comments(&mut csv, "fig3", preset);
    csv.comment("panel", "density");
    csv.comment("q_min", spec.q_min);
    csv.comment("q_max", spec.q_max);
    csv.header(&["t", "q", "abs2"]);
    let dq = (spec.q_max - spec.q_min) / (nq - 1) as f64;
    for (i, &t) in density_times.iter().enumerate() {
        for (j, v) in grids[i].iter().enumerate() {
            csv.row(&[fmt(t), fmt(spec.q_min + j as f64 * dq), fmt(*v)]);
        }
    }
    outputs.write("fig3_density.csv", csv.finish())?;
    // Density image: rows = q (bottom-up), columns = t.
    let mut values = vec![0.0; nt * nq];
    for (i, row) in grids.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            values[j * nt + i] = *v;
        }
    }
    outputs.write(
        "fig3_density.svg",
        &svg::density_plot(
            "fig3: probability density (omega = 1)",
            "t",
            "q",
            nt,
            nq,
            (0.0, t_end, spec.q_min, spec.q_max),
            &values,
        ),
    )?;
    Ok(())
}

fn fig4(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let c1s = preset.list("c1_list")?;
    let c2 = preset.number("c2")?;
    let a0 = preset.number("a0")?;
    let times = linspace(0.0, preset.number("t_end")?, preset.count("n_points")?);
    let cfg = WaveConfig {
        amplitude: Amplitude::Eigenvalue(a0),
        ..WaveConfig::default()
    };

    let mut curves: Vec<(String, Vec<f64>, LineStyle, f64)> = Vec::new();
    for &c1 in &c1s {
        let p = positive(c1, c2, 0.0)?;
        let samples = phase::phase_trajectory(&p, &cfg, &times)?;
        curves.push((
            format!("c1_{c1}"),
            samples.iter().map(|s| s.gamma_g).collect(),
            LineStyle::Solid,
            p.nonstaticity_measure().value(),
        ));
    }
    let static_p = NonstaticityParams::static_wave();
    let samples = phase::phase_trajectory(&static_p, &cfg, &times)?;
    curves.push((
        "static".to_string(),
        samples.iter().map(|s| s.gamma_g).collect(),
        LineStyle::Dashed,
        0.0,
    ));

    let mut csv = Csv::new();
    preset_comments(&mut csv, "fig4", preset);
    for (label, _, _, d) in &curves {
        csv.comment(&format!("measure_{label}"), d);
    }
    let mut columns = vec!["t".to_string()];
    columns.extend(curves.iter().map(|c| c.0.clone()));
    csv.header(&columns.iter().map(String::as_str).collect::<Vec<_>>());
    for (i, &t) in times.iter().enumerate() {
        let mut row = vec![fmt(t)];
        row.extend(curves.iter().map(|c| fmt(c.1[i])));
        csv.row(&row);
    }
    outputs.write("fig4.csv", csv.finish())?;

    let series: Vec<Series> = curves
        .iter()
        .map(|(label, ys, style, _)| Series {
            label: label.clone(),
            style: *style,
            points: times.iter().zip(ys).map(|(&t, &y)| (t, y)).collect(),
        })
        .collect();
    outputs.write(
        "fig4.svg",
        &svg::line_plot("fig4: geometric phase vs nonstaticity", "t", "geometric phase", &series),
    )?;
    Ok(())
}

/// Shared renderer for the coherent-vs-Fock comparison figures: fig5
/// (geometric), fig6 (dynamical), fig7 (total).
fn fig567(id: &str, preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let c1 = preset.number("c1")?;
    let c2s = preset.list("c2_list")?;
    let a0sqs = preset.list("a0sq_list")?;
    let times = linspace(0.0, preset.number("t_end")?, preset.count("n_points")?);
    let extract: fn(&phase::PhaseSample) -> f64 = match id {
        "fig5" => |s| s.gamma_g,
        "fig6" => |s| s.gamma_d,
        _ => |s| s.gamma_total,
    };
    let y_label = match id {
        "fig5" => "geometric phase",
        "fig6" => "dynamical phase",
        _ => "total phase",
    };

    for (panel_idx, &c2) in c2s.iter().enumerate() {
        let panel = ["a", "b", "c"][panel_idx];
        let p = positive(c1, c2, 0.0)?;
        write_coherent_vs_fock_panel(
            id,
            preset,
            outputs,
            &format!("{id}_{panel}"),
            &p,
            &a0sqs,
            &times,
            extract,
            y_label,
            true,
        )?;
    }
    Ok(())
}

/// One comparison panel: coherent curves for each A0^2 (circles) and Fock
/// curves for n = A0^2 (dash-dot), written as one CSV and one SVG.
#[allow(clippy::too_many_arguments)]
fn write_coherent_vs_fock_panel(
    id: &str,
    preset: &Preset,
    outputs: &mut OutputSet,
    stem: &str,
    p: &NonstaticityParams,
    a0sqs: &[f64],
    times: &[f64],
    extract: fn(&phase::PhaseSample) -> f64,
    y_label: &str,
    slope_comments: bool,
) -> CliResult<()> {
    let mut columns = vec!["t".to_string()];
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut series = Vec::new();
    let mut slope_notes: Vec<(String, f64)> = Vec::new();

    for &a0sq in a0sqs {
        let cfg = WaveConfig {
            amplitude: Amplitude::Eigenvalue(a0sq.sqrt()),
            ..WaveConfig::default()
        };
        let samples = phase::phase_trajectory(p, &cfg, times)?;
        let ys: Vec<f64> = samples.iter().map(extract).collect();
        columns.push(format!("coherent_a0sq_{a0sq}"));
        series.push(Series {
            label: format!("coherent A0^2 = {a0sq}"),
            style: LineStyle::Circles,
            points: times.iter().zip(&ys).map(|(&t, &y)| (t, y)).collect(),
        });
        table.push(ys);
        if slope_comments {
            // Mean growth rate over whole periods: <dT/dt> = 1.
            let rate = phase::gamma_d_rate(p, &cfg)?;
            slope_notes.push((
                format!("mean_slope_coherent_a0sq_{a0sq}"),
                -0.5 * cfg.omega - rate,
            ));
        }
    }
    for &a0sq in a0sqs {
        let n = a0sq.round() as usize;
        let cfg = WaveConfig::with_a0(0.0);
        let ys: Vec<f64> = exec::map_slice(times, |&t| {
            extract(&phase::fock_phases(p, &cfg, n, t).expect("t >= t0"))
        });
        columns.push(format!("fock_n_{n}"));
        series.push(Series {
            label: format!("Fock n = {n}"),
            style: LineStyle::Dashed,
            points: times.iter().zip(&ys).map(|(&t, &y)| (t, y)).collect(),
        });
        table.push(ys);
        if slope_comments {
            slope_notes.push((
                format!("mean_slope_fock_n_{n}"),
                (n as f64 + 0.5) * (0.5 * (p.c1() + p.c2()) - 1.0),
            ));
        }
    }

    let mut csv = Csv::new();
    preset_comments(&mut csv, id, preset);
    csv.comment("panel", stem);
    csv.comment("c1", p.c1());
    csv.comment("c2", p.c2());
    csv.comment("measure", p.nonstaticity_measure().value());
    for (key, value) in &slope_notes {
        csv.comment(key, value);
    }
    csv.header(&columns.iter().map(String::as_str).collect::<Vec<_>>());
    for (i, &t) in times.iter().enumerate() {
        let mut row = vec![fmt(t)];
        row.extend(table.iter().map(|ys| fmt(ys[i])));
        csv.row(&row);
    }
    outputs.write(&format!("{stem}.csv"), csv.finish())?;
    outputs.write(
        &format!("{stem}.svg"),
        &svg::line_plot(stem, "t", y_label, &series),
    )?;
    Ok(())
}

fn fig8(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let p = positive(preset.number("c1")?, preset.number("c2")?, 0.0)?;
    let static_p = NonstaticityParams::static_wave();
    let a0sqs = preset.list("a0sq_list")?;
    let times = linspace(0.0, preset.number("t_end")?, preset.count("n_points")?);
    let kinds: [(&str, fn(&phase::PhaseSample) -> f64, &str); 3] = [
        ("a", |s| s.gamma_g, "geometric phase"),
        ("b", |s| s.gamma_d, "dynamical phase"),
        ("c", |s| s.gamma_total, "total phase"),
    ];
    for (panel, extract, y_label) in kinds {
        write_coherent_vs_fock_panel(
            "fig8",
            preset,
            outputs,
            &format!("fig8_{panel}"),
            &p,
            &a0sqs,
            &times,
            extract,
            y_label,
            false,
        )?;
        write_coherent_vs_fock_panel(
            "fig8",
            preset,
            outputs,
            &format!("fig8_{panel}_inset"),
            &static_p,
            &a0sqs,
            &times,
            extract,
            y_label,
            false,
        )?;
    }
    Ok(())
}

fn fig9(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let n = preset.count("n_grid")?;
    let cs = linspace(preset.number("c_min")?, preset.number("c_max")?, n);
    let t = preset.number("t")?;
    let panels: [(&str, bool, f64); 4] = [
        ("a", true, 1.0),
        ("b", false, 1.0),
        ("c", true, 2.0),
        ("d", false, 2.0),
    ];
    for (panel, coherent, level) in panels {
        // Row-major over c2 rows, c1 columns.
        let values: Vec<f64> = exec::map_indexed(n * n, |flat| {
            let c2 = cs[flat / n];
            let c1 = cs[flat % n];
            if c1 * c2 < 1.0 {
                return f64::NAN;
            }
            let p = positive(c1, c2, 0.0).expect("product checked");
            if coherent {
                let cfg = WaveConfig::with_a0(level.sqrt());
                phase::gamma_g(&p, &cfg, t).expect("valid point")
            } else {
                let cfg = WaveConfig::with_a0(0.0);
                phase::fock_phases(&p, &cfg, level as usize, t)
                    .expect("valid point")
                    .gamma_g
            }
        });
        let mut csv = Csv::new();
        preset_comments(&mut csv, "fig9", preset);
        csv.comment("panel", panel);
        csv.comment(
            "curve",
            if coherent {
                format!("coherent A0^2 = {level}")
            } else {
                format!("Fock n = {level}")
            },
        );
        csv.header(&["c1", "c2", "gamma_g", "valid"]);
        for (flat, v) in values.iter().enumerate() {
            let (c1, c2) = (cs[flat % n], cs[flat / n]);
            if v.is_finite() {
                csv.row(&[fmt(c1), fmt(c2), fmt(*v), "true".to_string()]);
            } else {
                csv.row(&[fmt(c1), fmt(c2), String::new(), "false".to_string()]);
            }
        }
        outputs.write(&format!("fig9_{panel}.csv"), csv.finish())?;
        outputs.write(
            &format!("fig9_{panel}.svg"),
            &svg::density_plot(
                &format!("fig9 {panel}: unit-time geometric phase"),
                "c1",
                "c2",
                n,
                n,
                (cs[0], cs[n - 1], cs[0], cs[n - 1]),
                &values,
            ),
        )?;
    }
    Ok(())
}

fn fig10(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let c2 = preset.number("c2")?;
    let t = preset.number("t")?;
    let c1s = linspace(
        preset.number("c1_min")?,
        preset.number("c1_max")?,
        preset.count("n_points")?,
    );
    let curves: [(&str, bool, f64, LineStyle); 4] = [
        ("coherent_a0sq_1", true, 1.0, LineStyle::Circles),
        ("coherent_a0sq_2", true, 2.0, LineStyle::Circles),
        ("fock_n_1", false, 1.0, LineStyle::Dashed),
        ("fock_n_2", false, 2.0, LineStyle::Dashed),
    ];
    let mut table: Vec<Vec<f64>> = Vec::new();
    for (_, coherent, level, _) in curves {
        let ys: Vec<f64> = exec::map_slice(&c1s, |&c1| {
            let p = positive(c1, c2, 0.0).expect("c1 >= 0.5 keeps the product valid");
            if coherent {
                let cfg = WaveConfig::with_a0(level.sqrt());
                phase::gamma_g(&p, &cfg, t).expect("valid point")
            } else {
                let cfg = WaveConfig::with_a0(0.0);
                phase::fock_phases(&p, &cfg, level as usize, t)
                    .expect("valid point")
                    .gamma_g
            }
        });
        table.push(ys);
    }
    let mut csv = Csv::new();
    preset_comments(&mut csv, "fig10", preset);
    csv.header(&["c1", "coherent_a0sq_1", "coherent_a0sq_2", "fock_n_1", "fock_n_2"]);
    for (i, &c1) in c1s.iter().enumerate() {
        let mut row = vec![fmt(c1)];
        row.extend(table.iter().map(|ys| fmt(ys[i])));
        csv.row(&row);
    }
    outputs.write("fig10.csv", csv.finish())?;
    let series: Vec<Series> = curves
        .iter()
        .zip(&table)
        .map(|((label, _, _, style), ys)| Series {
            label: label.to_string(),
            style: *style,
            points: c1s.iter().zip(ys).map(|(&x, &y)| (x, y)).collect(),
        })
        .collect();
    outputs.write(
        "fig10.svg",
        &svg::line_plot("fig10: unit-time geometric phase along c2 = 2", "c1", "geometric phase", &series),
    )?;
    Ok(())
}

fn fig11(preset: &Preset, outputs: &mut OutputSet) -> CliResult<()> {
    let t = preset.number("t")?;
    let a0sqs = linspace(0.0, preset.number("a0sq_max")?, preset.count("n_a0")?);
    let n_max = preset.number("n_max")? as usize;
    for group in ["a", "b"] {
        let phi = preset.number(&format!("phi_{group}"))?;
        let theta = preset.number(&format!("theta_{group}"))?;
        for sub in 1..=2 {
            let c1 = preset.number(&format!("c1_panel{sub}"))?;
            let c2 = preset.number(&format!("c2_panel{sub}"))?;
            let panel = format!("{group}{sub}");
            let p = positive(c1, c2, phi)?;

            let coherent: Vec<f64> = exec::map_slice(&a0sqs, |&a0sq| {
                let cfg = WaveConfig {
                    amplitude: Amplitude::Eigenvalue(a0sq.sqrt()),
                    theta,
                    ..WaveConfig::default()
                };
                phase::gamma_g(&p, &cfg, t).expect("valid point")
            });
            let fock: Vec<f64> = (0..=n_max)
                .map(|n| {
                    let cfg = WaveConfig::with_a0(0.0);
                    Ok(phase::fock_phases(&p, &cfg, n, t)?.gamma_g)
                })
                .collect::<CliResult<_>>()?;

            let mut csv = Csv::new();
            preset_comments(&mut csv, "fig11", preset);
            csv.comment("panel", &panel);
            csv.comment("c1", c1);
            csv.comment("c2", c2);
            csv.header(&["a0sq", "gamma_g"]);
            for (x, y) in a0sqs.iter().zip(&coherent) {
                csv.row(&[fmt(*x), fmt(*y)]);
            }
            outputs.write(&format!("fig11_{panel}_coherent.csv"), csv.finish())?;

            let mut fock_csv = Csv::new();
            preset_comments(&mut fock_csv, "fig11", preset);
            fock_csv.comment("panel", &panel);
            fock_csv.header(&["n", "gamma_g"]);
            for (n, y) in fock.iter().enumerate() {
                fock_csv.row(&[n.to_string(), fmt(*y)]);
            }
            outputs.write(&format!("fig11_{panel}_fock.csv"), fock_csv.finish())?;

            let series = vec![
                Series {
                    label: "coherent vs A0^2".to_string(),
                    style: LineStyle::Solid,
                    points: a0sqs.iter().zip(&coherent).map(|(&x, &y)| (x, y)).collect(),
                },
                Series {
                    label: "Fock vs n".to_string(),
                    style: LineStyle::Circles,
                    points: fock.iter().enumerate().map(|(n, &y)| (n as f64, y)).collect(),
                },
            ];
            outputs.write(
                &format!("fig11_{panel}.svg"),
                &svg::line_plot(
                    &format!("fig11 {panel}: unit-time geometric phase"),
                    "A0^2 (coherent) / n (Fock)",
                    "geometric phase",
                    &series,
                ),
            )?;
        }
    }
    Ok(())
}
