//! `sweep`: evaluate phase quantities over a parameter grid.
//!
//! Axes are `c1`, `c2`, `phi`, `theta`, `a0`, `omega`, swept in that
//! fixed order (row order is lexicographic in the axis values). Grid
//! points violating `c1*c2 >= 1` are emitted as explicit invalid rows
//! with empty value cells rather than dropped.

use std::path::Path;

use wavephase::config::Resolved;
use wavephase::exec;
use wavephase::params::{Amplitude, C3Branch, NonstaticityParams, WaveConfig};
use wavephase::phase;

use crate::output::{fmt, linspace, Csv, OutputSet};
use crate::{manifest, CliError, CliResult};

const AXES: [&str; 6] = ["c1", "c2", "phi", "theta", "a0", "omega"];

#[derive(Debug, Clone)]
struct Axis {
    name: &'static str,
    values: Vec<f64>,
}

fn parse_axis_spec(spec: &str) -> CliResult<(usize, Vec<f64>)> {
    let Some((name, rest)) = spec.split_once('=') else {
        return Err(CliError::Usage(format!(
            "grid spec `{spec}` is not of the form AXIS=START:STOP:COUNT or AXIS=VALUE"
        )));
    };
    let name = name.trim().to_ascii_lowercase();
    let Some(index) = AXES.iter().position(|a| *a == name) else {
        return Err(CliError::Usage(format!(
            "unknown sweep axis `{name}` (expected one of {})",
            AXES.join(", ")
        )));
    };
    let parts: Vec<&str> = rest.split(':').collect();
    let parse = |s: &str| -> CliResult<f64> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("grid spec `{spec}`: `{s}` is not a number")))
    };
    let values = match parts.as_slice() {
        [single] => vec![parse(single)?],
        [start, stop, count] => {
            let n = count.trim().parse::<usize>().map_err(|_| {
                CliError::Usage(format!("grid spec `{spec}`: `{count}` is not a count"))
            })?;
            if n == 0 {
                return Err(CliError::Usage(format!("grid spec `{spec}`: count must be >= 1")));
            }
            if n == 1 {
                vec![parse(start)?]
            } else {
                linspace(parse(start)?, parse(stop)?, n)
            }
        }
        _ => {
            return Err(CliError::Usage(format!(
                "grid spec `{spec}` must be AXIS=VALUE or AXIS=START:STOP:COUNT"
            )))
        }
    };
    Ok((index, values))
}

struct Cell {
    coords: [f64; 6],
    valid: bool,
    measure: f64,
    gamma_d_rate: f64,
    gamma_g_unit: f64,
}

pub fn run(resolved: &Resolved, grid_specs: &[String], out_dir: &Path, argv: &[String]) -> CliResult<()> {
    let p0 = &resolved.params;
    let cfg0 = &resolved.config;

    // Default every axis to the configured value; sweep the ones given.
    let base_a0 = phase::resolve_a0(p0, cfg0)?;
    let mut axes: Vec<Axis> = vec![
        Axis { name: "c1", values: vec![p0.c1()] },
        Axis { name: "c2", values: vec![p0.c2()] },
        Axis { name: "phi", values: vec![p0.phi()] },
        Axis { name: "theta", values: vec![cfg0.theta] },
        Axis { name: "a0", values: vec![base_a0] },
        Axis { name: "omega", values: vec![cfg0.omega] },
    ];
    for spec in grid_specs {
        let (index, values) = parse_axis_spec(spec)?;
        axes[index].values = values;
    }
    let total: usize = axes.iter().map(|a| a.values.len()).product();
    if total == 0 {
        return Err(CliError::Usage("empty sweep grid".to_string()));
    }

    let branch = if p0.c3() >= 0.0 {
        C3Branch::Positive
    } else {
        C3Branch::Negative
    };

    let cells: Vec<Cell> = exec::map_indexed(total, |flat| {
        let mut idx = flat;
        let mut coords = [0.0_f64; 6];
        for a in (0..6).rev() {
            let n = axes[a].values.len();
            coords[a] = axes[a].values[idx % n];
            idx /= n;
        }
        let [c1, c2, phi, theta, a0, omega] = coords;
        let params = NonstaticityParams::new(c1, c2, branch, phi);
        let (valid, measure, rate, g_unit) = match params {
            Ok(p) if a0 >= 0.0 && omega > 0.0 => {
                let cfg = WaveConfig {
                    omega,
                    theta,
                    amplitude: Amplitude::Eigenvalue(a0),
                    ..*cfg0
                };
                let rate = phase::gamma_d_rate(&p, &cfg).expect("valid cell");
                let g_unit = phase::gamma_g(&p, &cfg, cfg.t0 + 1.0).expect("valid cell");
                (true, p.nonstaticity_measure().value(), rate, g_unit)
            }
            _ => (false, f64::NAN, f64::NAN, f64::NAN),
        };
        Cell {
            coords,
            valid,
            measure,
            gamma_d_rate: rate,
            gamma_g_unit: g_unit,
        }
    });

    let mut csv = Csv::new();
    csv.comment("command", "sweep");
    for a in &axes {
        csv.comment(
            &format!("axis_{}", a.name),
            format!("{} values", a.values.len()),
        );
    }
    csv.header(&[
        "c1",
        "c2",
        "phi",
        "theta",
        "a0",
        "omega",
        "valid",
        "D",
        "gamma_d_rate",
        "gamma_g_unit_time",
    ]);
    for cell in &cells {
        let mut row: Vec<String> = cell.coords.iter().map(|&v| fmt(v)).collect();
        row.push(if cell.valid { "true" } else { "false" }.to_string());
        if cell.valid {
            row.push(fmt(cell.measure));
            row.push(fmt(cell.gamma_d_rate));
            row.push(fmt(cell.gamma_g_unit));
        } else {
            row.extend([String::new(), String::new(), String::new()]);
        }
        csv.row(&row);
    }

    let mut outputs = OutputSet::create(out_dir)?;
    outputs.write("sweep.csv", csv.finish())?;
    manifest::write(outputs, Some(resolved), argv)?;
    Ok(())
}
