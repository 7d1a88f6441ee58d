//! `phases`: sample the coherent-state phases over a time interval.

use std::path::Path;

use wavephase::config::Resolved;
use wavephase::phase;
use wavephase::timefunc;

use crate::output::{fmt, linspace, Csv, OutputSet};
use crate::{manifest, CliError, CliResult};

pub fn run(
    resolved: &Resolved,
    t_start: Option<f64>,
    t_end: Option<f64>,
    steps: usize,
    out_dir: &Path,
    argv: &[String],
) -> CliResult<()> {
    let p = &resolved.params;
    let cfg = &resolved.config;
    if steps < 2 {
        return Err(CliError::Usage(format!("steps must be >= 2, got {steps}")));
    }
    let t_start = t_start.unwrap_or(cfg.t0);
    let t_end = t_end.unwrap_or(cfg.t0 + 3.0 * cfg.period());
    if t_start < cfg.t0 {
        return Err(CliError::Usage(format!(
            "t = {t_start} precedes the initial time t0 = {}",
            cfg.t0
        )));
    }
    if t_end <= t_start {
        return Err(CliError::Usage(format!(
            "t_end = {t_end} must exceed t_start = {t_start}"
        )));
    }

    // Compute everything before touching the filesystem, so a failure
    // leaves no partial files behind.
    let times = linspace(t_start, t_end, steps);
    let samples = phase::phase_trajectory(p, cfg, &times)?;
    let measure = p.nonstaticity_measure().value();

    let mut csv = Csv::new();
    csv.comment("command", "phases")
        .comment("c1", p.c1())
        .comment("c2", p.c2())
        .comment("c3", p.c3())
        .comment("phi", p.phi())
        .comment("omega", cfg.omega)
        .comment("a0", phase::resolve_a0(p, cfg)?)
        .comment("measure", measure)
        .header(&[
            "t",
            "gamma_G",
            "gamma_D",
            "gamma_total",
            "gamma_NL",
            "gamma_L",
            "T",
            "f",
            "D",
        ]);
    for s in &samples {
        let big_t = phase::phase_time(p, cfg, s.t)?;
        let f = timefunc::eval_f(p, cfg, s.t)?.f;
        csv.row(&[
            fmt(s.t),
            fmt(s.gamma_g),
            fmt(s.gamma_d),
            fmt(s.gamma_total),
            fmt(s.gamma_nl),
            fmt(s.gamma_l),
            fmt(big_t),
            fmt(f),
            fmt(measure),
        ]);
    }

    let mut outputs = OutputSet::create(out_dir)?;
    outputs.write("phases.csv", csv.finish())?;
    manifest::write(outputs, Some(resolved), argv)?;
    Ok(())
}
