//! `verify`: run the oracle suite and write the machine-readable report.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wavephase::config::{Resolved, VerifyHooks};
use wavephase::params::{Amplitude, C3Branch, NonstaticityParams, WaveConfig};
use wavephase::verify;

use crate::output::OutputSet;
use crate::{manifest, CliError, CliResult};

pub fn run(resolved: &Resolved, out_dir: &Path, argv: &[String]) -> CliResult<()> {
    let records = verify::run_full_suite(&resolved.params, &resolved.config, &resolved.hooks)
        .map_err(|e| CliError::Usage(e.to_string()))?;

    for r in &records {
        println!(
            "{}: {} (metric = {:e}, tolerance = {:e})",
            r.name,
            if r.pass { "pass" } else { "FAIL" },
            r.metric,
            r.tolerance
        );
    }

    let mut outputs = OutputSet::create(out_dir)?;
    outputs.write("verify_report.json", &verify::report_to_json(&records))?;
    manifest::write(outputs, Some(resolved), argv)?;

    let failures: Vec<&str> = records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.name.as_str())
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(format!(
            "{} of {} checks failed: {}",
            failures.len(),
            records.len(),
            failures.join(", ")
        )))
    }
}

/// Draw a random valid configuration from a seed. Deterministic: the same
/// seed yields the same configuration and therefore the same report bytes.
pub fn random_config(seed: u64) -> Resolved {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d: f64 = rng.gen_range(0.0..2.0);
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
    let params = NonstaticityParams::new(c1, c2, branch, phi).expect("draw is valid");
    let amplitude = if rng.gen_bool(0.5) {
        Amplitude::Eigenvalue(rng.gen_range(0.0..1.0))
    } else {
        Amplitude::Quadrature(rng.gen_range(0.1..1.5))
    };
    let config = WaveConfig {
        amplitude,
        theta: rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        theta0: rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
        ..WaveConfig::default()
    };
    Resolved {
        params,
        config,
        hooks: VerifyHooks::default(),
        warnings: Vec::new(),
    }
}
