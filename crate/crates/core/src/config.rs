//! Plain-text configuration files: one `key = value` per line, `#`
//! comments, case-sensitive keys. CLI flags override file values.
//!
//! Recognized keys: `c1`, `c2`, `c3_sign` (`+`/`-`/`+1`/`-1`), `phi`,
//! `epsilon`, `mu`, `omega`, `hbar`, `t0`, `q0`, `a0`, `theta`, `theta0`,
//! `gamma_g0`, `gamma_d0`, `gamma_n0`, and the verification hooks
//! `fddot_scale` and `drop_total_phase`. When both `q0` and `a0` are
//! given, `a0` wins and a warning is recorded.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::Error;
use crate::params::{Amplitude, C3Branch, NonstaticityParams, WaveConfig};

/// Verification test hooks carried alongside the physical configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyHooks {
    /// Scale factor applied to the right-hand side of the governing ODE
    /// when rebuilding the time function for the Schrödinger check; `1.0`
    /// leaves the closed-form time function in place.
    pub fddot_scale: f64,
    /// Evaluate the Schrödinger residual on the eigenfunction alone,
    /// without the accumulated total-phase factor.
    pub drop_total_phase: bool,
}

impl Default for VerifyHooks {
    fn default() -> Self {
        Self {
            fddot_scale: 1.0,
            drop_total_phase: false,
        }
    }
}

/// A fully resolved configuration: parameters, wave config, hooks, and
/// any warnings produced while resolving.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub params: NonstaticityParams,
    pub config: WaveConfig,
    pub hooks: VerifyHooks,
    pub warnings: Vec<String>,
}

/// Raw key/value pairs in file order (later duplicates win).
#[derive(Debug, Clone, Default)]
pub struct ConfigMap {
    entries: BTreeMap<String, String>,
}

impl ConfigMap {
    /// Parse file contents. Rejects lines that are not blank, comments,
    /// or `key = value`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config {
                    reason: format!("line {}: expected `key = value`, got `{raw}`", lineno + 1),
                });
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() || value.is_empty() {
                return Err(Error::Config {
                    reason: format!("line {}: empty key or value", lineno + 1),
                });
            }
            entries.insert(key.to_string(), value.to_string());
        }
        Ok(Self { entries })
    }

    /// Apply `key=value` overrides (e.g. from CLI flags).
    pub fn apply_overrides<'a>(
        &mut self,
        overrides: impl IntoIterator<Item = &'a str>,
    ) -> Result<(), Error> {
        for item in overrides {
            let Some((key, value)) = item.split_once('=') else {
                return Err(Error::Config {
                    reason: format!("override `{item}` is not of the form key=value"),
                });
            };
            self.entries
                .insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    fn take_f64(&self, key: &str, default: f64) -> Result<f64, Error> {
        match self.entries.get(key) {
            None => Ok(default),
            Some(raw) => raw.parse::<f64>().map_err(|_| Error::Config {
                reason: format!("key `{key}`: `{raw}` is not a number"),
            }),
        }
    }

    fn take_bool(&self, key: &str, default: bool) -> Result<bool, Error> {
        match self.entries.get(key).map(String::as_str) {
            None => Ok(default),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(raw) => Err(Error::Config {
                reason: format!("key `{key}`: `{raw}` is not a boolean"),
            }),
        }
    }

    /// Resolve into validated parameter and configuration structs.
    pub fn resolve(&self) -> Result<Resolved, Error> {
        const KNOWN: &[&str] = &[
            "c1",
            "c2",
            "c3_sign",
            "phi",
            "epsilon",
            "mu",
            "omega",
            "hbar",
            "t0",
            "q0",
            "a0",
            "theta",
            "theta0",
            "gamma_g0",
            "gamma_d0",
            "gamma_n0",
            "fddot_scale",
            "drop_total_phase",
        ];
        let mut warnings = Vec::new();
        for key in self.entries.keys() {
            if !KNOWN.contains(&key.as_str()) {
                warnings.push(format!("unknown key `{key}` ignored"));
            }
        }

        let c1 = self.take_f64("c1", 1.0)?;
        let c2 = self.take_f64("c2", 1.0)?;
        let branch = match self.entries.get("c3_sign").map(String::as_str) {
            None | Some("+") | Some("+1") | Some("plus") => C3Branch::Positive,
            Some("-") | Some("-1") | Some("minus") => C3Branch::Negative,
            Some(raw) => {
                return Err(Error::Config {
                    reason: format!("key `c3_sign`: `{raw}` is not one of +, -, +1, -1"),
                })
            }
        };
        let phi = self.take_f64("phi", 0.0)?;
        let params = NonstaticityParams::new(c1, c2, branch, phi)?;

        let q0 = self.entries.get("q0").map(|_| self.take_f64("q0", 0.0)).transpose()?;
        let a0 = self.entries.get("a0").map(|_| self.take_f64("a0", 0.0)).transpose()?;
        let amplitude = match (q0, a0) {
            (Some(_), Some(a0)) => {
                warnings.push("both q0 and a0 given; a0 wins".to_string());
                Amplitude::Eigenvalue(a0)
            }
            (None, Some(a0)) => Amplitude::Eigenvalue(a0),
            (Some(q0), None) => Amplitude::Quadrature(q0),
            (None, None) => Amplitude::Eigenvalue(0.1),
        };

        let config = WaveConfig {
            epsilon: self.take_f64("epsilon", 1.0)?,
            mu: self.take_f64("mu", 1.0)?,
            omega: self.take_f64("omega", 1.0)?,
            hbar: self.take_f64("hbar", 1.0)?,
            t0: self.take_f64("t0", 0.0)?,
            amplitude,
            theta: self.take_f64("theta", 0.0)?,
            theta0: self.take_f64("theta0", 0.0)?,
            gamma_g0: self.take_f64("gamma_g0", 0.0)?,
            gamma_d0: self.take_f64("gamma_d0", 0.0)?,
            gamma_n0: self.take_f64("gamma_n0", 0.0)?,
        };
        config.validate()?;

        let hooks = VerifyHooks {
            fddot_scale: self.take_f64("fddot_scale", 1.0)?,
            drop_total_phase: self.take_bool("drop_total_phase", false)?,
        };

        Ok(Resolved {
            params,
            config,
            hooks,
            warnings,
        })
    }
}

/// Render a resolved configuration back to the file syntax, for config
/// snapshots in run manifests. Deterministic key order.
pub fn snapshot(params: &NonstaticityParams, config: &WaveConfig, hooks: &VerifyHooks) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "c1 = {}", params.c1());
    let _ = writeln!(out, "c2 = {}", params.c2());
    let _ = writeln!(
        out,
        "c3_sign = {}",
        if params.c3() >= 0.0 { "+1" } else { "-1" }
    );
    let _ = writeln!(out, "phi = {}", params.phi());
    let _ = writeln!(out, "epsilon = {}", config.epsilon);
    let _ = writeln!(out, "mu = {}", config.mu);
    let _ = writeln!(out, "omega = {}", config.omega);
    let _ = writeln!(out, "hbar = {}", config.hbar);
    let _ = writeln!(out, "t0 = {}", config.t0);
    match config.amplitude {
        Amplitude::Quadrature(q0) => {
            let _ = writeln!(out, "q0 = {q0}");
        }
        Amplitude::Eigenvalue(a0) => {
            let _ = writeln!(out, "a0 = {a0}");
        }
    }
    let _ = writeln!(out, "theta = {}", config.theta);
    let _ = writeln!(out, "theta0 = {}", config.theta0);
    let _ = writeln!(out, "gamma_g0 = {}", config.gamma_g0);
    let _ = writeln!(out, "gamma_d0 = {}", config.gamma_d0);
    let _ = writeln!(out, "gamma_n0 = {}", config.gamma_n0);
    let _ = writeln!(out, "fddot_scale = {}", hooks.fddot_scale);
    let _ = writeln!(out, "drop_total_phase = {}", hooks.drop_total_phase);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_pairs() {
        let text = "# header\nc1 = 2.5\nc2 = 0.5 # trailing comment\n\na0 = 0.1\n";
        let map = ConfigMap::parse(text).unwrap();
        let resolved = map.resolve().unwrap();
        assert_eq!(resolved.params.c1(), 2.5);
        assert_eq!(resolved.params.c3(), 0.5);
        assert_eq!(resolved.config.amplitude, Amplitude::Eigenvalue(0.1));
        assert!(resolved.warnings.is_empty());
    }

    #[test]
    fn rejects_malformed_line() {
        let err = ConfigMap::parse("c1 = 2.5\nnot a pair\n").unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
        let err2 = ConfigMap::parse("c1 =\n").unwrap_err();
        assert!(matches!(err2, Error::Config { .. }));
    }

    #[test]
    fn a0_wins_with_warning() {
        let map = ConfigMap::parse("q0 = 1.0\na0 = 0.3\n").unwrap();
        let resolved = map.resolve().unwrap();
        assert_eq!(resolved.config.amplitude, Amplitude::Eigenvalue(0.3));
        assert_eq!(resolved.warnings.len(), 1);
    }

    #[test]
    fn invariant_violations_surface() {
        let map = ConfigMap::parse("c1 = 5.0\nc2 = 0.1\n").unwrap();
        let err = map.resolve().unwrap_err();
        assert!(matches!(err, Error::ConstraintViolated { .. }));
    }

    #[test]
    fn overrides_take_precedence() {
        let mut map = ConfigMap::parse("c1 = 1.0\nc2 = 1.0\n").unwrap();
        map.apply_overrides(["c1=4.0", "c2 = 0.5"]).unwrap();
        let resolved = map.resolve().unwrap();
        assert_eq!(resolved.params.c1(), 4.0);
        assert_eq!(resolved.params.c2(), 0.5);
    }

    #[test]
    fn snapshot_round_trips() {
        let map = ConfigMap::parse("c1 = 2.5\nc2 = 0.5\na0 = 0.1\ntheta = 0.7\n").unwrap();
        let r = map.resolve().unwrap();
        let snap = snapshot(&r.params, &r.config, &r.hooks);
        let r2 = ConfigMap::parse(&snap).unwrap().resolve().unwrap();
        assert_eq!(r.params, r2.params);
        assert_eq!(r.config, r2.config);
        assert_eq!(r.hooks, r2.hooks);
    }

    #[test]
    fn verify_hooks_parse() {
        let map = ConfigMap::parse("fddot_scale = 1.01\ndrop_total_phase = true\n").unwrap();
        let r = map.resolve().unwrap();
        assert_eq!(r.hooks.fddot_scale, 1.01);
        assert!(r.hooks.drop_total_phase);
    }
}
