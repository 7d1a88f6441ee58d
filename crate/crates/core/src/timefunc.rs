//! The nonstatic time function `f(t)`, its derivatives, and the classical
//! trajectory.
//!
//! `f(t) = c1*sin^2(phi~) + c2*cos^2(phi~) + c3*sin(2*phi~)` with
//! `phi~ = omega*(t - t0) + phi`. The derivatives are closed-form (finite
//! differences exist only as test oracles), because the phase-rate
//! integrands downstream need `f_dot` at full precision. `f` is pi/omega
//! periodic and strictly positive for valid parameters, and satisfies the
//! nonlinear ODE `f_ddot = f_dot^2/(2f) - 2*omega^2*(f - 1/f)` exactly —
//! the necessary condition for the wavefunctions to obey the Schrödinger
//! equation.

use crate::error::Error;
use crate::params::{Amplitude, NonstaticityParams, WaveConfig};

/// `f(t)` together with its first and second time derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeFunctionValue {
    pub f: f64,
    pub f_dot: f64,
    pub f_ddot: f64,
}

/// Evaluate `f`, `f_dot`, `f_ddot` at time `t >= t0`.
pub fn eval_f(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<TimeFunctionValue, Error> {
    Error::require_from(t, cfg.t0)?;
    Ok(eval_f_unchecked(p, cfg, t))
}

/// Same as [`eval_f`] but without the `t >= t0` guard, for internal
/// callers that have already validated the time (e.g. finite-difference
/// stencils straddling interior points).
pub(crate) fn eval_f_unchecked(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> TimeFunctionValue {
    let omega = cfg.omega;
    let phase = omega * (t - cfg.t0) + p.phi();
    let (sin2, cos2) = (2.0 * phase).sin_cos();
    let sin_sq = 0.5 * (1.0 - cos2);
    let cos_sq = 0.5 * (1.0 + cos2);
    let dc = p.c1() - p.c2();
    TimeFunctionValue {
        f: p.c1() * sin_sq + p.c2() * cos_sq + p.c3() * sin2,
        f_dot: omega * (dc * sin2 + 2.0 * p.c3() * cos2),
        f_ddot: 2.0 * omega * omega * (dc * cos2 - 2.0 * p.c3() * sin2),
    }
}

/// Residual of the governing ODE at time `t`:
/// `f_ddot - [f_dot^2/(2f) - 2*omega^2*(f - 1/f)]`.
///
/// Vanishes identically for valid parameters; `|residual|` stays below
/// `1e-9 * max(1, omega^2 * f)`.
pub fn ode_residual(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    let v = eval_f(p, cfg, t)?;
    let omega_sq = cfg.omega * cfg.omega;
    Ok(v.f_ddot - (v.f_dot * v.f_dot / (2.0 * v.f) - 2.0 * omega_sq * (v.f - 1.0 / v.f)))
}

/// Classical trajectory `Q0 * cos(omega*(t - t0) + theta0)`.
///
/// Requires the quadrature amplitude to be authoritative.
pub fn classical_trajectory(cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    Error::require_from(t, cfg.t0)?;
    let q0 = match cfg.amplitude {
        Amplitude::Quadrature(q0) => q0,
        Amplitude::Eigenvalue(_) => return Err(Error::QuadratureAmplitudeRequired),
    };
    Ok(q0 * (cfg.omega * (t - cfg.t0) + cfg.theta0).cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::C3Branch;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn fig3_params() -> NonstaticityParams {
        NonstaticityParams::new(2.5, 0.5, C3Branch::Positive, 0.0).unwrap()
    }

    #[test]
    fn static_time_function_is_identity() {
        let p = NonstaticityParams::static_wave();
        let cfg = WaveConfig::default();
        for t in [0.0, 0.3, 2.7, 11.0] {
            let v = eval_f(&p, &cfg, t).unwrap();
            assert_abs_diff_eq!(v.f, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(v.f_dot, 0.0, epsilon = 1e-15);
            assert_abs_diff_eq!(v.f_ddot, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn f_selects_c2_at_start_and_c1_at_quarter_period() {
        let p = fig3_params();
        let cfg = WaveConfig::default();
        assert_abs_diff_eq!(eval_f(&p, &cfg, 0.0).unwrap().f, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(eval_f(&p, &cfg, PI / 2.0).unwrap().f, 2.5, epsilon = 1e-12);
    }

    #[test]
    fn rejects_time_before_start() {
        let p = fig3_params();
        let cfg = WaveConfig::default();
        assert!(matches!(
            eval_f(&p, &cfg, -0.1),
            Err(Error::TimeBeforeStart { .. })
        ));
    }

    #[test]
    fn derivatives_match_central_differences() {
        let p = NonstaticityParams::new(2.5, 0.5, C3Branch::Positive, 0.4).unwrap();
        let cfg = WaveConfig::default();
        let h = 1e-5;
        for &t in &[0.7, 1.3, 2.9] {
            let v = eval_f(&p, &cfg, t).unwrap();
            let fp = eval_f(&p, &cfg, t + h).unwrap().f;
            let fm = eval_f(&p, &cfg, t - h).unwrap().f;
            assert_abs_diff_eq!(v.f_dot, (fp - fm) / (2.0 * h), epsilon = 1e-6);
            assert_abs_diff_eq!(v.f_ddot, (fp - 2.0 * v.f + fm) / (h * h), epsilon = 1e-4);
        }
    }

    #[test]
    fn ode_residual_vanishes() {
        let cfg = WaveConfig::default();
        assert_abs_diff_eq!(
            ode_residual(&NonstaticityParams::static_wave(), &cfg, 3.0).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(ode_residual(&fig3_params(), &cfg, 0.7).unwrap(), 0.0, epsilon = 1e-9);
        let extreme = NonstaticityParams::new(20.0, 20.0, C3Branch::Positive, PI / 8.0).unwrap();
        assert_abs_diff_eq!(ode_residual(&extreme, &cfg, 1.3).unwrap(), 0.0, epsilon = 1e-7);
    }

    #[test]
    fn trajectory_examples() {
        let cfg = WaveConfig::with_q0(1.0);
        assert_abs_diff_eq!(classical_trajectory(&cfg, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(classical_trajectory(&cfg, PI / 2.0).unwrap(), 0.0, epsilon = 1e-15);
        let cfg2 = WaveConfig {
            amplitude: Amplitude::Quadrature(2.0),
            theta0: PI / 2.0,
            ..WaveConfig::default()
        };
        assert_abs_diff_eq!(classical_trajectory(&cfg2, PI / 2.0).unwrap(), -2.0, epsilon = 1e-12);
    }

    #[test]
    fn trajectory_requires_q0() {
        let cfg = WaveConfig::with_a0(0.1);
        assert!(matches!(
            classical_trajectory(&cfg, 1.0),
            Err(Error::QuadratureAmplitudeRequired)
        ));
    }
}
