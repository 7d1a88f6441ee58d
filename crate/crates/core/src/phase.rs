//! Phase time, eigenvalue amplitude, phase rates, and the closed-form
//! geometric / dynamical / total phases for coherent and Fock states.
//!
//! The phase time `T(t)` is the integral of `1/f`; it is evaluated here in
//! closed form as the branch-continuous antiderivative
//! `atan(c3 + c1*tan(psi))` with `psi = omega*(t - t0) + phi`. The branch
//! bookkeeping (one step of pi per node crossing at
//! `psi = (2m+1)*pi/2`) is folded into a closed-form branch index rather
//! than a Heaviside sum, with the value at a node pinned by the two-sided
//! limit so that `T` is continuous and strictly increasing.
//!
//! The dynamical-phase rate is a time constant; it is computed once at
//! `t0`, where the expression reduces to the kappa form below. The any-`t`
//! route through the g-functions exists as well and serves as the
//! cross-check oracle.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;
use crate::exec;
use crate::params::{Amplitude, NonstaticityParams, WaveConfig};
use crate::timefunc::{eval_f_unchecked, TimeFunctionValue};

/// Relative tolerance for the runtime contract that the eigenvalue
/// modulus derived from `Q0` is time-independent.
const A0_CONTRACT_TOL: f64 = 1e-9;

/// The eigenvalue `A(t)` in polar form: constant modulus `a0` and the
/// accumulated phase `omega*T(t) + theta`, so that
/// `A = a0 * exp(-i*(omega*T + theta))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexAmplitude {
    pub a0: f64,
    pub accumulated_phase: f64,
}

impl ComplexAmplitude {
    pub fn value(&self) -> Complex64 {
        self.a0 * Complex64::new(0.0, -self.accumulated_phase).exp()
    }
}

/// One sampled instant of the coherent-state (or Fock-state) phases.
///
/// `gamma_total = gamma_g + gamma_d` and `gamma_g = gamma_nl + gamma_l`
/// hold to rounding; `gamma_nl` is the periodic nonlinear part and
/// `gamma_l` the linear part of the geometric phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub t: f64,
    pub gamma_g: f64,
    pub gamma_d: f64,
    pub gamma_total: f64,
    pub gamma_nl: f64,
    pub gamma_l: f64,
}

/// Rate-integrand coefficients `g1..g4` and `g1_bar`.
///
/// `(g1_bar - g1) * f = 2` identically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GFunctions {
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    pub g1_bar: f64,
}

/// Continuous antiderivative of `1/f` in the angle variable `psi`.
///
/// On the branch interval `psi in (m*pi - pi/2, m*pi + pi/2)` the value is
/// `m*pi + atan(c3 + c1*tan(psi - m*pi))`; the atan2 form below avoids
/// evaluating tan near its poles. `m = round(psi/pi)` lands a node point
/// exactly on the two-sided-limit value `m*pi - pi/2`.
fn antiderivative_angle(p: &NonstaticityParams, psi: f64) -> f64 {
    let m = (psi / PI).round();
    let delta = psi - m * PI;
    let (sin_d, cos_d) = delta.sin_cos();
    m * PI + (p.c3() * cos_d + p.c1() * sin_d).atan2(cos_d)
}

/// Branch-continuous phase time `T(t) = ∫ 1/f dt'` from `t0` to `t`.
///
/// Continuous, strictly increasing, `T(t0) = 0`, and advances by exactly
/// `pi/omega` per half period of `f`.
pub fn phase_time(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    Error::require_from(t, cfg.t0)?;
    let psi = cfg.omega * (t - cfg.t0) + p.phi();
    Ok((antiderivative_angle(p, psi) - antiderivative_angle(p, p.phi())) / cfg.omega)
}

/// Times in `[t0, t_end]` where `omega*(t - t0) + phi` crosses a multiple
/// of `pi/2`. Superset of the node times; used to seed quadrature splits.
pub fn quarter_period_marks(p: &NonstaticityParams, cfg: &WaveConfig, t_end: f64) -> Vec<f64> {
    let psi_end = cfg.omega * (t_end - cfg.t0) + p.phi();
    let mut marks = Vec::new();
    let mut k = (2.0 * p.phi() / PI).ceil() as i64;
    loop {
        let psi = k as f64 * PI / 2.0;
        if psi > psi_end {
            break;
        }
        let t = cfg.t0 + (psi - p.phi()) / cfg.omega;
        if t > cfg.t0 && t < t_end {
            marks.push(t);
        }
        k += 1;
    }
    marks
}

/// Eigenvalue modulus from the quadrature amplitude, evaluated from the
/// closed form at `t_eval`. The result is independent of `t_eval`.
pub fn amplitude_a0(p: &NonstaticityParams, cfg: &WaveConfig, t_eval: f64) -> Result<f64, Error> {
    Error::require_from(t_eval, cfg.t0)?;
    let q0 = match cfg.amplitude {
        Amplitude::Quadrature(q0) => q0,
        Amplitude::Eigenvalue(_) => return Err(Error::QuadratureAmplitudeRequired),
    };
    let tf = eval_f_unchecked(p, cfg, t_eval);
    let theta_t = cfg.omega * (t_eval - cfg.t0) + cfg.theta0;
    let (sin_t, cos_t) = theta_t.sin_cos();
    let sqrt_f = tf.f.sqrt();
    let cross = tf.f_dot / (2.0 * cfg.omega * sqrt_f) * cos_t + sqrt_f * sin_t;
    let bracket = cos_t * cos_t / tf.f + cross * cross;
    Ok((cfg.epsilon * cfg.omega / (2.0 * cfg.hbar) * bracket).sqrt() * q0.abs())
}

/// Resolve the eigenvalue modulus `A0` from the configuration.
///
/// When `Q0` is authoritative the closed form is evaluated at `t0` and its
/// claimed time-independence is enforced by a second evaluation.
pub fn resolve_a0(p: &NonstaticityParams, cfg: &WaveConfig) -> Result<f64, Error> {
    match cfg.amplitude {
        Amplitude::Eigenvalue(a0) => {
            Error::require_finite("A0", a0)?;
            if a0 < 0.0 {
                return Err(Error::NonpositiveConstant {
                    name: "A0",
                    value: a0,
                });
            }
            Ok(a0)
        }
        Amplitude::Quadrature(_) => {
            let t_a = cfg.t0;
            let t_b = cfg.t0 + 0.37 * cfg.period();
            let a = amplitude_a0(p, cfg, t_a)?;
            let b = amplitude_a0(p, cfg, t_b)?;
            let deviation = (a - b).abs();
            let tolerance = A0_CONTRACT_TOL * a.abs().max(1.0);
            if deviation > tolerance {
                return Err(Error::AmplitudeNotConstant {
                    t_a,
                    t_b,
                    deviation,
                    tolerance,
                });
            }
            Ok(a)
        }
    }
}

/// Eigenvalue `A(t) = A0 * exp(-i*(omega*T(t) + theta))`.
pub fn eigenvalue(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<ComplexAmplitude, Error> {
    let a0 = resolve_a0(p, cfg)?;
    let big_t = phase_time(p, cfg, t)?;
    Ok(ComplexAmplitude {
        a0,
        accumulated_phase: cfg.omega * big_t + cfg.theta,
    })
}

fn g_functions_inner(tf: &TimeFunctionValue, a0: f64, acc_phase: f64) -> GFunctions {
    let two_a0_sq = 2.0 * a0 * a0;
    let cos2 = (2.0 * acc_phase).cos();
    let sin2 = (2.0 * acc_phase).sin();
    let plus = two_a0_sq * cos2 + two_a0_sq + 1.0;
    GFunctions {
        g1: -(two_a0_sq * cos2 - two_a0_sq + 1.0) / tf.f,
        g2: tf.f_dot * tf.f_dot / tf.f * plus,
        g3: -2.0 * tf.f_dot / tf.f * a0 * a0 * sin2,
        g4: tf.f * plus,
        g1_bar: -(two_a0_sq * cos2 - two_a0_sq - 1.0) / tf.f,
    }
}

/// Rate-integrand coefficients at time `t`, from the real closed forms.
pub fn g_functions(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<GFunctions, Error> {
    let amp = eigenvalue(p, cfg, t)?;
    let tf = eval_f_unchecked(p, cfg, t);
    Ok(g_functions_inner(&tf, amp.a0, amp.accumulated_phase))
}

/// Same coefficients built by substituting the complex eigenvalue and its
/// conjugate into the bilinear forms; cross-check route for
/// [`g_functions`].
pub fn g_functions_from_eigenvalue(tf: &TimeFunctionValue, a: Complex64) -> GFunctions {
    let a_sq = a * a;
    let sym = 2.0 * a_sq.re; // A^2 + A*^2
    let norm = a.norm_sqr(); // A* A
    let plus = sym + 2.0 * norm + 1.0;
    GFunctions {
        g1: -(sym - 2.0 * norm + 1.0) / tf.f,
        g2: tf.f_dot * tf.f_dot / tf.f * plus,
        // i*(-A^2 + A*^2) = 2*Im(A^2)
        g3: tf.f_dot / tf.f * 2.0 * a_sq.im,
        g4: tf.f * plus,
        g1_bar: -(sym - 2.0 * norm - 1.0) / tf.f,
    }
}

/// Geometric-phase rate at time `t` (the integrand of the quadrature
/// route): `omega/4*g1 + g2/(16*omega) + g3/4 + omega/4*g4`.
pub fn gamma_g_rate_at(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    let g = g_functions(p, cfg, t)?;
    let omega = cfg.omega;
    Ok(0.25 * omega * g.g1 + g.g2 / (16.0 * omega) + 0.25 * g.g3 + 0.25 * omega * g.g4)
}

/// Dynamical-phase rate evaluated through the g-functions at an arbitrary
/// `t`. Constant in `t`; the closed form at `t0` is [`gamma_d_rate`], and
/// this route is its oracle.
pub fn gamma_d_rate_at(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    let g = g_functions(p, cfg, t)?;
    let omega = cfg.omega;
    Ok(-(0.25 * omega * g.g1_bar + g.g2 / (16.0 * omega) + 0.25 * g.g3 + 0.25 * omega * g.g4))
}

/// Dynamical-phase rate `Gamma_D`, a time constant.
///
/// Evaluated at `t0`, where it reduces to the kappa form with
/// `kappa1 = f(t0)` and `kappa2 = f_dot(t0)/omega`; `t0` keeps the
/// trigonometry away from the tan poles.
pub fn gamma_d_rate(p: &NonstaticityParams, cfg: &WaveConfig) -> Result<f64, Error> {
    let a0 = resolve_a0(p, cfg)?;
    let tf = eval_f_unchecked(p, cfg, cfg.t0);
    let kappa1 = tf.f;
    let kappa2 = tf.f_dot / cfg.omega;
    let a0_sq = a0 * a0;
    let (sin_t, cos_t) = cfg.theta.sin_cos();
    let sin_2t = 2.0 * sin_t * cos_t;
    let bracket = 4.0 * (1.0 + 4.0 * a0_sq * sin_t * sin_t)
        + (1.0 + 4.0 * a0_sq * cos_t * cos_t) * (4.0 * kappa1 * kappa1 + kappa2 * kappa2)
        - 8.0 * a0_sq * sin_2t * kappa2;
    Ok(-cfg.omega / (16.0 * kappa1) * bracket)
}

/// Geometric phase
/// `gamma_G(t) = -omega*T(t)/2 - Gamma_D*(t - t0) + gamma_G(t0)`.
pub fn gamma_g(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    let big_t = phase_time(p, cfg, t)?;
    let rate = gamma_d_rate(p, cfg)?;
    Ok(-0.5 * cfg.omega * big_t - rate * (t - cfg.t0) + cfg.gamma_g0)
}

/// Dynamical phase `gamma_D(t) = Gamma_D*(t - t0) + gamma_D(t0)`.
pub fn gamma_d(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    Error::require_from(t, cfg.t0)?;
    let rate = gamma_d_rate(p, cfg)?;
    Ok(rate * (t - cfg.t0) + cfg.gamma_d0)
}

/// All coherent-state phases at time `t`, with the linear/nonlinear
/// decomposition of the geometric phase.
pub fn gamma_total(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<PhaseSample, Error> {
    let big_t = phase_time(p, cfg, t)?;
    let rate = gamma_d_rate(p, cfg)?;
    let dt = t - cfg.t0;
    let gamma_g = -0.5 * cfg.omega * big_t - rate * dt + cfg.gamma_g0;
    let gamma_d = rate * dt + cfg.gamma_d0;
    Ok(PhaseSample {
        t,
        gamma_g,
        gamma_d,
        gamma_total: gamma_g + gamma_d,
        gamma_nl: -0.5 * cfg.omega * (big_t - dt),
        gamma_l: -(rate + 0.5 * cfg.omega) * dt + cfg.gamma_g0,
    })
}

/// Fock-state phases at quantum number `n` and time `t`.
pub fn fock_phases(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    n: usize,
    t: f64,
) -> Result<PhaseSample, Error> {
    let big_t = phase_time(p, cfg, t)?;
    let dt = t - cfg.t0;
    let half = n as f64 + 0.5;
    let mean_c = 0.5 * (p.c1() + p.c2());
    let gamma_g = half * cfg.omega * (mean_c * dt - big_t) + cfg.gamma_g0;
    let gamma_d = -half * cfg.omega * mean_c * dt + cfg.gamma_d0;
    Ok(PhaseSample {
        t,
        gamma_g,
        gamma_d,
        gamma_total: gamma_g + gamma_d,
        gamma_nl: -half * cfg.omega * (big_t - dt),
        gamma_l: half * cfg.omega * (mean_c - 1.0) * dt + cfg.gamma_g0,
    })
}

/// Standalone Fock wavefunction phase
/// `gamma_n(t) = -omega*(n + 1/2)*T(t) + gamma_n(t0)`.
pub fn fock_wave_phase(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    n: usize,
    t: f64,
) -> Result<f64, Error> {
    let big_t = phase_time(p, cfg, t)?;
    Ok(-cfg.omega * (n as f64 + 0.5) * big_t + cfg.gamma_n0)
}

/// Coherent-state phase samples over a time grid; samples are independent
/// and evaluated in parallel when the `parallel` feature is on.
pub fn phase_trajectory(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    times: &[f64],
) -> Result<Vec<PhaseSample>, Error> {
    // Resolve once up front so per-sample work shares the constants.
    resolve_a0(p, cfg)?;
    exec::map_slice(times, |&t| gamma_total(p, cfg, t))
        .into_iter()
        .collect()
}
