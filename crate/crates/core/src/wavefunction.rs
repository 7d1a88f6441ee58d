//! Fock and coherent eigenfunctions, phase-carrying wavefunctions,
//! expansion coefficients, and expectation values on q-grids.
//!
//! All grid evaluations are embarrassingly parallel over q-points and run
//! through [`exec`]. The grid policy centers the q-range on the coherent
//! displacement peak with half-width `8*sqrt(hbar*f_max/(eps*omega))`
//! plus the displacement magnitude, which pushes the Gaussian tails below
//! 1e-14 so trapezoid quadrature reaches 1e-8 norms.

use num_complex::Complex64;

use crate::error::Error;
use crate::exec;
use crate::params::{NonstaticityParams, WaveConfig};
use crate::phase;
use crate::timefunc::eval_f_unchecked;

/// Hermite recurrence guard; indices beyond this are rejected.
pub const HERMITE_MAX: usize = 60;

/// Default number of grid points under the grid policy.
pub const DEFAULT_GRID_POINTS: usize = 4096;

/// Physicists' Hermite polynomial `H_n(x)` by the three-term recurrence
/// `H_{k+1} = 2x*H_k - 2k*H_{k-1}`.
pub fn hermite(n: usize, x: f64) -> Result<f64, Error> {
    if n > HERMITE_MAX {
        return Err(Error::FockIndexTooLarge { n, max: HERMITE_MAX });
    }
    let mut h_prev = 1.0;
    if n == 0 {
        return Ok(h_prev);
    }
    let mut h = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = next;
    }
    Ok(h)
}

/// Inverse-length-squared scale `zeta(t) = eps*omega / (hbar * f(t))`.
pub fn zeta(p: &NonstaticityParams, cfg: &WaveConfig, t: f64) -> Result<f64, Error> {
    let tf = crate::timefunc::eval_f(p, cfg, t)?;
    Ok(cfg.epsilon * cfg.omega / (cfg.hbar * tf.f))
}

fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Fock eigenfunction value at `(q, t)` from explicit time-function data;
/// shared by the closed-form path and the perturbed-ODE verification path.
pub(crate) fn fock_eigen_raw(
    cfg: &WaveConfig,
    n: usize,
    f: f64,
    f_dot: f64,
    q: f64,
) -> Result<Complex64, Error> {
    let z = cfg.epsilon * cfg.omega / (cfg.hbar * f);
    let x = z.sqrt() * q;
    let h = hermite(n, x)?;
    // Magnitude in log space: (z/pi)^(1/4) / sqrt(2^n n!) * exp(-z q^2/2).
    let ln_mag = 0.25 * (z / std::f64::consts::PI).ln()
        - 0.5 * (n as f64 * 2.0_f64.ln() + ln_factorial(n))
        - 0.5 * z * q * q;
    let gauss_im = z * f_dot * q * q / (4.0 * cfg.omega);
    Ok(ln_mag.exp() * h * Complex64::new(0.0, gauss_im).exp())
}

/// Fock eigenfunction `<q|Phi_n(t)>`.
pub fn fock_eigenfunction(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    n: usize,
    q: f64,
    t: f64,
) -> Result<Complex64, Error> {
    Error::require_from(t, cfg.t0)?;
    let tf = eval_f_unchecked(p, cfg, t);
    fock_eigen_raw(cfg, n, tf.f, tf.f_dot, q)
}

/// Full Fock wavefunction `<q|Psi_n(t)> = <q|Phi_n(t)> * exp(i*gamma_n(t))`
/// with `gamma_n(t) = -omega*(n + 1/2)*T(t) + gamma_n(t0)`.
pub fn fock_wavefunction(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    n: usize,
    q: f64,
    t: f64,
) -> Result<Complex64, Error> {
    let eigen = fock_eigenfunction(p, cfg, n, q, t)?;
    let gamma_n = phase::fock_wave_phase(p, cfg, n, t)?;
    Ok(eigen * Complex64::new(0.0, gamma_n).exp())
}

/// Coherent eigenfunction value from explicit time-function data, with
/// the accumulated total phase optionally included.
pub(crate) fn coherent_raw(
    cfg: &WaveConfig,
    a0: f64,
    f: f64,
    f_dot: f64,
    big_t: f64,
    q: f64,
    include_total_phase: bool,
    gamma0: f64,
) -> Complex64 {
    let z = cfg.epsilon * cfg.omega / (cfg.hbar * f);
    let a = a0 * Complex64::new(0.0, -(cfg.omega * big_t + cfg.theta)).exp();
    let gauss = Complex64::new(-0.5 * z, 0.25 * z * f_dot / cfg.omega) * q * q;
    let mut exponent = gauss + (2.0 * z).sqrt() * a * q - 0.5 * (a0 * a0) - 0.5 * a * a;
    if include_total_phase {
        let gamma = -0.5 * cfg.omega * big_t + gamma0;
        exponent += Complex64::new(0.0, gamma);
    }
    (z / std::f64::consts::PI).powf(0.25) * exponent.exp()
}

/// Coherent eigenfunction `<q|A(t)>`.
pub fn coherent_eigenfunction(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    q: f64,
    t: f64,
) -> Result<Complex64, Error> {
    Error::require_from(t, cfg.t0)?;
    let a0 = phase::resolve_a0(p, cfg)?;
    let tf = eval_f_unchecked(p, cfg, t);
    let big_t = phase::phase_time(p, cfg, t)?;
    Ok(coherent_raw(cfg, a0, tf.f, tf.f_dot, big_t, q, false, 0.0))
}

/// Full coherent wavefunction
/// `<q|Psi_coh(t)> = <q|A(t)> * exp(i*gamma(t))`.
pub fn coherent_wavefunction(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    q: f64,
    t: f64,
) -> Result<Complex64, Error> {
    Error::require_from(t, cfg.t0)?;
    let a0 = phase::resolve_a0(p, cfg)?;
    let tf = eval_f_unchecked(p, cfg, t);
    let big_t = phase::phase_time(p, cfg, t)?;
    Ok(coherent_raw(
        cfg,
        a0,
        tf.f,
        tf.f_dot,
        big_t,
        q,
        true,
        cfg.gamma_g0 + cfg.gamma_d0,
    ))
}

/// Expansion of the coherent state over the Fock basis.
#[derive(Debug, Clone)]
pub struct ExpansionCoefficients {
    /// `b_n = exp(-A0^2/2) * A(t)^n / sqrt(n!)` (time-dependent).
    pub b: Vec<Complex64>,
    /// `a_n = b_n * exp(-i*(gamma_n(t) - gamma(t)))` (time-constant).
    pub a: Vec<Complex64>,
}

/// Coefficients up to and including index `n_max`, evaluated at time `t`.
///
/// The `a` coefficients are time constants even though they are assembled
/// from time-dependent factors; evaluating at two different `t` and
/// comparing is the standard cross-check.
pub fn expansion_coefficients(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    t: f64,
    n_max: usize,
) -> Result<ExpansionCoefficients, Error> {
    Error::require_from(t, cfg.t0)?;
    let a0 = phase::resolve_a0(p, cfg)?;
    let big_t = phase::phase_time(p, cfg, t)?;
    let acc = cfg.omega * big_t + cfg.theta;
    let gamma = -0.5 * cfg.omega * big_t + cfg.gamma_g0 + cfg.gamma_d0;
    let mut b = Vec::with_capacity(n_max + 1);
    let mut a = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        // |b_n| in log space to dodge factorial overflow.
        let ln_mag = if n == 0 {
            -0.5 * a0 * a0
        } else if a0 == 0.0 {
            f64::NEG_INFINITY
        } else {
            -0.5 * a0 * a0 + n as f64 * a0.ln() - 0.5 * ln_factorial(n)
        };
        let mag = ln_mag.exp();
        let b_n = mag * Complex64::new(0.0, -(n as f64) * acc).exp();
        let gamma_n = -cfg.omega * (n as f64 + 0.5) * big_t + cfg.gamma_n0;
        let a_n = b_n * Complex64::new(0.0, -(gamma_n - gamma)).exp();
        b.push(b_n);
        a.push(a_n);
    }
    Ok(ExpansionCoefficients { b, a })
}

/// Invariant-operator expectation `<I> = hbar*omega*(A0^2 + 1/2)`.
pub fn expectation_i(p: &NonstaticityParams, cfg: &WaveConfig) -> Result<f64, Error> {
    let a0 = phase::resolve_a0(p, cfg)?;
    Ok(cfg.hbar * cfg.omega * (a0 * a0 + 0.5))
}

/// Hamiltonian expectation `<H> = -hbar * Gamma_D`, a time constant.
pub fn expectation_h(p: &NonstaticityParams, cfg: &WaveConfig) -> Result<f64, Error> {
    Ok(-cfg.hbar * phase::gamma_d_rate(p, cfg)?)
}

/// A sampled complex wavefunction over a uniform q-grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    q_min: f64,
    q_max: f64,
    t: f64,
    values: Vec<Complex64>,
}

impl FieldGrid {
    /// Sample `value(q)` over `n_points >= 2` uniformly spaced points.
    pub fn sample<F>(q_min: f64, q_max: f64, n_points: usize, t: f64, value: F) -> Result<Self, Error>
    where
        F: Fn(f64) -> Complex64 + Sync + Send,
    {
        if n_points < 2 {
            return Err(Error::InvalidGrid {
                reason: format!("n_points = {n_points} < 2"),
            });
        }
        if !(q_max > q_min) {
            return Err(Error::InvalidGrid {
                reason: format!("q_max = {q_max} must exceed q_min = {q_min}"),
            });
        }
        let d = (q_max - q_min) / (n_points - 1) as f64;
        let values = exec::map_indexed(n_points, |i| value(q_min + i as f64 * d));
        Ok(Self {
            q_min,
            q_max,
            t,
            values,
        })
    }

    pub fn q_min(&self) -> f64 {
        self.q_min
    }

    pub fn q_max(&self) -> f64 {
        self.q_max
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn n_points(&self) -> usize {
        self.values.len()
    }

    pub fn spacing(&self) -> f64 {
        (self.q_max - self.q_min) / (self.n_points() - 1) as f64
    }

    pub fn q_at(&self, i: usize) -> f64 {
        self.q_min + i as f64 * self.spacing()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Trapezoid `∫ |psi|^2 dq`.
    pub fn norm_sq(&self) -> f64 {
        let d = self.spacing();
        let n = self.n_points();
        let mut sum = 0.5 * (self.values[0].norm_sqr() + self.values[n - 1].norm_sqr());
        for v in &self.values[1..n - 1] {
            sum += v.norm_sqr();
        }
        sum * d
    }

    /// Trapezoid `∫ conj(self) * other dq`.
    pub fn inner(&self, other: &FieldGrid) -> Complex64 {
        assert_eq!(self.n_points(), other.n_points(), "grid size mismatch");
        let d = self.spacing();
        let n = self.n_points();
        let term = |i: usize| self.values[i].conj() * other.values[i];
        let mut sum = 0.5 * (term(0) + term(n - 1));
        for i in 1..n - 1 {
            sum += term(i);
        }
        sum * d
    }

    /// CSV serialization with columns `q,re,im,abs2`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,re,im,abs2\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{},{},{},{}\n", self.q_at(i), v.re, v.im, v.norm_sqr()));
        }
        out
    }
}

/// Uniform q-grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub q_min: f64,
    pub q_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    /// Grid policy: centered on the displacement peak at time `t`,
    /// half-width `8*sqrt(hbar*f_max/(eps*omega))` plus the maximal
    /// displacement magnitude.
    pub fn policy(
        p: &NonstaticityParams,
        cfg: &WaveConfig,
        t: f64,
        n_points: usize,
    ) -> Result<Self, Error> {
        Error::require_from(t, cfg.t0)?;
        let a0 = phase::resolve_a0(p, cfg)?;
        let (_, f_max) = p.f_range();
        let length = (cfg.hbar * f_max / (cfg.epsilon * cfg.omega)).sqrt();
        let displacement = (2.0_f64).sqrt() * length * a0;
        let amp = phase::eigenvalue(p, cfg, t)?;
        let tf = eval_f_unchecked(p, cfg, t);
        let center = (2.0 * cfg.hbar * tf.f / (cfg.epsilon * cfg.omega)).sqrt() * amp.value().re;
        let half_width = 8.0 * length + displacement;
        Ok(Self {
            q_min: center - half_width,
            q_max: center + half_width,
            n_points,
        })
    }
}

/// Sample the coherent eigenfunction (no phase factor) on a grid.
pub fn sample_coherent_eigenfunction(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    spec: &GridSpec,
    t: f64,
) -> Result<FieldGrid, Error> {
    Error::require_from(t, cfg.t0)?;
    let a0 = phase::resolve_a0(p, cfg)?;
    let tf = eval_f_unchecked(p, cfg, t);
    let big_t = phase::phase_time(p, cfg, t)?;
    FieldGrid::sample(spec.q_min, spec.q_max, spec.n_points, t, |q| {
        coherent_raw(cfg, a0, tf.f, tf.f_dot, big_t, q, false, 0.0)
    })
}

/// Sample the full coherent wavefunction (with total phase) on a grid.
pub fn sample_coherent_wavefunction(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    spec: &GridSpec,
    t: f64,
) -> Result<FieldGrid, Error> {
    Error::require_from(t, cfg.t0)?;
    let a0 = phase::resolve_a0(p, cfg)?;
    let tf = eval_f_unchecked(p, cfg, t);
    let big_t = phase::phase_time(p, cfg, t)?;
    let gamma0 = cfg.gamma_g0 + cfg.gamma_d0;
    FieldGrid::sample(spec.q_min, spec.q_max, spec.n_points, t, |q| {
        coherent_raw(cfg, a0, tf.f, tf.f_dot, big_t, q, true, gamma0)
    })
}

/// Sample a Fock eigenfunction on a grid.
pub fn sample_fock_eigenfunction(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    n: usize,
    spec: &GridSpec,
    t: f64,
) -> Result<FieldGrid, Error> {
    Error::require_from(t, cfg.t0)?;
    if n > HERMITE_MAX {
        return Err(Error::FockIndexTooLarge { n, max: HERMITE_MAX });
    }
    let tf = eval_f_unchecked(p, cfg, t);
    FieldGrid::sample(spec.q_min, spec.q_max, spec.n_points, t, |q| {
        fock_eigen_raw(cfg, n, tf.f, tf.f_dot, q).expect("n within guard")
    })
}

/// Apply the annihilation operator to grid samples via a five-point
/// first-derivative stencil. The two points at each boundary are zeroed.
pub fn apply_annihilation(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    grid: &FieldGrid,
) -> Result<FieldGrid, Error> {
    let tf = eval_f_unchecked(p, cfg, grid.t());
    let z = cfg.epsilon * cfg.omega / (cfg.hbar * tf.f);
    let q_coef = (0.5 * z).sqrt() * Complex64::new(1.0, -tf.f_dot / (2.0 * cfg.omega));
    let d_coef = cfg.hbar * (tf.f / (2.0 * cfg.epsilon * cfg.omega * cfg.hbar)).sqrt();
    let d = grid.spacing();
    let n = grid.n_points();
    let v = grid.values();
    let values = exec::map_indexed(n, |i| {
        if i < 2 || i >= n - 2 {
            return Complex64::new(0.0, 0.0);
        }
        let dpsi = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * d);
        q_coef * grid.q_at(i) * v[i] + d_coef * dpsi
    });
    Ok(FieldGrid {
        q_min: grid.q_min(),
        q_max: grid.q_max(),
        t: grid.t(),
        values,
    })
}

/// Hamiltonian expectation by grid quadrature, the independent cross-check
/// for [`expectation_h`]. Kinetic term via five-point second differences;
/// normalized by the grid norm.
pub fn grid_expectation_h(
    p: &NonstaticityParams,
    cfg: &WaveConfig,
    spec: &GridSpec,
    t: f64,
) -> Result<f64, Error> {
    let grid = sample_coherent_wavefunction(p, cfg, spec, t)?;
    let d = grid.spacing();
    let n = grid.n_points();
    if n < 5 {
        return Err(Error::InvalidGrid {
            reason: "grid_expectation_h needs at least 5 points".to_string(),
        });
    }
    let v = grid.values();
    let kin_coef = -cfg.hbar * cfg.hbar / (2.0 * cfg.epsilon);
    let pot_coef = 0.5 * cfg.epsilon * cfg.omega * cfg.omega;
    let mut acc = 0.0;
    let mut norm = 0.0;
    for i in 2..n - 2 {
        let d2 = (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2])
            / (12.0 * d * d);
        let q = grid.q_at(i);
        let h_psi = kin_coef * d2 + pot_coef * q * q * v[i];
        acc += (v[i].conj() * h_psi).re;
        norm += v[i].norm_sqr();
    }
    Ok(acc / norm)
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
    fn hermite_reference_values() {
        assert_eq!(hermite(0, 1.7).unwrap(), 1.0);
        assert_eq!(hermite(1, 0.5).unwrap(), 1.0);
        // Recurrence by hand: H2(1) = 2, H3(1) = 2*2 - 4*2 = -4.
        assert_eq!(hermite(3, 1.0).unwrap(), -4.0);
        assert!(hermite(HERMITE_MAX + 1, 0.0).is_err());
    }

    #[test]
    fn fock_ground_state_peak() {
        let p = NonstaticityParams::static_wave();
        let cfg = WaveConfig::default();
        let v = fock_eigenfunction(&p, &cfg, 0, 0.0, 0.0).unwrap();
        assert_abs_diff_eq!(v.re, PI.powf(-0.25), epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn odd_hermite_parity_zero_at_origin() {
        let p = fig3_params();
        let cfg = WaveConfig::default();
        for n in [1, 3, 5, 7] {
            let v = fock_eigenfunction(&p, &cfg, n, 0.0, 0.8).unwrap();
            assert_abs_diff_eq!(v.norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn fock_modulus_with_nonstatic_zeta() {
        // f(t0) = 0.5 so zeta = 2; modulus (zeta/pi)^(1/4) exp(-zeta/2) at q=1.
        let p = fig3_params();
        let cfg = WaveConfig::default();
        let v = fock_eigenfunction(&p, &cfg, 0, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(v.norm(), (2.0 / PI).powf(0.25) * (-1.0_f64).exp(), epsilon = 1e-13);
    }

    #[test]
    fn fock_wavefunction_phase_factor() {
        let p = NonstaticityParams::static_wave();
        let cfg = WaveConfig::default();
        // gamma_0(pi) = -pi/2, so the value at q=0 is pi^(-1/4) e^{-i pi/2}.
        let v = fock_wavefunction(&p, &cfg, 0, 0.0, PI).unwrap();
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, -PI.powf(-0.25), epsilon = 1e-12);
        // Unimodular factor: same modulus as the eigenfunction.
        let p2 = fig3_params();
        for (n, q, t) in [(0, 0.4, 1.1), (2, -0.9, 2.3)] {
            let a = fock_wavefunction(&p2, &cfg, n, q, t).unwrap().norm();
            let b = fock_eigenfunction(&p2, &cfg, n, q, t).unwrap().norm();
            assert_abs_diff_eq!(a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn coherent_vacuum_reduces_to_ground_state() {
        let p = fig3_params();
        let cfg = WaveConfig::with_a0(0.0);
        for (q, t) in [(0.0, 0.0), (0.7, 0.9), (-1.3, 2.2)] {
            let coh = coherent_eigenfunction(&p, &cfg, q, t).unwrap();
            let fock = fock_eigenfunction(&p, &cfg, 0, q, t).unwrap();
            assert_abs_diff_eq!((coh - fock).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn coherent_norm_is_unity() {
        let p = fig3_params();
        let cfg = WaveConfig::with_a0(0.4);
        for t in [0.0, 0.6, 1.9] {
            let spec = GridSpec::policy(&p, &cfg, t, DEFAULT_GRID_POINTS).unwrap();
            let grid = sample_coherent_eigenfunction(&p, &cfg, &spec, t).unwrap();
            assert_abs_diff_eq!(grid.norm_sq(), 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn coherent_density_peaks_at_displacement() {
        let p = NonstaticityParams::static_wave();
        let cfg = WaveConfig::with_a0(0.1);
        let spec = GridSpec::policy(&p, &cfg, 0.0, 1 << 15).unwrap();
        let grid = sample_coherent_eigenfunction(&p, &cfg, &spec, 0.0).unwrap();
        let (idx, _) = grid
            .values()
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm_sqr().partial_cmp(&b.1.norm_sqr()).unwrap())
            .unwrap();
        let expected = (2.0_f64).sqrt() * 0.1;
        assert_abs_diff_eq!(grid.q_at(idx), expected, epsilon = 2.0 * grid.spacing());
    }

    #[test]
    fn coherent_wavefunction_examples() {
        let p = NonstaticityParams::static_wave();
        let cfg = WaveConfig::with_a0(0.0);
        // At t = t0 with zero initial phase the full wavefunction equals
        // the eigenfunction.
        let a = coherent_wavefunction(&p, &cfg, 0.3, 0.0).unwrap();
        let b = coherent_eigenfunction(&p, &cfg, 0.3, 0.0).unwrap();
        assert_abs_diff_eq!((a - b).norm(), 0.0, epsilon = 1e-15);
        // Static vacuum at q=0, t=1: pi^(-1/4) e^{-i/2}.
        let v = coherent_wavefunction(&p, &cfg, 0.0, 1.0).unwrap();
        let expected = PI.powf(-0.25) * Complex64::new(0.0, -0.5).exp();
        assert_abs_diff_eq!((v - expected).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn expansion_coefficients_basics() {
        let p = fig3_params();
        // A0 = 0: b_0 = 1, rest 0.
        let vac = WaveConfig::with_a0(0.0);
        let c = expansion_coefficients(&p, &vac, 0.7, 5).unwrap();
        assert_abs_diff_eq!((c.b[0] - 1.0).norm(), 0.0, epsilon = 1e-14);
        for n in 1..=5 {
            assert_eq!(c.b[n].norm(), 0.0);
        }
        // A0 = 1: sum |b_n|^2 over n <= 30 is 1 to 1e-12.
        let cfg = WaveConfig::with_a0(1.0);
        let c = expansion_coefficients(&p, &cfg, 1.3, 30).unwrap();
        let total: f64 = c.b.iter().map(|b| b.norm_sqr()).sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn expansion_a_is_time_constant() {
        let p = fig3_params();
        let cfg = WaveConfig {
            theta: 0.9,
            ..WaveConfig::with_a0(0.8)
        };
        let at1 = expansion_coefficients(&p, &cfg, 0.4, 12).unwrap();
        let at2 = expansion_coefficients(&p, &cfg, 1.1, 12).unwrap();
        for n in 0..=12 {
            assert_abs_diff_eq!((at1.a[n] - at2.a[n]).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn expansion_partial_sums_converge() {
        let p = fig3_params();
        let cfg = WaveConfig::with_a0(1.0);
        let t = 0.9;
        let spec = GridSpec::policy(&p, &cfg, t, 2048).unwrap();
        let target = sample_coherent_eigenfunction(&p, &cfg, &spec, t).unwrap();
        let n_cap = (1.0_f64 + 10.0 + 20.0).ceil() as usize; // ceil(A0^2 + 10 A0 + 20)
        let coeff = expansion_coefficients(&p, &cfg, t, n_cap).unwrap();
        let mut partial = vec![Complex64::new(0.0, 0.0); spec.n_points];
        let mut last_err = f64::INFINITY;
        for n in 0..=n_cap {
            let fock = sample_fock_eigenfunction(&p, &cfg, n, &spec, t).unwrap();
            for (acc, v) in partial.iter_mut().zip(fock.values()) {
                *acc += coeff.b[n] * v;
            }
            if n % 5 == 4 || n == n_cap {
                let d = spec_distance(&partial, &target);
                assert!(
                    d <= last_err * 1.000001 + 1e-13,
                    "distance grew from {last_err} to {d} at n = {n}"
                );
                last_err = d;
            }
        }
        assert!(last_err <= 1e-6, "expansion distance {last_err} > 1e-6");
    }

    fn spec_distance(values: &[Complex64], target: &FieldGrid) -> f64 {
        let d = target.spacing();
        let sum: f64 = values
            .iter()
            .zip(target.values())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        (sum * d).sqrt()
    }

    #[test]
    fn expectation_values() {
        let p = NonstaticityParams::static_wave();
        let cfg = WaveConfig::with_a0(0.1);
        assert_abs_diff_eq!(expectation_i(&p, &cfg).unwrap(), 0.51, epsilon = 1e-14);
        assert_abs_diff_eq!(expectation_h(&p, &cfg).unwrap(), 0.51, epsilon = 1e-14);
        let p2 = fig3_params();
        assert_abs_diff_eq!(expectation_h(&p2, &cfg).unwrap(), 0.76, epsilon = 1e-12);
    }

    #[test]
    fn grid_h_matches_closed_form() {
        let p = fig3_params();
        let cfg = WaveConfig::with_a0(0.1);
        let closed = expectation_h(&p, &cfg).unwrap();
        for t in [0.0, 0.8, 2.1] {
            let spec = GridSpec::policy(&p, &cfg, t, 8192).unwrap();
            let grid_value = grid_expectation_h(&p, &cfg, &spec, t).unwrap();
            assert_abs_diff_eq!(grid_value, closed, epsilon = 1e-6);
        }
    }

    #[test]
    fn annihilation_reproduces_eigenvalue() {
        let p = fig3_params();
        let cfg = WaveConfig {
            theta: 0.4,
            ..WaveConfig::with_a0(0.5)
        };
        let t = 1.2;
        let spec = GridSpec::policy(&p, &cfg, t, 8192).unwrap();
        let grid = sample_coherent_eigenfunction(&p, &cfg, &spec, t).unwrap();
        let applied = apply_annihilation(&p, &cfg, &grid).unwrap();
        let a = phase::eigenvalue(&p, &cfg, t).unwrap().value();
        let n = grid.n_points();
        let mut err = 0.0;
        let mut norm = 0.0;
        for i in 2..n - 2 {
            err += (applied.values()[i] - a * grid.values()[i]).norm_sqr();
            norm += grid.values()[i].norm_sqr();
        }
        let rel = (err / norm).sqrt() / a.norm().max(1.0);
        assert!(rel <= 1e-6, "eigen-relation residual {rel} > 1e-6");
    }

    #[test]
    fn grid_guards() {
        assert!(FieldGrid::sample(0.0, 1.0, 1, 0.0, |_| Complex64::new(0.0, 0.0)).is_err());
        assert!(FieldGrid::sample(1.0, 1.0, 16, 0.0, |_| Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn field_grid_csv_schema() {
        let grid = FieldGrid::sample(0.0, 1.0, 3, 0.0, |q| Complex64::new(q, -q)).unwrap();
        let csv = grid.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "q,re,im,abs2");
        assert_eq!(lines.next().unwrap(), "0,0,-0,0");
        assert_eq!(lines.next().unwrap(), "0.5,0.5,-0.5,0.5");
    }
}
