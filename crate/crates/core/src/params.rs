//! Input parameters, their validation, and derived constants.
//!
//! [`NonstaticityParams`] is the single source of wave nonstaticity: the
//! constants `(c1, c2, c3)` with `c1*c2 - c3^2 = 1` and the initial angle
//! `phi`. `c3` is never accepted as free input — callers choose only its
//! sign branch, so the determinant constraint holds by construction.
//! [`WaveConfig`] carries the medium constants, the wave frequency, the
//! initial time, the amplitude specification, and the free angles.

use std::f64::consts::PI;

use crate::error::Error;

/// Sign branch for the derived constant `c3 = ±sqrt(c1*c2 - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C3Branch {
    Positive,
    Negative,
}

impl C3Branch {
    fn signum(self) -> f64 {
        match self {
            C3Branch::Positive => 1.0,
            C3Branch::Negative => -1.0,
        }
    }
}

/// Nonstaticity constants `(c1, c2, c3)` and initial angle `phi`.
///
/// Invariants enforced at construction:
/// * `c1 > 0`, `c2 > 0`, `c1*c2 >= 1`;
/// * `c1*c2 - c3^2 = 1` (c3 is derived from the sign branch);
/// * `phi` normalized into `[-pi/2, pi/2)` by mod-pi reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonstaticityParams {
    c1: f64,
    c2: f64,
    c3: f64,
    phi: f64,
}

impl NonstaticityParams {
    /// Build parameters from `(c1, c2)`, the sign branch of `c3`, and `phi`.
    pub fn new(c1: f64, c2: f64, branch: C3Branch, phi: f64) -> Result<Self, Error> {
        Error::require_finite("c1", c1)?;
        Error::require_finite("c2", c2)?;
        Error::require_finite("phi", phi)?;
        if c1 <= 0.0 || c2 <= 0.0 {
            return Err(Error::NonpositiveNonstaticity { c1, c2 });
        }
        let product = c1 * c2;
        if product < 1.0 {
            return Err(Error::ConstraintViolated { product });
        }
        let c3 = branch.signum() * (product - 1.0).sqrt();
        Ok(Self {
            c1,
            c2,
            c3,
            phi: normalize_phi(phi),
        })
    }

    /// The static wave: `c1 = c2 = 1`, `c3 = 0`, `phi = 0`, `f(t) = 1`.
    pub fn static_wave() -> Self {
        Self {
            c1: 1.0,
            c2: 1.0,
            c3: 0.0,
            phi: 0.0,
        }
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }

    /// Initial angle, always in `[-pi/2, pi/2)`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Measure of nonstaticity `D = sqrt((c1+c2)^2 - 4) / (2*sqrt(2))`.
    ///
    /// Zero exactly when `c1 = c2 = 1`; the parameter invariants guarantee
    /// `(c1+c2)^2 >= 4`, so the square root never sees a negative argument
    /// (a tiny negative from rounding is clamped).
    pub fn nonstaticity_measure(&self) -> NonstaticityMeasure {
        let s = self.c1 + self.c2;
        let d = (s * s - 4.0).max(0.0).sqrt() / (2.0 * 2.0_f64.sqrt());
        NonstaticityMeasure { d }
    }

    /// Extrema of the time function over one period.
    ///
    /// `f(t) = (c1+c2)/2 - (c1-c2)/2 * cos(2phi~) + c3 * sin(2phi~)`, so the
    /// extrema are `(c1+c2)/2 ± sqrt(((c1-c2)/2)^2 + c3^2)`. The determinant
    /// constraint makes `f_min * f_max = 1`.
    pub fn f_range(&self) -> (f64, f64) {
        let mid = 0.5 * (self.c1 + self.c2);
        let amp = (0.25 * (self.c1 - self.c2).powi(2) + self.c3 * self.c3).sqrt();
        (mid - amp, mid + amp)
    }
}

/// Nonstaticity measure `D`; dimensionless, zero for the static wave.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct NonstaticityMeasure {
    d: f64,
}

impl NonstaticityMeasure {
    pub fn value(&self) -> f64 {
        self.d
    }
}

/// Amplitude specification: exactly one of the quadrature amplitude `Q0`
/// (classical oscillation amplitude) or the eigenvalue modulus `A0` is
/// authoritative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Amplitude {
    /// Classical quadrature amplitude; `A0` is derived from it.
    Quadrature(f64),
    /// Eigenvalue modulus given directly.
    Eigenvalue(f64),
}

/// Medium and wave constants plus the amplitude and angle choices.
///
/// Defaults are natural units `epsilon = mu = hbar = omega = 1`, `t0 = 0`,
/// all angles zero, `A0 = 0.1`, and zero initial phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveConfig {
    pub epsilon: f64,
    pub mu: f64,
    pub omega: f64,
    pub hbar: f64,
    pub t0: f64,
    pub amplitude: Amplitude,
    /// Phase of the eigenvalue `A(t)` at `t0`.
    pub theta: f64,
    /// Classical phase at `t0` (enters the amplitude formula and the
    /// classical trajectory).
    pub theta0: f64,
    /// Initial geometric phase `gamma_G(t0)`.
    pub gamma_g0: f64,
    /// Initial dynamical phase `gamma_D(t0)`.
    pub gamma_d0: f64,
    /// Initial Fock phase `gamma_n(t0)`, applied to every `n`.
    pub gamma_n0: f64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            mu: 1.0,
            omega: 1.0,
            hbar: 1.0,
            t0: 0.0,
            amplitude: Amplitude::Eigenvalue(0.1),
            theta: 0.0,
            theta0: 0.0,
            gamma_g0: 0.0,
            gamma_d0: 0.0,
            gamma_n0: 0.0,
        }
    }
}

impl WaveConfig {
    /// Natural-unit config with the eigenvalue modulus given directly.
    pub fn with_a0(a0: f64) -> Self {
        Self {
            amplitude: Amplitude::Eigenvalue(a0),
            ..Self::default()
        }
    }

    /// Natural-unit config with the quadrature amplitude given.
    pub fn with_q0(q0: f64) -> Self {
        Self {
            amplitude: Amplitude::Quadrature(q0),
            ..Self::default()
        }
    }

    /// Validate positivity of the medium and wave constants.
    pub fn validate(&self) -> Result<(), Error> {
        Error::require_positive("omega", self.omega)?;
        Error::require_positive("epsilon", self.epsilon)?;
        Error::require_positive("mu", self.mu)?;
        Error::require_positive("hbar", self.hbar)?;
        Error::require_finite("t0", self.t0)?;
        match self.amplitude {
            Amplitude::Quadrature(q0) => Error::require_finite("Q0", q0)?,
            Amplitude::Eigenvalue(a0) => {
                Error::require_finite("A0", a0)?;
                if a0 < 0.0 {
                    return Err(Error::NonpositiveConstant {
                        name: "A0",
                        value: a0,
                    });
                }
                a0
            }
        };
        Ok(())
    }

    /// Period of the time function, `pi / omega`.
    pub fn period(&self) -> f64 {
        PI / self.omega
    }
}

/// Angular frequency from the wave number and medium constants,
/// `omega = k * c` with wave velocity `c = 1/sqrt(epsilon*mu)`.
pub fn omega_from_medium(k: f64, epsilon: f64, mu: f64) -> Result<f64, Error> {
    Error::require_positive("k", k)?;
    Error::require_positive("epsilon", epsilon)?;
    Error::require_positive("mu", mu)?;
    Ok(k / (epsilon * mu).sqrt())
}

/// Reduce an angle into `[-pi/2, pi/2)` by mod-pi reduction.
///
/// The phase outputs are pi-periodic in `phi`, so this loses nothing.
pub fn normalize_phi(phi: f64) -> f64 {
    let r = phi.rem_euclid(PI);
    if r >= PI / 2.0 {
        r - PI
    } else {
        r
    }
}

/// Reduce an unwrapped phase to `(-pi, pi]` for display.
pub fn wrap_to_pi(phase: f64) -> f64 {
    let r = phase.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}
