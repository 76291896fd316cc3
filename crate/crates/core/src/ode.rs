//! Embedded Dormand–Prince 5(4) integrator for small autonomous systems.
//!
//! Only what the profile reductions need: fixed dimension, autonomous
//! right-hand side, per-step error control with capped growth, and an
//! early-exit predicate checked after every accepted step. Systems are
//! autonomous, so the stage nodes never enter the computation.

use alloc::vec::Vec;
use core::fmt;

use crate::math::{abs, sqrt};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub atol: f64,
    pub rtol: f64,
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Cap on the step-size ratio between consecutive steps.
    pub max_growth: f64,
    pub max_steps: usize,
    /// Stop as soon as the angle has settled on a bracket endpoint.
    pub stop_at_equilibrium: bool,
    pub equilibrium_distance: f64,
    pub equilibrium_rate: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            atol: 1e-10,
            rtol: 1e-10,
            initial_step: 1e-3,
            min_step: 1e-14,
            max_step: 0.1,
            max_growth: 5.0,
            max_steps: 2_000_000,
            stop_at_equilibrium: true,
            equilibrium_distance: 1e-9,
            equilibrium_rate: 1e-12,
        }
    }
}

impl IntegratorConfig {
    /// Tighter tolerances, used where tails are fitted or residuals amplified.
    pub fn precise() -> Self {
        IntegratorConfig {
            atol: 1e-13,
            rtol: 1e-12,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), OdeError> {
        let positive = [
            self.atol,
            self.rtol,
            self.initial_step,
            self.min_step,
            self.max_step,
        ];
        if positive.iter().any(|v| !(*v > 0.0) || !v.is_finite()) || self.max_growth <= 1.0 {
            return Err(OdeError::BadConfig);
        }
        if self.min_step > self.max_step {
            return Err(OdeError::BadConfig);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OdeError {
    BadConfig,
    /// The controller asked for a step below `min_step` at parameter `s`.
    StepUnderflow {
        s: f64,
        step: f64,
    },
    NonFinite {
        s: f64,
    },
    TooManySteps {
        s: f64,
    },
}

impl fmt::Display for OdeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OdeError::BadConfig => write!(f, "integrator tolerances and steps must be positive"),
            OdeError::StepUnderflow { s, step } => {
                write!(f, "step size underflow ({step:e}) at s = {s}")
            }
            OdeError::NonFinite { s } => write!(f, "state became non-finite at s = {s}"),
            OdeError::TooManySteps { s } => write!(f, "step budget exhausted at s = {s}"),
        }
    }
}

impl core::error::Error for OdeError {}

/// One accepted sample: parameter, state and derivative there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<const N: usize> {
    pub t: f64,
    pub y: [f64; N],
    pub dy: [f64; N],
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution<const N: usize> {
    pub samples: Vec<Sample<N>>,
    /// True when the early-exit predicate fired.
    pub stopped_early: bool,
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn combo<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * c * k[i];
        }
    }
    out
}

/// Integrates `y' = f(y)` from `t = 0` to `t_end > 0`.
///
/// `stop(y, dy)` is evaluated after every accepted step; returning `true`
/// ends the integration early.
pub fn integrate<const N: usize, F, S>(
    f: F,
    y0: [f64; N],
    t_end: f64,
    cfg: &IntegratorConfig,
    mut stop: S,
) -> Result<Solution<N>, OdeError>
where
    F: Fn(&[f64; N]) -> [f64; N],
    S: FnMut(&[f64; N], &[f64; N]) -> bool,
{
    cfg.validate()?;
    let mut t = 0.0;
    let mut y = y0;
    let mut k1 = f(&y);
    let mut samples = Vec::new();
    samples.push(Sample { t, y, dy: k1 });
    if !(t_end > 0.0) {
        return Ok(Solution {
            samples,
            stopped_early: false,
        });
    }
    let mut h = cfg.initial_step.min(cfg.max_step).min(t_end);
    let mut steps = 0usize;

    while t < t_end {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(OdeError::TooManySteps { s: t });
        }
        let last = t + h >= t_end;
        if last {
            h = t_end - t;
        }

        let k2 = f(&combo(&y, h, &[(A21, &k1)]));
        let k3 = f(&combo(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(&combo(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(&combo(
            &y,
            h,
            &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
        ));
        let k6 = f(&combo(
            &y,
            h,
            &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
        ));
        let y_new = combo(
            &y,
            h,
            &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
        );
        let k7 = f(&y_new);

        let mut err_sq = 0.0;
        let mut finite = true;
        for i in 0..N {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let scale = cfg.atol + cfg.rtol * abs(y[i]).max(abs(y_new[i]));
            err_sq += (e / scale) * (e / scale);
            finite &= y_new[i].is_finite() && k7[i].is_finite();
        }
        let err = sqrt(err_sq / N as f64);

        if !finite {
            // Treat overflow inside a trial step as a rejection first.
            h *= 0.2;
            if h < cfg.min_step {
                return Err(OdeError::NonFinite { s: t });
            }
            continue;
        }

        let factor = if err == 0.0 {
            cfg.max_growth
        } else {
            (0.9 * libm::pow(err, -0.2)).clamp(0.2, cfg.max_growth)
        };

        if err <= 1.0 {
            t = if last { t_end } else { t + h };
            y = y_new;
            k1 = k7;
            samples.push(Sample { t, y, dy: k1 });
            if stop(&y, &k1) {
                return Ok(Solution {
                    samples,
                    stopped_early: true,
                });
            }
            h = (h * factor).min(cfg.max_step);
        } else {
            h *= factor.min(1.0);
            if h < cfg.min_step {
                return Err(OdeError::StepUnderflow { s: t, step: h });
            }
        }
    }
    Ok(Solution {
        samples,
        stopped_early: false,
    })
}

/// Classical RK4 with `n` equal steps from `t = 0` to `t = span` (any sign).
pub fn rk4_fixed<const N: usize, F>(f: F, y0: [f64; N], span: f64, n: usize) -> [f64; N]
where
    F: Fn(&[f64; N]) -> [f64; N],
{
    let n = n.max(1);
    let h = span / n as f64;
    let mut y = y0;
    for _ in 0..n {
        let k1 = f(&y);
        let k2 = f(&combo(&y, 0.5 * h, &[(1.0, &k1)]));
        let k3 = f(&combo(&y, 0.5 * h, &[(1.0, &k2)]));
        let k4 = f(&combo(&y, h, &[(1.0, &k3)]));
        y = combo(
            &y,
            h / 6.0,
            &[(1.0, &k1), (2.0, &k2), (2.0, &k3), (1.0, &k4)],
        );
    }
    y
}
