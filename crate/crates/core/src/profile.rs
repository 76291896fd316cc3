//! Profile-curve reductions of invariant translators.
//!
//! An `F₁`-invariant surface is `(u, y(s), z(s))` for an arc-length profile
//! `γ(s) = (0, y(s), z(s))`; an `(F₁ + bF₂)`-invariant one is
//! `(u, bu + y(s), z(s))`. In both cases `θ` is the angle between `γ'` and
//! `E₂`, so `y' = e^z cos θ` and `z' = sin θ`, and the translator equation
//! fixes `θ'`.
//!
//! For `F₁` symmetry and `V = λF₂ + μF₃` the quantity
//! `e^{-z}(λ + μy) − (θ − θ₀ + λ)` is conserved, which decouples the angle:
//! `θ' = f(θ) = μ cos θ − (θ − θ₀ + λ) sin θ`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::math::{abs, ceil, cos, exp, floor, sign, sin};
use crate::ode::{self, IntegratorConfig, OdeError};

/// Below this `|f(θ₀)|` the initial angle is treated as stationary.
pub const DEGENERACY_TOL: f64 = 1e-12;
/// Width of the final bisection interval around a zero of `f`.
pub const ROOT_TOL: f64 = 1e-12;
/// Sign-scan resolution inside each `[kπ, (k+1)π]`.
pub const SCAN_STEP: f64 = PI / 64.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileError {
    /// `λ = μ = 0`: every `F₁`-invariant surface is tangent to `V`.
    TrivialDirection,
    /// `b = 0` is the `F₁` case, handled by [`F1Params`].
    ZeroSlant,
    NonFinite,
    NonPositiveHorizon(f64),
    Integration(OdeError),
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::TrivialDirection => {
                write!(
                    f,
                    "(lambda, mu) = (0, 0): the direction is tangent to every F1-invariant surface"
                )
            }
            ProfileError::ZeroSlant => write!(f, "slant b must be nonzero"),
            ProfileError::NonFinite => write!(f, "parameters must be finite"),
            ProfileError::NonPositiveHorizon(s) => {
                write!(f, "integration horizon {s} must be positive")
            }
            ProfileError::Integration(e) => write!(f, "integration failed: {e}"),
        }
    }
}

impl core::error::Error for ProfileError {}

impl From<OdeError> for ProfileError {
    fn from(e: OdeError) -> Self {
        ProfileError::Integration(e)
    }
}

/// `F₁`-invariant problem: direction `V = λF₂ + μF₃` (the `F₁` part of `V`
/// is tangent and drops out) and initial angle `θ₀`, with `y(0) = z(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct F1Params {
    pub lambda: f64,
    pub mu: f64,
    pub theta0: f64,
}

impl F1Params {
    pub const fn new(lambda: f64, mu: f64, theta0: f64) -> Self {
        F1Params { lambda, mu, theta0 }
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        if !(self.lambda.is_finite() && self.mu.is_finite() && self.theta0.is_finite()) {
            return Err(ProfileError::NonFinite);
        }
        if self.lambda == 0.0 && self.mu == 0.0 {
            return Err(ProfileError::TrivialDirection);
        }
        Ok(())
    }

    /// The special angle `θ₀ − λ` where the first integral's right side vanishes.
    pub fn shifted_angle(&self) -> f64 {
        self.theta0 - self.lambda
    }
}

/// `(F₁ + bF₂)`-invariant problem with `V = λF₂` (`μ` must vanish, `η`
/// already absorbed into `λ`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlantedParams {
    pub b: f64,
    pub lambda: f64,
    pub theta0: f64,
}

impl SlantedParams {
    pub fn new(b: f64, lambda: f64, theta0: f64) -> Result<Self, ProfileError> {
        if !(b.is_finite() && lambda.is_finite() && theta0.is_finite()) {
            return Err(ProfileError::NonFinite);
        }
        if b == 0.0 {
            return Err(ProfileError::ZeroSlant);
        }
        Ok(SlantedParams { b, lambda, theta0 })
    }

    /// The open strip `(kπ, (k+1)π)` containing `θ₀`, or `None` on a barrier.
    pub fn barrier(&self) -> Option<(f64, f64)> {
        if abs(sin(self.theta0)) <= DEGENERACY_TOL {
            return None;
        }
        let k = floor(self.theta0 / PI);
        Some((k * PI, (k + 1.0) * PI))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProfileState {
    pub s: f64,
    pub y: f64,
    pub z: f64,
    pub theta: f64,
}

impl ProfileState {
    pub const fn new(s: f64, y: f64, z: f64, theta: f64) -> Self {
        ProfileState { s, y, z, theta }
    }

    pub fn initial(theta0: f64) -> Self {
        ProfileState::new(0.0, 0.0, 0.0, theta0)
    }

    /// `ḡ(γ', γ') = e^{-2z} y'² + z'²` evaluated from the velocity formulas.
    pub fn speed_sq(&self) -> f64 {
        let yp = exp(self.z) * cos(self.theta);
        let zp = sin(self.theta);
        exp(-2.0 * self.z) * yp * yp + zp * zp
    }
}

/// `f(θ) = μ cos θ − (θ − θ₀ + λ) sin θ`.
pub fn f_eval(theta: f64, p: &F1Params) -> f64 {
    p.mu * cos(theta) - (theta - p.theta0 + p.lambda) * sin(theta)
}

/// Consecutive zeros of `f` around `θ₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FZeroBracket {
    pub theta1: f64,
    pub theta2: f64,
    /// `f(θ₀) = 0`: the angle never moves and `θ₁ = θ₂ = θ₀`.
    pub degenerate: bool,
}

impl FZeroBracket {
    pub fn width(&self) -> f64 {
        self.theta2 - self.theta1
    }

    /// Index `k` of the strip `[kπ, (k+1)π]` holding the lower endpoint.
    pub fn strip_index(&self) -> i64 {
        floor(self.theta1 / PI) as i64
    }
}

pub fn bracket_zeros(p: &F1Params) -> FZeroBracket {
    let t0 = p.theta0;
    let f0 = f_eval(t0, p);
    if abs(f0) <= DEGENERACY_TOL {
        return FZeroBracket {
            theta1: t0,
            theta2: t0,
            degenerate: true,
        };
    }
    if p.mu == 0.0 {
        // f = −(θ − (θ₀ − λ)) sin θ: zeros are θ₀ − λ and the multiples of π,
        // some of them tangential, so they are placed exactly.
        let special = p.shifted_angle();
        let mut above = ceil(t0 / PI) * PI;
        if above <= t0 {
            above += PI;
        }
        let mut below = floor(t0 / PI) * PI;
        if below >= t0 {
            below -= PI;
        }
        if special > t0 && special < above {
            above = special;
        }
        if special < t0 && special > below {
            below = special;
        }
        return FZeroBracket {
            theta1: below,
            theta2: above,
            degenerate: false,
        };
    }
    let s0 = sign(f0);
    FZeroBracket {
        theta1: scan_for_zero(p, t0, s0, -1.0),
        theta2: scan_for_zero(p, t0, s0, 1.0),
        degenerate: false,
    }
}

// Walks from θ₀ over the lattice {jπ/64}, which contains every kπ. Since
// f(kπ) f((k+1)π) = −μ² < 0 a sign change turns up within 2π.
fn scan_for_zero(p: &F1Params, t0: f64, s0: i8, dir: f64) -> f64 {
    let mut prev = t0;
    let mut j = if dir > 0.0 {
        floor(t0 / SCAN_STEP) + 1.0
    } else {
        ceil(t0 / SCAN_STEP) - 1.0
    };
    loop {
        let t = j * SCAN_STEP;
        let ft = f_eval(t, p);
        if ft == 0.0 {
            return t;
        }
        if sign(ft) != s0 {
            let (lo, hi) = if dir > 0.0 { (prev, t) } else { (t, prev) };
            return bisect(|x| f_eval(x, p), lo, hi);
        }
        prev = t;
        j += dir;
    }
}

/// Bisection on a sign-changing interval down to [`ROOT_TOL`].
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if sign(fm) == sign(flo) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `(y', z', θ')` for `F₁` symmetry, with `θ'` from the decoupled equation.
pub fn rhs_f1(st: &ProfileState, p: &F1Params) -> [f64; 3] {
    [
        exp(st.z) * cos(st.theta),
        sin(st.theta),
        f_eval(st.theta, p),
    ]
}

/// The translator condition before the first integral is substituted:
/// `−λ e^{-z} sin θ + μ (cos θ − y e^{-z} sin θ)`.
pub fn translator_curvature_f1(st: &ProfileState, p: &F1Params) -> f64 {
    let ez = exp(-st.z);
    let (s, c) = (sin(st.theta), cos(st.theta));
    -p.lambda * ez * s + p.mu * (c - st.y * ez * s)
}

/// `(y', z', θ')` for `(F₁ + bF₂)` symmetry.
pub fn rhs_slanted(st: &ProfileState, p: &SlantedParams) -> [f64; 3] {
    [
        exp(st.z) * cos(st.theta),
        sin(st.theta),
        slanted_theta_prime(st.z, st.theta, p),
    ]
}

pub fn slanted_theta_prime(z: f64, theta: f64, p: &SlantedParams) -> f64 {
    slanted_theta_prime_trig(z, sin(theta), cos(theta), p)
}

fn slanted_theta_prime_trig(z: f64, s: f64, c: f64, p: &SlantedParams) -> f64 {
    let b2 = p.b * p.b;
    let e4 = exp(4.0 * z);
    s / (e4 + b2) * (b2 * (2.0 * s * c - p.lambda * exp(-z) * s * s) - p.lambda * exp(3.0 * z))
}

/// `e^{-z}(λ + μy) − (θ − θ₀ + λ)`; zero along exact `F₁` profiles.
pub fn first_integral(st: &ProfileState, p: &F1Params) -> f64 {
    exp(-st.z) * (p.lambda + p.mu * st.y) - (st.theta - p.theta0 + p.lambda)
}

/// Which reduced system a trajectory solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileSystem {
    F1(F1Params),
    Slanted(SlantedParams),
}

impl ProfileSystem {
    pub fn theta0(&self) -> f64 {
        match self {
            ProfileSystem::F1(p) => p.theta0,
            ProfileSystem::Slanted(p) => p.theta0,
        }
    }

    pub fn rhs(&self, st: &ProfileState) -> [f64; 3] {
        match self {
            ProfileSystem::F1(p) => rhs_f1(st, p),
            ProfileSystem::Slanted(p) => rhs_slanted(st, p),
        }
    }

    /// Angles the solution can approach but never cross.
    pub fn trap(&self) -> Trap {
        match self {
            ProfileSystem::F1(p) => {
                let b = bracket_zeros(p);
                if b.degenerate {
                    Trap::Stationary
                } else {
                    Trap::Interval(b.theta1, b.theta2)
                }
            }
            ProfileSystem::Slanted(p) => match p.barrier() {
                None => Trap::Stationary,
                Some((lo, hi)) => Trap::Interval(lo, hi),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trap {
    /// The angle is constant.
    Stationary,
    Interval(f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopReason {
    /// Integration reached the requested `|s|`.
    Bound,
    /// The angle settled on `theta_limit` at parameter `s`.
    Equilibrium { s: f64, theta_limit: f64 },
}

/// A sampled solution on `[s_min, s_max]` with `s` strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub system: ProfileSystem,
    pub samples: Vec<ProfileState>,
    pub backward_stop: StopReason,
    pub forward_stop: StopReason,
}

// The integrator state carries `φ = θ − θ*` for the limit angle `θ*` of the
// run. Near the limit `cos θ` and `sin θ` are then formed from `φ` at full
// relative precision instead of from a rounded `θ`; otherwise `e^z cos θ`
// turns rounding of `θ` into noise that stalls step control.
#[derive(Debug, Clone, Copy)]
struct AngleFrame {
    origin: f64,
    sin0: f64,
    cos0: f64,
    // `θ* − θ₀ + λ` for F₁ systems.
    shift0: f64,
}

impl AngleFrame {
    fn new(system: &ProfileSystem, origin: f64) -> Self {
        let (mut sin0, mut cos0) = (sin(origin), cos(origin));
        if abs(sin0) < ROOT_TOL {
            sin0 = 0.0;
            cos0 = if cos0 > 0.0 { 1.0 } else { -1.0 };
        } else if abs(cos0) < ROOT_TOL {
            cos0 = 0.0;
            sin0 = if sin0 > 0.0 { 1.0 } else { -1.0 };
        }
        let mut shift0 = 0.0;
        if let ProfileSystem::F1(p) = system {
            shift0 = origin - p.theta0 + p.lambda;
            if abs(shift0) < ROOT_TOL {
                shift0 = 0.0;
            }
        }
        AngleFrame {
            origin,
            sin0,
            cos0,
            shift0,
        }
    }

    fn rhs(&self, system: &ProfileSystem, v: &[f64; 3]) -> [f64; 3] {
        let phi = v[2];
        let (sp, cp) = (sin(phi), cos(phi));
        let s = self.sin0 * cp + self.cos0 * sp;
        let c = self.cos0 * cp - self.sin0 * sp;
        let dtheta = match system {
            ProfileSystem::F1(p) => p.mu * c - (self.shift0 + phi) * s,
            ProfileSystem::Slanted(p) => slanted_theta_prime_trig(v[1], s, c, p),
        };
        [exp(v[1]) * c, s, dtheta]
    }
}

/// Integrates forward and backward from `(y, z, θ) = (0, 0, θ₀)` over
/// `|s| ≤ s_max`. Backward integration negates the right-hand side.
pub fn integrate(
    system: ProfileSystem,
    s_max: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory, ProfileError> {
    match &system {
        ProfileSystem::F1(p) => p.validate()?,
        ProfileSystem::Slanted(p) => {
            SlantedParams::new(p.b, p.lambda, p.theta0)?;
        }
    }
    if !(s_max > 0.0) || !s_max.is_finite() {
        return Err(ProfileError::NonPositiveHorizon(s_max));
    }
    cfg.validate()?;
    let trap = system.trap();
    let start = ProfileState::initial(system.theta0());

    let run = |dir: f64| -> Result<(Vec<ProfileState>, StopReason), ProfileError> {
        let target = match trap {
            Trap::Stationary => None,
            Trap::Interval(lo, hi) => {
                let d = system.rhs(&start)[2] * dir;
                Some(if d > 0.0 { hi } else { lo })
            }
        };
        let frame = AngleFrame::new(&system, target.unwrap_or(start.theta));
        let rhs = |v: &[f64; 3]| {
            let mut d = frame.rhs(&system, v);
            if target.is_none() {
                d[2] = 0.0;
            }
            [dir * d[0], dir * d[1], dir * d[2]]
        };
        let stop = |v: &[f64; 3], d: &[f64; 3]| {
            cfg.stop_at_equilibrium
                && target.is_some()
                && abs(v[2]) < cfg.equilibrium_distance
                && abs(d[2]) < cfg.equilibrium_rate
        };
        let y0 = [0.0, 0.0, start.theta - frame.origin];
        let sol = ode::integrate(rhs, y0, s_max, cfg, stop)?;
        let mut states: Vec<ProfileState> = sol
            .samples
            .iter()
            .map(|smp| ProfileState::new(dir * smp.t, smp.y[0], smp.y[1], frame.origin + smp.y[2]))
            .collect();
        states[0] = start;
        let reason = match (sol.stopped_early, target) {
            (true, Some(theta_limit)) => StopReason::Equilibrium {
                s: states.last().map_or(0.0, |st| st.s),
                theta_limit,
            },
            _ => StopReason::Bound,
        };
        Ok((states, reason))
    };

    let (mut back, backward_stop) = run(-1.0)?;
    let (fwd, forward_stop) = run(1.0)?;
    back.reverse();
    back.pop();
    back.extend(fwd);
    Ok(Trajectory {
        system,
        samples: back,
        backward_stop,
        forward_stop,
    })
}

/// Which end of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    /// `s → −∞`
    Backward,
    /// `s → +∞`
    Forward,
}

impl End {
    pub fn sign(self) -> f64 {
        match self {
            End::Backward => -1.0,
            End::Forward => 1.0,
        }
    }
}

impl Trajectory {
    pub fn first(&self) -> &ProfileState {
        &self.samples[0]
    }

    pub fn last(&self) -> &ProfileState {
        &self.samples[self.samples.len() - 1]
    }

    pub fn stop(&self, end: End) -> StopReason {
        match end {
            End::Backward => self.backward_stop,
            End::Forward => self.forward_stop,
        }
    }

    pub fn end_state(&self, end: End) -> &ProfileState {
        match end {
            End::Backward => self.first(),
            End::Forward => self.last(),
        }
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.first().s, self.last().s)
    }

    fn nearest_index(&self, s: f64) -> usize {
        let idx = self.samples.partition_point(|st| st.s < s);
        if idx == 0 {
            0
        } else if idx >= self.samples.len() {
            self.samples.len() - 1
        } else if abs(self.samples[idx].s - s) < abs(s - self.samples[idx - 1].s) {
            idx
        } else {
            idx - 1
        }
    }

    /// A smooth local parametrisation near `s_center`: states are obtained
    /// by fixed-step RK4 from one stored sample, so nearby evaluations are
    /// differentiable in `s`.
    ///
    /// Past an equilibrium stop the local profile is anchored at the
    /// continued state at `s_center` instead of the last sample.
    pub fn local(&self, s_center: f64) -> LocalProfile {
        let (lo, hi) = self.s_range();
        if s_center < lo || s_center > hi {
            if let Some(st) = self.state_at(s_center) {
                return LocalProfile::new(self.system, st);
            }
        }
        LocalProfile {
            system: self.system,
            base: self.samples[self.nearest_index(s_center)],
            stationary: self.system.trap() == Trap::Stationary,
        }
    }

    /// State at arbitrary `s`. Inside the sampled range this integrates from
    /// the nearest sample. Past an equilibrium stop the angle follows the
    /// linearisation about its limit and `(y, z)` are integrated in closed
    /// form against it. Returns `None` beyond an end that stopped on the bound.
    pub fn state_at(&self, s: f64) -> Option<ProfileState> {
        let (lo, hi) = self.s_range();
        if s >= lo && s <= hi {
            return Some(self.local(s).at(s));
        }
        let (end, reason) = if s > hi {
            (*self.last(), self.forward_stop)
        } else {
            (*self.first(), self.backward_stop)
        };
        match reason {
            StopReason::Bound => None,
            StopReason::Equilibrium { theta_limit, .. } => Some(continue_past_equilibrium(
                &self.system,
                &end,
                theta_limit,
                s,
            )),
        }
    }

    /// Largest `|first_integral|` over samples with `|s| ≤ s_window` (F₁ only).
    pub fn first_integral_drift(&self, s_window: f64) -> Option<f64> {
        let ProfileSystem::F1(p) = self.system else {
            return None;
        };
        Some(
            self.samples
                .iter()
                .filter(|st| abs(st.s) <= s_window)
                .map(|st| abs(first_integral(st, &p)))
                .fold(0.0, f64::max),
        )
    }
}

/// Below this, `sin θ*` or `cos θ*` of a limit angle is taken as exactly zero.
const LIMIT_SNAP: f64 = 1e-9;

// (e^{aΔ} − 1)/a, continuous through a = 0.
fn growth(a: f64, ds: f64) -> f64 {
    if abs(a * ds) < 1e-300 || a == 0.0 {
        ds
    } else {
        libm::expm1(a * ds) / a
    }
}

fn continue_past_equilibrium(
    system: &ProfileSystem,
    end: &ProfileState,
    theta_limit: f64,
    s: f64,
) -> ProfileState {
    let ds = s - end.s;
    let delta = end.theta - theta_limit;
    let eps = 1e-6;
    let at = |t: f64| system.rhs(&ProfileState::new(end.s, end.y, end.z, t))[2];
    let mut rate = (at(theta_limit + eps) - at(theta_limit - eps)) / (2.0 * eps);
    if !(rate * ds < 0.0) {
        rate = 0.0;
    }
    let delta = if rate == 0.0 { 0.0 } else { delta };
    let mut sn = sin(theta_limit);
    let mut cs = cos(theta_limit);
    if abs(sn) < LIMIT_SNAP {
        sn = 0.0;
        cs = if cs > 0.0 { 1.0 } else { -1.0 };
    } else if abs(cs) < LIMIT_SNAP {
        cs = 0.0;
        sn = if sn > 0.0 { 1.0 } else { -1.0 };
    }
    let theta = theta_limit + delta * exp(rate * ds);
    let z = end.z + sn * ds + cs * delta * growth(rate, ds);
    let y = end.y + exp(end.z) * (cs * growth(sn, ds) - sn * delta * growth(sn + rate, ds));
    ProfileState::new(s, y, z, theta)
}

/// See [`Trajectory::local`].
#[derive(Debug, Clone, Copy)]
pub struct LocalProfile {
    system: ProfileSystem,
    base: ProfileState,
    stationary: bool,
}

/// RK4 substeps per local evaluation.
const LOCAL_SUBSTEPS: usize = 48;

impl LocalProfile {
    /// Local solution through an arbitrary state.
    pub fn new(system: ProfileSystem, base: ProfileState) -> Self {
        let stationary = system.trap() == Trap::Stationary && base.theta == system.theta0();
        LocalProfile {
            system,
            base,
            stationary,
        }
    }

    pub fn base(&self) -> &ProfileState {
        &self.base
    }

    pub fn at(&self, s: f64) -> ProfileState {
        let [dy, dz, theta] = self.delta_at(s);
        ProfileState::new(s, self.base.y + dy, self.base.z + dz, theta)
    }

    /// `(y − y_b, z − z_b, θ)` at `s`, integrated from zero so the
    /// increments keep full relative precision.
    pub fn delta_at(&self, s: f64) -> [f64; 3] {
        let span = s - self.base.s;
        if span == 0.0 {
            return [0.0, 0.0, self.base.theta];
        }
        let system = self.system;
        let stationary = self.stationary;
        let (y_b, z_b) = (self.base.y, self.base.z);
        let n = LOCAL_SUBSTEPS.max(ceil(abs(span) / 0.002) as usize);
        ode::rk4_fixed(
            |v: &[f64; 3]| {
                let mut d = system.rhs(&ProfileState::new(0.0, y_b + v[0], z_b + v[1], v[2]));
                if stationary {
                    d[2] = 0.0;
                }
                d
            },
            [0.0, 0.0, self.base.theta],
            span,
            n,
        )
    }
}

/// Sign changes of `y' = e^z cos θ` and `z' = sin θ`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CriticalPoints {
    pub y_locations: Vec<f64>,
    pub z_locations: Vec<f64>,
}

impl CriticalPoints {
    pub fn count_y(&self) -> usize {
        self.y_locations.len()
    }

    pub fn count_z(&self) -> usize {
        self.z_locations.len()
    }

    /// Last critical point of either coordinate on the given side of `s = 0`.
    pub fn outermost(&self, end: End) -> Option<f64> {
        let all = self
            .y_locations
            .iter()
            .chain(self.z_locations.iter())
            .copied();
        match end {
            End::Forward => all.filter(|s| *s >= 0.0).reduce(f64::max),
            End::Backward => all.filter(|s| *s <= 0.0).reduce(f64::min),
        }
    }
}

pub fn critical_points(tr: &Trajectory) -> CriticalPoints {
    CriticalPoints {
        y_locations: sign_changes(tr, cos),
        z_locations: sign_changes(tr, sin),
    }
}

// Sign changes of g(θ(s)), skipping exact zeros, refined by bisection in s.
fn sign_changes(tr: &Trajectory, g: fn(f64) -> f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut last: Option<(f64, i8)> = None;
    for st in &tr.samples {
        let sg = sign(g(st.theta));
        if sg == 0 {
            continue;
        }
        if let Some((s_prev, sg_prev)) = last {
            if sg != sg_prev {
                let local = tr.local(0.5 * (s_prev + st.s));
                out.push(bisect(|s| g(local.at(s).theta), s_prev, st.s));
            }
        }
        last = Some((st.s, sg));
    }
    out
}
