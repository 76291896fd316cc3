//! Existence and asymptotic type of invariant translators.
//!
//! `F₁` symmetry is decided symbolically from the bracket of `f` and the
//! special angle `θ₀ − λ`; [`asymptote_fit`] recovers the same answer from
//! an integrated tail so the two can be compared. Slanted symmetry
//! `F₁ + bF₂` and symmetries with an `F₃` component have simpler answers.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

use crate::geometry::KillingField;
use crate::math::{abs, cos, exp, lattice_distance, ln, sign, sin, sqrt};
use crate::ode::IntegratorConfig;
use crate::profile::{
    self, bracket_zeros, critical_points, f_eval, End, F1Params, ProfileError, ProfileSystem,
    SlantedParams, StopReason, Trajectory,
};

/// Tolerance on `θ₀ − λ − kπ` and `θ₀ − λ − π/2 − kπ` for the boundary cases,
/// and on `θ_limit = θ₀ − λ`.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Constant end models win whenever their residual is this small.
pub const CONSTANT_FIT_ACCEPT: f64 = 1e-3;
pub const TAIL_POINTS: usize = 200;
pub const MIN_TAIL_POINTS: usize = 50;
/// Tails are never fitted closer in than this.
pub const MIN_FIT_HORIZON: f64 = 50.0;
/// Relative size below which reduced coefficients count as zero.
pub const COEFF_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassifyError {
    ZeroField,
    Profile(ProfileError),
    /// `X` has no `F₃` component; the vertical analysis does not apply.
    NotVertical,
    /// The integrated slanted profile broke a property it must have.
    Inconsistent(&'static str),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::ZeroField => write!(f, "Killing fields must be non-vanishing"),
            ClassifyError::Profile(e) => write!(f, "{e}"),
            ClassifyError::NotVertical => write!(f, "X has no F3 component"),
            ClassifyError::Inconsistent(what) => {
                write!(f, "integrated profile is inconsistent: {what}")
            }
        }
    }
}

impl core::error::Error for ClassifyError {}

impl From<ProfileError> for ClassifyError {
    fn from(e: ProfileError) -> Self {
        ClassifyError::Profile(e)
    }
}

/// Model surface an end is asymptotic to.
///
/// Logarithmic ends are `z = ln(y₀ + sign·y) + z₀`, half-logarithmic ends
/// `z = ½ ln(y₀ + sign·y) + z₀`, tilted planes `y = c1·z + c0`. Parameters
/// that the symbolic analysis cannot pin down are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndKind {
    HorizontalPlane {
        z0: f64,
    },
    Logarithmic {
        sign: i8,
        y0: Option<f64>,
        z0: f64,
    },
    HalfLogarithmic {
        sign: i8,
        y0: Option<f64>,
        z0: f64,
    },
    TiltedPlane {
        c1: f64,
        c0: Option<f64>,
    },
    VerticalPlane {
        y_value: f64,
    },
    /// `y` and `z` both diverge with limit angle `θ*`; `σ₁ = sin θ*`,
    /// `σ₂ = cos θ*`. Asymptotic to a logarithmic surface.
    DivergentLinear {
        sigma1: f64,
        sigma2: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndShape {
    HorizontalPlane,
    VerticalPlane,
    Logarithmic,
    HalfLogarithmic,
    TiltedPlane,
}

impl EndShape {
    pub fn name(self) -> &'static str {
        match self {
            EndShape::HorizontalPlane => "HorizontalPlane",
            EndShape::VerticalPlane => "VerticalPlane",
            EndShape::Logarithmic => "Logarithmic",
            EndShape::HalfLogarithmic => "HalfLogarithmic",
            EndShape::TiltedPlane => "TiltedPlane",
        }
    }
}

impl EndKind {
    pub fn shape(&self) -> EndShape {
        match self {
            EndKind::HorizontalPlane { .. } => EndShape::HorizontalPlane,
            EndKind::Logarithmic { .. } | EndKind::DivergentLinear { .. } => EndShape::Logarithmic,
            EndKind::HalfLogarithmic { .. } => EndShape::HalfLogarithmic,
            EndKind::TiltedPlane { .. } => EndShape::TiltedPlane,
            EndKind::VerticalPlane { .. } => EndShape::VerticalPlane,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EndKind::DivergentLinear { .. } => "DivergentLinear",
            _ => self.shape().name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEnd {
    pub kind: EndKind,
    pub fit_residual: Option<f64>,
}

impl AsymptoticEnd {
    pub const fn symbolic(kind: EndKind) -> Self {
        AsymptoticEnd {
            kind,
            fit_residual: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    MinimalPlaneHorizontal,
    MinimalPlaneVertical,
    MinimalLogarithmic,
    GrimReaperSlab,
    HalfPlaneGraph,
    GeneralF1,
    SlantedPlaneZ0,
    SlantedGraph,
    VerticalPlaneX,
    VerticalPlaneY,
    NonExistent,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::MinimalPlaneHorizontal => "MinimalPlaneHorizontal",
            Family::MinimalPlaneVertical => "MinimalPlaneVertical",
            Family::MinimalLogarithmic => "MinimalLogarithmic",
            Family::GrimReaperSlab => "GrimReaperSlab",
            Family::HalfPlaneGraph => "HalfPlaneGraph",
            Family::GeneralF1 => "GeneralF1",
            Family::SlantedPlaneZ0 => "SlantedPlaneZ0",
            Family::SlantedGraph => "SlantedGraph",
            Family::VerticalPlaneX => "VerticalPlaneX",
            Family::VerticalPlaneY => "VerticalPlaneY",
            Family::NonExistent => "NonExistent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TranslatorClass {
    pub family: Family,
    /// `[backward (s → −∞), forward (s → +∞)]`.
    pub ends: Option<[AsymptoticEnd; 2]>,
    /// The surface is minimal and `V` is tangent to it.
    pub tangency: bool,
}

impl TranslatorClass {
    const fn bare(family: Family, tangency: bool) -> Self {
        TranslatorClass {
            family,
            ends: None,
            tangency,
        }
    }

    pub fn end(&self, end: End) -> Option<&AsymptoticEnd> {
        self.ends.as_ref().map(|e| match end {
            End::Backward => &e[0],
            End::Forward => &e[1],
        })
    }
}

/// Limit of `θ` at each end: `[backward, forward]`.
pub fn theta_limits(p: &F1Params) -> [f64; 2] {
    let b = bracket_zeros(p);
    if b.degenerate {
        return [p.theta0, p.theta0];
    }
    if f_eval(p.theta0, p) > 0.0 {
        [b.theta1, b.theta2]
    } else {
        [b.theta2, b.theta1]
    }
}

/// Symbolic classification of an `F₁`-invariant translator.
pub fn classify_f1(p: &F1Params) -> Result<TranslatorClass, ClassifyError> {
    p.validate()?;
    let br = bracket_zeros(p);
    if br.degenerate {
        let (s0, c0) = (sin(p.theta0), cos(p.theta0));
        let family = if abs(s0) <= profile::DEGENERACY_TOL {
            Family::MinimalPlaneHorizontal
        } else if abs(c0) <= profile::DEGENERACY_TOL {
            Family::MinimalPlaneVertical
        } else {
            Family::MinimalLogarithmic
        };
        return Ok(TranslatorClass::bare(family, true));
    }
    let limits = theta_limits(p);
    let ends = [
        AsymptoticEnd::symbolic(end_kind(p, limits[0], End::Backward)),
        AsymptoticEnd::symbolic(end_kind(p, limits[1], End::Forward)),
    ];
    let family = if p.mu != 0.0 {
        Family::GeneralF1
    } else if ends
        .iter()
        .all(|e| e.kind.shape() == EndShape::HorizontalPlane)
    {
        Family::GrimReaperSlab
    } else {
        Family::HalfPlaneGraph
    };
    Ok(TranslatorClass {
        family,
        ends: Some(ends),
        tangency: false,
    })
}

fn end_kind(p: &F1Params, limit: f64, end: End) -> EndKind {
    let special = p.shifted_angle();
    // k is the limit of e^{-z}(λ + μy) = θ − θ₀ + λ.
    let k = limit - special;
    if p.mu == 0.0 {
        if abs(k) > BOUNDARY_TOL {
            return EndKind::HorizontalPlane {
                z0: -ln(k / p.lambda),
            };
        }
        if lattice_distance(special, 0.0, PI) <= BOUNDARY_TOL {
            let two_l = 2.0 * abs(p.lambda);
            return EndKind::HalfLogarithmic {
                sign: sign(p.lambda),
                y0: None,
                z0: 0.5 * ln(two_l),
            };
        }
        if lattice_distance(special, FRAC_PI_2, PI) <= BOUNDARY_TOL {
            return EndKind::TiltedPlane {
                c1: -p.lambda,
                c0: None,
            };
        }
        return EndKind::DivergentLinear {
            sigma1: sin(special),
            sigma2: cos(special),
        };
    }
    let z_up = end.sign() * sin(limit) > 0.0;
    let vertical = EndKind::VerticalPlane {
        y_value: -p.lambda / p.mu,
    };
    if !z_up {
        return vertical;
    }
    if abs(k) > BOUNDARY_TOL {
        let b = p.mu / k;
        return EndKind::Logarithmic {
            sign: sign(b),
            y0: Some(p.lambda / k / abs(b)),
            z0: ln(abs(b)),
        };
    }
    // k = 0 forces cos θ* = 0; then λ + μy behaves like e^{-μ|s|}.
    if p.mu > 0.0 {
        vertical
    } else {
        EndKind::DivergentLinear {
            sigma1: sin(limit),
            sigma2: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitError {
    TailTooShort { points: usize },
    Profile(ProfileError),
}

impl fmt::Display for FitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitError::TailTooShort { points } => {
                write!(f, "tail has {points} usable points, need {MIN_TAIL_POINTS}")
            }
            FitError::Profile(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FitError {}

/// `|s|` up to which an end is fitted: the trajectory bound, or for ends that
/// settled on their limit, far enough past the settling point.
pub fn fit_horizon(tr: &Trajectory, end: End) -> f64 {
    match tr.stop(end) {
        StopReason::Bound => abs(tr.end_state(end).s),
        StopReason::Equilibrium { s, .. } => MIN_FIT_HORIZON.max(abs(s) * 4.0 / 3.0),
    }
}

/// Least-squares fit of every end model to the tail of `tr` at `end`,
/// sampled at [`TAIL_POINTS`] values of `s` in the last quarter of
/// `[last critical point, horizon]`.
pub fn asymptote_fit(tr: &Trajectory, end: End, horizon: f64) -> Result<AsymptoticEnd, FitError> {
    let crit = critical_points(tr).outermost(end).map_or(0.0, abs);
    if !(horizon > crit) {
        return Err(FitError::TailTooShort { points: 0 });
    }
    let start = crit + 0.75 * (horizon - crit);
    let mut ys = Vec::with_capacity(TAIL_POINTS);
    let mut zs = Vec::with_capacity(TAIL_POINTS);
    for i in 0..TAIL_POINTS {
        let a = start + (horizon - start) * i as f64 / (TAIL_POINTS - 1) as f64;
        if let Some(st) = tr.state_at(end.sign() * a) {
            if st.y.is_finite() && st.z.is_finite() {
                ys.push(st.y);
                zs.push(st.z);
            }
        }
    }
    if ys.len() < MIN_TAIL_POINTS {
        return Err(FitError::TailTooShort { points: ys.len() });
    }
    Ok(best_model(&ys, &zs))
}

/// Fits every candidate model to points ordered towards the end.
pub fn best_model(ys: &[f64], zs: &[f64]) -> AsymptoticEnd {
    let candidates = [
        fit_constant(zs, |z0| EndKind::HorizontalPlane { z0 }),
        fit_constant(ys, |y_value| EndKind::VerticalPlane { y_value }),
        fit_tilted(ys, zs),
        fit_exponential(ys, zs, 1.0),
        fit_exponential(ys, zs, 2.0),
    ];
    let mut best: Option<(EndKind, f64)> = None;
    for (kind, r) in candidates.iter().take(2) {
        if *r <= CONSTANT_FIT_ACCEPT && best.map_or(true, |(_, b)| *r < b) {
            best = Some((*kind, *r));
        }
    }
    if best.is_none() {
        for (kind, r) in candidates.iter() {
            if r.is_finite() && best.map_or(true, |(_, b)| *r < b) {
                best = Some((*kind, *r));
            }
        }
    }
    let (kind, r) = best.unwrap_or((candidates[0].0, f64::INFINITY));
    AsymptoticEnd {
        kind,
        fit_residual: Some(r),
    }
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn rms(v: impl Iterator<Item = f64>, n: usize) -> f64 {
    sqrt(v.map(|e| e * e).sum::<f64>() / n as f64)
}

fn fit_constant(v: &[f64], kind: impl Fn(f64) -> EndKind) -> (EndKind, f64) {
    let m = mean(v);
    (kind(m), rms(v.iter().map(|x| x - m), v.len()))
}

// Ordinary least squares of t on x: returns (slope, intercept).
fn line_fit(x: &[f64], t: &[f64]) -> Option<(f64, f64)> {
    let (mx, mt) = (mean(x), mean(t));
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if !(sxx > 0.0) || !sxx.is_finite() {
        return None;
    }
    let sxt: f64 = x.iter().zip(t).map(|(a, b)| (a - mx) * (b - mt)).sum();
    let slope = sxt / sxx;
    Some((slope, mt - slope * mx))
}

fn fit_tilted(ys: &[f64], zs: &[f64]) -> (EndKind, f64) {
    match line_fit(zs, ys) {
        Some((c1, c0)) => {
            let r = rms(ys.iter().zip(zs).map(|(y, z)| y - (c1 * z + c0)), ys.len());
            (EndKind::TiltedPlane { c1, c0: Some(c0) }, r)
        }
        None => (EndKind::TiltedPlane { c1: 0.0, c0: None }, f64::INFINITY),
    }
}

// Fits e^{m z} = A + B y (m = 1 logarithmic, m = 2 half-logarithmic) and
// reports the residual of z − ln(A + B y)/m. Values are rescaled by the
// largest |y| and e^{m z_max} so that very tall tails stay finite.
fn fit_exponential(ys: &[f64], zs: &[f64], m: f64) -> (EndKind, f64) {
    let fail = (
        EndKind::Logarithmic {
            sign: 0,
            y0: None,
            z0: 0.0,
        },
        f64::INFINITY,
    );
    let y_scale = ys.iter().fold(0.0f64, |a, y| a.max(abs(*y)));
    let z_max = zs.iter().fold(f64::NEG_INFINITY, |a, z| a.max(*z));
    if !(y_scale > 0.0) || !z_max.is_finite() {
        return fail;
    }
    let yn: Vec<f64> = ys.iter().map(|y| y / y_scale).collect();
    let wn: Vec<f64> = zs.iter().map(|z| exp(m * (z - z_max))).collect();
    let Some((mut b, mut a)) = line_fit(&yn, &wn) else {
        return fail;
    };
    let resid = |a: f64, b: f64| -> f64 {
        let mut acc = 0.0;
        for (y, z) in yn.iter().zip(zs) {
            let w = a + b * y;
            if !(w > 0.0) {
                return f64::INFINITY;
            }
            let e = z - z_max - ln(w) / m;
            acc += e * e;
        }
        sqrt(acc / yn.len() as f64)
    };
    let mut r = resid(a, b);
    // Gauss–Newton in log space, with step halving.
    for _ in 0..30 {
        if !r.is_finite() {
            break;
        }
        let (mut jtj, mut jtr) = ([[0.0; 2]; 2], [0.0; 2]);
        for (y, z) in yn.iter().zip(zs) {
            let w = a + b * y;
            let e = z - z_max - ln(w) / m;
            let g = [1.0 / (m * w), *y / (m * w)];
            for i in 0..2 {
                jtr[i] += g[i] * e;
                for j in 0..2 {
                    jtj[i][j] += g[i] * g[j];
                }
            }
        }
        let det = jtj[0][0] * jtj[1][1] - jtj[0][1] * jtj[1][0];
        if !(abs(det) > 0.0) {
            break;
        }
        let da = (jtj[1][1] * jtr[0] - jtj[0][1] * jtr[1]) / det;
        let db = (jtj[0][0] * jtr[1] - jtj[1][0] * jtr[0]) / det;
        let mut t = 1.0;
        let mut improved = false;
        while t > 1e-6 {
            let rn = resid(a + t * da, b + t * db);
            if rn < r {
                a += t * da;
                b += t * db;
                let gain = r - rn;
                r = rn;
                improved = gain > 1e-15 * (1.0 + r);
                break;
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    if !r.is_finite() || b == 0.0 {
        return fail;
    }
    // Back to e^{m z} = A + B y with A = a e^{m z_max}, B = b e^{m z_max} / Y.
    let sgn = sign(b);
    let y0 = a * y_scale / abs(b);
    let z0 = z_max + (ln(abs(b)) - ln(y_scale)) / m;
    let n = zs.len();
    if zs[n - 1] < zs[0] {
        // z decreasing towards the end: y tends to the vertical asymptote.
        return (
            EndKind::VerticalPlane {
                y_value: -a * y_scale / b,
            },
            r,
        );
    }
    let kind = if m == 1.0 {
        EndKind::Logarithmic {
            sign: sgn,
            y0: Some(y0),
            z0,
        }
    } else {
        EndKind::HalfLogarithmic {
            sign: sgn,
            y0: Some(y0),
            z0,
        }
    };
    (kind, r)
}

/// Fits both ends of an integrated `F₁` trajectory.
pub fn fit_ends(tr: &Trajectory) -> [Result<AsymptoticEnd, FitError>; 2] {
    [End::Backward, End::Forward].map(|e| asymptote_fit(tr, e, fit_horizon(tr, e)))
}

/// Longest horizon [`cross_check`] extends to while waiting for slowly
/// converging ends. An end with linear rate `r` settles after about
/// `20 / r`, so rates below 1e-4 are out of reach.
pub const MAX_CHECK_HORIZON: f64 = 2e5;

/// Symbolic classification with the tail fits attached as residuals,
/// plus whether every fitted end has the predicted shape.
///
/// Ends that are still moving at `s_max` cannot be fitted, so the horizon
/// is extended fourfold (up to [`MAX_CHECK_HORIZON`]) until every end
/// that converges exponentially has settled.
/// Near a boundary case that rate is close to zero.
pub fn cross_check(
    p: &F1Params,
    cfg: &IntegratorConfig,
    s_max: f64,
) -> Result<CrossCheck, ClassifyError> {
    let class = classify_f1(p)?;
    let mut horizon = s_max;
    let mut tr = profile::integrate(ProfileSystem::F1(*p), horizon, cfg)?;
    // Boundary-case ends approach their limit algebraically and never stop.
    let algebraic = |end: End| {
        class.end(end).is_some_and(|e| {
            matches!(
                e.kind.shape(),
                EndShape::HalfLogarithmic | EndShape::TiltedPlane
            )
        })
    };
    let settled = |tr: &Trajectory| {
        [End::Backward, End::Forward]
            .into_iter()
            .all(|end| algebraic(end) || matches!(tr.stop(end), StopReason::Equilibrium { .. }))
    };
    while class.ends.is_some() && !settled(&tr) && horizon < MAX_CHECK_HORIZON {
        horizon = (4.0 * horizon).min(MAX_CHECK_HORIZON);
        tr = profile::integrate(ProfileSystem::F1(*p), horizon, cfg)?;
    }
    let fits = fit_ends(&tr);
    let agree = match &class.ends {
        None => true,
        Some(ends) => ends
            .iter()
            .zip(fits.iter())
            .all(|(sym, fit)| matches!(fit, Ok(f) if f.kind.shape() == sym.kind.shape())),
    };
    Ok(CrossCheck { class, fits, agree })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    pub class: TranslatorClass,
    pub fits: [Result<AsymptoticEnd, FitError>; 2],
    pub agree: bool,
}

/// Classification of an `(F₁ + bF₂)`-invariant translator in the direction
/// `V`. The `F₁` part of `V` is absorbed through `λ̃ = λ − bη`.
pub fn classify_slanted(
    b: f64,
    v: &KillingField,
    theta0: f64,
    cfg: &IntegratorConfig,
    s_max: f64,
) -> Result<TranslatorClass, ClassifyError> {
    v.non_vanishing().map_err(|_| ClassifyError::ZeroField)?;
    if b == 0.0 {
        return Err(ProfileError::ZeroSlant.into());
    }
    if v.c_f3 != 0.0 {
        // H = ḡ(ν, V) picks up a term linear in u unless sin θ ≡ 0, and on
        // the plane z = 0 it reads 0 = μ.
        return Ok(TranslatorClass::bare(Family::NonExistent, false));
    }
    let lambda_t = v.c_f2 - b * v.c_f1;
    let scale = 1.0 + abs(v.c_f2) + abs(b * v.c_f1);
    let tangent = abs(lambda_t) <= COEFF_ZERO_TOL * scale;
    if abs(sin(theta0)) <= profile::DEGENERACY_TOL {
        return Ok(TranslatorClass::bare(Family::SlantedPlaneZ0, true));
    }
    let sp = SlantedParams::new(b, lambda_t, theta0)?;
    let tr = profile::integrate(ProfileSystem::Slanted(sp), s_max, cfg)?;
    check_slanted(&tr, &sp)?;
    Ok(TranslatorClass::bare(Family::SlantedGraph, tangent))
}

/// The barrier, monotone-`z` and critical-point properties of a slanted profile.
pub fn check_slanted(tr: &Trajectory, sp: &SlantedParams) -> Result<(), ClassifyError> {
    let Some((lo, hi)) = sp.barrier() else {
        return Ok(());
    };
    if tr
        .samples
        .iter()
        .any(|st| !(st.theta > lo && st.theta < hi))
    {
        return Err(ClassifyError::Inconsistent("angle left its barrier strip"));
    }
    if tr
        .samples
        .windows(2)
        .any(|w| sign(w[1].z - w[0].z) != sign(sin(sp.theta0)))
    {
        return Err(ClassifyError::Inconsistent("z is not strictly monotone"));
    }
    let cp = critical_points(tr);
    if cp.count_y() > 1 || cp.count_z() > 0 {
        return Err(ClassifyError::Inconsistent("too many critical points"));
    }
    Ok(())
}

/// Outcome for a symmetry with an `F₃` component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExistenceVerdict {
    pub exists: bool,
    pub witness: TranslatorClass,
    pub lambda_tilde: f64,
    pub eta_tilde: f64,
    pub note: &'static str,
}

/// Reduced coefficients `(η̃, λ̃)` of `V = (μ/c)X + η̃F₁ + λ̃F₂`.
pub fn reduced_coefficients(x: &KillingField, v: &KillingField) -> (f64, f64) {
    let t = v.c_f3 / x.c_f3;
    (v.c_f1 - t * x.c_f1, v.c_f2 - t * x.c_f2)
}

/// Existence for `X = aF₁ + bF₂ + cF₃`, `c ≠ 0`: a translator exists iff
/// `λ̃ η̃ = 0`, and then it is minimal with `V` tangent.
pub fn classify_vertical(
    x: &KillingField,
    v: &KillingField,
) -> Result<ExistenceVerdict, ClassifyError> {
    v.non_vanishing().map_err(|_| ClassifyError::ZeroField)?;
    if x.c_f3 == 0.0 {
        return Err(ClassifyError::NotVertical);
    }
    let (eta_t, lambda_t) = reduced_coefficients(x, v);
    let t = abs(v.c_f3 / x.c_f3);
    let scale = 1.0 + abs(v.c_f1) + abs(v.c_f2) + t * (abs(x.c_f1) + abs(x.c_f2));
    let eta_zero = abs(eta_t) <= COEFF_ZERO_TOL * scale;
    let lambda_zero = abs(lambda_t) <= COEFF_ZERO_TOL * scale;
    let (exists, family, note) = match (lambda_zero, eta_zero) {
        (false, false) => (
            false,
            Family::NonExistent,
            "lambda~ * eta~ != 0: u-dependent mean curvature",
        ),
        (false, true) => (
            true,
            Family::VerticalPlaneX,
            "x' = 0: profile x = const in z = 0",
        ),
        (true, false) => (
            true,
            Family::VerticalPlaneY,
            "y' = 0: profile y = const in z = 0",
        ),
        (true, true) => (
            true,
            Family::VerticalPlaneX,
            "V is a multiple of X: every minimal X-invariant surface",
        ),
    };
    Ok(ExistenceVerdict {
        exists,
        witness: TranslatorClass::bare(family, exists),
        lambda_tilde: lambda_t,
        eta_tilde: eta_t,
        note,
    })
}

/// Which reduction a `(X, V)` pair falls under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reduction {
    /// `X = aF₁`: classified with these parameters.
    F1(F1Params),
    /// `X = bF₂`: the isometry `(x, y, z) ↦ (y, x, −z)` exchanges `F₁` and
    /// `F₂` and negates `F₃`, so `V = (η, λ, μ)` becomes `(λ, η, −μ)`.
    MirroredF2(F1Params),
    /// `X = aF₁ + bF₂`, `ab ≠ 0`, normalised to `F₁ + (b/a)F₂`.
    Slanted {
        b: f64,
        v: KillingField,
    },
    Vertical,
}

pub fn reduce(x: &KillingField, v: &KillingField, theta0: f64) -> Result<Reduction, ClassifyError> {
    x.non_vanishing().map_err(|_| ClassifyError::ZeroField)?;
    v.non_vanishing().map_err(|_| ClassifyError::ZeroField)?;
    if x.c_f3 != 0.0 {
        return Ok(Reduction::Vertical);
    }
    if x.c_f2 == 0.0 {
        return Ok(Reduction::F1(F1Params::new(v.c_f2, v.c_f3, theta0)));
    }
    if x.c_f1 == 0.0 {
        return Ok(Reduction::MirroredF2(F1Params::new(
            v.c_f1, -v.c_f3, theta0,
        )));
    }
    Ok(Reduction::Slanted {
        b: x.c_f2 / x.c_f1,
        v: *v,
    })
}

/// Full classification of an `X`-invariant translator in the direction `V`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub reduction: Reduction,
    pub class: TranslatorClass,
    pub verdict: Option<ExistenceVerdict>,
}

pub fn classify(
    x: &KillingField,
    v: &KillingField,
    theta0: f64,
    cfg: &IntegratorConfig,
    s_max: f64,
) -> Result<Classification, ClassifyError> {
    let reduction = reduce(x, v, theta0)?;
    let (class, verdict) = match reduction {
        Reduction::F1(p) | Reduction::MirroredF2(p) => (classify_f1(&p)?, None),
        Reduction::Slanted { b, v } => (classify_slanted(b, &v, theta0, cfg, s_max)?, None),
        Reduction::Vertical => {
            let verdict = classify_vertical(x, v)?;
            (verdict.witness, Some(verdict))
        }
    };
    Ok(Classification {
        reduction,
        class,
        verdict,
    })
}
