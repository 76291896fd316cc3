//! Finite-difference oracles. Everything here is rebuilt from sampled
//! immersions and the Sol₃ primitives in [`crate::geometry`]; none of the
//! closed-form surface formulas are consulted.

use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{
    coord_to_frame, covariant_along, flow, inner, sectional_curvature, FrameVector, GeometryError,
    KillingField, Point,
};
use crate::math::{abs, sqrt};
use crate::profile::LocalProfile;
#[cfg(test)]
use crate::profile::ProfileState;
use crate::surface::{FundamentalForms, PlaneCurve};

pub const DEFAULT_STEP: f64 = 1e-3;

/// Tolerance on `|H − ḡ(ν, V)|` for end-to-end translator checks.
pub const TRANSLATOR_TOL: f64 = 1e-4;

/// Relative spread of the right-hand side across `u` above which the
/// surface is reported as `u`-dependent.
pub const U_VARIATION: f64 = 0.1;

/// Below this the right-hand side counts as identically zero.
pub const U_ZERO: f64 = 1e-6;

/// One analytic-versus-oracle comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub quantity: &'static str,
    pub analytic: f64,
    pub oracle: f64,
    pub error: f64,
    pub h: f64,
    pub u: f64,
    pub s: f64,
}

impl OracleReport {
    pub fn new(quantity: &'static str, analytic: f64, oracle: f64, h: f64, u: f64, s: f64) -> Self {
        OracleReport {
            quantity,
            analytic,
            oracle,
            error: abs(analytic - oracle),
            h,
            u,
            s,
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.error <= tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VerifyError {
    NonPositiveStep(f64),
    /// The immersion produced a non-finite point on the stencil.
    Stencil {
        u: f64,
        s: f64,
    },
    /// Tangent vectors on the stencil are linearly dependent.
    Degenerate {
        u: f64,
        s: f64,
    },
    /// The check needs a generator with an `F₃` component.
    NotVertical,
    /// Profile immersions need a generator without an `F₃` component.
    NotHorizontal,
    Geometry(GeometryError),
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::NonPositiveStep(h) => {
                write!(f, "finite-difference step {h} must be positive")
            }
            VerifyError::Stencil { u, s } => {
                write!(f, "immersion not finite near (u, s) = ({u}, {s})")
            }
            VerifyError::Degenerate { u, s } => {
                write!(f, "immersion degenerate at (u, s) = ({u}, {s})")
            }
            VerifyError::NotVertical => write!(f, "generator must have a nonzero F3 coefficient"),
            VerifyError::NotHorizontal => write!(f, "generator must have a zero F3 coefficient"),
            VerifyError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for VerifyError {}

impl From<GeometryError> for VerifyError {
    fn from(e: GeometryError) -> Self {
        VerifyError::Geometry(e)
    }
}

/// Fundamental forms of `m` at `(u, s)` from a 5×5 stencil of spacing `h`.
///
/// Tangents are central differences, converted to frame components at their
/// own base points. `A_ij = ḡ(∇_{T_i} T_j, ν)` uses central differences of
/// those components plus the connection table; the mixed entry is averaged.
/// All derivatives are second-order accurate.
pub fn fd_forms<M>(m: M, u: f64, s: f64, h: f64) -> Result<FundamentalForms, VerifyError>
where
    M: Fn(f64, f64) -> Point,
{
    if !(h > 0.0) || !h.is_finite() {
        return Err(VerifyError::NonPositiveStep(h));
    }
    let mut grid = [[Point::IDENTITY; 5]; 5];
    for (i, row) in grid.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (di, dj) = (i as i32 - 2, j as i32 - 2);
            if abs(di as f64) + abs(dj as f64) > 2.0 {
                continue;
            }
            let p = m(u + di as f64 * h, s + dj as f64 * h);
            if !p.is_finite() {
                return Err(VerifyError::Stencil { u, s });
            }
            *cell = p;
        }
    }
    let at = |i: i32, j: i32| grid[(i + 2) as usize][(j + 2) as usize];
    let t_u =
        |i: i32, j: i32| coord_to_frame(at(i + 1, j).coord_diff(at(i - 1, j), 2.0 * h), at(i, j));
    let t_s =
        |i: i32, j: i32| coord_to_frame(at(i, j + 1).coord_diff(at(i, j - 1), 2.0 * h), at(i, j));
    let d = |a: FrameVector, b: FrameVector| (1.0 / (2.0 * h)) * (a - b);

    let (tu, ts) = (t_u(0, 0), t_s(0, 0));
    let normal = tu.cross(ts);
    if !(normal.norm() > 0.0) {
        return Err(VerifyError::Degenerate { u, s });
    }
    let nu = normal.normalized();

    let uu = covariant_along(tu, tu, d(t_u(1, 0), t_u(-1, 0)));
    let us = covariant_along(tu, ts, d(t_s(1, 0), t_s(-1, 0)));
    let su = covariant_along(ts, tu, d(t_u(0, 1), t_u(0, -1)));
    let ss = covariant_along(ts, ts, d(t_s(0, 1), t_s(0, -1)));
    let mixed = 0.5 * (us.dot(nu) + su.dot(nu));
    let a = [[uu.dot(nu), mixed], [mixed, ss.dot(nu)]];
    let g = [[tu.dot(tu), tu.dot(ts)], [ts.dot(tu), ts.dot(ts)]];

    let det_g = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let h_trace = (a[0][0] * g[1][1] - 2.0 * a[0][1] * g[0][1] + a[1][1] * g[0][0]) / det_g;
    let det_shape = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det_g;
    Ok(FundamentalForms {
        g,
        a,
        nu,
        h: h_trace,
        det_shape,
        k: sectional_curvature(tu, ts) + det_shape,
    })
}

/// `H` from two step sizes combined to cancel the `h²` term.
pub fn richardson_h<M>(m: M, u: f64, s: f64, h: f64) -> Result<f64, VerifyError>
where
    M: Fn(f64, f64) -> Point,
{
    let coarse = fd_forms(&m, u, s, h)?.h;
    let fine = fd_forms(&m, u, s, 0.5 * h)?.h;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `|H − ḡ(ν, V)|` at `p`, where `forms` normally comes from [`fd_forms`].
/// `analytic` is `ḡ(ν, V)` and `oracle` is `H`.
pub fn translator_residual(
    forms: &FundamentalForms,
    p: Point,
    v: KillingField,
    h: f64,
    u: f64,
    s: f64,
) -> OracleReport {
    let gv = forms.nu.dot(coord_to_frame(v.at(p), p));
    OracleReport::new("translator_residual", gv, forms.h, h, u, s)
}

/// `ḡ(d/dt (φ^V_t ⋆ p)|₀, ν)`, with the flow differentiated numerically.
pub fn flow_velocity_normal(
    p: Point,
    nu: FrameVector,
    v: KillingField,
    h: f64,
) -> Result<f64, VerifyError> {
    if !(h > 0.0) {
        return Err(VerifyError::NonPositiveStep(h));
    }
    let fwd = flow(v, h)?.compose(p);
    let back = flow(v, -h)?.compose(p);
    Ok(coord_to_frame(fwd.coord_diff(back, 2.0 * h), p).dot(nu))
}

/// Metric speed `|∂_s m|` by fourth-order central differences.
pub fn profile_speed<M>(m: M, u: f64, s: f64, h: f64) -> f64
where
    M: Fn(f64, f64) -> Point,
{
    let p = m(u, s);
    let near = m(u, s + h).coord_diff(m(u, s - h), 2.0 * h);
    let far = m(u, s + 2.0 * h).coord_diff(m(u, s - 2.0 * h), 4.0 * h);
    let t = (4.0 / 3.0) * near - (1.0 / 3.0) * far;
    sqrt(inner(p, t, t))
}

/// The immersion `(u, s) ↦ φ^X_u ⋆ (0, y(s), z(s))` of a local profile,
/// for `X = aF₁ + bF₂`.
///
/// Finite differences run in the chart [`ProfileImmersion::chart`], the
/// surface left-translated by the inverse of the base point. Left
/// translations are isometries and keep frame components, so forms
/// computed there hold at [`ProfileImmersion::point`] as well, and the
/// chart avoids differencing coordinates that sit far from zero.
#[derive(Debug, Clone, Copy)]
pub struct ProfileImmersion {
    lp: LocalProfile,
    x: KillingField,
}

impl ProfileImmersion {
    pub fn new(lp: LocalProfile, x: KillingField) -> Result<Self, VerifyError> {
        let x = x.non_vanishing()?;
        if x.c_f3 != 0.0 {
            return Err(VerifyError::NotHorizontal);
        }
        Ok(ProfileImmersion { lp, x })
    }

    pub fn base_point(&self) -> Point {
        let b = self.lp.base();
        Point::new(0.0, b.y, b.z)
    }

    /// `γ_b⁻¹ ⋆ φ^X_u ⋆ γ(s)`.
    pub fn chart(&self, u: f64, s: f64) -> Point {
        let [dy, dz, _] = self.lp.delta_at(s);
        let zb = self.lp.base().z;
        let (a, b) = (self.x.c_f1, self.x.c_f2);
        Point::new(libm::exp(zb) * a * u, libm::exp(-zb) * (b * u + dy), dz)
    }

    pub fn point(&self, u: f64, s: f64) -> Point {
        self.base_point().compose(self.chart(u, s))
    }
}

/// The immersion `(u, s) ↦ φ^X_u ⋆ γ(s)` for a curve in `z = 0`.
pub fn curve_immersion(
    x: KillingField,
    curve: PlaneCurve,
) -> Result<impl Fn(f64, f64) -> Point, VerifyError> {
    let x = x.non_vanishing()?;
    Ok(move |u: f64, s: f64| {
        let phi = flow(x, u).unwrap_or(Point::new(f64::NAN, f64::NAN, f64::NAN));
        phi.compose(curve.point(s))
    })
}

/// Both sides of `|N| H = ḡ(N, V − (μ/c) X)` along one orbit, with
/// `N = T_u × T_s`. The left side is constant in `u` by symmetry, so a
/// translator needs the right side to be constant too.
#[derive(Debug, Clone, PartialEq)]
pub struct UIndependenceReport {
    pub s: f64,
    pub u_values: Vec<f64>,
    /// `|N| H` from finite differences.
    pub lhs: Vec<f64>,
    /// `ḡ(N, η̃F₁ + λ̃F₂)` through the geometry primitives.
    pub rhs: Vec<f64>,
    /// `c (−η̃ y' e^{cu} + λ̃ x' e^{−cu})`.
    pub closed_form: Vec<f64>,
    pub eta_tilde: f64,
    pub lambda_tilde: f64,
    /// `max rhs − min rhs`.
    pub rhs_spread: f64,
    pub u_dependent: bool,
}

impl UIndependenceReport {
    pub fn residuals(&self) -> impl Iterator<Item = f64> + '_ {
        self.lhs.iter().zip(&self.rhs).map(|(l, r)| l - r)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals().map(abs).fold(0.0, f64::max)
    }
}

pub fn u_independence_check(
    x: KillingField,
    curve: PlaneCurve,
    v: KillingField,
    s: f64,
    u_values: &[f64],
    h: f64,
) -> Result<UIndependenceReport, VerifyError> {
    if x.c_f3 == 0.0 {
        return Err(VerifyError::NotVertical);
    }
    let c = x.c_f3;
    let t = v.c_f3 / c;
    let (eta_t, lambda_t) = (v.c_f1 - t * x.c_f1, v.c_f2 - t * x.c_f2);
    let reduced = KillingField::new(eta_t, lambda_t, 0.0);
    let m = curve_immersion(x, curve)?;
    let [_, [dx, dy], _] = curve.jet(s);

    let (mut lhs, mut rhs, mut closed_form) = (Vec::new(), Vec::new(), Vec::new());
    for &u in u_values {
        let forms = fd_forms(&m, u, s, h)?;
        let p = m(u, s);
        let area = sqrt(forms.g[0][0] * forms.g[1][1] - forms.g[0][1] * forms.g[1][0]);
        lhs.push(area * forms.h);
        rhs.push(area * forms.nu.dot(coord_to_frame(reduced.at(p), p)));
        let e = libm::exp(c * u);
        closed_form.push(c * (-eta_t * dy * e + lambda_t * dx / e));
    }
    let hi = rhs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = rhs.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = rhs.iter().map(|r| abs(*r)).fold(0.0, f64::max);
    let rhs_spread = hi - lo;
    Ok(UIndependenceReport {
        s,
        u_values: u_values.to_vec(),
        lhs,
        rhs,
        closed_form,
        eta_tilde: eta_t,
        lambda_tilde: lambda_t,
        rhs_spread,
        u_dependent: scale > U_ZERO && rhs_spread > U_VARIATION * scale,
    })
}
