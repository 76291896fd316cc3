//! Invariant surfaces swept by a profile curve: analytic fundamental forms
//! and sampled meshes.
//!
//! Forms are expressed in the `(u, s)` chart `M(u, s) = φ_u ⋆ γ(s)` where
//! `φ_u` is the flow of the symmetry generator. Left translations preserve
//! frame components, so every quantity here depends on `s` only.

use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{
    covariant_along, flow, frame_to_coord, sectional_curvature, CoordVector, FrameVector,
    GeometryError, KillingField, Point,
};
use crate::math::{abs, cos, exp, sin, sqrt};
use crate::profile::{
    f_eval, slanted_theta_prime, F1Params, ProfileState, ProfileSystem, SlantedParams, Trajectory,
};

pub type Mat2 = [[f64; 2]; 2];

/// Induced metric `g`, second fundamental form `A = ḡ(∇_{T_i}T_j, ν)`, unit
/// normal, `H = tr(A g⁻¹)` (sum of principal curvatures), `det(A g⁻¹)` and
/// the intrinsic curvature `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FundamentalForms {
    pub g: Mat2,
    pub a: Mat2,
    pub nu: FrameVector,
    pub h: f64,
    pub det_shape: f64,
    pub k: f64,
}

fn det2(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// `tr(A g⁻¹)` for symmetric 2×2 matrices.
pub fn trace_against(a: &Mat2, g: &Mat2) -> f64 {
    (a[0][0] * g[1][1] - 2.0 * a[0][1] * g[0][1] + a[1][1] * g[0][0]) / det2(g)
}

/// Gram matrix of two frame vectors.
pub fn gram(tu: FrameVector, ts: FrameVector) -> Mat2 {
    let off = tu.dot(ts);
    [[tu.dot(tu), off], [off, ts.dot(ts)]]
}

/// Forms of an `F₁`-invariant surface `(u, y(s), z(s))`, with `θ'` taken
/// from the autonomous angle equation of `p`.
pub fn forms_f1(st: &ProfileState, p: &F1Params) -> FundamentalForms {
    let (s, c) = (sin(st.theta), cos(st.theta));
    let dtheta = f_eval(st.theta, p);
    let e2 = exp(2.0 * st.z);
    FundamentalForms {
        g: [[e2, 0.0], [0.0, 1.0]],
        a: [[-e2 * c, 0.0], [0.0, dtheta + c]],
        nu: FrameVector::new(0.0, -s, c),
        h: dtheta,
        det_shape: -(dtheta + c) * c,
        k: -s * s - c * dtheta,
    }
}

/// Forms of an `(F₁ + bF₂)`-invariant surface `(u, bu + y(s), z(s))` along
/// a solution of the slanted angle equation. `p.lambda` is the reduced
/// coefficient `λ − bη`.
pub fn forms_slanted(st: &ProfileState, p: &SlantedParams) -> FundamentalForms {
    let b = p.b;
    let (s, c) = (sin(st.theta), cos(st.theta));
    let dtheta = slanted_theta_prime(st.z, st.theta, p);
    let (ez, e2, e4) = (exp(st.z), exp(2.0 * st.z), exp(4.0 * st.z));
    let n = sqrt(e4 + b * b * s * s);
    let g = [[e2 + b * b / e2, b / ez * c], [b / ez * c, 1.0]];
    let off = b * (1.0 + s * s) * ez / n;
    let a = [[(b * b - e4) * c / n, off], [off, (dtheta + c) * e2 / n]];
    let nu = FrameVector::new(b * s / n, -e2 * s / n, e2 * c / n);
    let h = e2 * ((e4 + b * b) * dtheta - 2.0 * b * b * c * s * s) / (n * n * n);
    let det_shape = det2(&a) / det2(&g);
    let tu = FrameVector::new(ez, b / ez, 0.0);
    let ts = FrameVector::new(0.0, c, s);
    FundamentalForms {
        g,
        a,
        nu,
        h,
        det_shape,
        k: sectional_curvature(tu, ts) + det_shape,
    }
}

/// Forms along whichever reduced system the state solves.
pub fn forms_for(system: &ProfileSystem, st: &ProfileState) -> FundamentalForms {
    match system {
        ProfileSystem::F1(p) => forms_f1(st, p),
        ProfileSystem::Slanted(p) => forms_slanted(st, p),
    }
}

/// `H − ḡ(ν, V)` at `p`; zero exactly on translators in the direction `V`.
pub fn translator_defect(forms: &FundamentalForms, p: Point, v: KillingField) -> f64 {
    forms.h - forms.nu.dot(v.frame_at(p))
}

/// Arc-length curves in the plane `z = 0`, used as profiles when the
/// symmetry generator has an `F₃` component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PlaneCurve {
    /// `x ≡ x0`, `y = s`.
    LineX {
        x0: f64,
    },
    /// `y ≡ y0`, `x = s`.
    LineY {
        y0: f64,
    },
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
    },
}

impl PlaneCurve {
    /// `(x, y)`, `(x', y')`, `(x'', y'')` at `s`.
    pub fn jet(&self, s: f64) -> [[f64; 2]; 3] {
        match *self {
            PlaneCurve::LineX { x0 } => [[x0, s], [0.0, 1.0], [0.0, 0.0]],
            PlaneCurve::LineY { y0 } => [[s, y0], [1.0, 0.0], [0.0, 0.0]],
            PlaneCurve::Circle { cx, cy, r } => {
                let (sn, cs) = (sin(s / r), cos(s / r));
                [[cx + r * cs, cy + r * sn], [-sn, cs], [-cs / r, -sn / r]]
            }
        }
    }

    pub fn point(&self, s: f64) -> Point {
        let [[x, y], _, _] = self.jet(s);
        Point::new(x, y, 0.0)
    }
}

/// Forms of the `X`-invariant surface through a planar curve, for any `X`
/// transverse to the curve. Frame components of `T_u = X` and `T_s` do
/// not depend on `u`, so only their `s`-derivatives enter.
pub fn forms_invariant(x: KillingField, curve: &PlaneCurve, s: f64) -> FundamentalForms {
    let [[px, py], [dx, dy], [ddx, ddy]] = curve.jet(s);
    let (a, b, c) = (x.c_f1, x.c_f2, x.c_f3);
    let tu = FrameVector::new(a - c * px, b + c * py, c);
    let ts = FrameVector::new(dx, dy, 0.0);
    let dtu = FrameVector::new(-c * dx, c * dy, 0.0);
    let dts = FrameVector::new(ddx, ddy, 0.0);
    let nu = tu.cross(ts).normalized();
    let a_uu = covariant_along(tu, tu, FrameVector::ZERO).dot(nu);
    let a_us = covariant_along(ts, tu, dtu).dot(nu);
    let a_ss = covariant_along(ts, ts, dts).dot(nu);
    let g = gram(tu, ts);
    let am = [[a_uu, a_us], [a_us, a_ss]];
    let det_shape = det2(&am) / det2(&g);
    FundamentalForms {
        g,
        a: am,
        nu,
        h: trace_against(&am, &g),
        det_shape,
        k: sectional_curvature(tu, ts) + det_shape,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SurfaceError {
    EmptyTrajectory,
    /// Fewer than two `u` samples, or a range that is not increasing.
    EmptyURange,
    /// Fewer than two `s` samples.
    TooFewSamples,
    /// The generator does not match the system the profile solves.
    SymmetryMismatch,
    Geometry(GeometryError),
}

impl fmt::Display for SurfaceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceError::EmptyTrajectory => write!(f, "trajectory has no samples"),
            SurfaceError::EmptyURange => {
                write!(f, "u range needs min < max and at least 2 samples")
            }
            SurfaceError::TooFewSamples => write!(f, "profile needs at least 2 s samples"),
            SurfaceError::SymmetryMismatch => {
                write!(f, "symmetry generator does not match the profile system")
            }
            SurfaceError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for SurfaceError {}

impl From<GeometryError> for SurfaceError {
    fn from(e: GeometryError) -> Self {
        SurfaceError::Geometry(e)
    }
}

/// Evenly spaced orbit parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct URange {
    pub min: f64,
    pub max: f64,
    pub samples: usize,
}

impl Default for URange {
    fn default() -> Self {
        URange {
            min: -3.0,
            max: 3.0,
            samples: 64,
        }
    }
}

impl URange {
    pub fn new(min: f64, max: f64, samples: usize) -> Result<Self, SurfaceError> {
        let r = URange { min, max, samples };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        if self.samples < 2
            || !(self.min < self.max)
            || !self.min.is_finite()
            || !self.max.is_finite()
        {
            return Err(SurfaceError::EmptyURange);
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.samples;
        (0..n)
            .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Vertices on the `(u_i, s_j)` grid, stored row by row in `u`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceMesh {
    pub u_values: Vec<f64>,
    pub s_values: Vec<f64>,
    pub vertices: Vec<Point>,
    /// Unit normals in the Sol₃ metric, coordinate components.
    pub normals: Vec<CoordVector>,
    pub mean_curvature: Vec<f64>,
    pub triangles: Vec<[usize; 3]>,
}

impl SurfaceMesh {
    pub fn index(&self, i_u: usize, j_s: usize) -> usize {
        i_u * self.s_values.len() + j_s
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Image under the isometry `(x, y, z) ↦ (y, x, −z)`, which exchanges
    /// `F₁` and `F₂` and sends `E₁, E₂, E₃` to `E₂, E₁, −E₃`.
    pub fn mirrored(&self) -> SurfaceMesh {
        let vertices: Vec<Point> = self.vertices.iter().map(|p| mirror_point(*p)).collect();
        let normals = self
            .normals
            .iter()
            .zip(&self.vertices)
            .map(|(n, p)| {
                let f = crate::geometry::coord_to_frame(*n, *p);
                frame_to_coord(FrameVector::new(f.e2, f.e1, -f.e3), mirror_point(*p))
            })
            .collect();
        SurfaceMesh {
            vertices,
            normals,
            ..self.clone()
        }
    }
}

pub fn mirror_point(p: Point) -> Point {
    Point::new(p.y, p.x, -p.z)
}

fn grid_triangles(n_u: usize, n_s: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(2 * (n_u - 1) * (n_s - 1));
    for i in 0..n_u - 1 {
        for j in 0..n_s - 1 {
            let v00 = i * n_s + j;
            let v01 = v00 + 1;
            let v10 = v00 + n_s;
            let v11 = v10 + 1;
            out.push([v00, v10, v11]);
            out.push([v00, v11, v01]);
        }
    }
    out
}

fn assemble(
    x: KillingField,
    u: &URange,
    s_values: Vec<f64>,
    profile: impl Fn(usize) -> (Point, FrameVector, f64),
) -> Result<SurfaceMesh, SurfaceError> {
    u.validate()?;
    if s_values.len() < 2 {
        return Err(SurfaceError::TooFewSamples);
    }
    let u_values = u.values();
    let column: Vec<(Point, FrameVector, f64)> = (0..s_values.len()).map(profile).collect();
    let n = u_values.len() * s_values.len();
    let mut vertices = Vec::with_capacity(n);
    let mut normals = Vec::with_capacity(n);
    let mut mean_curvature = Vec::with_capacity(n);
    for &ui in &u_values {
        let phi = flow(x, ui)?;
        for (gamma, nu, h) in &column {
            let p = phi.compose(*gamma);
            vertices.push(p);
            normals.push(frame_to_coord(*nu, p));
            mean_curvature.push(*h);
        }
    }
    let triangles = grid_triangles(u_values.len(), s_values.len());
    Ok(SurfaceMesh {
        u_values,
        s_values,
        vertices,
        normals,
        mean_curvature,
        triangles,
    })
}

/// Mesh of `φ_u ⋆ γ(s)` for an integrated profile, on the trajectory's own
/// `s` grid. `x` must be a nonzero multiple of `F₁` for an `F₁` profile and
/// of `F₁ + bF₂` for a slanted one.
pub fn build_mesh(
    tr: &Trajectory,
    x: KillingField,
    u: &URange,
) -> Result<SurfaceMesh, SurfaceError> {
    if tr.samples.is_empty() {
        return Err(SurfaceError::EmptyTrajectory);
    }
    let slope = match tr.system {
        ProfileSystem::F1(_) => 0.0,
        ProfileSystem::Slanted(p) => p.b,
    };
    if x.c_f1 == 0.0 || x.c_f3 != 0.0 || abs(x.c_f2 / x.c_f1 - slope) > 1e-12 * (1.0 + abs(slope)) {
        return Err(SurfaceError::SymmetryMismatch);
    }
    let s_values = tr.samples.iter().map(|st| st.s).collect();
    assemble(x, u, s_values, |j| {
        let st = &tr.samples[j];
        let forms = forms_for(&tr.system, st);
        (Point::new(0.0, st.y, st.z), forms.nu, forms.h)
    })
}

/// Mesh of the `X`-invariant surface through a planar curve (`c ≠ 0`
/// witnesses), sampled at the given arc-length parameters.
pub fn build_curve_mesh(
    x: KillingField,
    curve: &PlaneCurve,
    s_values: &[f64],
    u: &URange,
) -> Result<SurfaceMesh, SurfaceError> {
    let x = x.non_vanishing()?;
    assemble(x, u, s_values.to_vec(), |j| {
        let forms = forms_invariant(x, curve, s_values[j]);
        (curve.point(s_values[j]), forms.nu, forms.h)
    })
}
