//! The group Sol₃: group law, left-invariant metric and frame, Levi-Civita
//! connection, Killing fields and their one-parameter groups.
//!
//! Coordinates are the usual `(x, y, z)` on ℝ³ with
//!
//! ```text
//! (x₁, y₁, z₁) ⋆ (x₂, y₂, z₂) = (x₁ + e^{-z₁} x₂, y₁ + e^{z₁} y₂, z₁ + z₂)
//! ḡ = e^{2z} dx² + e^{-2z} dy² + dz²
//! E₁ = e^{-z} ∂x,  E₂ = e^{z} ∂y,  E₃ = ∂z
//! ```
//!
//! Vectors come in two flavours. [`CoordVector`] holds components against
//! `∂x, ∂y, ∂z` and only means something together with a base point.
//! [`FrameVector`] holds components against the orthonormal frame, so the
//! metric is the Euclidean dot product on those components.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::math::{abs, exp, sqrt};

/// Default step for the central-difference geometric oracles.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometryError {
    /// All three coefficients of a Killing field are zero.
    ZeroField,
    /// Frame indices are 1-based and must lie in `1..=3`.
    IndexOutOfRange { i: usize, j: usize },
    /// A finite-difference step must be positive.
    NonPositiveStep(f64),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::ZeroField => write!(f, "Killing field must not vanish"),
            GeometryError::IndexOutOfRange { i, j } => {
                write!(f, "frame indices ({i}, {j}) out of range 1..=3")
            }
            GeometryError::NonPositiveStep(h) => write!(f, "step {h} must be positive"),
        }
    }
}

impl core::error::Error for GeometryError {}

/// A point of Sol₃.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point {
    pub const IDENTITY: Point = Point {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point { x, y, z }
    }

    /// Group product `self ⋆ q`, i.e. the left translation `L_self(q)`.
    pub fn compose(self, q: Point) -> Point {
        Point {
            x: self.x + exp(-self.z) * q.x,
            y: self.y + exp(self.z) * q.y,
            z: self.z + q.z,
        }
    }

    pub fn inverse(self) -> Point {
        Point {
            x: -exp(self.z) * self.x,
            y: -exp(-self.z) * self.y,
            z: -self.z,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Coordinate difference `(self - other) / scale`, used by finite differences.
    pub fn coord_diff(self, other: Point, scale: f64) -> CoordVector {
        CoordVector::new(
            (self.x - other.x) / scale,
            (self.y - other.y) / scale,
            (self.z - other.z) / scale,
        )
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(self, other: Point) -> f64 {
        abs(self.x - other.x)
            .max(abs(self.y - other.y))
            .max(abs(self.z - other.z))
    }
}

/// Components against `∂x, ∂y, ∂z`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoordVector {
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
}

impl CoordVector {
    pub const fn new(vx: f64, vy: f64, vz: f64) -> Self {
        CoordVector { vx, vy, vz }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.vx, self.vy, self.vz]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        CoordVector::new(a[0], a[1], a[2])
    }

    /// Euclidean length of the components (no metric).
    pub fn euclidean_norm(self) -> f64 {
        sqrt(self.vx * self.vx + self.vy * self.vy + self.vz * self.vz)
    }
}

impl Add for CoordVector {
    type Output = CoordVector;
    fn add(self, o: CoordVector) -> CoordVector {
        CoordVector::new(self.vx + o.vx, self.vy + o.vy, self.vz + o.vz)
    }
}

impl Sub for CoordVector {
    type Output = CoordVector;
    fn sub(self, o: CoordVector) -> CoordVector {
        CoordVector::new(self.vx - o.vx, self.vy - o.vy, self.vz - o.vz)
    }
}

impl Mul<CoordVector> for f64 {
    type Output = CoordVector;
    fn mul(self, v: CoordVector) -> CoordVector {
        CoordVector::new(self * v.vx, self * v.vy, self * v.vz)
    }
}

/// Components against the orthonormal left-invariant frame `E₁, E₂, E₃`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrameVector {
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

impl FrameVector {
    pub const ZERO: FrameVector = FrameVector::new(0.0, 0.0, 0.0);
    pub const E1: FrameVector = FrameVector::new(1.0, 0.0, 0.0);
    pub const E2: FrameVector = FrameVector::new(0.0, 1.0, 0.0);
    pub const E3: FrameVector = FrameVector::new(0.0, 0.0, 1.0);

    pub const fn new(e1: f64, e2: f64, e3: f64) -> Self {
        FrameVector { e1, e2, e3 }
    }

    /// `E_i` for a 1-based index.
    pub fn basis(i: usize) -> Option<FrameVector> {
        match i {
            1 => Some(Self::E1),
            2 => Some(Self::E2),
            3 => Some(Self::E3),
            _ => None,
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.e1, self.e2, self.e3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        FrameVector::new(a[0], a[1], a[2])
    }

    /// Metric inner product; the frame is orthonormal.
    pub fn dot(self, o: FrameVector) -> f64 {
        self.e1 * o.e1 + self.e2 * o.e2 + self.e3 * o.e3
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        sqrt(self.norm_sq())
    }

    /// Cross product in the oriented orthonormal frame.
    pub fn cross(self, o: FrameVector) -> FrameVector {
        FrameVector::new(
            self.e2 * o.e3 - self.e3 * o.e2,
            self.e3 * o.e1 - self.e1 * o.e3,
            self.e1 * o.e2 - self.e2 * o.e1,
        )
    }

    pub fn normalized(self) -> FrameVector {
        let n = self.norm();
        FrameVector::new(self.e1 / n, self.e2 / n, self.e3 / n)
    }

    pub fn max_abs(self) -> f64 {
        abs(self.e1).max(abs(self.e2)).max(abs(self.e3))
    }
}

impl Add for FrameVector {
    type Output = FrameVector;
    fn add(self, o: FrameVector) -> FrameVector {
        FrameVector::new(self.e1 + o.e1, self.e2 + o.e2, self.e3 + o.e3)
    }
}

impl Sub for FrameVector {
    type Output = FrameVector;
    fn sub(self, o: FrameVector) -> FrameVector {
        FrameVector::new(self.e1 - o.e1, self.e2 - o.e2, self.e3 - o.e3)
    }
}

impl Neg for FrameVector {
    type Output = FrameVector;
    fn neg(self) -> FrameVector {
        FrameVector::new(-self.e1, -self.e2, -self.e3)
    }
}

impl Mul<FrameVector> for f64 {
    type Output = FrameVector;
    fn mul(self, v: FrameVector) -> FrameVector {
        FrameVector::new(self * v.e1, self * v.e2, self * v.e3)
    }
}

/// Metric matrix in coordinates at `p`: `diag(e^{2z}, e^{-2z}, 1)`.
pub fn metric_at(p: Point) -> [[f64; 3]; 3] {
    let mut g = [[0.0; 3]; 3];
    g[0][0] = exp(2.0 * p.z);
    g[1][1] = exp(-2.0 * p.z);
    g[2][2] = 1.0;
    g
}

/// `ḡ_p(u, v)` for coordinate vectors based at `p`.
pub fn inner(p: Point, u: CoordVector, v: CoordVector) -> f64 {
    let g = metric_at(p);
    let (a, b) = (u.to_array(), v.to_array());
    let mut acc = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            acc += a[i] * g[i][j] * b[j];
        }
    }
    acc
}

pub fn frame_to_coord(v: FrameVector, p: Point) -> CoordVector {
    CoordVector::new(exp(-p.z) * v.e1, exp(p.z) * v.e2, v.e3)
}

pub fn coord_to_frame(v: CoordVector, p: Point) -> FrameVector {
    FrameVector::new(exp(p.z) * v.vx, exp(-p.z) * v.vy, v.vz)
}

/// A Killing field `c₁F₁ + c₂F₂ + c₃F₃` with
/// `F₁ = ∂x`, `F₂ = ∂y`, `F₃ = -x∂x + y∂y + ∂z`.
///
/// The same type carries the translation direction `V = ηF₁ + λF₂ + μF₃`
/// and the symmetry generator `X = aF₁ + bF₂ + cF₃`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KillingField {
    pub c_f1: f64,
    pub c_f2: f64,
    pub c_f3: f64,
}

impl KillingField {
    pub const F1: KillingField = KillingField::new(1.0, 0.0, 0.0);
    pub const F2: KillingField = KillingField::new(0.0, 1.0, 0.0);
    pub const F3: KillingField = KillingField::new(0.0, 0.0, 1.0);

    pub const fn new(c_f1: f64, c_f2: f64, c_f3: f64) -> Self {
        KillingField { c_f1, c_f2, c_f3 }
    }

    pub fn is_zero(&self) -> bool {
        self.c_f1 == 0.0 && self.c_f2 == 0.0 && self.c_f3 == 0.0
    }

    /// Errors on the zero field, which never generates a symmetry or a direction.
    pub fn non_vanishing(self) -> Result<Self, GeometryError> {
        if self.is_zero() {
            Err(GeometryError::ZeroField)
        } else {
            Ok(self)
        }
    }

    pub fn scaled(self, k: f64) -> KillingField {
        KillingField::new(k * self.c_f1, k * self.c_f2, k * self.c_f3)
    }

    /// Coordinate components at `p`.
    pub fn at(&self, p: Point) -> CoordVector {
        killing_at(*self, p)
    }

    /// Frame components at `p`.
    pub fn frame_at(&self, p: Point) -> FrameVector {
        coord_to_frame(killing_at(*self, p), p)
    }
}

impl Add for KillingField {
    type Output = KillingField;
    fn add(self, o: KillingField) -> KillingField {
        KillingField::new(self.c_f1 + o.c_f1, self.c_f2 + o.c_f2, self.c_f3 + o.c_f3)
    }
}

pub fn killing_at(k: KillingField, p: Point) -> CoordVector {
    CoordVector::new(k.c_f1 - k.c_f3 * p.x, k.c_f2 + k.c_f3 * p.y, k.c_f3)
}

/// The point `φ_t` such that the flow of `k` at time `t` is the left
/// translation `L_{φ_t}`.
pub fn flow(k: KillingField, t: f64) -> Result<Point, GeometryError> {
    let k = k.non_vanishing()?;
    let (a, b, c) = (k.c_f1, k.c_f2, k.c_f3);
    if c != 0.0 {
        Ok(Point::new(
            -(a / c) * libm::expm1(-c * t),
            (b / c) * libm::expm1(c * t),
            c * t,
        ))
    } else {
        Ok(Point::new(a * t, b * t, 0.0))
    }
}

/// `∇_{E_i} E_j` for 1-based frame indices.
pub fn connection(i: usize, j: usize) -> Result<FrameVector, GeometryError> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(GeometryError::IndexOutOfRange { i, j });
    }
    Ok(CONNECTION[i - 1][j - 1])
}

// CONNECTION[i][j] = ∇_{E_{i+1}} E_{j+1}
const CONNECTION: [[FrameVector; 3]; 3] = [
    [
        FrameVector::new(0.0, 0.0, -1.0),
        FrameVector::ZERO,
        FrameVector::new(1.0, 0.0, 0.0),
    ],
    [
        FrameVector::ZERO,
        FrameVector::new(0.0, 0.0, 1.0),
        FrameVector::new(0.0, -1.0, 0.0),
    ],
    [FrameVector::ZERO, FrameVector::ZERO, FrameVector::ZERO],
];

/// `∇_X Y` where `X`, `Y` are taken as left-invariant fields with the given
/// constant frame components.
pub fn covariant_left_invariant(x: FrameVector, y: FrameVector) -> FrameVector {
    let (xa, ya) = (x.to_array(), y.to_array());
    let mut out = FrameVector::ZERO;
    for i in 0..3 {
        for j in 0..3 {
            out = out + (xa[i] * ya[j]) * CONNECTION[i][j];
        }
    }
    out
}

/// Covariant derivative of a vector field `W` along a tangent vector `T`,
/// given the directional derivative `dw = T(w^k)` of the frame components of `W`.
pub fn covariant_along(t: FrameVector, w: FrameVector, dw: FrameVector) -> FrameVector {
    dw + covariant_left_invariant(t, w)
}

/// Lie bracket of left-invariant fields, from the torsion-free connection.
pub fn bracket_left_invariant(x: FrameVector, y: FrameVector) -> FrameVector {
    covariant_left_invariant(x, y) - covariant_left_invariant(y, x)
}

/// `R(X, Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]} Z` on left-invariant fields.
pub fn curvature_left_invariant(x: FrameVector, y: FrameVector, z: FrameVector) -> FrameVector {
    let nabla = covariant_left_invariant;
    nabla(x, nabla(y, z)) - nabla(y, nabla(x, z)) - nabla(bracket_left_invariant(x, y), z)
}

/// Sectional curvature of the plane spanned by `u` and `v`.
pub fn sectional_curvature(u: FrameVector, v: FrameVector) -> f64 {
    let area = u.norm_sq() * v.norm_sq() - u.dot(v) * u.dot(v);
    curvature_left_invariant(u, v, v).dot(u) / area
}

/// Coordinate Lie bracket `[X, Y]^k = X^i ∂_i Y^k − Y^i ∂_i X^k` by central differences.
pub fn fd_lie_bracket<X, Y>(x: X, y: Y, p: Point, h: f64) -> CoordVector
where
    X: Fn(Point) -> CoordVector,
    Y: Fn(Point) -> CoordVector,
{
    let dx = jacobian(&x, p, h);
    let dy = jacobian(&y, p, h);
    let (xv, yv) = (x(p).to_array(), y(p).to_array());
    let mut out = [0.0; 3];
    for (k, o) in out.iter_mut().enumerate() {
        for i in 0..3 {
            *o += xv[i] * dy[k][i] - yv[i] * dx[k][i];
        }
    }
    CoordVector::from_array(out)
}

// jac[k][i] = ∂_i field^k
fn jacobian<F: Fn(Point) -> CoordVector>(field: &F, p: Point, h: f64) -> [[f64; 3]; 3] {
    let mut jac = [[0.0; 3]; 3];
    for i in 0..3 {
        let (plus, minus) = (shift(p, i, h), shift(p, i, -h));
        let d = field(plus).to_array();
        let m = field(minus).to_array();
        for k in 0..3 {
            jac[k][i] = (d[k] - m[k]) / (2.0 * h);
        }
    }
    jac
}

fn shift(p: Point, axis: usize, h: f64) -> Point {
    match axis {
        0 => Point::new(p.x + h, p.y, p.z),
        1 => Point::new(p.x, p.y + h, p.z),
        _ => Point::new(p.x, p.y, p.z + h),
    }
}

/// Max-norm of the Lie derivative of the metric along an arbitrary vector
/// field, `(L_K ḡ)_{ij} = K^k ∂_k g_{ij} + g_{kj} ∂_i K^k + g_{ik} ∂_j K^k`,
/// with every derivative taken by central differences. Entries are scaled
/// by `1/√(g_ii g_jj)`, i.e. measured in the orthonormal frame.
pub fn lie_derivative_residual<F>(field: F, p: Point, h: f64) -> Result<f64, GeometryError>
where
    F: Fn(Point) -> CoordVector,
{
    if h <= 0.0 || !h.is_finite() {
        return Err(GeometryError::NonPositiveStep(h));
    }
    let g = metric_at(p);
    let k = field(p).to_array();
    let dk = jacobian(&field, p, h);
    let mut dg = [[[0.0; 3]; 3]; 3];
    for (axis, slot) in dg.iter_mut().enumerate() {
        let gp = metric_at(shift(p, axis, h));
        let gm = metric_at(shift(p, axis, -h));
        for i in 0..3 {
            for j in 0..3 {
                slot[i][j] = (gp[i][j] - gm[i][j]) / (2.0 * h);
            }
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let mut v = 0.0;
            for m in 0..3 {
                v += k[m] * dg[m][i][j] + g[m][j] * dk[m][i] + g[i][m] * dk[m][j];
            }
            worst = worst.max(abs(v) / sqrt(g[i][i] * g[j][j]));
        }
    }
    Ok(worst)
}

/// How far `k` is from being Killing at `p`; near zero for every `F₁, F₂, F₃` combination.
pub fn killing_residual(k: KillingField, p: Point, h: f64) -> Result<f64, GeometryError> {
    lie_derivative_residual(|q| killing_at(k, q), p, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::LN_2;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        abs(a - b) <= tol
    }

    #[test]
    fn compose_examples() {
        let q = Point::new(0.3, -1.2, 0.7);
        assert_eq!(Point::IDENTITY.compose(q), q);
        let r = Point::new(0.0, 0.0, LN_2).compose(Point::new(2.0, 2.0, 0.0));
        assert!(close(r.x, 1.0, 1e-15) && close(r.y, 4.0, 1e-15) && close(r.z, LN_2, 0.0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Point::IDENTITY.inverse(), Point::new(-0.0, -0.0, -0.0));
        let q = Point::new(1.0, 4.0, LN_2).inverse();
        assert!(close(q.x, -2.0, 1e-15) && close(q.y, -2.0, 1e-15) && close(q.z, -LN_2, 0.0));
    }

    #[test]
    fn metric_examples() {
        assert_eq!(
            metric_at(Point::IDENTITY),
            [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
        );
        let g = metric_at(Point::new(0.0, 0.0, LN_2));
        assert!(close(g[0][0], 4.0, 1e-14) && close(g[1][1], 0.25, 1e-15) && g[2][2] == 1.0);
    }

    #[test]
    fn frame_examples() {
        let p = Point::new(0.2, 0.1, 1.0);
        assert_eq!(
            frame_to_coord(FrameVector::E3, p),
            CoordVector::new(0.0, 0.0, 1.0)
        );
        let e1 = frame_to_coord(FrameVector::E1, p);
        assert!(close(e1.vx, (-1.0f64).exp(), 1e-16) && e1.vy == 0.0 && e1.vz == 0.0);
    }

    #[test]
    fn killing_examples() {
        assert_eq!(
            killing_at(KillingField::F3, Point::IDENTITY),
            CoordVector::new(0.0, 0.0, 1.0)
        );
        assert_eq!(
            killing_at(KillingField::F3, Point::new(2.0, 3.0, 0.0)),
            CoordVector::new(-2.0, 3.0, 1.0)
        );
        // V = λF₂ + μF₃ on the plane x = 0, in frame components.
        let (lambda, mu) = (0.7, -1.3);
        let p = Point::new(0.0, 0.4, -0.9);
        let v = KillingField::new(0.0, lambda, mu).frame_at(p);
        assert!(close(v.e1, 0.0, 1e-15));
        assert!(close(v.e2, (-p.z).exp() * (lambda + mu * p.y), 1e-14));
        assert!(close(v.e3, mu, 1e-15));
    }

    #[test]
    fn flow_examples() {
        let k = KillingField::new(0.4, -2.0, 0.3);
        assert_eq!(flow(k, 0.0).unwrap().max_abs_diff(Point::IDENTITY), 0.0);
        let p = flow(KillingField::F3, 1.7).unwrap();
        assert_eq!(p, Point::new(0.0, 0.0, 1.7));
        assert_eq!(
            flow(KillingField::default(), 1.0),
            Err(GeometryError::ZeroField)
        );
        assert_eq!(
            flow(KillingField::new(2.0, 3.0, 0.0), 0.5).unwrap(),
            Point::new(1.0, 1.5, 0.0)
        );
    }

    #[test]
    fn flow_velocity_matches_field() {
        let h = 1e-5;
        for k in [
            KillingField::new(0.4, -2.0, 0.3),
            KillingField::new(1.0, 1.0, 0.0),
            KillingField::new(0.0, 0.0, -1.5),
        ] {
            let v = flow(k, h)
                .unwrap()
                .coord_diff(flow(k, -h).unwrap(), 2.0 * h);
            let w = killing_at(k, Point::IDENTITY);
            assert!((v - w).euclidean_norm() < 1e-6);
        }
    }

    #[test]
    fn connection_table() {
        assert_eq!(connection(1, 1).unwrap(), -FrameVector::E3);
        assert_eq!(connection(3, 3).unwrap(), FrameVector::ZERO);
        assert_eq!(connection(2, 2).unwrap(), FrameVector::E3);
        assert_eq!(connection(1, 3).unwrap(), FrameVector::E1);
        assert_eq!(connection(2, 3).unwrap(), -FrameVector::E2);
        assert_eq!(
            connection(0, 1),
            Err(GeometryError::IndexOutOfRange { i: 0, j: 1 })
        );
        assert!(connection(2, 4).is_err());
    }

    #[test]
    fn torsion_free_against_fd_bracket() {
        let p = Point::new(0.3, -0.8, 0.6);
        let h = DEFAULT_FD_STEP;
        let e = |i: usize| move |q: Point| frame_to_coord(FrameVector::basis(i).unwrap(), q);
        for i in 1..=3 {
            for j in 1..=3 {
                let table = connection(i, j).unwrap() - connection(j, i).unwrap();
                let fd = coord_to_frame(fd_lie_bracket(e(i), e(j), p, h), p);
                assert!((table - fd).max_abs() < 1e-6, "[E{i},E{j}]");
            }
        }
    }

    #[test]
    fn killing_residual_controls() {
        let p = Point::new(0.7, -0.4, 0.9);
        for k in [KillingField::F1, KillingField::F2, KillingField::F3] {
            assert!(killing_residual(k, p, 1e-4).unwrap() < 1e-6);
        }
        let control = |q: Point| CoordVector::new(q.z, 0.0, 0.0);
        assert!(lie_derivative_residual(control, Point::new(0.0, 0.0, 1.0), 1e-4).unwrap() > 1e-2);
        assert!(killing_residual(KillingField::F1, p, 0.0).is_err());
    }

    #[test]
    fn sectional_curvatures_of_frame_planes() {
        let k12 = sectional_curvature(FrameVector::E1, FrameVector::E2);
        let k13 = sectional_curvature(FrameVector::E1, FrameVector::E3);
        let k23 = sectional_curvature(FrameVector::E2, FrameVector::E3);
        assert!(close(k12, 1.0, 1e-15) && close(k13, -1.0, 1e-15) && close(k23, -1.0, 1e-15));
    }
}
