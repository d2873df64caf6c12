//! Closed-form geometry of the curvature −1 Poincaré disk.
//!
//! Points live in the open unit disk, points at infinity on the unit circle.
//! Geodesics are circular arcs orthogonal to the unit circle (or diameters),
//! horocycles are Euclidean circles internally tangent to it. Busemann
//! functions are normalised to vanish at the disk origin, so a horocycle is
//! described by its center at infinity and the Busemann level it sits at.
//!
//! All operations are pure and allocation-free; derivations are validated
//! against independent numeric oracles in the test suite.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::fmath as fm;

/// Angular tolerance under which two points at infinity are considered equal.
pub const ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeomError {
    /// A geodesic needs two distinct points at infinity.
    DegenerateGeodesic,
    /// The horocycle center is not an endpoint of the geodesic.
    CenterNotEndpoint,
    /// Coordinates outside the open unit disk.
    OutsideDisk,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::DegenerateGeodesic => write!(f, "geodesic endpoints coincide"),
            GeomError::CenterNotEndpoint => {
                write!(f, "horocycle center is not an endpoint of the geodesic")
            }
            GeomError::OutsideDisk => write!(f, "point lies outside the open unit disk"),
        }
    }
}

/// Complex arithmetic on disk coordinates; just enough for Möbius maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cx {
    pub re: f64,
    pub im: f64,
}

impl Cx {
    pub fn new(re: f64, im: f64) -> Self {
        Cx { re, im }
    }
    pub fn conj(self) -> Self {
        Cx::new(self.re, -self.im)
    }
    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }
    pub fn abs(self) -> f64 {
        fm::hypot(self.re, self.im)
    }
    pub fn div(self, d: Cx) -> Cx {
        let n = d.norm_sqr();
        Cx::new(
            (self.re * d.re + self.im * d.im) / n,
            (self.im * d.re - self.re * d.im) / n,
        )
    }
    pub fn scale(self, s: f64) -> Cx {
        Cx::new(self.re * s, self.im * s)
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}
impl Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}
impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        Cx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}
impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx::new(-self.re, -self.im)
    }
}

const ONE: Cx = Cx { re: 1.0, im: 0.0 };

/// Interior point of the unit-disk model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    x: f64,
    y: f64,
}

impl DiskPoint {
    /// Checked constructor: the point must lie strictly inside the unit disk.
    pub fn new(x: f64, y: f64) -> Result<Self, GeomError> {
        if x * x + y * y < 1.0 && x.is_finite() && y.is_finite() {
            Ok(DiskPoint { x, y })
        } else {
            Err(GeomError::OutsideDisk)
        }
    }

    pub(crate) fn new_unchecked(x: f64, y: f64) -> Self {
        debug_assert!(x * x + y * y < 1.0, "disk point invariant violated");
        DiskPoint { x, y }
    }

    pub fn origin() -> Self {
        DiskPoint { x: 0.0, y: 0.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }

    pub(crate) fn cx(&self) -> Cx {
        Cx::new(self.x, self.y)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    /// Conformal factor of the curvature −1 metric, `2 / (1 − |z|²)`.
    pub fn conformal_factor(&self) -> f64 {
        2.0 / (1.0 - self.norm_sqr())
    }
}

/// Point at infinity, i.e. a point of the boundary circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealPoint {
    theta: f64,
}

impl IdealPoint {
    /// Angle in radians; normalised into `[0, 2π)`.
    pub fn new(theta: f64) -> Self {
        let two_pi = 2.0 * core::f64::consts::PI;
        let mut t = fm::rem_euclid(theta, two_pi);
        if t >= two_pi {
            t = 0.0;
        }
        IdealPoint { theta: t }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Unit vector on the boundary circle.
    pub fn unit(&self) -> (f64, f64) {
        let (s, c) = fm::sin_cos(self.theta);
        (c, s)
    }

    pub(crate) fn cx(&self) -> Cx {
        let (x, y) = self.unit();
        Cx::new(x, y)
    }

    /// Equality up to the angular tolerance, cyclically.
    pub fn approx_eq(&self, other: &IdealPoint) -> bool {
        let two_pi = 2.0 * core::f64::consts::PI;
        let mut d = fm::abs(self.theta - other.theta);
        if d > core::f64::consts::PI {
            d = two_pi - d;
        }
        d <= ANGLE_TOL
    }
}

/// Oriented geodesic between two distinct points at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geodesic {
    a: IdealPoint,
    b: IdealPoint,
}

impl Geodesic {
    pub fn new(a: IdealPoint, b: IdealPoint) -> Result<Self, GeomError> {
        if a.approx_eq(&b) {
            Err(GeomError::DegenerateGeodesic)
        } else {
            Ok(Geodesic { a, b })
        }
    }

    pub fn start(&self) -> IdealPoint {
        self.a
    }
    pub fn end(&self) -> IdealPoint {
        self.b
    }

    pub fn reversed(&self) -> Geodesic {
        Geodesic { a: self.b, b: self.a }
    }

    /// The point of the geodesic closest to the disk origin.
    pub fn closest_to_origin(&self) -> DiskPoint {
        let u = self.a.cx();
        let v = self.b.cx();
        let dot = u.re * v.re + u.im * v.im;
        if 1.0 + dot <= 1e-12 {
            // diameter through the origin
            return DiskPoint::origin();
        }
        let c = (u + v).scale(1.0 / (1.0 + dot));
        let cn = c.abs();
        let r = fm::sqrt((cn - 1.0).max(0.0) * (cn + 1.0));
        // |c| − r = 1 / (|c| + r), computed in the stable form
        let d = 1.0 / (cn + r);
        DiskPoint::new_unchecked(c.re / cn * d, c.im / cn * d)
    }

    fn endpoint_matching(&self, xi: &IdealPoint) -> Option<(IdealPoint, IdealPoint)> {
        if self.a.approx_eq(xi) {
            Some((self.a, self.b))
        } else if self.b.approx_eq(xi) {
            Some((self.b, self.a))
        } else {
            None
        }
    }
}

/// Horocycle described by its center at infinity and Busemann level,
/// normalised so level 0 passes through the disk origin.
///
/// The horoball is the sublevel set `{B_center ≤ level}`; decreasing the
/// level shrinks the horoball toward its center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Horocycle {
    pub center: IdealPoint,
    pub level: f64,
}

impl Horocycle {
    pub fn new(center: IdealPoint, level: f64) -> Self {
        Horocycle { center, level }
    }

    /// Shrink the horoball by `delta` (moves the level down).
    pub fn shrink(&self, delta: f64) -> Horocycle {
        Horocycle { center: self.center, level: self.level - delta }
    }

    /// Euclidean radius of the realising circle, `1 / (1 + e^{−level})`.
    pub fn euclid_radius(&self) -> f64 {
        1.0 / (1.0 + fm::exp(-self.level))
    }

    /// Euclidean center of the realising circle.
    pub fn euclid_center(&self) -> (f64, f64) {
        let r = self.euclid_radius();
        let (ux, uy) = self.center.unit();
        ((1.0 - r) * ux, (1.0 - r) * uy)
    }

    /// Membership predicate: `B_center(z) − level` (negative inside the horoball).
    pub fn busemann_excess(&self, p: &DiskPoint) -> f64 {
        busemann(&self.center, p) - self.level
    }
}

/// Möbius automorphism of the disk sending `p` to the origin:
/// `z ↦ (z − p) / (1 − p̄ z)`.
pub(crate) fn mobius_to_origin(p: Cx, z: Cx) -> Cx {
    (z - p).div(ONE - p.conj() * z)
}

/// Inverse of [`mobius_to_origin`]: `w ↦ (w + p) / (1 + p̄ w)`.
pub(crate) fn mobius_from_origin(p: Cx, w: Cx) -> Cx {
    (w + p).div(ONE + p.conj() * w)
}

/// Hyperbolic distance between interior points.
///
/// Uses `d = 2 asinh √(|p−q|² / ((1−|p|²)(1−|q|²)))`, which is stable both
/// for nearby points and near the boundary circle.
pub fn hyp_distance(p: &DiskPoint, q: &DiskPoint) -> f64 {
    let dx = p.x - q.x;
    let dy = p.y - q.y;
    let num = dx * dx + dy * dy;
    let den = (1.0 - p.norm_sqr()) * (1.0 - q.norm_sqr());
    2.0 * fm::asinh(fm::sqrt(num / den))
}

/// Busemann function of the point at infinity `xi`, normalised to vanish at
/// the origin: `B(z) = ln(|ξ − z|² / (1 − |z|²))`.
///
/// Strictly decreasing at unit rate along any geodesic ray into `xi`; its
/// level sets are the horocycles centered at `xi`.
pub fn busemann(xi: &IdealPoint, p: &DiskPoint) -> f64 {
    let (ux, uy) = xi.unit();
    let dx = ux - p.x;
    let dy = uy - p.y;
    fm::ln((dx * dx + dy * dy) / (1.0 - p.norm_sqr()))
}

/// Point on the geodesic ray from `p` toward `xi`, at hyperbolic distance
/// `d ≥ 0` from `p`.
pub fn point_on_ray(p: &DiskPoint, xi: &IdealPoint, d: f64) -> DiskPoint {
    debug_assert!(d >= 0.0, "ray parameter must be nonnegative");
    walk_toward(p, xi, d)
}

/// Signed variant of [`point_on_ray`]: negative `d` walks away from `xi`
/// along the same geodesic.
pub(crate) fn walk_toward(p: &DiskPoint, xi: &IdealPoint, d: f64) -> DiskPoint {
    let pc = p.cx();
    let w = mobius_to_origin(pc, xi.cx());
    // w has unit modulus up to rounding; renormalise to keep the walk exact.
    let wn = w.abs();
    let dir = w.scale(1.0 / wn);
    let r = fm::tanh(0.5 * d);
    let z = mobius_from_origin(pc, dir.scale(r));
    DiskPoint::new_unchecked(z.re, z.im)
}

/// Orthogonal foot of a horocycle on a geodesic ending at its center.
///
/// The returned point lies on `g` and satisfies
/// `busemann(h.center, foot) = h.level`.
pub fn geodesic_foot_on_horocycle(g: &Geodesic, h: &Horocycle) -> Result<DiskPoint, GeomError> {
    let (center, _other) = g
        .endpoint_matching(&h.center)
        .ok_or(GeomError::CenterNotEndpoint)?;
    let q0 = g.closest_to_origin();
    let b0 = busemann(&center, &q0);
    Ok(walk_toward(&q0, &center, b0 - h.level))
}

/// Signed hyperbolic length of the part of `g` outside the two horoballs.
///
/// Positive when the horoballs are disjoint, negative when they overlap.
/// Closed form: `−s₁ − s₂ + 2 ln |sin((θ₁ − θ₂)/2)|`.
pub fn truncated_length(g: &Geodesic, h1: &Horocycle, h2: &Horocycle) -> Result<f64, GeomError> {
    let levels = if g.a.approx_eq(&h1.center) && g.b.approx_eq(&h2.center) {
        Some((h1.level, h2.level))
    } else if g.a.approx_eq(&h2.center) && g.b.approx_eq(&h1.center) {
        Some((h2.level, h1.level))
    } else {
        None
    };
    let (s1, s2) = levels.ok_or(GeomError::CenterNotEndpoint)?;
    Ok(truncated_length_raw(g.a.theta(), g.b.theta(), s1, s2))
}

/// Closed-form truncated length from vertex angles and Busemann levels.
pub(crate) fn truncated_length_raw(theta1: f64, theta2: f64, s1: f64, s2: f64) -> f64 {
    let half_chord = fm::abs(libm::sin(0.5 * (theta1 - theta2)));
    -s1 - s2 + 2.0 * fm::ln(half_chord)
}

/// Signed side test against the geodesic through two points at infinity.
///
/// Returns a continuous function of `z` whose sign separates the two sides;
/// only sign comparisons between evaluations on the same geodesic are
/// meaningful.
pub fn side_of_geodesic(g: &Geodesic, z: &DiskPoint) -> f64 {
    let u = g.a.cx();
    let v = g.b.cx();
    let dot = u.re * v.re + u.im * v.im;
    if fm::abs(1.0 + dot) <= 1e-12 {
        // diameter: side of the line through ±u
        u.re * z.y - u.im * z.x
    } else {
        (1.0 + dot) * (1.0 + z.norm_sqr()) - 2.0 * (z.x * (u.re + v.re) + z.y * (u.im + v.im))
    }
}

/// Signed side test against the geodesic through two interior points.
///
/// Same contract as [`side_of_geodesic`].
pub fn side_of_geodesic_through(p: &DiskPoint, q: &DiskPoint, z: &DiskPoint) -> f64 {
    let cross = p.x * q.y - p.y * q.x;
    if fm::abs(cross) <= 1e-15 {
        // p, q and the origin are collinear: the geodesic is a diameter
        (q.x - p.x) * (z.y - p.y) - (q.y - p.y) * (z.x - p.x)
    } else {
        // center c of the orthogonal circle solves 2c·p = 1+|p|², 2c·q = 1+|q|²
        let bp = 1.0 + p.norm_sqr();
        let bq = 1.0 + q.norm_sqr();
        let det = 2.0 * cross;
        let cx = (bp * q.y - bq * p.y) / det;
        let cy = (bq * p.x - bp * q.x) / det;
        z.norm_sqr() + 1.0 - 2.0 * (z.x * cx + z.y * cy)
    }
}
