//! Robust 2D primitives shared by every construction in this crate: points,
//! normalized implicit lines, triangles, tolerance settings, and the
//! predicates (parallelism, collinearity, betweenness, orientation) that
//! everything else is built from.
//!
//! All functions here are pure; thread safety is free. Tolerances are passed
//! explicitly so callers can override them per scene.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Threshold used only to pick the canonical sign of a line's normal.
const SIGN_EPS: f64 = 1e-12;

/// A displacement between points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// The z-component of the 3D cross product; twice the signed area of the
    /// triangle spanned by the two vectors.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(Vec2::new(self.x / n, self.y / n))
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

/// A location in the plane. Both coordinates are expected to be finite; scene
/// parsing and the generator enforce this at the boundary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Point {
        Point { x, y }
    }

    pub fn from_vec(v: Vec2) -> Point {
        Point::new(v.x, v.y)
    }

    pub fn to_vec(self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn distance(self, other: Point) -> f64 {
        (other - self).norm()
    }

    pub fn close_to(self, other: Point, eps: f64) -> bool {
        self.distance(other) <= eps
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Sub for Point {
    type Output = Vec2;
    fn sub(self, rhs: Point) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add<Vec2> for Point {
    type Output = Point;
    fn add(self, rhs: Vec2) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub<Vec2> for Point {
    type Output = Point;
    fn sub(self, rhs: Vec2) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A line in normalized implicit form `a·x + b·y = c` with `a² + b² = 1` and
/// a canonical sign (the first component of `(a, b)` that is nonzero beyond a
/// tiny threshold is positive), so equal lines have equal coefficients up to
/// floating-point noise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    /// Normalizes and canonicalizes the coefficients of `a·x + b·y = c`.
    /// Fails if the normal `(a, b)` vanishes or any coefficient is not finite.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Line> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::DegenerateInput);
        }
        let n = a.hypot(b);
        if n < f64::MIN_POSITIVE {
            return Err(Error::DegenerateInput);
        }
        let (a, b, c) = (a / n, b / n, c / n);
        let flip = if a < -SIGN_EPS {
            true
        } else if a.abs() <= SIGN_EPS {
            b < 0.0
        } else {
            false
        };
        let (a, b, c) = if flip { (-a, -b, -c) } else { (a, b, c) };
        // + 0.0 turns any -0.0 into +0.0 for stable output
        Ok(Line { a: a + 0.0, b: b + 0.0, c: c + 0.0 })
    }

    /// Line through `p` with the given (nonzero) direction.
    pub fn from_point_direction(p: Point, direction: Vec2) -> Result<Line> {
        let n = direction.perp();
        Line::new(n.x, n.y, n.x * p.x + n.y * p.y)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Signed distance from `p` to the line (the residual `a·x + b·y − c`).
    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }

    pub fn distance_to(&self, p: Point) -> f64 {
        self.eval(p).abs()
    }

    pub fn contains(&self, p: Point, eps: f64) -> bool {
        self.distance_to(p) <= eps
    }

    /// A unit vector along the line.
    pub fn direction(&self) -> Vec2 {
        Vec2::new(-self.b, self.a)
    }

    /// The foot of the perpendicular from the origin; a convenient point on
    /// the line.
    pub fn point_on(&self) -> Point {
        Point::new(self.a * self.c, self.b * self.c)
    }

    pub fn point_at(&self, t: f64) -> Point {
        self.point_on() + self.direction() * t
    }

    /// Componentwise comparison of the canonical coefficients.
    pub fn approx_eq(&self, other: &Line, eps: f64) -> bool {
        let scale = 1.0 + self.c.abs().max(other.c.abs());
        (self.a - other.a).abs() <= eps
            && (self.b - other.b).abs() <= eps
            && (self.c - other.c).abs() <= eps * scale
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

// Serialized as the coefficient triple so figures and reports stay compact;
// deserialization re-normalizes, keeping the canonical-form invariant.
impl Serialize for Line {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.a, self.b, self.c].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Line {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Line, D::Error> {
        let [a, b, c] = <[f64; 3]>::deserialize(deserializer)?;
        Line::new(a, b, c).map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// A triangle given by its three vertices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub p1: Point,
    pub p2: Point,
    pub p3: Point,
}

impl Triangle {
    pub const fn new(p1: Point, p2: Point, p3: Point) -> Triangle {
        Triangle { p1, p2, p3 }
    }

    pub fn vertices(&self) -> [Point; 3] {
        [self.p1, self.p2, self.p3]
    }

    pub fn signed_area(&self) -> f64 {
        signed_area(self.p1, self.p2, self.p3)
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> f64 {
        self.p1
            .distance(self.p2)
            .max(self.p2.distance(self.p3))
            .max(self.p1.distance(self.p3))
    }

    /// Relative degeneracy test: the area is compared against the squared
    /// diameter so the verdict does not depend on the figure's absolute size.
    pub fn is_degenerate(&self, tol: Tolerances) -> bool {
        let d = self.diameter();
        self.signed_area().abs() <= tol.eps_degenerate * d * d
    }
}

/// Numeric thresholds for the geometric predicates.
///
/// `eps_parallel` bounds the sine of the angle between line normals,
/// `eps_point` is a distance threshold for point coincidence, and
/// `eps_degenerate` is the relative area threshold used by collinearity and
/// orientation. `eps_ratio` is the half-width of the scale band around 1
/// inside which a similarity counts as an isometry.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eps_parallel: f64,
    pub eps_point: f64,
    pub eps_degenerate: f64,
    pub eps_ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Tolerances {
        Tolerances {
            eps_parallel: 1e-9,
            eps_point: 1e-9,
            eps_degenerate: 1e-12,
            eps_ratio: 1e-3,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.eps_parallel, self.eps_point, self.eps_degenerate, self.eps_ratio];
        if all.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(Error::InvalidConfig("tolerances must be strictly positive".into()));
        }
        if self.eps_ratio >= 1.0 {
            return Err(Error::InvalidConfig("eps_ratio must be below 1".into()));
        }
        Ok(())
    }
}

/// Twice the signed area is the cross product of two edge vectors.
pub fn signed_area(p: Point, q: Point, r: Point) -> f64 {
    (q - p).cross(r - p) / 2.0
}

fn max_pairwise_distance(p: Point, q: Point, r: Point) -> f64 {
    p.distance(q).max(q.distance(r)).max(p.distance(r))
}

/// The line through two distinct points.
pub fn line_through(p: Point, q: Point, tol: Tolerances) -> Result<Line> {
    if p.distance(q) <= tol.eps_point {
        return Err(Error::CoincidentPoints);
    }
    Ok(join_unchecked(p, q))
}

/// Joins two points without the distance precondition. Used internally where
/// the points are known to be distinct (e.g. images of distinct points under
/// a bijective map with arbitrarily small scale).
pub(crate) fn join_unchecked(p: Point, q: Point) -> Line {
    let n = (q - p).perp();
    Line::new(n.x, n.y, n.x * p.x + n.y * p.y).expect("points are distinct")
}

/// The line through `p` parallel to `l`.
pub fn parallel_through(l: &Line, p: Point) -> Line {
    // Same normal, so the canonical sign is already settled.
    Line { a: l.a, b: l.b, c: l.a * p.x + l.b * p.y }
}

/// The sine of the angle between the two lines (both normals are unit).
pub fn normal_cross(l1: &Line, l2: &Line) -> f64 {
    l1.a * l2.b - l2.a * l1.b
}

/// Parallelism includes equality: two lines are parallel when they are equal
/// or share no point.
pub fn is_parallel(l1: &Line, l2: &Line, tol: Tolerances) -> bool {
    normal_cross(l1, l2).abs() <= tol.eps_parallel
}

/// The intersection point of two non-parallel lines.
pub fn intersect(l1: &Line, l2: &Line, tol: Tolerances) -> Result<Point> {
    let det = normal_cross(l1, l2);
    if det.abs() <= tol.eps_parallel {
        return Err(Error::ParallelLines);
    }
    // + 0.0 turns any -0.0 into +0.0 for stable output
    Ok(Point::new(
        (l1.c * l2.b - l2.c * l1.b) / det + 0.0,
        (l1.a * l2.c - l2.a * l1.c) / det + 0.0,
    ))
}

/// Relative collinearity test: the triangle area is measured against the
/// squared diameter of the point set.
pub fn collinear(p: Point, q: Point, r: Point, tol: Tolerances) -> bool {
    let scale = max_pairwise_distance(p, q, r);
    signed_area(p, q, r).abs() <= tol.eps_degenerate * scale * scale
}

pub fn midpoint(p: Point, q: Point) -> Point {
    Point::new((p.x + q.x) / 2.0, (p.y + q.y) / 2.0)
}

/// Whether `c` lies strictly between `p` and `q`. The three points must be
/// pairwise distinct.
pub fn is_between(p: Point, c: Point, q: Point, tol: Tolerances) -> Result<bool> {
    if p.distance(c) <= tol.eps_point
        || q.distance(c) <= tol.eps_point
        || p.distance(q) <= tol.eps_point
    {
        return Err(Error::DegenerateInput);
    }
    Ok(collinear(p, c, q, tol) && (p - c).dot(q - c) < 0.0)
}

/// The internal bisector of the angle at `c` formed by the rays toward `p`
/// and `q`: the line through `c` in the direction of the sum of the two unit
/// ray vectors. For a straight angle (opposite rays) the bisector is the
/// perpendicular to the rays through `c`.
pub fn angle_bisector(c: Point, p: Point, q: Point, tol: Tolerances) -> Result<Line> {
    if p.distance(c) <= tol.eps_point || q.distance(c) <= tol.eps_point {
        return Err(Error::DegenerateInput);
    }
    let u = (p - c).normalized().ok_or(Error::DegenerateInput)?;
    let v = (q - c).normalized().ok_or(Error::DegenerateInput)?;
    let sum = u + v;
    let dir = if sum.norm() <= SIGN_EPS { u.perp() } else { sum };
    Line::from_point_direction(c, dir)
}

/// Sign of the signed area of `(p, q, r)`: `+1` counterclockwise, `-1`
/// clockwise, `0` when the points are collinear within tolerance.
pub fn orientation(p: Point, q: Point, r: Point, tol: Tolerances) -> i8 {
    let area = signed_area(p, q, r);
    let scale = max_pairwise_distance(p, q, r);
    if area.abs() <= tol.eps_degenerate * scale * scale {
        0
    } else if area > 0.0 {
        1
    } else {
        -1
    }
}
