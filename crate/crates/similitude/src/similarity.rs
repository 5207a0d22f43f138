//! Plane similarities: representation, algebra, classification, and the
//! algebraic fixed-point solver used to cross-check the geometric
//! constructions.
//!
//! A similarity is stored as `(kind, scale, angle, translation)` rather than
//! as a raw matrix, so the defining property of its linear part (a scaled
//! rotation or scaled reflection) holds by construction and the map can never
//! drift into a general affine transformation. The 2x2 matrix is derived on
//! demand.
//!
//! Angle conventions, in degrees normalized to `[0, 360)`:
//! * direct maps rotate counterclockwise by `angle`;
//! * indirect maps reflect across a line whose direction makes the angle
//!   `angle / 2` with the x-axis (the stored value is the doubled axis
//!   direction), scaled by `scale`.

use serde::{Deserialize, Serialize};

use crate::construction::ConstructionTrace;
use crate::error::{Error, Result};
use crate::geom::{self, Line, Point, Tolerances, Triangle, Vec2};

/// Tolerance for angle comparisons, in degrees.
pub const ANGLE_EPS_DEG: f64 = 1e-7;

/// Orientation behavior of a similarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Orientation-preserving (determinant of the linear part is positive).
    Direct,
    /// Orientation-reversing.
    Indirect,
}

/// Degree sine/cosine with exact values at the quadrant angles, so that
/// axis-aligned transformations round-trip without noise.
fn sin_cos_deg(deg: f64) -> (f64, f64) {
    let r = normalize_deg(deg);
    if r == 0.0 {
        (0.0, 1.0)
    } else if r == 90.0 {
        (1.0, 0.0)
    } else if r == 180.0 {
        (0.0, -1.0)
    } else if r == 270.0 {
        (-1.0, 0.0)
    } else {
        let rad = r.to_radians();
        (rad.sin(), rad.cos())
    }
}

/// Reduces an angle to `[0, 360)` degrees.
pub fn normalize_deg(deg: f64) -> f64 {
    let r = deg.rem_euclid(360.0);
    if r >= 360.0 {
        0.0
    } else {
        r
    }
}

/// Angle equality modulo 360 degrees.
pub fn angle_close(a: f64, b: f64, eps_deg: f64) -> bool {
    let d = (a - b).rem_euclid(360.0);
    d.min(360.0 - d) <= eps_deg
}

/// `atan2` in degrees with exact results for axis-aligned inputs.
fn atan2_deg(y: f64, x: f64) -> f64 {
    if y == 0.0 {
        if x >= 0.0 {
            0.0
        } else {
            180.0
        }
    } else if x == 0.0 {
        if y > 0.0 {
            90.0
        } else {
            270.0
        }
    } else {
        y.atan2(x).to_degrees()
    }
}

fn unit_at_deg(deg: f64) -> Vec2 {
    let (s, c) = sin_cos_deg(deg);
    Vec2::new(c, s)
}

#[derive(Clone, Copy, Debug)]
struct Mat2 {
    m00: f64,
    m01: f64,
    m10: f64,
    m11: f64,
}

impl Mat2 {
    fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(self.m00 * v.x + self.m01 * v.y, self.m10 * v.x + self.m11 * v.y)
    }
}

fn complex_mul(a: Vec2, b: Vec2) -> Vec2 {
    Vec2::new(a.x * b.x - a.y * b.y, a.x * b.y + a.y * b.x)
}

/// A direct or indirect similarity of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Similarity {
    kind: Kind,
    scale: f64,
    angle_deg: f64,
    translation: Vec2,
}

impl Similarity {
    /// Builds a similarity from its four parameters. The scale must be
    /// strictly positive and everything finite.
    pub fn from_parts(kind: Kind, scale: f64, angle_deg: f64, translation: Vec2) -> Result<Similarity> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidRatio);
        }
        if !angle_deg.is_finite() || !translation.is_finite() {
            return Err(Error::DegenerateInput);
        }
        Ok(Similarity { kind, scale, angle_deg: normalize_deg(angle_deg), translation })
    }

    pub fn identity() -> Similarity {
        Similarity { kind: Kind::Direct, scale: 1.0, angle_deg: 0.0, translation: Vec2::ZERO }
    }

    pub fn translate(v: Vec2) -> Similarity {
        Similarity { kind: Kind::Direct, scale: 1.0, angle_deg: 0.0, translation: v }
    }

    /// The stretch about `center` of ratio `r`: fixes the center and moves
    /// every other point along its ray from the center to `r` times the
    /// distance.
    pub fn stretch(center: Point, r: f64) -> Result<Similarity> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRatio);
        }
        Ok(Similarity {
            kind: Kind::Direct,
            scale: r,
            angle_deg: 0.0,
            translation: center.to_vec() * (1.0 - r),
        })
    }

    /// Counterclockwise rotation about `center` through `theta_deg` degrees.
    pub fn rotation(center: Point, theta_deg: f64) -> Similarity {
        let base = Similarity {
            kind: Kind::Direct,
            scale: 1.0,
            angle_deg: normalize_deg(theta_deg),
            translation: Vec2::ZERO,
        };
        let t = center.to_vec() - base.linear().apply(center.to_vec());
        Similarity { translation: t, ..base }
    }

    /// Rotation about `center` through 180 degrees.
    pub fn halfturn(center: Point) -> Similarity {
        Similarity::rotation(center, 180.0)
    }

    /// Reflection in the given line: fixes the line pointwise and maps every
    /// other point to the mirror point across it.
    pub fn reflection(axis: Line) -> Similarity {
        let d = axis.direction();
        let angle = normalize_deg(2.0 * atan2_deg(d.y, d.x));
        // the image of the origin is 2c * (a, b)
        let t = Vec2::new(2.0 * axis.c() * axis.a(), 2.0 * axis.c() * axis.b());
        Similarity { kind: Kind::Indirect, scale: 1.0, angle_deg: angle, translation: t }
    }

    /// A dilation about `center`: a stretch, or a stretch followed by a
    /// halfturn about the same center.
    pub fn dilation(center: Point, r: f64, with_halfturn: bool) -> Result<Similarity> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRatio);
        }
        let (angle, factor) = if with_halfturn { (180.0, 1.0 + r) } else { (0.0, 1.0 - r) };
        Ok(Similarity {
            kind: Kind::Direct,
            scale: r,
            angle_deg: angle,
            translation: center.to_vec() * factor,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// The ratio of the similarity: every distance is multiplied by it.
    pub fn ratio(&self) -> f64 {
        self.scale
    }

    pub fn angle_deg(&self) -> f64 {
        self.angle_deg
    }

    pub fn translation(&self) -> Vec2 {
        self.translation
    }

    fn linear(&self) -> Mat2 {
        let (s, c) = sin_cos_deg(self.angle_deg);
        let r = self.scale;
        match self.kind {
            Kind::Direct => Mat2 { m00: r * c, m01: -r * s, m10: r * s, m11: r * c },
            Kind::Indirect => Mat2 { m00: r * c, m01: r * s, m10: r * s, m11: -r * c },
        }
    }

    /// The linear part as a row-major 2x2 matrix.
    pub fn linear_matrix(&self) -> [[f64; 2]; 2] {
        let m = self.linear();
        [[m.m00, m.m01], [m.m10, m.m11]]
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::from_vec(self.linear().apply(p.to_vec()) + self.translation)
    }

    /// Applies only the linear part (useful for displacements).
    pub fn apply_vec(&self, v: Vec2) -> Vec2 {
        self.linear().apply(v)
    }

    /// The image of a line, computed by transforming two distinct points of
    /// the line and rejoining them.
    pub fn apply_line(&self, l: &Line) -> Line {
        let p0 = l.point_on();
        let p1 = l.point_at(1.0);
        geom::join_unchecked(self.apply(p0), self.apply(p1))
    }

    pub fn apply_triangle(&self, t: &Triangle) -> Triangle {
        Triangle::new(self.apply(t.p1), self.apply(t.p2), self.apply(t.p3))
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Similarity) -> Similarity {
        let kind = if self.kind == other.kind { Kind::Direct } else { Kind::Indirect };
        // Rot(a)Rot(b) = Rot(a+b), Ref(a)Ref(b) = Rot(a-b),
        // Rot(a)Ref(b) = Ref(a+b), Ref(a)Rot(b) = Ref(a-b).
        let angle = match self.kind {
            Kind::Direct => self.angle_deg + other.angle_deg,
            Kind::Indirect => self.angle_deg - other.angle_deg,
        };
        Similarity {
            kind,
            scale: self.scale * other.scale,
            angle_deg: normalize_deg(angle),
            translation: self.linear().apply(other.translation) + self.translation,
        }
    }

    pub fn inverse(&self) -> Similarity {
        let (kind, angle) = match self.kind {
            Kind::Direct => (Kind::Direct, normalize_deg(-self.angle_deg)),
            // a scaled reflection is its own linear inverse up to scale
            Kind::Indirect => (Kind::Indirect, self.angle_deg),
        };
        let base =
            Similarity { kind, scale: 1.0 / self.scale, angle_deg: angle, translation: Vec2::ZERO };
        Similarity { translation: -base.linear().apply(self.translation), ..base }
    }

    /// An isometry is a similarity of ratio 1, within the `eps_ratio` band.
    pub fn is_isometry(&self, tol: Tolerances) -> bool {
        (self.scale - 1.0).abs() <= tol.eps_ratio
    }

    /// A dilatation sends every line to a parallel line; these are exactly
    /// the similarities whose linear part is a scalar multiple of plus or
    /// minus the identity.
    pub fn is_dilatation(&self) -> bool {
        self.kind == Kind::Direct
            && (angle_close(self.angle_deg, 0.0, ANGLE_EPS_DEG)
                || angle_close(self.angle_deg, 180.0, ANGLE_EPS_DEG))
    }

    /// Recovers the unique similarity mapping `source` onto `image` vertex by
    /// vertex. The first two vertex pairs determine the map; the third pair
    /// is used as a consistency check so inconsistent input is rejected
    /// rather than silently averaged.
    pub fn from_correspondence(source: &Triangle, image: &Triangle, tol: Tolerances) -> Result<Similarity> {
        if !source.vertices().iter().all(|v| v.is_finite())
            || !image.vertices().iter().all(|v| v.is_finite())
        {
            return Err(Error::DegenerateInput);
        }
        if source.is_degenerate(tol) {
            return Err(Error::DegenerateTriangle);
        }
        let [p, q, r] = source.vertices();
        let [p2, q2, r2] = image.vertices();

        let ratios = [
            p2.distance(q2) / p.distance(q),
            q2.distance(r2) / q.distance(r),
            p2.distance(r2) / p.distance(r),
        ];
        let rmax = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let rmin = ratios.iter().cloned().fold(f64::MAX, f64::min);
        if rmin <= 0.0 || rmax - rmin > tol.eps_ratio * rmax {
            return Err(Error::NotSimilar);
        }

        let o1 = geom::orientation(p, q, r, tol);
        let o2 = geom::orientation(p2, q2, r2, tol);
        if o1 == 0 || o2 == 0 {
            return Err(Error::DegenerateTriangle);
        }
        let kind = if o1 == o2 { Kind::Direct } else { Kind::Indirect };

        // Treat the plane as complex numbers: a direct map is z -> wz + v and
        // an indirect map is z -> w*conj(z) + v.
        let dz = q - p;
        let dw = q2 - p2;
        let den = dz.dot(dz);
        let w = match kind {
            Kind::Direct => Vec2::new(dw.dot(dz) / den, dz.cross(dw) / den),
            Kind::Indirect => complex_mul(dw, dz) * (1.0 / den),
        };
        let scale = w.norm();
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::NotSimilar);
        }
        let pz = p.to_vec();
        let arg = match kind {
            Kind::Direct => pz,
            Kind::Indirect => Vec2::new(pz.x, -pz.y),
        };
        let alpha = Similarity {
            kind,
            scale,
            angle_deg: normalize_deg(atan2_deg(w.y, w.x)),
            translation: p2.to_vec() - complex_mul(w, arg),
        };

        let residual = alpha.apply(r).distance(r2);
        if residual > tol.eps_ratio * (1.0 + image.diameter()) {
            return Err(Error::NotSimilar);
        }
        Ok(alpha)
    }

    /// Solves `(I - M) x = t` for the fixed point. Fails when `I - M` is
    /// singular within tolerance, which happens exactly for identities,
    /// translations, reflections, and glide reflections.
    pub fn fixed_point_algebraic(&self, tol: Tolerances) -> Result<FixedPointResult> {
        let m = self.linear();
        let (a11, a12, a21, a22) = (1.0 - m.m00, -m.m01, -m.m10, 1.0 - m.m11);
        let det = a11 * a22 - a12 * a21;
        if det.abs() <= tol.eps_degenerate {
            return Err(Error::NoUniqueFixedPoint);
        }
        let t = self.translation;
        // + 0.0 turns any -0.0 into +0.0 for stable output
        let point =
            Point::new((t.x * a22 - t.y * a12) / det + 0.0, (a11 * t.y - a21 * t.x) / det + 0.0);
        Ok(FixedPointResult { point, method: Method::Algebraic, trace: None, conditioning: det.abs() })
    }

    /// Classifies the similarity, producing centers, axes, and parameters.
    pub fn classify(&self, tol: Tolerances) -> SimilarityClass {
        let isometric = self.is_isometry(tol);
        match self.kind {
            Kind::Direct => {
                let angle_zero = angle_close(self.angle_deg, 0.0, ANGLE_EPS_DEG);
                if isometric {
                    if angle_zero {
                        if self.translation.norm() <= tol.eps_point {
                            SimilarityClass::Identity
                        } else {
                            SimilarityClass::Translation { vector: self.translation }
                        }
                    } else {
                        match self.fixed_point_algebraic(tol) {
                            Ok(fp) => SimilarityClass::Rotation {
                                center: fp.point,
                                angle_deg: self.angle_deg,
                            },
                            // rotation angle too small to resolve a center
                            Err(_) => SimilarityClass::Translation { vector: self.translation },
                        }
                    }
                } else {
                    match self.fixed_point_algebraic(tol) {
                        Ok(fp) if angle_zero => {
                            SimilarityClass::Stretch { center: fp.point, ratio: self.scale }
                        }
                        Ok(fp) => SimilarityClass::StretchRotation {
                            center: fp.point,
                            ratio: self.scale,
                            angle_deg: self.angle_deg,
                        },
                        Err(_) => SimilarityClass::Translation { vector: self.translation },
                    }
                }
            }
            Kind::Indirect => {
                // the reflection axis direction is half the stored angle
                let axis_dir = unit_at_deg(self.angle_deg / 2.0);
                if isometric {
                    let squared = self.compose(self);
                    let glide2 = squared.translation;
                    if glide2.norm() <= tol.eps_point * (1.0 + self.translation.norm()) {
                        let axis_point = geom::midpoint(Point::ORIGIN, Point::from_vec(self.translation));
                        let axis = Line::from_point_direction(axis_point, axis_dir)
                            .expect("unit direction");
                        SimilarityClass::Reflection { axis }
                    } else {
                        let glide = glide2 * 0.5;
                        let mirror = Similarity::translate(-glide).compose(self);
                        let axis_point =
                            geom::midpoint(Point::ORIGIN, Point::from_vec(mirror.translation));
                        let axis = Line::from_point_direction(axis_point, axis_dir)
                            .expect("unit direction");
                        SimilarityClass::GlideReflection { axis, glide }
                    }
                } else {
                    match self.fixed_point_algebraic(tol) {
                        Ok(fp) => SimilarityClass::StretchReflection {
                            center: fp.point,
                            ratio: self.scale,
                            axis: Line::from_point_direction(fp.point, axis_dir)
                                .expect("unit direction"),
                        },
                        // unresolvable center: indistinguishable from an isometry
                        Err(_) => {
                            let axis_point =
                                geom::midpoint(Point::ORIGIN, Point::from_vec(self.translation));
                            let axis = Line::from_point_direction(axis_point, axis_dir)
                                .expect("unit direction");
                            SimilarityClass::Reflection { axis }
                        }
                    }
                }
            }
        }
    }

    /// Splits a non-isometric similarity into a stretch about its fixed point
    /// and an isometry fixing the same point (a rotation for direct input, a
    /// reflection in a line through the point for indirect input), such that
    /// isometry-after-stretch reproduces the original map.
    pub fn decompose(&self, tol: Tolerances) -> Result<(Similarity, Similarity)> {
        if self.is_isometry(tol) {
            return Err(Error::IsometryInput);
        }
        let center = self.fixed_point_algebraic(tol)?.point;
        let stretch_part = Similarity::stretch(center, self.scale).expect("scale is positive");
        let iso_part = self.compose(&stretch_part.inverse());
        Ok((stretch_part, iso_part))
    }
}

/// The classification verdict for a similarity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SimilarityClass {
    Identity,
    Translation { vector: Vec2 },
    Rotation { center: Point, angle_deg: f64 },
    Reflection { axis: Line },
    GlideReflection { axis: Line, glide: Vec2 },
    Stretch { center: Point, ratio: f64 },
    StretchRotation { center: Point, ratio: f64, angle_deg: f64 },
    StretchReflection { center: Point, ratio: f64, axis: Line },
}

impl SimilarityClass {
    pub fn tag(&self) -> &'static str {
        match self {
            SimilarityClass::Identity => "identity",
            SimilarityClass::Translation { .. } => "translation",
            SimilarityClass::Rotation { .. } => "rotation",
            SimilarityClass::Reflection { .. } => "reflection",
            SimilarityClass::GlideReflection { .. } => "glide_reflection",
            SimilarityClass::Stretch { .. } => "stretch",
            SimilarityClass::StretchRotation { .. } => "stretch_rotation",
            SimilarityClass::StretchReflection { .. } => "stretch_reflection",
        }
    }

    /// Whether the classified map sends every line to a parallel line.
    pub fn is_dilatation(&self) -> bool {
        match self {
            SimilarityClass::Identity
            | SimilarityClass::Translation { .. }
            | SimilarityClass::Stretch { .. } => true,
            SimilarityClass::Rotation { angle_deg, .. }
            | SimilarityClass::StretchRotation { angle_deg, .. } => {
                angle_close(*angle_deg, 180.0, ANGLE_EPS_DEG)
            }
            _ => false,
        }
    }

    /// Rebuilds a similarity from the classified parameters. Ratios in the
    /// stretch variants must be positive.
    pub fn to_similarity(&self) -> Similarity {
        match *self {
            SimilarityClass::Identity => Similarity::identity(),
            SimilarityClass::Translation { vector } => Similarity::translate(vector),
            SimilarityClass::Rotation { center, angle_deg } => Similarity::rotation(center, angle_deg),
            SimilarityClass::Reflection { axis } => Similarity::reflection(axis),
            SimilarityClass::GlideReflection { axis, glide } => {
                Similarity::translate(glide).compose(&Similarity::reflection(axis))
            }
            SimilarityClass::Stretch { center, ratio } => {
                Similarity::stretch(center, ratio).expect("positive ratio")
            }
            SimilarityClass::StretchRotation { center, ratio, angle_deg } => {
                Similarity::rotation(center, angle_deg)
                    .compose(&Similarity::stretch(center, ratio).expect("positive ratio"))
            }
            SimilarityClass::StretchReflection { center, ratio, axis } => {
                Similarity::reflection(axis)
                    .compose(&Similarity::stretch(center, ratio).expect("positive ratio"))
            }
        }
    }
}

/// How a fixed point was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Direct 2x2 linear solve.
    Algebraic,
    /// Intersection of the two invariant lines of a dilation.
    DilationCenter,
    /// Two-pass construction from a witness triangle pair.
    FromWitness,
    /// Descent through parallels to a pair of crossing joins.
    Parallels,
}

impl Method {
    /// The token used on the command line and in structured output.
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Algebraic => "algebraic",
            Method::DilationCenter => "dilation",
            Method::FromWitness => "algorithm1",
            Method::Parallels => "theorem",
        }
    }
}

/// A located fixed point together with provenance: which route produced it,
/// the labeled auxiliary elements (when geometric), and the smallest
/// intersection-angle sine or determinant encountered on the way.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointResult {
    pub point: Point,
    pub method: Method,
    pub trace: Option<ConstructionTrace>,
    pub conditioning: f64,
}
