//! Straightedge-style fixed-point constructions for non-isometric plane
//! similarities, built only from joins, parallels, and intersections.
//!
//! Three geometric routes are provided:
//!
//! * [`dilation_center`] locates the center of a dilation as the intersection
//!   of its two invariant probe lines;
//! * [`fixed_point_from_witness`] takes a witness triangle pair (a triangle
//!   and its image with neither corresponding side pair parallel), runs the
//!   two descent passes, and intersects the resulting cross lines;
//! * [`fixed_point_by_parallels`] descends through parallels to a pair of
//!   crossing joins and is used as the fallback route.
//!
//! [`fixed_point`] dispatches between them and never consults the algebraic
//! solver, so the two can be compared as independent oracles.
//!
//! Every route returns a [`FixedPointResult`] with a labeled
//! [`ConstructionTrace`] that figures and tests read back, and a conditioning
//! value: the smallest intersection-angle sine encountered. Near-parallel
//! intersections are accepted but show up there, making numerical degradation
//! observable instead of silent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{
    self, collinear, intersect, is_parallel, line_through, midpoint, normal_cross,
    parallel_through, Line, Point, Tolerances, Triangle, Vec2,
};
use crate::similarity::{FixedPointResult, Kind, Method, Similarity};

/// A named element recorded by a construction.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Point(Point),
    Line(Line),
}

/// One labeled step of a construction.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEntry {
    pub label: String,
    pub step: u32,
    #[serde(flatten)]
    pub element: Element,
}

/// The ordered, labeled auxiliary points and lines a construction produced.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ConstructionTrace {
    entries: Vec<TraceEntry>,
}

impl ConstructionTrace {
    pub fn new() -> ConstructionTrace {
        ConstructionTrace::default()
    }

    pub fn push_point(&mut self, label: &str, p: Point, step: u32) {
        self.entries.push(TraceEntry { label: label.to_string(), step, element: Element::Point(p) });
    }

    pub fn push_line(&mut self, label: &str, l: Line, step: u32) {
        self.entries.push(TraceEntry { label: label.to_string(), step, element: Element::Line(l) });
    }

    pub fn entries(&self) -> &[TraceEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&Element> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.element)
    }

    pub fn point(&self, label: &str) -> Option<Point> {
        match self.get(label) {
            Some(Element::Point(p)) => Some(*p),
            _ => None,
        }
    }

    pub fn line(&self, label: &str) -> Option<Line> {
        match self.get(label) {
            Some(Element::Line(l)) => Some(*l),
            _ => None,
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.label.as_str()).collect()
    }

    /// Appends every entry of another trace.
    pub fn extend(&mut self, other: &ConstructionTrace) {
        self.entries.extend(other.entries.iter().cloned());
    }
}

/// A triangle and its image under a similarity, with the two corresponding
/// side pairs through the shared vertex not parallel. This is exactly the
/// input the witness construction needs.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct WitnessTriangles {
    pub source: Triangle,
    pub image: Triangle,
}

impl WitnessTriangles {
    /// Applies `alpha` to `source` and validates the witness conditions.
    pub fn for_similarity(alpha: &Similarity, source: Triangle, tol: Tolerances) -> Result<WitnessTriangles> {
        let w = WitnessTriangles { source, image: alpha.apply_triangle(&source) };
        w.validate(alpha, tol)?;
        Ok(w)
    }

    /// Checks every invariant: the image vertices agree with `alpha`, both
    /// triangles are non-degenerate, and neither the first nor the second
    /// side pair is parallel.
    pub fn validate(&self, alpha: &Similarity, tol: Tolerances) -> Result<()> {
        let src = self.source.vertices();
        let img = self.image.vertices();
        for (v, v2) in src.iter().zip(img.iter()) {
            if alpha.apply(*v).distance(*v2) > tol.eps_point * (1.0 + v2.to_vec().norm()) {
                return Err(Error::DegenerateSelection);
            }
        }
        if self.source.is_degenerate(tol) || self.image.is_degenerate(tol) {
            return Err(Error::DegenerateTriangle);
        }
        let [p, q, r] = src;
        let [p2, q2, r2] = img;
        let first = line_through(p, q, tol)?;
        let first_img = line_through(p2, q2, tol)?;
        if is_parallel(&first, &first_img, tol) {
            return Err(Error::DegenerateSelection);
        }
        let second = line_through(q, r, tol)?;
        let second_img = line_through(q2, r2, tol)?;
        if is_parallel(&second, &second_img, tol) {
            return Err(Error::DegenerateSelection);
        }
        Ok(())
    }
}

/// Result of the center-collinearity probe: the two line intersections and
/// whether they are collinear with the fixed point.
#[derive(Clone, Copy, Debug)]
pub struct CollinearityWitness {
    pub d: Point,
    pub e: Point,
    pub collinear: bool,
}

/// Probe directions tried when a line with a non-parallel image is needed:
/// 0, 45, and 90 degrees. For a direct non-dilatation every direction works;
/// for an indirect map only the axis-parallel and axis-perpendicular
/// directions fail, so three spaced candidates always contain a winner.
const CANDIDATE_DIRECTIONS: [(f64, f64); 3] =
    [(1.0, 0.0), (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2), (0.0, 1.0)];

/// Below this image-crossing sine a construction is rerun once with its probe
/// lines re-anchored at the first-pass estimate, which keeps the auxiliary
/// intersections near the fixed point instead of ~|t|/sine away.
const REFINE_CONDITIONING: f64 = 0.05;

fn candidate_line(k: usize, anchor: Point) -> Line {
    let (x, y) = CANDIDATE_DIRECTIONS[k];
    Line::from_point_direction(anchor, Vec2::new(x, y)).expect("unit direction")
}

/// Admissible probe directions through `anchor`, best crossing sine first
/// (ties keep the lower index).
fn ranked_candidates(alpha: &Similarity, anchor: Point, tol: Tolerances) -> Vec<(usize, f64)> {
    let mut ranked: Vec<(usize, f64)> = (0..CANDIDATE_DIRECTIONS.len())
        .filter_map(|k| {
            let l = candidate_line(k, anchor);
            let sine = normal_cross(&l, &alpha.apply_line(&l)).abs();
            (sine > tol.eps_parallel).then_some((k, sine))
        })
        .collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

/// Intersects two lines while folding the crossing-angle sine into the
/// running conditioning value.
fn meet(l1: &Line, l2: &Line, tol: Tolerances, conditioning: &mut f64) -> Result<Point> {
    let sine = normal_cross(l1, l2).abs();
    let p = intersect(l1, l2, tol)?;
    if sine < *conditioning {
        *conditioning = sine;
    }
    Ok(p)
}

fn points_coincide(p: Point, q: Point, tol: Tolerances) -> bool {
    p.distance(q) <= tol.eps_point * (1.0 + p.to_vec().norm().max(q.to_vec().norm()))
}

/// Locates the center of a dilation (a stretch, or a stretch followed by a
/// halfturn). Starting from the probe point `A` with image `A'`:
/// a fixed probe is the center; a ratio-1 dilation is a halfturn whose center
/// is the midpoint of `A A'`; otherwise a second probe `B` off the line
/// `A A'` is taken and the center is the intersection of the invariant lines
/// `A A'` and `B B'`.
pub fn dilation_center(delta: &Similarity, probe: Point, tol: Tolerances) -> Result<FixedPointResult> {
    if !delta.is_dilatation() {
        return Err(Error::NotADilation);
    }
    let ratio_one = delta.is_isometry(tol);
    let angle_zero = crate::similarity::angle_close(delta.angle_deg(), 0.0, crate::similarity::ANGLE_EPS_DEG);
    if ratio_one && angle_zero {
        // ratio-1, no halfturn: the identity has no unique center and a
        // translation is not a dilation at all
        return Err(if delta.translation().norm() <= tol.eps_point {
            Error::IdentityInput
        } else {
            Error::NotADilation
        });
    }

    let mut trace = ConstructionTrace::new();
    let a = probe;
    let a_img = delta.apply(a);
    trace.push_point("A", a, 1);
    if points_coincide(a, a_img, tol) {
        // the probe is already the center
        return Ok(FixedPointResult {
            point: a,
            method: Method::DilationCenter,
            trace: Some(trace),
            conditioning: 1.0,
        });
    }
    trace.push_point("A'", a_img, 1);

    if ratio_one {
        // a ratio-1 dilation with a halfturn: center is the midpoint
        let c = midpoint(a, a_img);
        trace.push_point("C", c, 2);
        return Ok(FixedPointResult {
            point: c,
            method: Method::DilationCenter,
            trace: Some(trace),
            conditioning: 1.0,
        });
    }

    let line_a = line_through(a, a_img, tol)?;
    trace.push_line("AA'", line_a, 2);

    // second probe off the first invariant line, one unit along its normal
    let b = a + Vec2::new(line_a.a(), line_a.b());
    let b_img = delta.apply(b);
    trace.push_point("B", b, 3);
    if points_coincide(b, b_img, tol) {
        return Ok(FixedPointResult {
            point: b,
            method: Method::DilationCenter,
            trace: Some(trace),
            conditioning: 1.0,
        });
    }
    trace.push_point("B'", b_img, 3);
    let line_b = line_through(b, b_img, tol)?;
    trace.push_line("BB'", line_b, 4);

    let mut conditioning = f64::INFINITY;
    let c = meet(&line_a, &line_b, tol, &mut conditioning)?;
    trace.push_point("C", c, 5);
    Ok(FixedPointResult { point: c, method: Method::DilationCenter, trace: Some(trace), conditioning })
}

fn witness_from_candidate(
    alpha: &Similarity,
    k: usize,
    anchor: Point,
    tol: Tolerances,
) -> Result<WitnessTriangles> {
    let q_line = candidate_line(k, anchor);
    let q_img = alpha.apply_line(&q_line);
    if is_parallel(&q_line, &q_img, tol) {
        return Err(Error::ParallelImage);
    }
    let corner = intersect(&q_line, &q_img, tol)?;
    // vertices at unit distance from the corner keep the construction's
    // intermediate intersections at the scale of the problem
    let p = corner + q_line.direction();
    let r = corner + q_img.direction();
    WitnessTriangles::for_similarity(alpha, Triangle::new(p, corner, r), tol)
}

/// Selects a witness triangle pair for a non-isometric similarity that is
/// not a dilatation: the best-conditioned probe line whose image cuts it
/// provides the shared vertex, and the two unit points along the line and
/// its image complete the triangle.
pub fn witness_triangles(alpha: &Similarity, tol: Tolerances) -> Result<WitnessTriangles> {
    if alpha.is_dilatation() {
        return Err(Error::IsDilatation);
    }
    if alpha.is_isometry(tol) {
        return Err(Error::IsometryInput);
    }
    for (k, _) in ranked_candidates(alpha, Point::ORIGIN, tol) {
        if let Ok(w) = witness_from_candidate(alpha, k, Point::ORIGIN, tol) {
            return Ok(w);
        }
    }
    Err(Error::DegenerateSelection)
}

/// Which pass of the witness construction is running; the second pass swaps
/// the roles of the first and third vertices.
enum Pass {
    First,
    Second,
}

/// One descent pass: join the first two vertices, take the parallel through
/// the third, do the same on the image side, and join the two intersections.
fn descent_line(
    vertices: [Point; 3],
    images: [Point; 3],
    tol: Tolerances,
    trace: &mut ConstructionTrace,
    pass: Pass,
    conditioning: &mut f64,
) -> Result<Line> {
    let [p, q, r] = vertices;
    let [p2, q2, r2] = images;
    let m = line_through(p, q, tol)?;
    let n = parallel_through(&m, r);
    let m_img = line_through(p2, q2, tol)?;
    let n_img = parallel_through(&m_img, r2);
    let d = meet(&m, &m_img, tol, conditioning)?;
    let e = meet(&n, &n_img, tol, conditioning)?;
    let joined = line_through(d, e, tol)?;
    match pass {
        Pass::First => {
            trace.push_line("m", m, 1);
            trace.push_line("n", n, 1);
            trace.push_line("m'", m_img, 2);
            trace.push_line("n'", n_img, 2);
            trace.push_point("D", d, 3);
            trace.push_point("E", e, 3);
            trace.push_line("a", joined, 4);
        }
        Pass::Second => {
            trace.push_point("F", d, 5);
            trace.push_point("G", e, 5);
            trace.push_line("b", joined, 5);
        }
    }
    Ok(joined)
}

/// The witness construction: two descent passes (the second with the outer
/// vertices interchanged) each produce a line through the fixed point, and
/// the fixed point is their intersection.
pub fn fixed_point_from_witness(
    alpha: &Similarity,
    witness: &WitnessTriangles,
    tol: Tolerances,
) -> Result<FixedPointResult> {
    witness.validate(alpha, tol)?;
    let [p, q, r] = witness.source.vertices();
    let [p2, q2, r2] = witness.image.vertices();
    let mut trace = ConstructionTrace::new();
    let mut conditioning = f64::INFINITY;

    let first = descent_line([p, q, r], [p2, q2, r2], tol, &mut trace, Pass::First, &mut conditioning)?;
    let second = descent_line([r, q, p], [r2, q2, p2], tol, &mut trace, Pass::Second, &mut conditioning)?;
    let c = meet(&first, &second, tol, &mut conditioning)?;
    trace.push_point("C", c, 6);
    Ok(FixedPointResult { point: c, method: Method::FromWitness, trace: Some(trace), conditioning })
}

fn parallels_attempt(alpha: &Similarity, anchor: Point, tol: Tolerances) -> Result<FixedPointResult> {
    let (k, _) = *ranked_candidates(alpha, anchor, tol).first().ok_or(Error::DegenerateSelection)?;
    let l = candidate_line(k, anchor);
    let l_img = alpha.apply_line(&l);
    let mut trace = ConstructionTrace::new();
    let mut conditioning = f64::INFINITY;
    trace.push_line("l", l, 1);
    trace.push_line("l'", l_img, 1);

    let a = meet(&l, &l_img, tol, &mut conditioning)?;
    trace.push_point("A", a, 2);
    let a_img = alpha.apply(a);
    if points_coincide(a, a_img, tol) {
        trace.push_point("C", a, 6);
        return Ok(FixedPointResult { point: a, method: Method::Parallels, trace: Some(trace), conditioning });
    }
    trace.push_point("A'", a_img, 2);

    let m = parallel_through(&l, a_img);
    trace.push_line("m", m, 3);
    let m_img = alpha.apply_line(&m);
    trace.push_line("m'", m_img, 3);

    let b = meet(&m, &m_img, tol, &mut conditioning)?;
    trace.push_point("B", b, 4);
    let b_img = alpha.apply(b);
    if points_coincide(b, b_img, tol) {
        trace.push_point("C", b, 6);
        return Ok(FixedPointResult { point: b, method: Method::Parallels, trace: Some(trace), conditioning });
    }
    trace.push_point("B'", b_img, 4);

    let join = line_through(a, b, tol)?;
    trace.push_line("AB", join, 5);
    let join_img = line_through(a_img, b_img, tol)?;
    trace.push_line("A'B'", join_img, 5);

    let c = meet(&join, &join_img, tol, &mut conditioning)?;
    trace.push_point("C", c, 6);
    Ok(FixedPointResult { point: c, method: Method::Parallels, trace: Some(trace), conditioning })
}

/// The parallels route: starting from a line `l` cut by its image, descend
/// through `A = l ∩ l'`, the parallel `m` to `l` through `A'`, and
/// `B = m ∩ m'`; the joins `AB` and `A'B'` cross at the fixed point. Early
/// exits return `A` or `B` when either probe is already fixed.
pub fn fixed_point_by_parallels(alpha: &Similarity, tol: Tolerances) -> Result<FixedPointResult> {
    if alpha.is_dilatation() {
        return Err(Error::IsDilatation);
    }
    if alpha.is_isometry(tol) {
        return Err(Error::IsometryInput);
    }
    let first = parallels_attempt(alpha, Point::ORIGIN, tol)?;
    Ok(maybe_refine(alpha, first, tol, |anchor| parallels_attempt(alpha, anchor, tol)))
}

/// How far the candidate point is from actually being fixed.
fn fixed_point_residual(alpha: &Similarity, p: Point) -> f64 {
    alpha.apply(p).distance(p)
}

/// Reruns a poorly conditioned construction with its probe lines re-anchored
/// at the current estimate, keeping the result with the smallest fixed-point
/// residual. Re-anchoring keeps every auxiliary intersection near the fixed
/// point, which removes the ~|t|/sine blow-up of the intermediate
/// coordinates; each pass contracts the remaining error, so a few passes
/// reach solver-level accuracy. The crossing sines themselves are intrinsic
/// to the map and unchanged.
fn maybe_refine<F>(alpha: &Similarity, first: FixedPointResult, _tol: Tolerances, attempt: F) -> FixedPointResult
where
    F: Fn(Point) -> Result<FixedPointResult>,
{
    if first.conditioning >= REFINE_CONDITIONING {
        return first;
    }
    let mut best_residual = fixed_point_residual(alpha, first.point);
    let mut best = first;
    for _ in 0..3 {
        let Ok(next) = attempt(best.point) else { break };
        let residual = fixed_point_residual(alpha, next.point);
        if residual < best_residual {
            best_residual = residual;
            best = next;
        } else {
            break;
        }
    }
    best
}

fn witness_attempt(alpha: &Similarity, anchor: Point, tol: Tolerances) -> Result<FixedPointResult> {
    for (k, _) in ranked_candidates(alpha, anchor, tol) {
        let Ok(witness) = witness_from_candidate(alpha, k, anchor, tol) else {
            continue;
        };
        if let Ok(result) = fixed_point_from_witness(alpha, &witness, tol) {
            return Ok(result);
        }
    }
    Err(Error::DegenerateSelection)
}

/// The largest image-crossing sine any probe direction offers; reported as a
/// diagnostic when every route fails.
fn best_candidate_sine(alpha: &Similarity) -> f64 {
    (0..CANDIDATE_DIRECTIONS.len())
        .map(|k| {
            let l = candidate_line(k, Point::ORIGIN);
            normal_cross(&l, &alpha.apply_line(&l)).abs()
        })
        .fold(0.0, f64::max)
}

/// Constructs the fixed point of a non-isometric similarity purely
/// geometrically: dilations go through [`dilation_center`] with the origin as
/// probe; everything else goes through the witness construction, retrying the
/// remaining probe directions on a degenerate intersection and finally
/// falling back to [`fixed_point_by_parallels`]. The algebraic solver is
/// never consulted.
pub fn fixed_point(alpha: &Similarity, tol: Tolerances) -> Result<FixedPointResult> {
    if alpha.is_isometry(tol) {
        return Err(Error::IsometryInput);
    }
    if alpha.is_dilatation() {
        return dilation_center(alpha, Point::ORIGIN, tol);
    }
    match witness_attempt(alpha, Point::ORIGIN, tol) {
        Ok(first) => Ok(maybe_refine(alpha, first, tol, |anchor| witness_attempt(alpha, anchor, tol))),
        Err(_) => fixed_point_by_parallels(alpha, tol)
            .map_err(|_| Error::ConstructionFailed { conditioning: best_candidate_sine(alpha) }),
    }
}

/// Center-collinearity probe: for a line `l` off the fixed point `center`
/// with a non-parallel image, a second parallel `m` is taken one
/// configuration unit further out on the far side, and the intersections
/// `D = l ∩ l'` and `E = m ∩ m'` are tested for collinearity with the center.
pub fn collinearity_witness(
    alpha: &Similarity,
    center: Point,
    l: &Line,
    tol: Tolerances,
) -> Result<CollinearityWitness> {
    let s = l.eval(center);
    if s.abs() <= tol.eps_point {
        return Err(Error::LineThroughCenter);
    }
    let l_img = alpha.apply_line(l);
    if is_parallel(l, &l_img, tol) {
        return Err(Error::ParallelImage);
    }
    let offset = 1.0 + s.abs();
    let m = Line::new(l.a(), l.b(), l.c() - s.signum() * offset).expect("unit normal");
    let m_img = alpha.apply_line(&m);
    let d = intersect(l, &l_img, tol)?;
    let e = intersect(&m, &m_img, tol)?;
    Ok(CollinearityWitness { d, e, collinear: collinear(center, d, e, tol) })
}

/// The reflection axis of an indirect non-isometric similarity with fixed
/// point `center`, read off a probe point: the axis bisects the angle at the
/// center between the probe and its image. Of the two perpendicular bisector
/// candidates, the one whose reflection recomposes the map (checked at three
/// sample points) is returned.
pub fn reflection_axis(alpha: &Similarity, center: Point, probe: Point, tol: Tolerances) -> Result<Line> {
    if alpha.kind() != Kind::Indirect {
        return Err(Error::NotIndirect);
    }
    if alpha.is_isometry(tol) {
        return Err(Error::IsometryInput);
    }
    if points_coincide(probe, center, tol) {
        return Err(Error::DegenerateProbe);
    }
    let probe_img = alpha.apply(probe);
    let bisector = geom::angle_bisector(center, probe, probe_img, tol)?;
    let perpendicular = Line::from_point_direction(center, Vec2::new(bisector.a(), bisector.b()))
        .expect("unit normal");

    let stretch_part = Similarity::stretch(center, alpha.ratio()).expect("positive ratio");
    let samples = [
        center + Vec2::new(1.0, 0.0),
        center + Vec2::new(0.0, 1.0),
        center + Vec2::new(1.0, 1.0),
    ];
    let residual = |axis: &Line| -> f64 {
        let candidate = Similarity::reflection(*axis).compose(&stretch_part);
        samples
            .iter()
            .map(|&p| candidate.apply(p).distance(alpha.apply(p)))
            .fold(0.0, f64::max)
    };
    let (r_bis, r_perp) = (residual(&bisector), residual(&perpendicular));
    let (best, best_residual) =
        if r_bis <= r_perp { (bisector, r_bis) } else { (perpendicular, r_perp) };
    let scale_hint = 1.0 + center.to_vec().norm() + probe.to_vec().norm();
    if best_residual > 1e-6 * scale_hint {
        return Err(Error::ConstructionFailed { conditioning: best_residual });
    }
    Ok(best)
}

/// The counterclockwise angle, in degrees, from the ray `center -> probe` to
/// the ray `center -> alpha(probe)`. For a direct similarity fixing `center`
/// this reads off the rotation angle geometrically.
pub fn rotation_angle_at(alpha: &Similarity, center: Point, probe: Point, tol: Tolerances) -> Result<f64> {
    if alpha.kind() != Kind::Direct {
        return Err(Error::NotDirect);
    }
    if points_coincide(probe, center, tol) {
        return Err(Error::DegenerateProbe);
    }
    let u = probe - center;
    let v = alpha.apply(probe) - center;
    let angle = v.y.atan2(v.x) - u.y.atan2(u.x);
    Ok(crate::similarity::normalize_deg(angle.to_degrees()))
}
