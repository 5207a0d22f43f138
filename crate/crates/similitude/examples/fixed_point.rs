//! Construct the fixed point of a non-isometric similarity geometrically —
//! joins, parallels, and intersections only — and check the result against
//! the algebraic 2x2 solve.
//!
//! ```text
//! cargo run --example fixed_point
//! ```

use similitude::construction::{fixed_point_from_witness, Element, WitnessTriangles};
use similitude::{Kind, Point, Similarity, Tolerances, Triangle, Vec2};

fn main() {
    let tol = Tolerances::default();
    let alpha = Similarity::from_parts(Kind::Direct, 2.0, 90.0, Vec2::new(4.0, 0.0)).unwrap();

    // a witness: a triangle and its image, with neither side pair through
    // the shared vertex parallel
    let source = Triangle::new(Point::ORIGIN, Point::new(4.0, 0.0), Point::new(4.0, 2.0));
    let witness = WitnessTriangles::for_similarity(&alpha, source, tol).unwrap();
    println!(
        "witness: {:?} -> {:?}",
        witness.source.vertices().map(|p| (p.x, p.y)),
        witness.image.vertices().map(|p| (p.x, p.y))
    );

    let result = fixed_point_from_witness(&alpha, &witness, tol).unwrap();
    println!("\nconstruction steps:");
    for entry in result.trace.as_ref().unwrap().entries() {
        match &entry.element {
            Element::Point(p) => println!("  step {}: point {} = {p}", entry.step, entry.label),
            Element::Line(l) => println!("  step {}: line  {} = {l}", entry.step, entry.label),
        }
    }

    let algebraic = alpha.fixed_point_algebraic(tol).unwrap().point;
    println!("\nconstructed fixed point: {}", result.point);
    println!("algebraic fixed point:   {algebraic}");
    println!("deviation: {:.3e}", result.point.distance(algebraic));
    println!("alpha(C) = {} (should equal C)", alpha.apply(result.point));
}
