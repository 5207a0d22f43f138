//! Render labeled SVG figures of the constructions: the witness-triangle
//! construction, the dilation-center construction, and the reflection axis.
//! Writes three files into the current directory.
//!
//! ```text
//! cargo run --example figure
//! ```

use similitude::construction::{
    dilation_center, fixed_point, fixed_point_from_witness, reflection_axis, ConstructionTrace,
    WitnessTriangles,
};
use similitude::{svg, Kind, Point, Similarity, Tolerances, Triangle, Vec2};

fn main() {
    let tol = Tolerances::default();

    // witness construction for the quarter-turn doubling map
    let alpha = Similarity::from_parts(Kind::Direct, 2.0, 90.0, Vec2::new(4.0, 0.0)).unwrap();
    let source = Triangle::new(Point::ORIGIN, Point::new(4.0, 0.0), Point::new(4.0, 2.0));
    let witness = WitnessTriangles::for_similarity(&alpha, source, tol).unwrap();
    let result = fixed_point_from_witness(&alpha, &witness, tol).unwrap();
    let mut trace = ConstructionTrace::new();
    let [p, q, r] = witness.source.vertices();
    let [p2, q2, r2] = witness.image.vertices();
    for (label, point) in [("P", p), ("Q", q), ("R", r), ("P'", p2), ("Q'", q2), ("R'", r2)] {
        trace.push_point(label, point, 0);
    }
    trace.extend(result.trace.as_ref().unwrap());
    let doc = svg::render(&trace, Some((&witness.source, &witness.image)));
    std::fs::write("construction.svg", doc).expect("write construction.svg");
    println!("wrote construction.svg (fixed point {})", result.point);

    // dilation-center construction
    let delta = Similarity::stretch(Point::new(2.0, 3.0), 3.0).unwrap();
    let result = dilation_center(&delta, Point::ORIGIN, tol).unwrap();
    let doc = svg::render(result.trace.as_ref().unwrap(), None);
    std::fs::write("dilation.svg", doc).expect("write dilation.svg");
    println!("wrote dilation.svg (center {})", result.point);

    // reflection axis of an orientation-reversing map
    let beta = Similarity::from_parts(Kind::Indirect, 2.0, 0.0, Vec2::new(3.0, 0.0)).unwrap();
    let center = fixed_point(&beta, tol).unwrap().point;
    let probe = Point::new(0.0, 1.0);
    let axis = reflection_axis(&beta, center, probe, tol).unwrap();
    let mut trace = ConstructionTrace::new();
    trace.push_point("P", probe, 1);
    trace.push_point("P'", beta.apply(probe), 1);
    trace.push_line("axis", axis, 2);
    trace.push_point("C", center, 3);
    let doc = svg::render(&trace, None);
    std::fs::write("axis.svg", doc).expect("write axis.svg");
    println!("wrote axis.svg (fixed point {center}, axis {axis})");
}
