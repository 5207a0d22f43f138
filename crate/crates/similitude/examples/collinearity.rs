//! The center-collinearity fact behind the witness construction: for any
//! line l off the fixed point C (image not parallel), and any second
//! parallel m, the intersections D = l ∩ l' and E = m ∩ m' are collinear
//! with C. The construction exploits this by drawing the line DE twice and
//! intersecting.
//!
//! ```text
//! cargo run --example collinearity
//! ```

use similitude::construction::collinearity_witness;
use similitude::geom::{collinear, Line};
use similitude::{Kind, Similarity, Tolerances, Vec2};

fn main() {
    let tol = Tolerances::default();
    let alpha = Similarity::from_parts(Kind::Direct, 2.0, 90.0, Vec2::new(4.0, 0.0)).unwrap();
    let center = alpha.fixed_point_algebraic(tol).unwrap().point;
    println!("fixed point: {center}\n");

    let probes = [
        Line::new(0.0, 1.0, 0.0).unwrap(),  // y = 0
        Line::new(1.0, 0.0, -2.0).unwrap(), // x = -2
        Line::new(1.0, 1.0, 7.0).unwrap(),  // x + y = 7
        Line::new(3.0, -1.0, 5.0).unwrap(),
    ];
    for l in probes {
        let w = collinearity_witness(&alpha, center, &l, tol).unwrap();
        println!(
            "l = {l}: D = {}, E = {}, collinear with C: {}",
            w.d,
            w.e,
            collinear(center, w.d, w.e, tol)
        );
    }
}
