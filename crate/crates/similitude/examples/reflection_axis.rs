//! For an orientation-reversing similarity, construct both the fixed point
//! and the reflection axis: the axis bisects the angle at the fixed point
//! between any probe point and its image.
//!
//! ```text
//! cargo run --example reflection_axis
//! ```

use similitude::construction::{fixed_point, reflection_axis};
use similitude::{Kind, Point, Similarity, Tolerances, Vec2};

fn main() {
    let tol = Tolerances::default();
    // (x, y) -> (2x + 3, -2y)
    let alpha = Similarity::from_parts(Kind::Indirect, 2.0, 0.0, Vec2::new(3.0, 0.0)).unwrap();

    let center = fixed_point(&alpha, tol).unwrap().point;
    println!("fixed point: {center}");

    let probe = Point::new(0.0, 1.0);
    let probe_image = alpha.apply(probe);
    println!("probe {probe} maps to {probe_image}");

    let axis = reflection_axis(&alpha, center, probe, tol).unwrap();
    println!("axis (bisector of the angle at the fixed point): {axis}");

    // recomposing reflection-after-stretch reproduces the map
    let rebuilt = Similarity::reflection(axis)
        .compose(&Similarity::stretch(center, alpha.ratio()).unwrap());
    let sample = Point::new(5.0, -2.0);
    println!(
        "recomposition check at {sample}: {} vs {}",
        rebuilt.apply(sample),
        alpha.apply(sample)
    );
}
