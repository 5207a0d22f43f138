//! Classify plane similarities, both from explicit parameters and from a
//! triangle correspondence.
//!
//! ```text
//! cargo run --example classify
//! ```

use similitude::{Kind, Point, Similarity, SimilarityClass, Tolerances, Triangle, Vec2};

fn show(name: &str, alpha: &Similarity, tol: Tolerances) {
    let class = alpha.classify(tol);
    println!("{name}: {} (dilatation: {})", class.tag(), class.is_dilatation());
    match class {
        SimilarityClass::Rotation { center, angle_deg } => {
            println!("  center {center}, angle {angle_deg}");
        }
        SimilarityClass::Stretch { center, ratio } => {
            println!("  center {center}, ratio {ratio}");
        }
        SimilarityClass::StretchRotation { center, ratio, angle_deg } => {
            println!("  center {center}, ratio {ratio}, angle {angle_deg}");
        }
        SimilarityClass::StretchReflection { center, ratio, axis } => {
            println!("  center {center}, ratio {ratio}, axis {axis}");
        }
        SimilarityClass::GlideReflection { axis, glide } => {
            println!("  axis {axis}, glide ({},{})", glide.x, glide.y);
        }
        _ => {}
    }
}

fn main() {
    let tol = Tolerances::default();

    let quarter_turn_double =
        Similarity::from_parts(Kind::Direct, 2.0, 90.0, Vec2::new(4.0, 0.0)).unwrap();
    show("scale 2 + quarter turn + shift", &quarter_turn_double, tol);

    let mirror_double =
        Similarity::from_parts(Kind::Indirect, 2.0, 0.0, Vec2::new(3.0, 0.0)).unwrap();
    show("(x,y) -> (2x+3, -2y)", &mirror_double, tol);

    let stretch = Similarity::stretch(Point::new(2.0, 3.0), 3.0).unwrap();
    show("stretch about (2,3)", &stretch, tol);

    let rotation = Similarity::rotation(Point::new(1.0, 1.0), 30.0);
    show("rotation about (1,1)", &rotation, tol);

    // the same quarter-turn map, recovered from where it sends a triangle
    let source = Triangle::new(Point::ORIGIN, Point::new(1.0, 0.0), Point::new(0.0, 1.0));
    let image = Triangle::new(Point::new(4.0, 0.0), Point::new(4.0, 2.0), Point::new(2.0, 0.0));
    let fitted = Similarity::from_correspondence(&source, &image, tol).unwrap();
    show("fitted from a correspondence", &fitted, tol);
    println!("  recovered parameters: scale {}, angle {}", fitted.ratio(), fitted.angle_deg());
}
