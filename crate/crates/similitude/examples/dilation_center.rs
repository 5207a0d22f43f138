//! Locate the center of a dilation by intersecting its two invariant lines:
//! pick a probe point A, join it to its image A', do the same for a second
//! probe off that line, and intersect.
//!
//! ```text
//! cargo run --example dilation_center
//! ```

use similitude::construction::dilation_center;
use similitude::{Point, Similarity, Tolerances};

fn main() {
    let tol = Tolerances::default();

    let stretch = Similarity::stretch(Point::new(2.0, 3.0), 3.0).unwrap();
    let result = dilation_center(&stretch, Point::ORIGIN, tol).unwrap();
    let trace = result.trace.as_ref().unwrap();
    println!("stretch of ratio 3:");
    println!("  probe A  = {}", trace.point("A").unwrap());
    println!("  image A' = {}", trace.point("A'").unwrap());
    println!("  probe B  = {}", trace.point("B").unwrap());
    println!("  image B' = {}", trace.point("B'").unwrap());
    println!("  center   = {} (intersection of AA' and BB')", result.point);

    // a ratio-1 dilation with a halfturn: the center is simply the midpoint
    let half = Similarity::halfturn(Point::new(1.0, 2.0));
    let result = dilation_center(&half, Point::ORIGIN, tol).unwrap();
    println!("halfturn: center = {} (midpoint of A and A')", result.point);

    // a stretch followed by a halfturn about the same point
    let with_halfturn = Similarity::dilation(Point::new(-1.0, 4.0), 2.5, true).unwrap();
    let result = dilation_center(&with_halfturn, Point::ORIGIN, tol).unwrap();
    println!("stretch + halfturn: center = {}", result.point);
}
