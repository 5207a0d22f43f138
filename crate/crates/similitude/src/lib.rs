//! Plane similarity transformations: classification, an algebraic
//! fixed-point solver, and straightedge-style constructions that locate the
//! same point using only joins, parallels, and intersections — cross-checked
//! against each other by a seeded fuzz harness.
//!
//! Every non-isometric similarity of the plane fixes exactly one point. This
//! crate represents similarities exactly (as scale, angle, and translation,
//! never a general affine matrix), classifies them into the eight familiar
//! types, and finds the fixed point two independent ways:
//!
//! * algebraically, by solving the 2x2 linear system `(I - M) x = t`;
//! * geometrically, by the constructions in [`construction`], which use
//!   nothing but line joins, parallels, and intersections.
//!
//! ```
//! use similitude::{construction, Kind, Point, Similarity, Tolerances, Vec2};
//!
//! let tol = Tolerances::default();
//! // scale 2, quarter turn, then translate by (4, 0)
//! let alpha = Similarity::from_parts(Kind::Direct, 2.0, 90.0, Vec2::new(4.0, 0.0)).unwrap();
//!
//! let algebraic = alpha.fixed_point_algebraic(tol).unwrap().point;
//! let constructed = construction::fixed_point(&alpha, tol).unwrap().point;
//!
//! assert!(algebraic.close_to(Point::new(0.8, 1.6), 1e-12));
//! assert!(constructed.close_to(algebraic, 1e-9));
//! ```
//!
//! The `examples/` directory has one runnable program per capability; the
//! `similitude` binary exposes the same functionality as `classify`,
//! `fixpoint`, `figure`, and `fuzz` subcommands.

pub mod cli;
pub mod construction;
pub mod error;
pub mod geom;
pub mod harness;
pub mod scene;
pub mod similarity;
pub mod svg;

pub use error::{Error, Result};
pub use geom::{Line, Point, Tolerances, Triangle, Vec2};
pub use harness::{GenConfig, Report};
pub use scene::Scene;
pub use similarity::{FixedPointResult, Kind, Method, Similarity, SimilarityClass};
