//! Error type shared by every module in the crate.

use std::fmt;

/// Errors produced by geometric predicates, constructors, and constructions.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Two points expected to be distinct coincide within tolerance.
    CoincidentPoints,
    /// Lines are parallel (or equal) where an intersection point is required.
    ParallelLines,
    /// An argument violates a non-degeneracy precondition.
    DegenerateInput,
    /// A ratio that must be strictly positive was zero, negative, or not finite.
    InvalidRatio,
    /// A triangle whose vertices are collinear was used where a proper
    /// triangle is required.
    DegenerateTriangle,
    /// A triangle correspondence is not realized by any similarity.
    NotSimilar,
    /// The transformation has no unique fixed point (identity, translation,
    /// reflection, glide reflection).
    NoUniqueFixedPoint,
    /// A construction that only applies to non-isometric input received an
    /// isometry.
    IsometryInput,
    /// The transformation is not a dilation, so it has no dilation center.
    NotADilation,
    /// The identity fixes every point; there is no unique center.
    IdentityInput,
    /// The transformation is a dilatation; the dilation-center route applies
    /// instead of the witness-triangle route.
    IsDilatation,
    /// No candidate produced a witness satisfying the non-parallelism and
    /// non-degeneracy requirements.
    DegenerateSelection,
    /// The probe line passes through the fixed point.
    LineThroughCenter,
    /// The transformation maps the probe line to a parallel line.
    ParallelImage,
    /// An indirect (orientation-reversing) transformation was required.
    NotIndirect,
    /// A direct (orientation-preserving) transformation was required.
    NotDirect,
    /// The probe point coincides with the fixed point.
    DegenerateProbe,
    /// Every construction route failed. Carries the largest
    /// intersection-angle sine any candidate configuration offered.
    ConstructionFailed { conditioning: f64 },
    /// A scene or configuration document could not be parsed or validated.
    Parse(String),
    /// A generator configuration violates its own invariants.
    InvalidConfig(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CoincidentPoints => write!(f, "points coincide within tolerance"),
            Error::ParallelLines => write!(f, "lines are parallel; no intersection point"),
            Error::DegenerateInput => write!(f, "degenerate input"),
            Error::InvalidRatio => write!(f, "ratio must be strictly positive and finite"),
            Error::DegenerateTriangle => write!(f, "triangle is degenerate"),
            Error::NotSimilar => write!(f, "triangles are not related by a similarity"),
            Error::NoUniqueFixedPoint => write!(f, "no unique fixed point exists"),
            Error::IsometryInput => write!(f, "construction requires a non-isometric similarity"),
            Error::NotADilation => write!(f, "transformation is not a dilation"),
            Error::IdentityInput => write!(f, "identity fixes every point; no unique center"),
            Error::IsDilatation => {
                write!(f, "transformation is a dilatation; use the dilation-center construction")
            }
            Error::DegenerateSelection => write!(f, "no admissible witness configuration found"),
            Error::LineThroughCenter => write!(f, "probe line passes through the fixed point"),
            Error::ParallelImage => write!(f, "probe line maps to a parallel line"),
            Error::NotIndirect => write!(f, "an indirect similarity is required"),
            Error::NotDirect => write!(f, "a direct similarity is required"),
            Error::DegenerateProbe => write!(f, "probe point coincides with the fixed point"),
            Error::ConstructionFailed { conditioning } => {
                write!(f, "all construction routes failed (best conditioning {conditioning:e})")
            }
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
