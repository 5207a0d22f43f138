//! Scene files: the JSON input format of the command-line tool.
//!
//! A scene holds either an explicit similarity or a triangle correspondence,
//! plus optional tolerance overrides:
//!
//! ```json
//! { "similarity": { "kind": "direct", "scale": 2.0, "angle_deg": 90.0, "translation": [4.0, 0.0] } }
//! ```
//!
//! ```json
//! { "correspondence": { "P": [0,0], "Q": [4,0], "R": [4,2],
//!                       "P'": [4,0], "Q'": [4,8], "R'": [0,8] } }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, Tolerances, Triangle};
use crate::similarity::{Kind, Similarity};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimilaritySpec {
    pub kind: Kind,
    pub scale: f64,
    pub angle_deg: f64,
    pub translation: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correspondence {
    #[serde(rename = "P")]
    pub p: [f64; 2],
    #[serde(rename = "Q")]
    pub q: [f64; 2],
    #[serde(rename = "R")]
    pub r: [f64; 2],
    #[serde(rename = "P'")]
    pub p_image: [f64; 2],
    #[serde(rename = "Q'")]
    pub q_image: [f64; 2],
    #[serde(rename = "R'")]
    pub r_image: [f64; 2],
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ToleranceOverrides {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_parallel: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_point: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_degenerate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_ratio: Option<f64>,
}

/// A parsed scene: exactly one of the two forms, plus optional tolerance
/// overrides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub similarity: Option<SimilaritySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correspondence: Option<Correspondence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<ToleranceOverrides>,
}

fn point(xy: [f64; 2]) -> Result<Point> {
    let p = Point::new(xy[0], xy[1]);
    if p.is_finite() {
        Ok(p)
    } else {
        Err(Error::Parse("coordinates must be finite".into()))
    }
}

impl Scene {
    pub fn parse(text: &str) -> Result<Scene> {
        let scene: Scene = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<()> {
        match (&self.similarity, &self.correspondence) {
            (Some(_), Some(_)) | (None, None) => {
                return Err(Error::Parse(
                    "a scene holds exactly one of \"similarity\" or \"correspondence\"".into(),
                ));
            }
            _ => {}
        }
        if let Some(spec) = &self.similarity {
            if !(spec.scale.is_finite()
                && spec.angle_deg.is_finite()
                && spec.translation.iter().all(|t| t.is_finite()))
            {
                return Err(Error::Parse("similarity parameters must be finite".into()));
            }
        }
        self.tolerances().validate().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(())
    }

    /// The configured tolerances: defaults with any overrides applied.
    pub fn tolerances(&self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(over) = &self.tolerances {
            if let Some(e) = over.eps_parallel {
                tol.eps_parallel = e;
            }
            if let Some(e) = over.eps_point {
                tol.eps_point = e;
            }
            if let Some(e) = over.eps_degenerate {
                tol.eps_degenerate = e;
            }
            if let Some(e) = over.eps_ratio {
                tol.eps_ratio = e;
            }
        }
        tol
    }

    /// The similarity this scene describes, fitting the correspondence when
    /// the scene is given as triangles.
    pub fn build_similarity(&self) -> Result<Similarity> {
        let tol = self.tolerances();
        if let Some(spec) = &self.similarity {
            let t = crate::geom::Vec2::new(spec.translation[0], spec.translation[1]);
            return Similarity::from_parts(spec.kind, spec.scale, spec.angle_deg, t);
        }
        let (source, image) = self.triangles()?.ok_or_else(|| {
            Error::Parse("scene holds neither a similarity nor a correspondence".into())
        })?;
        Similarity::from_correspondence(&source, &image, tol)
    }

    /// The correspondence triangles, if the scene has that form.
    pub fn triangles(&self) -> Result<Option<(Triangle, Triangle)>> {
        match &self.correspondence {
            None => Ok(None),
            Some(c) => {
                let source = Triangle::new(point(c.p)?, point(c.q)?, point(c.r)?);
                let image = Triangle::new(point(c.p_image)?, point(c.q_image)?, point(c.r_image)?);
                Ok(Some((source, image)))
            }
        }
    }

    /// A scene describing the given similarity explicitly.
    pub fn from_similarity(alpha: &Similarity) -> Scene {
        Scene {
            similarity: Some(SimilaritySpec {
                kind: alpha.kind(),
                scale: alpha.ratio(),
                angle_deg: alpha.angle_deg(),
                translation: [alpha.translation().x, alpha.translation().y],
            }),
            correspondence: None,
            tolerances: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Vec2;

    #[test]
    fn parses_explicit_similarity() {
        let scene = Scene::parse(
            r#"{"similarity": {"kind": "direct", "scale": 2.0, "angle_deg": 90.0, "translation": [4.0, 0.0]}}"#,
        )
        .unwrap();
        let alpha = scene.build_similarity().unwrap();
        assert_eq!(alpha.kind(), Kind::Direct);
        assert_eq!(alpha.ratio(), 2.0);
        assert_eq!(alpha.translation(), Vec2::new(4.0, 0.0));
    }

    #[test]
    fn parses_correspondence() {
        let scene = Scene::parse(
            r#"{"correspondence": {"P": [0,0], "Q": [1,0], "R": [0,1],
                                   "P'": [4,0], "Q'": [4,2], "R'": [2,0]}}"#,
        )
        .unwrap();
        let alpha = scene.build_similarity().unwrap();
        assert!((alpha.ratio() - 2.0).abs() < 1e-12);
        assert!((alpha.angle_deg() - 90.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_ambiguous_and_empty_scenes() {
        let err = Scene::parse(
            r#"{"similarity": {"kind": "direct", "scale": 1.0, "angle_deg": 0.0, "translation": [0,0]},
                "correspondence": {"P": [0,0], "Q": [1,0], "R": [0,1],
                                   "P'": [0,0], "Q'": [1,0], "R'": [0,1]}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        assert!(matches!(Scene::parse("{}").unwrap_err(), Error::Parse(_)));
        assert!(matches!(Scene::parse("not json").unwrap_err(), Error::Parse(_)));
    }

    #[test]
    fn tolerance_overrides_apply() {
        let scene = Scene::parse(
            r#"{"similarity": {"kind": "direct", "scale": 2.0, "angle_deg": 0.0, "translation": [1, 1]},
                "tolerances": {"eps_ratio": 0.01}}"#,
        )
        .unwrap();
        let tol = scene.tolerances();
        assert_eq!(tol.eps_ratio, 0.01);
        assert_eq!(tol.eps_point, Tolerances::default().eps_point);
    }

    #[test]
    fn rejects_invalid_tolerances() {
        let err = Scene::parse(
            r#"{"similarity": {"kind": "direct", "scale": 2.0, "angle_deg": 0.0, "translation": [1, 1]},
                "tolerances": {"eps_ratio": -1.0}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }

    #[test]
    fn round_trips_a_classified_similarity() {
        let alpha =
            Similarity::from_parts(Kind::Indirect, 2.0, 0.0, Vec2::new(3.0, 0.0)).unwrap();
        let scene = Scene::from_similarity(&alpha);
        let reparsed = Scene::parse(&scene.to_json()).unwrap();
        let back = reparsed.build_similarity().unwrap();
        assert_eq!(back, alpha);
    }
}
