//! TOML scene documents.
//!
//! ```toml
//! width = 128
//! height = 128
//! illuminant = 1.0
//!
//! [[region]]
//! name = "wall"
//! shape = { kind = "rest" }
//! albedo = [0.6, 0.3, 0.1]
//! body_gain = 1.0
//!
//! [[region]]
//! name = "lit"
//! shape = { kind = "half", axis = "x", at = 64 }
//! albedo = [0.6, 0.3, 0.1]
//! body_gain = { axis = "y", from = 0.4, to = 0.5 }
//! boundary = "shading"
//!
//! [splice]
//! shape = { kind = "circle", cx = 40.0, cy = 40.0, r = 20.0 }
//! body_gain_scale = 0.5
//! ```
//!
//! The full schema is documented in `docs/scene-format.md`.

use serde::Deserialize;

use super::{EdgeClass, Field, Region, SceneSpec, Shape, SurfacePatch};
use crate::{Error, Result};

/// Pastes a relit copy of the scene into itself.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpliceSpec {
    pub shape: Shape,
    /// Multiplies every body gain of the donor copy.
    #[serde(default = "one")]
    pub body_gain_scale: f64,
    /// Donor illuminant; defaults to the scene's.
    #[serde(default)]
    pub illuminant: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScene {
    width: usize,
    height: usize,
    #[serde(default = "one")]
    illuminant: f64,
    region: Vec<RawRegion>,
    #[serde(default)]
    splice: Option<SpliceSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegion {
    name: String,
    shape: Shape,
    albedo: [f64; 3],
    body_gain: Field,
    #[serde(default)]
    specular_gain: Field,
    #[serde(default = "one")]
    specular_coeff: f64,
    #[serde(default)]
    ambient: f64,
    #[serde(default)]
    boundary: Option<EdgeClass>,
}

fn one() -> f64 {
    1.0
}

/// Parses and validates a scene document.
///
/// Syntax and schema errors carry the 1-based line they were found on.
pub fn parse_scene(text: &str) -> Result<(SceneSpec, Option<SpliceSpec>)> {
    let raw: RawScene = toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|span| text[..span.start.min(text.len())].matches('\n').count() + 1)
            .unwrap_or(1);
        Error::SceneParse {
            line,
            message: e.message().to_owned(),
        }
    })?;
    let spec = SceneSpec {
        width: raw.width,
        height: raw.height,
        illuminant: raw.illuminant,
        regions: raw
            .region
            .into_iter()
            .map(|r| Region {
                name: r.name,
                shape: r.shape,
                patch: SurfacePatch {
                    albedo: r.albedo,
                    body_gain: r.body_gain,
                    specular_gain: r.specular_gain,
                    specular_coeff: r.specular_coeff,
                    ambient: r.ambient,
                },
                boundary: r.boundary,
            })
            .collect(),
    };
    spec.region_index()?;
    if let Some(splice) = &raw.splice {
        if !(splice.body_gain_scale >= 0.0 && splice.body_gain_scale.is_finite()) {
            return Err(Error::InvalidScene(
                "splice body_gain_scale must be finite and non-negative".into(),
            ));
        }
        if splice
            .illuminant
            .is_some_and(|e| !(e > 0.0 && e.is_finite()))
        {
            return Err(Error::InvalidScene(
                "splice illuminant must be positive".into(),
            ));
        }
    }
    Ok((spec, raw.splice))
}
