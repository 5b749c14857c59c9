//! Dichromatic scene renderer with exact ground truth.
//!
//! Every pixel of a region is rendered with the quasi-white-light sensor model
//!
//! ```text
//! C = e * (m_b + ambient) * k_C + e * m_s * (c_s f)
//! ```
//!
//! where the spectral integrals are already collapsed into the per-channel body
//! albedo `k_C`, the illuminant scalar `e` and the specular coefficient
//! `c_s f`. Geometry enters only through the scalar fields `m_b` and `m_s`.

mod document;
pub mod fixtures;

use serde::{Deserialize, Serialize};

use crate::image::{ensure_same_dims, EdgeMap, RgbImage};
use crate::morphology::inner_boundary;
use crate::{Error, Result};

pub use document::{parse_scene, SpliceSpec};

/// Natural and artificial edge classes a boundary can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    Shading,
    Shadow,
    Highlight,
    Material,
    Occlusion,
    Splice,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 6] = [
        EdgeClass::Shading,
        EdgeClass::Shadow,
        EdgeClass::Highlight,
        EdgeClass::Material,
        EdgeClass::Occlusion,
        EdgeClass::Splice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EdgeClass::Shading => "shading",
            EdgeClass::Shadow => "shadow",
            EdgeClass::Highlight => "highlight",
            EdgeClass::Material => "material",
            EdgeClass::Occlusion => "occlusion",
            EdgeClass::Splice => "splice",
        }
    }

    /// Stable 8-bit code used in class-map rasters. `0` is reserved for "no boundary".
    pub fn code(self) -> u8 {
        match self {
            EdgeClass::Shading => 1,
            EdgeClass::Shadow => 2,
            EdgeClass::Highlight => 3,
            EdgeClass::Material => 4,
            EdgeClass::Occlusion => 5,
            EdgeClass::Splice => 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
}

/// Scalar field over the image plane, used for `m_b` and `m_s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Field {
    Constant(f64),
    /// Linear from `from` at the first column (row) to `to` at the last.
    Ramp {
        axis: Axis,
        from: f64,
        to: f64,
    },
    /// Quadratic dome: `center` at `(cx, cy)`, falling to `edge` at `radius`
    /// and clamped there beyond it.
    Radial {
        cx: f64,
        cy: f64,
        radius: f64,
        center: f64,
        edge: f64,
    },
}

impl Default for Field {
    fn default() -> Self {
        Field::Constant(0.0)
    }
}

impl Field {
    pub fn eval(&self, x: usize, y: usize, width: usize, height: usize) -> f64 {
        match *self {
            Field::Constant(v) => v,
            Field::Ramp { axis, from, to } => {
                let (pos, len) = match axis {
                    Axis::X => (x, width),
                    Axis::Y => (y, height),
                };
                let t = if len > 1 {
                    pos as f64 / (len - 1) as f64
                } else {
                    0.0
                };
                from + (to - from) * t
            }
            Field::Radial {
                cx,
                cy,
                radius,
                center,
                edge,
            } => {
                let dx = x as f64 + 0.5 - cx;
                let dy = y as f64 + 0.5 - cy;
                let t = ((dx * dx + dy * dy) / (radius * radius)).min(1.0);
                center + (edge - center) * t
            }
        }
    }

    fn min_value(&self) -> f64 {
        match *self {
            Field::Constant(v) => v,
            Field::Ramp { from, to, .. } => from.min(to),
            Field::Radial { center, edge, .. } => center.min(edge),
        }
    }

    fn is_finite(&self) -> bool {
        match *self {
            Field::Constant(v) => v.is_finite(),
            Field::Ramp { from, to, .. } => from.is_finite() && to.is_finite(),
            Field::Radial {
                cx,
                cy,
                radius,
                center,
                edge,
            } => [cx, cy, center, edge].iter().all(|v| v.is_finite()) && radius > 0.0,
        }
    }

    pub fn scaled(&self, factor: f64) -> Field {
        match *self {
            Field::Constant(v) => Field::Constant(v * factor),
            Field::Ramp { axis, from, to } => Field::Ramp {
                axis,
                from: from * factor,
                to: to * factor,
            },
            Field::Radial {
                cx,
                cy,
                radius,
                center,
                edge,
            } => Field::Radial {
                cx,
                cy,
                radius,
                center: center * factor,
                edge: edge * factor,
            },
        }
    }
}

/// Reflectance parameters of one surface.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfacePatch {
    /// Integrated sensor-albedo products `(k_R, k_G, k_B)`.
    pub albedo: [f64; 3],
    /// Body geometry term `m_b`.
    pub body_gain: Field,
    /// Interface geometry term `m_s`.
    pub specular_gain: Field,
    /// `c_s f`.
    pub specular_coeff: f64,
    /// Extra body gain added to `m_b`; models ambient fill inside shadows.
    pub ambient: f64,
}

impl SurfacePatch {
    pub fn matte(albedo: [f64; 3], body_gain: f64) -> Self {
        Self {
            albedo,
            body_gain: Field::Constant(body_gain),
            specular_gain: Field::Constant(0.0),
            specular_coeff: 1.0,
            ambient: 0.0,
        }
    }

    pub fn with_specular(mut self, gain: f64) -> Self {
        self.specular_gain = Field::Constant(gain);
        self
    }

    pub fn with_ambient(mut self, ambient: f64) -> Self {
        self.ambient = ambient;
        self
    }

    /// Unclipped sensor triple at `(x, y)`.
    pub fn radiance(&self, illuminant: f64, x: usize, y: usize, w: usize, h: usize) -> [f64; 3] {
        let body = illuminant * (self.body_gain.eval(x, y, w, h) + self.ambient);
        let spec = illuminant * self.specular_gain.eval(x, y, w, h) * self.specular_coeff;
        self.albedo.map(|k| body * k + spec)
    }

    fn validate(&self, region: &str) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidScene(format!("region `{region}`: {what}")));
        if self.albedo.iter().any(|k| !(0.0..=1.0).contains(k)) {
            return bad("albedo components must lie in [0, 1]");
        }
        if !self.body_gain.is_finite() || self.body_gain.min_value() < 0.0 {
            return bad("body_gain must be finite and non-negative");
        }
        if !self.specular_gain.is_finite() || self.specular_gain.min_value() < 0.0 {
            return bad("specular_gain must be finite and non-negative");
        }
        if !(self.specular_coeff >= 0.0 && self.specular_coeff.is_finite()) {
            return bad("specular_coeff must be finite and non-negative");
        }
        if !(self.ambient >= 0.0 && self.ambient.is_finite()) {
            return bad("ambient must be finite and non-negative");
        }
        Ok(())
    }
}

/// Pixel support of a region. Shapes test pixel centres.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Shape {
    /// Every pixel not claimed by another region.
    Rest,
    Rect {
        x: usize,
        y: usize,
        w: usize,
        h: usize,
    },
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
    },
    /// Pixels with coordinate `>= at` along `axis`.
    Half {
        axis: Axis,
        at: usize,
    },
}

impl Shape {
    pub fn contains(&self, x: usize, y: usize) -> bool {
        match *self {
            Shape::Rest => false,
            Shape::Rect { x: x0, y: y0, w, h } => x >= x0 && x < x0 + w && y >= y0 && y < y0 + h,
            Shape::Circle { cx, cy, r } => {
                let dx = x as f64 + 0.5 - cx;
                let dy = y as f64 + 0.5 - cy;
                dx * dx + dy * dy <= r * r
            }
            Shape::Half { axis, at } => match axis {
                Axis::X => x >= at,
                Axis::Y => y >= at,
            },
        }
    }

    pub fn mask(&self, width: usize, height: usize) -> Result<EdgeMap> {
        EdgeMap::from_fn(width, height, |x, y| self.contains(x, y))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub name: String,
    pub shape: Shape,
    pub patch: SurfacePatch,
    /// Class of this region's boundary. Ignored for the first (base) region.
    pub boundary: Option<EdgeClass>,
}

impl Region {
    pub fn new(name: &str, shape: Shape, patch: SurfacePatch, boundary: Option<EdgeClass>) -> Self {
        Self {
            name: name.to_owned(),
            shape,
            patch,
            boundary,
        }
    }
}

/// Declarative scene. The first region is the base; every later region's
/// inner boundary is a ground-truth edge of its declared class.
#[derive(Clone, Debug, PartialEq)]
pub struct SceneSpec {
    pub width: usize,
    pub height: usize,
    pub illuminant: f64,
    pub regions: Vec<Region>,
}

impl SceneSpec {
    /// Index of the region owning each pixel, after checking that the
    /// regions partition the frame.
    pub fn region_index(&self) -> Result<Vec<usize>> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::InvalidScene(
                "width and height must be positive".into(),
            ));
        }
        if !(self.illuminant > 0.0 && self.illuminant.is_finite()) {
            return Err(Error::InvalidScene("illuminant must be positive".into()));
        }
        if self.regions.is_empty() {
            return Err(Error::InvalidScene("scene has no regions".into()));
        }
        let mut rest = None;
        for (i, region) in self.regions.iter().enumerate() {
            region.patch.validate(&region.name)?;
            if i > 0 && region.boundary.is_none() {
                return Err(Error::InvalidScene(format!(
                    "region `{}` must declare a boundary class",
                    region.name
                )));
            }
            if region.boundary == Some(EdgeClass::Splice) {
                return Err(Error::InvalidScene(format!(
                    "region `{}`: splice boundaries come from a [splice] block",
                    region.name
                )));
            }
            if region.shape == Shape::Rest && rest.replace(i).is_some() {
                return Err(Error::InvalidScene("more than one `rest` region".into()));
            }
        }
        let (w, h) = (self.width, self.height);
        let mut owner = Vec::with_capacity(w * h);
        for y in 0..h {
            for x in 0..w {
                let mut hit: Option<usize> = None;
                for (i, region) in self.regions.iter().enumerate() {
                    if region.shape.contains(x, y) {
                        if let Some(prev) = hit {
                            return Err(Error::InvalidScene(format!(
                                "regions `{}` and `{}` overlap at ({x}, {y})",
                                self.regions[prev].name, region.name
                            )));
                        }
                        hit = Some(i);
                    }
                }
                match hit.or(rest) {
                    Some(i) => owner.push(i),
                    None => {
                        return Err(Error::InvalidScene(format!(
                            "pixel ({x}, {y}) is not covered by any region"
                        )))
                    }
                }
            }
        }
        Ok(owner)
    }

    /// Copy with every body gain scaled and optionally a new illuminant.
    pub fn relit(&self, body_gain_scale: f64, illuminant: Option<f64>) -> SceneSpec {
        let mut out = self.clone();
        for region in &mut out.regions {
            region.patch.body_gain = region.patch.body_gain.scaled(body_gain_scale);
        }
        if let Some(e) = illuminant {
            out.illuminant = e;
        }
        out
    }
}

/// Labelled ground-truth boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundTruth {
    pub boundary: EdgeMap,
    classes: Vec<Option<EdgeClass>>,
}

impl GroundTruth {
    pub fn empty(width: usize, height: usize) -> Result<Self> {
        Ok(Self {
            boundary: EdgeMap::empty(width, height)?,
            classes: vec![None; width * height],
        })
    }

    fn mark(&mut self, edges: &EdgeMap, class: EdgeClass) {
        for (x, y) in edges.points() {
            self.boundary.set(x, y, true);
            self.classes[y * self.boundary.width() + x] = Some(class);
        }
    }

    pub fn class_at(&self, x: usize, y: usize) -> Option<EdgeClass> {
        self.classes[y * self.boundary.width() + x]
    }

    pub fn classes(&self) -> &[Option<EdgeClass>] {
        &self.classes
    }

    /// Boundary pixels carrying `class`.
    pub fn boundary_of(&self, class: EdgeClass) -> EdgeMap {
        let (w, h) = self.boundary.dims();
        EdgeMap::new(
            w,
            h,
            self.classes.iter().map(|c| *c == Some(class)).collect(),
        )
        .expect("same dimensions as boundary")
    }

    /// Row-major class codes, `0` off the boundary.
    pub fn class_codes(&self) -> Vec<u8> {
        self.classes
            .iter()
            .map(|c| c.map_or(0, EdgeClass::code))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rendering {
    pub image: RgbImage,
    pub truth: GroundTruth,
    /// Pixels where at least one channel exceeded `1` and was clipped.
    pub clipped: EdgeMap,
}

impl Rendering {
    pub fn clipped_pixels(&self) -> usize {
        self.clipped.count()
    }
}

/// Mask pixels with at least one 4-neighbour outside the mask. The frame
/// border does not count as outside.
pub fn ground_truth_boundary(mask: &EdgeMap) -> EdgeMap {
    inner_boundary(mask)
}

pub fn render(spec: &SceneSpec) -> Result<Rendering> {
    let owner = spec.region_index()?;
    let (w, h) = (spec.width, spec.height);
    let mut clipped = EdgeMap::empty(w, h)?;
    let image = RgbImage::from_fn(w, h, |x, y| {
        let patch = &spec.regions[owner[y * w + x]].patch;
        let raw = patch.radiance(spec.illuminant, x, y, w, h);
        if raw.iter().any(|&c| c > 1.0) {
            clipped.set(x, y, true);
        }
        raw.map(|c| c.clamp(0.0, 1.0))
    })?;
    let mut truth = GroundTruth::empty(w, h)?;
    for (i, region) in spec.regions.iter().enumerate().skip(1) {
        let mask = EdgeMap::from_fn(w, h, |x, y| owner[y * w + x] == i)?;
        let class = region.boundary.expect("checked by region_index");
        truth.mark(&ground_truth_boundary(&mask), class);
    }
    Ok(Rendering {
        image,
        truth,
        clipped,
    })
}

/// Pastes `donor` into `host` wherever `paste_mask` is set.
pub fn make_splice(
    host: &RgbImage,
    donor: &RgbImage,
    paste_mask: &EdgeMap,
) -> Result<(RgbImage, GroundTruth)> {
    ensure_same_dims(host.dims(), donor.dims())?;
    ensure_same_dims(host.dims(), paste_mask.dims())?;
    if paste_mask.is_empty() {
        return Err(Error::DegenerateMask("paste mask is empty"));
    }
    if paste_mask.count() == paste_mask.flags().len() {
        return Err(Error::DegenerateMask("paste mask covers the whole frame"));
    }
    let (w, h) = host.dims();
    let image = RgbImage::from_fn(w, h, |x, y| {
        if paste_mask.get(x, y) {
            donor.pixel(x, y)
        } else {
            host.pixel(x, y)
        }
    })?;
    let mut truth = GroundTruth::empty(w, h)?;
    truth.mark(&ground_truth_boundary(paste_mask), EdgeClass::Splice);
    Ok((image, truth))
}

/// Renders a scene and, when a splice block is present, pastes a relit copy
/// of it. The returned truth keeps host boundaries outside the paste mask,
/// donor boundaries inside it and the splice contour on top.
pub fn render_with_splice(spec: &SceneSpec, splice: Option<&SpliceSpec>) -> Result<Rendering> {
    let host = render(spec)?;
    let Some(splice) = splice else {
        return Ok(host);
    };
    let donor = render(&spec.relit(splice.body_gain_scale, splice.illuminant))?;
    let mask = splice.shape.mask(spec.width, spec.height)?;
    let (image, splice_truth) = make_splice(&host.image, &donor.image, &mask)?;
    let (w, h) = (spec.width, spec.height);
    let mut truth = GroundTruth::empty(w, h)?;
    for y in 0..h {
        for x in 0..w {
            let src = if mask.get(x, y) {
                &donor.truth
            } else {
                &host.truth
            };
            if let Some(class) = src.class_at(x, y) {
                truth.boundary.set(x, y, true);
                truth.classes[y * w + x] = Some(class);
            }
        }
    }
    truth.mark(&splice_truth.boundary, EdgeClass::Splice);
    let clipped = EdgeMap::from_fn(w, h, |x, y| {
        if mask.get(x, y) {
            donor.clipped.get(x, y)
        } else {
            host.clipped.get(x, y)
        }
    })?;
    Ok(Rendering {
        image,
        truth,
        clipped,
    })
}
