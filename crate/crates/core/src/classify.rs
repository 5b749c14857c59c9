//! Splice extraction and the edge taxonomy.
//!
//! | edge type | `o1 o2` | `S` |
//! |-----------|:-------:|:---:|
//! | shading   |    +    |  -  |
//! | shadow    |    +    |  -  |
//! | highlight |    -    |  +  |
//! | material  |    +    |  +  |
//! | splicing  |    +    |  -  |
//!
//! A splice pixel is one flagged in `o1 o2` and not in `S`. Shading and shadow
//! edges share that signature; no attempt is made to separate them.

use crate::colorspace::{to_opponent, to_saturation};
use crate::edges::{detect_edges_in_space, GradientStats};
use crate::image::{ensure_same_dims, EdgeMap, RgbImage};
use crate::morphology::dilate_square;
use crate::Result;

/// Label implied by the `(o1 o2 edge, S edge)` bit pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeLabel {
    None,
    /// `S` only. Highlight edges land here.
    HighlightOrSInsensitive,
    /// `o1 o2` only. Splicing, shading and shadow edges.
    SplicingCandidate,
    /// Both spaces.
    Material,
}

impl EdgeLabel {
    #[inline]
    pub fn from_bits(o_edge: bool, s_edge: bool) -> Self {
        match (o_edge, s_edge) {
            (false, false) => EdgeLabel::None,
            (false, true) => EdgeLabel::HighlightOrSInsensitive,
            (true, false) => EdgeLabel::SplicingCandidate,
            (true, true) => EdgeLabel::Material,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelPlane {
    width: usize,
    height: usize,
    labels: Vec<EdgeLabel>,
}

impl LabelPlane {
    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn get(&self, x: usize, y: usize) -> EdgeLabel {
        self.labels[y * self.width + x]
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    pub fn count(&self, label: EdgeLabel) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }
}

/// Tunables of [`detect`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DetectParams {
    /// Square dilation radius applied to the `S` edge map before the
    /// AND-NOT. Zero reproduces the per-pixel rule.
    pub dilate_s: usize,
    /// Undo the sRGB transfer curve before converting.
    pub linearize: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionResult {
    pub splice_map: EdgeMap,
    pub s_edges: EdgeMap,
    pub o_edges: EdgeMap,
    pub s_stats: GradientStats,
    pub o_stats: GradientStats,
}

/// `o_edges AND NOT dilate(s_edges, dilate_s)`.
pub fn splice_from_maps(o_edges: &EdgeMap, s_edges: &EdgeMap, dilate_s: usize) -> Result<EdgeMap> {
    ensure_same_dims(o_edges.dims(), s_edges.dims())?;
    if dilate_s == 0 {
        o_edges.and_not(s_edges)
    } else {
        o_edges.and_not(&dilate_square(s_edges, dilate_s))
    }
}

pub fn classify_edges(o_edges: &EdgeMap, s_edges: &EdgeMap) -> Result<LabelPlane> {
    ensure_same_dims(o_edges.dims(), s_edges.dims())?;
    let (width, height) = o_edges.dims();
    let labels = o_edges
        .flags()
        .iter()
        .zip(s_edges.flags())
        .map(|(&o, &s)| EdgeLabel::from_bits(o, s))
        .collect();
    Ok(LabelPlane {
        width,
        height,
        labels,
    })
}

/// Full pipeline on one image.
pub fn detect(img: &RgbImage, params: &DetectParams) -> Result<DetectionResult> {
    let linear;
    let img = if params.linearize {
        linear = img.linearized();
        &linear
    } else {
        img
    };
    let s = to_saturation(img);
    let (o1, o2) = to_opponent(img);
    let (s_edges, s_stats) = detect_edges_in_space(&[s])?;
    let (o_edges, o_stats) = detect_edges_in_space(&[o1, o2])?;
    let splice_map = splice_from_maps(&o_edges, &s_edges, params.dilate_s)?;
    Ok(DetectionResult {
        splice_map,
        s_edges,
        o_edges,
        s_stats,
        o_stats,
    })
}
