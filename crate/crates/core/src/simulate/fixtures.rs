//! Ready-made scenes: one per edge class, and a seeded benchmark suite.
//!
//! The `3 sigma` threshold is relative to the whole image, so every scene
//! carries a material "context" patch away from the boundary under test. It
//! gives both color spaces a real edge population, which keeps rounding-level
//! responses in an insensitive space far below the threshold.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    make_splice, render, Axis, EdgeClass, Field, GroundTruth, Region, Rendering, SceneSpec, Shape,
    SurfacePatch,
};
use crate::colorspace::saturation;
use crate::image::{EdgeMap, RgbImage};
use crate::Result;

const SURFACE: [f64; 3] = [0.55, 0.35, 0.2];
const CONTEXT: [f64; 3] = [0.25, 0.45, 0.3];

const BACKGROUND_SPREAD: f64 = 0.4;
const OBJECT_SATURATION_GAP: f64 = 0.06;
const RELIGHT: std::ops::Range<f64> = 0.3..0.5;

fn class_scene_spec(class: EdgeClass, size: usize) -> SceneSpec {
    let s = size as f64;
    let context = Region::new(
        "context",
        Shape::Rect {
            x: size / 16,
            y: size / 16,
            w: size / 4,
            h: size / 4,
        },
        SurfacePatch::matte(CONTEXT, 0.9),
        Some(EdgeClass::Material),
    );
    let target_shape = Shape::Circle {
        cx: 0.625 * s,
        cy: 0.625 * s,
        r: 0.25 * s,
    };
    let (base, target) = match class {
        EdgeClass::Shading | EdgeClass::Splice => (
            SurfacePatch::matte(SURFACE, 0.9),
            SurfacePatch::matte(SURFACE, 0.4),
        ),
        EdgeClass::Shadow => (
            SurfacePatch::matte(SURFACE, 0.75).with_ambient(0.15),
            SurfacePatch::matte(SURFACE, 0.15).with_ambient(0.15),
        ),
        EdgeClass::Highlight => (
            SurfacePatch::matte(SURFACE, 0.6),
            SurfacePatch::matte(SURFACE, 0.6).with_specular(0.3),
        ),
        EdgeClass::Material => (
            SurfacePatch::matte(SURFACE, 0.9),
            SurfacePatch::matte([0.3, 0.4, 0.55], 0.9),
        ),
        EdgeClass::Occlusion => (
            SurfacePatch::matte(SURFACE, 0.9),
            SurfacePatch::matte([0.3, 0.4, 0.55], 0.5),
        ),
    };
    let mut regions = vec![Region::new("base", Shape::Rest, base, None), context];
    if class != EdgeClass::Splice {
        regions.push(Region::new("target", target_shape, target, Some(class)));
    }
    SceneSpec {
        width: size,
        height: size,
        illuminant: 1.0,
        regions,
    }
}

/// Paste shape used by the splice scene of [`edge_class_scene`].
pub fn class_scene_paste_mask(size: usize) -> Result<EdgeMap> {
    let s = size as f64;
    Shape::Circle {
        cx: 0.625 * s,
        cy: 0.625 * s,
        r: 0.25 * s,
    }
    .mask(size, size)
}

/// A `size × size` scene whose boundary of class `class` is a circle of
/// radius `size / 4`, plus a material context square in the top-left
/// quadrant. The splice variant pastes a copy relit at less than half the
/// body gain into the same circle.
pub fn edge_class_scene(class: EdgeClass, size: usize) -> Result<Rendering> {
    let spec = class_scene_spec(class, size);
    if class != EdgeClass::Splice {
        return render(&spec);
    }
    let host = render(&spec)?;
    let donor = render(&spec.relit(0.4 / 0.9, None))?;
    let mask = class_scene_paste_mask(size)?;
    let (image, splice_truth) = make_splice(&host.image, &donor.image, &mask)?;
    let truth = merge_splice(&host.truth, &splice_truth)?;
    Ok(Rendering {
        image,
        truth,
        clipped: host.clipped.union(&donor.clipped)?,
    })
}

fn merge_splice(natural: &GroundTruth, splice: &GroundTruth) -> Result<GroundTruth> {
    let (w, h) = natural.boundary.dims();
    let mut out = GroundTruth::empty(w, h)?;
    for class in EdgeClass::ALL {
        let src = if class == EdgeClass::Splice {
            splice
        } else {
            natural
        };
        out.mark(&src.boundary_of(class), class);
    }
    Ok(out)
}

/// One benchmark image with its splice boundary (empty for originals).
#[derive(Clone, Debug)]
pub struct SuiteItem {
    pub id: String,
    pub image: RgbImage,
    pub splice_boundary: EdgeMap,
    /// Set on spliced items.
    pub paste_mask: Option<EdgeMap>,
}

impl SuiteItem {
    pub fn is_spliced(&self) -> bool {
        self.paste_mask.is_some()
    }
}

#[derive(Clone, Copy, Debug)]
struct Disc {
    cx: f64,
    cy: f64,
    r: f64,
}

impl Disc {
    fn gap(&self, other: &Disc) -> f64 {
        ((self.cx - other.cx).powi(2) + (self.cy - other.cy).powi(2)).sqrt() - self.r - other.r
    }

    fn shape(&self) -> Shape {
        Shape::Circle {
            cx: self.cx,
            cy: self.cy,
            r: self.r,
        }
    }
}

fn chroma_spread(k: [f64; 3]) -> f64 {
    let max = k.iter().copied().fold(0.0, f64::max);
    let min = k.iter().copied().fold(1.0, f64::min);
    max - min
}

fn random_albedo(rng: &mut impl Rng, min_spread: f64) -> [f64; 3] {
    loop {
        let k = [
            rng.random_range(0.1..0.8),
            rng.random_range(0.1..0.8),
            rng.random_range(0.1..0.8),
        ];
        if chroma_spread(k) > min_spread {
            return k;
        }
    }
}

/// Object albedo whose saturation differs from the background's by at least
/// `min_gap`, so its contour is a material edge in both spaces.
fn object_albedo(rng: &mut impl Rng, background: [f64; 3], min_gap: f64) -> [f64; 3] {
    let s_bg = saturation(background);
    loop {
        let k = random_albedo(rng, 0.15);
        if (saturation(k) - s_bg).abs() >= min_gap {
            return k;
        }
    }
}

fn far_enough(candidate: &Disc, others: &[Disc], margin: f64) -> bool {
    others.iter().all(|d| candidate.gap(d) > margin)
}

/// Host scene plus, for spliced items, a paste disc. Objects either sit
/// entirely inside or entirely outside the paste disc.
fn suite_scene(rng: &mut impl Rng, size: usize, paste: Option<Disc>) -> SceneSpec {
    let s = size as f64;
    let axis = if rng.random_bool(0.5) {
        Axis::X
    } else {
        Axis::Y
    };
    let (lo, hi) = (rng.random_range(0.7..0.8), rng.random_range(0.85..0.95));
    let shading = if rng.random_bool(0.5) {
        Field::Ramp {
            axis,
            from: lo,
            to: hi,
        }
    } else {
        Field::Ramp {
            axis,
            from: hi,
            to: lo,
        }
    };
    let base = SurfacePatch {
        albedo: random_albedo(rng, BACKGROUND_SPREAD),
        body_gain: shading,
        specular_gain: Field::Constant(0.0),
        specular_coeff: 1.0,
        ambient: 0.0,
    };
    let mut regions = vec![Region::new("background", Shape::Rest, base.clone(), None)];
    let mut placed: Vec<Disc> = Vec::new();
    let objects = rng.random_range(3..=5);
    let mut attempts = 0;
    while placed.len() < objects && attempts < 500 {
        attempts += 1;
        let r = rng.random_range(0.05 * s..0.12 * s);
        let d = Disc {
            cx: rng.random_range(r + 4.0..s - r - 4.0),
            cy: rng.random_range(r + 4.0..s - r - 4.0),
            r,
        };
        if !far_enough(&d, &placed, 6.0) {
            continue;
        }
        if let Some(p) = paste {
            let dist = ((d.cx - p.cx).powi(2) + (d.cy - p.cy).powi(2)).sqrt();
            let inside = dist + d.r < p.r - 6.0;
            let outside = dist - d.r > p.r + 6.0;
            if !(inside || outside) {
                continue;
            }
        }
        placed.push(d);
    }
    for (i, d) in placed.iter().enumerate() {
        let patch = SurfacePatch {
            albedo: object_albedo(rng, base.albedo, OBJECT_SATURATION_GAP),
            body_gain: shading,
            ..base.clone()
        };
        regions.push(Region::new(
            &format!("object{i}"),
            d.shape(),
            patch,
            Some(EdgeClass::Material),
        ));
    }
    // One highlight on the background, when there is room for it.
    for _ in 0..200 {
        let r = rng.random_range(0.04 * s..0.08 * s);
        let d = Disc {
            cx: rng.random_range(r + 4.0..s - r - 4.0),
            cy: rng.random_range(r + 4.0..s - r - 4.0),
            r,
        };
        let clear_of_paste = paste.is_none_or(|p| {
            let dist = ((d.cx - p.cx).powi(2) + (d.cy - p.cy).powi(2)).sqrt();
            dist - d.r > p.r + 6.0 || dist + d.r < p.r - 6.0
        });
        if far_enough(&d, &placed, 6.0) && clear_of_paste {
            let patch = SurfacePatch {
                specular_gain: Field::Constant(rng.random_range(0.1..0.2)),
                ..base.clone()
            };
            regions.push(Region::new(
                "highlight",
                d.shape(),
                patch,
                Some(EdgeClass::Highlight),
            ));
            break;
        }
    }
    SceneSpec {
        width: size,
        height: size,
        illuminant: 1.0,
        regions,
    }
}

/// Seeded suite of `pairs` spliced and `pairs` original `size × size` images,
/// 8-bit quantized. Spliced images paste a copy of the same scene relit at
/// 30-50 % of the body gain into a disc whose contour runs over background.
pub fn synthetic_suite(seed: u64, pairs: usize, size: usize) -> Result<Vec<SuiteItem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = size as f64;
    let mut items = Vec::with_capacity(2 * pairs);
    for i in 0..pairs {
        let r = rng.random_range(0.18 * s..0.3 * s);
        let paste = Disc {
            cx: rng.random_range(r + 8.0..s - r - 8.0),
            cy: rng.random_range(r + 8.0..s - r - 8.0),
            r,
        };
        let spec = suite_scene(&mut rng, size, Some(paste));
        let host = render(&spec)?;
        let donor = render(&spec.relit(rng.random_range(RELIGHT), None))?;
        let mask = paste.shape().mask(size, size)?;
        let (image, truth) = make_splice(&host.image, &donor.image, &mask)?;
        items.push(SuiteItem {
            id: format!("spliced_{i:03}"),
            image: image.quantized(),
            splice_boundary: truth.boundary,
            paste_mask: Some(mask),
        });

        let spec = suite_scene(&mut rng, size, None);
        let original = render(&spec)?;
        items.push(SuiteItem {
            id: format!("original_{i:03}"),
            image: original.image.quantized(),
            splice_boundary: EdgeMap::empty(size, size)?,
            paste_mask: None,
        });
    }
    Ok(items)
}
