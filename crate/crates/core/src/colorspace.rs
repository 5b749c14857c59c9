//! RGB to the photometric spaces used by the detector.
//!
//! `S = 1 - min(R, G, B) / (R + G + B)` cancels any common gain on the body
//! term, and `o1 = (R - G) / 2`, `o2 = B / 2 - (R + G) / 4` cancel any common
//! additive term. Saturation is computed exactly as written, without the
//! factor of three of HSI saturation; the two differ by a positive affine map
//! which the edge stage ignores.

use crate::image::{ChannelPlane, RgbImage};

/// Saturation of a single pixel. Black maps to `0`.
#[inline]
pub fn saturation(rgb: [f64; 3]) -> f64 {
    let [r, g, b] = rgb;
    let sum = r + g + b;
    if sum <= 0.0 {
        return 0.0;
    }
    let s = 1.0 - r.min(g).min(b) / sum;
    s.clamp(0.0, 1.0)
}

/// Opponent pair `(o1, o2)` of a single pixel.
#[inline]
pub fn opponent(rgb: [f64; 3]) -> (f64, f64) {
    let [r, g, b] = rgb;
    ((r - g) / 2.0, b / 2.0 - (r + g) / 4.0)
}

pub fn to_saturation(img: &RgbImage) -> ChannelPlane {
    let (w, h) = img.dims();
    let (r, g, b) = (
        img.red().samples(),
        img.green().samples(),
        img.blue().samples(),
    );
    let data = (0..w * h).map(|i| saturation([r[i], g[i], b[i]])).collect();
    ChannelPlane::new(w, h, data).expect("dimensions come from a valid image")
}

pub fn to_opponent(img: &RgbImage) -> (ChannelPlane, ChannelPlane) {
    let (w, h) = img.dims();
    let (r, g, b) = (
        img.red().samples(),
        img.green().samples(),
        img.blue().samples(),
    );
    let (o1, o2): (Vec<f64>, Vec<f64>) = (0..w * h).map(|i| opponent([r[i], g[i], b[i]])).unzip();
    (
        ChannelPlane::new(w, h, o1).expect("dimensions come from a valid image"),
        ChannelPlane::new(w, h, o2).expect("dimensions come from a valid image"),
    )
}
