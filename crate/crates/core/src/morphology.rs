//! Binary morphology on [`EdgeMap`]s.

use crate::image::EdgeMap;

/// Dilation by a `(2r + 1) × (2r + 1)` square. Radius zero is the identity.
///
/// Separable: a horizontal pass followed by a vertical pass.
pub fn dilate_square(map: &EdgeMap, radius: usize) -> EdgeMap {
    if radius == 0 {
        return map.clone();
    }
    let (w, h) = map.dims();
    let src = map.flags();
    let mut horiz = vec![false; w * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let lo = x.saturating_sub(radius);
            let hi = (x + radius).min(w - 1);
            horiz[y * w + x] = row[lo..=hi].iter().any(|&f| f);
        }
    }
    let mut out = vec![false; w * h];
    for y in 0..h {
        let lo = y.saturating_sub(radius);
        let hi = (y + radius).min(h - 1);
        for x in 0..w {
            out[y * w + x] = (lo..=hi).any(|yy| horiz[yy * w + x]);
        }
    }
    EdgeMap::new(w, h, out).expect("dimensions preserved")
}

/// Erosion by the 4-connected cross. Pixels outside the frame count as set,
/// so the frame border itself never erodes a mask.
pub fn erode_cross(map: &EdgeMap) -> EdgeMap {
    let (w, h) = map.dims();
    EdgeMap::from_fn(w, h, |x, y| {
        map.get(x, y)
            && (x == 0 || map.get(x - 1, y))
            && (x + 1 == w || map.get(x + 1, y))
            && (y == 0 || map.get(x, y - 1))
            && (y + 1 == h || map.get(x, y + 1))
    })
    .expect("dimensions preserved")
}

/// Inner 4-connected boundary: mask pixels with at least one in-frame
/// 4-neighbour outside the mask.
pub fn inner_boundary(mask: &EdgeMap) -> EdgeMap {
    mask.and_not(&erode_cross(mask))
        .expect("erosion preserves dimensions")
}
