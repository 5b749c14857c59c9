//! Brute-force reference implementations. Deliberately naive: explicit kernel
//! tables, all-pairs distance scans, two-pass statistics.

#![allow(dead_code)]

use rand::Rng;
use spliceedge::{ChannelPlane, EdgeMap};

pub const KERNEL: [[f64; 3]; 3] = [[0.0, 1.0, 0.0], [1.0, -4.0, 1.0], [0.0, 1.0, 0.0]];

pub fn laplacian(p: &ChannelPlane) -> Vec<f64> {
    let (w, h) = p.dims();
    let clamp = |v: isize, n: usize| v.clamp(0, n as isize - 1) as usize;
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = 0.0;
            for (ky, row) in KERNEL.iter().enumerate() {
                for (kx, &k) in row.iter().enumerate() {
                    let sx = clamp(x as isize + kx as isize - 1, w);
                    let sy = clamp(y as isize + ky as isize - 1, h);
                    acc += k * p.get(sx, sy);
                }
            }
            out[y * w + x] = acc;
        }
    }
    out
}

pub fn composite(planes: &[Vec<f64>]) -> Vec<f64> {
    (0..planes[0].len())
        .map(|i| planes.iter().map(|p| p[i] * p[i]).sum::<f64>().sqrt())
        .collect()
}

/// `(flags, sigma)` with a two-pass population standard deviation.
pub fn threshold(grad: &[f64]) -> (Vec<bool>, f64) {
    let n = grad.len() as f64;
    let mean = grad.iter().sum::<f64>() / n;
    let sigma = (grad.iter().map(|g| (g - mean).powi(2)).sum::<f64>() / n).sqrt();
    (grad.iter().map(|&g| g > 3.0 * sigma).collect(), sigma)
}

fn chebyshev(a: (usize, usize), b: (usize, usize)) -> usize {
    a.0.abs_diff(b.0).max(a.1.abs_diff(b.1))
}

/// Points of `from` with some point of `to` within `tol`.
pub fn matched(from: &EdgeMap, to: &EdgeMap, tol: usize) -> usize {
    let targets: Vec<_> = to.points().collect();
    from.points()
        .filter(|&p| targets.iter().any(|&q| chebyshev(p, q) <= tol))
        .count()
}

pub fn f1(detected: &EdgeMap, truth: &EdgeMap, tol: usize) -> (f64, f64, f64) {
    let (d, t) = (detected.count(), truth.count());
    if d == 0 && t == 0 {
        return (1.0, 1.0, 1.0);
    }
    if d == 0 || t == 0 {
        return (0.0, 0.0, 0.0);
    }
    let p = matched(detected, truth, tol) as f64 / d as f64;
    let r = matched(truth, detected, tol) as f64 / t as f64;
    let f = if p + r > 0.0 {
        2.0 * p * r / (p + r)
    } else {
        0.0
    };
    (p, r, f)
}

pub fn boundary_recall(detected: &EdgeMap, truth: &EdgeMap, tol: usize) -> f64 {
    match truth.count() {
        0 => 1.0,
        t => matched(truth, detected, tol) as f64 / t as f64,
    }
}

/// Mask pixels with an in-frame 4-neighbour outside the mask.
pub fn boundary(mask: &EdgeMap) -> EdgeMap {
    let (w, h) = mask.dims();
    EdgeMap::from_fn(w, h, |x, y| {
        if !mask.get(x, y) {
            return false;
        }
        let neighbours = [
            (x as isize - 1, y as isize),
            (x as isize + 1, y as isize),
            (x as isize, y as isize - 1),
            (x as isize, y as isize + 1),
        ];
        neighbours.iter().any(|&(nx, ny)| {
            nx >= 0
                && ny >= 0
                && (nx as usize) < w
                && (ny as usize) < h
                && !mask.get(nx as usize, ny as usize)
        })
    })
    .unwrap()
}

pub fn dilate(map: &EdgeMap, r: usize) -> EdgeMap {
    let (w, h) = map.dims();
    let pts: Vec<_> = map.points().collect();
    EdgeMap::from_fn(w, h, |x, y| pts.iter().any(|&p| chebyshev(p, (x, y)) <= r)).unwrap()
}

pub fn random_plane(rng: &mut impl Rng, max_side: usize) -> ChannelPlane {
    let w = rng.random_range(1..=max_side);
    let h = rng.random_range(1..=max_side);
    ChannelPlane::from_fn(w, h, |_, _| rng.random_range(-1.0..1.0)).unwrap()
}

pub fn random_map(rng: &mut impl Rng, w: usize, h: usize, density: f64) -> EdgeMap {
    EdgeMap::from_fn(w, h, |_, _| rng.random_bool(density)).unwrap()
}
