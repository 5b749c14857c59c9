//! Laplacian edge detection on one color space.
//!
//! Each channel is convolved with the 4-neighbour Laplacian
//!
//! ```text
//! 0  1  0
//! 1 -4  1
//! 0  1  0
//! ```
//!
//! using clamp-to-edge borders. The responses are fused into the composite
//! gradient `sqrt(sum_i f_i'^2)` and a pixel is an edge when its composite
//! gradient is strictly greater than three population standard deviations of
//! the whole map.

use crate::image::{ensure_same_dims, ChannelPlane, EdgeMap};
use crate::{Error, Result};

/// Threshold statistics of one composite gradient map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GradientStats {
    /// Population standard deviation of the composite gradient.
    pub sigma: f64,
    /// Always `3 * sigma`.
    pub threshold: f64,
}

impl GradientStats {
    pub const SIGMA_MULTIPLIER: f64 = 3.0;

    pub fn from_sigma(sigma: f64) -> Self {
        Self {
            sigma,
            threshold: Self::SIGMA_MULTIPLIER * sigma,
        }
    }
}

/// 4-neighbour Laplacian with replicated borders.
pub fn laplacian(plane: &ChannelPlane) -> ChannelPlane {
    let (w, h) = plane.dims();
    let src = plane.samples();
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        let up = y.saturating_sub(1) * w;
        let row = y * w;
        let down = (y + 1).min(h - 1) * w;
        for x in 0..w {
            let left = x.saturating_sub(1);
            let right = (x + 1).min(w - 1);
            let c = src[row + x];
            // Summing neighbour differences keeps flat areas at exactly zero.
            out[row + x] = (src[up + x] - c)
                + (src[down + x] - c)
                + (src[row + left] - c)
                + (src[row + right] - c);
        }
    }
    ChannelPlane::new(w, h, out).expect("dimensions preserved")
}

/// Per-pixel Euclidean norm across already-filtered channel responses.
pub fn composite_gradient(planes: &[ChannelPlane]) -> Result<ChannelPlane> {
    let first = planes.first().ok_or(Error::EmptyInput("plane list"))?;
    for p in &planes[1..] {
        ensure_same_dims(first.dims(), p.dims())?;
    }
    let (w, h) = first.dims();
    let mut acc = vec![0.0; w * h];
    for p in planes {
        for (a, &v) in acc.iter_mut().zip(p.samples()) {
            *a += v * v;
        }
    }
    for a in &mut acc {
        *a = a.sqrt();
    }
    ChannelPlane::new(w, h, acc)
}

/// Population standard deviation over every sample of `plane`.
pub fn population_sigma(plane: &ChannelPlane) -> f64 {
    let samples = plane.samples();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    var.sqrt()
}

/// Flags pixels whose gradient is strictly above `3 sigma`.
///
/// A constant non-zero map has `sigma = 0` and therefore flags every pixel.
pub fn threshold_edges(grad: &ChannelPlane) -> (EdgeMap, GradientStats) {
    let stats = GradientStats::from_sigma(population_sigma(grad));
    let (w, h) = grad.dims();
    let flags = grad
        .samples()
        .iter()
        .map(|&v| v > stats.threshold)
        .collect();
    (
        EdgeMap::new(w, h, flags).expect("dimensions preserved"),
        stats,
    )
}

/// Laplacian of every channel, composite gradient, then the `3 sigma` cut.
pub fn detect_edges_in_space(planes: &[ChannelPlane]) -> Result<(EdgeMap, GradientStats)> {
    let responses: Vec<ChannelPlane> = planes.iter().map(laplacian).collect();
    let grad = composite_gradient(&responses)?;
    Ok(threshold_edges(&grad))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(w: usize, h: usize, data: &[f64]) -> ChannelPlane {
        ChannelPlane::new(w, h, data.to_vec()).unwrap()
    }

    #[test]
    fn constant_plane_has_zero_laplacian() {
        for v in [0.0, 0.1, 0.3, 1.0 / 3.0, 0.7] {
            let out = laplacian(&ChannelPlane::filled(6, 4, v).unwrap());
            assert!(out.samples().iter().all(|&s| s == 0.0));
        }
    }

    #[test]
    fn impulse_response_is_the_kernel() {
        let mut p = ChannelPlane::filled(5, 5, 0.0).unwrap();
        p.set(2, 2, 1.0);
        let out = laplacian(&p);
        for y in 0..5 {
            for x in 0..5 {
                let expected = match (x, y) {
                    (2, 2) => -4.0,
                    (1, 2) | (3, 2) | (2, 1) | (2, 3) => 1.0,
                    _ => 0.0,
                };
                assert_eq!(out.get(x, y), expected, "({x}, {y})");
            }
        }
    }

    #[test]
    fn middle_row_stripe() {
        // Hand-expanded with clamped borders: top/bottom rows see +1 from the
        // stripe, the stripe sees -1 from each of its two vertical neighbours.
        let p = plane(3, 3, &[0., 0., 0., 1., 1., 1., 0., 0., 0.]);
        let out = laplacian(&p);
        assert_eq!(out.samples(), &[1., 1., 1., -2., -2., -2., 1., 1., 1.]);
    }

    #[test]
    fn one_by_one_plane() {
        assert_eq!(laplacian(&plane(1, 1, &[0.4])).samples(), &[0.0]);
    }

    #[test]
    fn composite_gradient_examples() {
        let single = composite_gradient(&[plane(2, 1, &[-2.0, 3.0])]).unwrap();
        assert_eq!(single.samples(), &[2.0, 3.0]);
        let two = composite_gradient(&[plane(1, 1, &[3.0]), plane(1, 1, &[4.0])]).unwrap();
        assert_eq!(two.samples(), &[5.0]);
        let three = composite_gradient(&[
            plane(1, 1, &[1.0]),
            plane(1, 1, &[2.0]),
            plane(1, 1, &[2.0]),
        ])
        .unwrap();
        assert_eq!(three.samples(), &[3.0]);
    }

    #[test]
    fn composite_gradient_errors() {
        assert_eq!(
            composite_gradient(&[]).unwrap_err(),
            Error::EmptyInput("plane list")
        );
        assert!(matches!(
            composite_gradient(&[plane(1, 1, &[0.0]), plane(2, 1, &[0.0, 0.0])]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn all_zero_gradient_has_no_edges() {
        let (map, stats) = threshold_edges(&ChannelPlane::filled(4, 4, 0.0).unwrap());
        assert!(map.is_empty());
        assert_eq!(stats.sigma, 0.0);
        assert_eq!(stats.threshold, 0.0);
    }

    #[test]
    fn single_hot_pixel() {
        let mut g = ChannelPlane::filled(10, 10, 0.0).unwrap();
        g.set(3, 7, 1.0);
        let (map, stats) = threshold_edges(&g);
        // mean 0.01, variance (0.99^2 + 99 * 0.01^2) / 100 = 0.0099
        let sigma = (0.01f64 * 0.99).sqrt();
        assert!((stats.sigma - sigma).abs() < 1e-15);
        assert!((stats.sigma - 0.0995).abs() < 1e-4);
        assert!((stats.threshold - 0.2985).abs() < 1e-3);
        assert_eq!(stats.threshold, 3.0 * stats.sigma);
        assert_eq!(map.points().collect::<Vec<_>>(), vec![(3, 7)]);
    }

    #[test]
    fn constant_nonzero_gradient_flags_everything() {
        let (map, stats) = threshold_edges(&ChannelPlane::filled(3, 3, 0.25).unwrap());
        assert_eq!(stats.sigma, 0.0);
        assert_eq!(map.count(), 9);
    }

    #[test]
    fn constant_plane_has_no_edges() {
        let (map, _) = detect_edges_in_space(&[ChannelPlane::filled(8, 8, 0.7).unwrap()]).unwrap();
        assert!(map.is_empty());
    }
}
