mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spliceedge::classify::splice_from_maps;
use spliceedge::edges::{composite_gradient, detect_edges_in_space, laplacian, threshold_edges};
use spliceedge::eval::{boundary_recall, pixel_f1, roc};
use spliceedge::simulate::{
    ground_truth_boundary, make_splice, render, Axis, EdgeClass, Region, SceneSpec, Shape,
    SurfacePatch,
};
use spliceedge::{ChannelPlane, EdgeMap};

const CASES: usize = 600;

#[test]
fn laplacian_matches_direct_convolution() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..CASES {
        let p = common::random_plane(&mut rng, 8);
        let fast = laplacian(&p);
        let slow = common::laplacian(&p);
        for (a, b) in fast.samples().iter().zip(&slow) {
            // Same four terms summed in a different order.
            assert!((a - b).abs() <= 1e-14, "{a} vs {b}");
        }
    }
}

#[test]
fn laplacian_of_middle_stripe() {
    let p = ChannelPlane::new(3, 3, vec![0., 0., 0., 1., 1., 1., 0., 0., 0.]).unwrap();
    let expected = common::laplacian(&p);
    assert_eq!(expected, vec![1., 1., 1., -2., -2., -2., 1., 1., 1.]);
    assert_eq!(laplacian(&p).samples(), expected.as_slice());
}

#[test]
fn composite_gradient_matches_direct_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..CASES {
        let w = rng.random_range(1..=8);
        let h = rng.random_range(1..=8);
        let n = rng.random_range(1..=3);
        let planes: Vec<ChannelPlane> = (0..n)
            .map(|_| ChannelPlane::from_fn(w, h, |_, _| rng.random_range(-2.0..2.0)).unwrap())
            .collect();
        let fast = composite_gradient(&planes).unwrap();
        let raw: Vec<Vec<f64>> = planes.iter().map(|p| p.samples().to_vec()).collect();
        assert_eq!(fast.samples(), common::composite(&raw).as_slice());
    }
}

#[test]
fn threshold_matches_direct_statistics() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..CASES {
        let w = rng.random_range(1..=8);
        let h = rng.random_range(1..=8);
        // Sparse spikes on a zero floor, like real gradient maps.
        let g = ChannelPlane::from_fn(w, h, |_, _| {
            if rng.random_bool(0.2) {
                rng.random_range(0.0..3.0)
            } else {
                0.0
            }
        })
        .unwrap();
        let (map, stats) = threshold_edges(&g);
        let (flags, sigma) = common::threshold(g.samples());
        assert_eq!(stats.sigma, sigma, "case {case}");
        assert_eq!(stats.threshold, 3.0 * sigma);
        assert_eq!(map.flags(), flags.as_slice(), "case {case}");
    }
}

#[test]
fn single_hot_pixel_statistics() {
    let mut g = vec![0.0; 100];
    g[42] = 1.0;
    let (flags, sigma) = common::threshold(&g);
    assert!((sigma - 0.0995).abs() < 5e-5);
    assert_eq!(flags.iter().filter(|&&f| f).count(), 1);
    let (map, stats) = threshold_edges(&ChannelPlane::new(10, 10, g).unwrap());
    assert_eq!(stats.sigma, sigma);
    assert_eq!(map.flags(), flags.as_slice());
}

fn two_tone(w: usize, h: usize) -> ChannelPlane {
    ChannelPlane::from_fn(w, h, |x, _| if x < w / 2 { 0.2 } else { 0.9 }).unwrap()
}

#[test]
fn two_tone_split_matches_oracle_pipeline() {
    // On 8x8 the band covers a quarter of the frame, which lifts 3 sigma
    // (about 0.91) above the 0.7 step response: nothing is flagged.
    let p = two_tone(8, 8);
    let (flags, sigma) = common::threshold(&common::composite(&[common::laplacian(&p)]));
    assert!(3.0 * sigma > 0.7);
    let (map, _) = detect_edges_in_space(&[p]).unwrap();
    assert_eq!(map.flags(), flags.as_slice());
    assert!(map.is_empty());
}

#[test]
fn two_tone_split_gives_vertical_band() {
    for w in [16, 24, 32] {
        let p = two_tone(w, 8);
        let (flags, _) = common::threshold(&common::composite(&[common::laplacian(&p)]));
        let (map, _) = detect_edges_in_space(&[p]).unwrap();
        assert_eq!(map.flags(), flags.as_slice());
        for y in 0..8 {
            for x in 0..w {
                assert_eq!(
                    map.get(x, y),
                    x == w / 2 - 1 || x == w / 2,
                    "w={w} ({x}, {y})"
                );
            }
        }
    }
}

#[test]
fn pipeline_matches_composition_of_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..CASES {
        let w = rng.random_range(1..=8);
        let h = rng.random_range(1..=8);
        let planes: Vec<ChannelPlane> = (0..2)
            .map(|_| {
                ChannelPlane::from_fn(w, h, |_, _| f64::from(rng.random_range(0..4u8)) / 4.0)
                    .unwrap()
            })
            .collect();
        let raw: Vec<Vec<f64>> = planes.iter().map(common::laplacian).collect();
        let (flags, _) = common::threshold(&common::composite(&raw));
        let (map, _) = detect_edges_in_space(&planes).unwrap();
        assert_eq!(map.flags(), flags.as_slice());
    }
}

#[test]
fn pixel_f1_matches_all_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..CASES {
        let w = rng.random_range(1..=8);
        let h = rng.random_range(1..=8);
        let dd = rng.random_range(0.0..0.5);
        let d = common::random_map(&mut rng, w, h, dd);
        let td = rng.random_range(0.0..0.5);
        let t = common::random_map(&mut rng, w, h, td);
        let tol = rng.random_range(0..=3);
        let s = pixel_f1(&d, &t, tol).unwrap();
        let (p, r, f) = common::f1(&d, &t, tol);
        assert_eq!((s.precision, s.recall, s.f1), (p, r, f));
    }
}

#[test]
fn boundary_recall_matches_all_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..CASES {
        let w = rng.random_range(1..=8);
        let h = rng.random_range(1..=8);
        let dd = rng.random_range(0.0..0.5);
        let d = common::random_map(&mut rng, w, h, dd);
        let td = rng.random_range(0.0..0.5);
        let t = common::random_map(&mut rng, w, h, td);
        let tol = rng.random_range(0..=3);
        assert_eq!(
            boundary_recall(&d, &t, tol).unwrap(),
            common::boundary_recall(&d, &t, tol)
        );
    }
}

#[test]
fn shifted_line_scores() {
    let truth = EdgeMap::from_fn(12, 6, |x, y| y == 2 && x < 10).unwrap();
    let shifted = EdgeMap::from_fn(12, 6, |x, y| y == 3 && x < 10).unwrap();
    assert_eq!(common::f1(&shifted, &truth, 2), (1.0, 1.0, 1.0));
    assert_eq!(common::f1(&shifted, &truth, 0).2, 0.0);
    assert_eq!(pixel_f1(&shifted, &truth, 2).unwrap().f1, 1.0);
    assert_eq!(pixel_f1(&shifted, &truth, 0).unwrap().f1, 0.0);
}

#[test]
fn corners_recall_square_perimeter() {
    let square =
        EdgeMap::from_fn(5, 5, |x, y| (1..=3).contains(&x) && (1..=3).contains(&y)).unwrap();
    let perimeter = common::boundary(&square);
    assert_eq!(perimeter.count(), 8);
    let corners =
        EdgeMap::from_fn(5, 5, |x, y| [1, 3].contains(&x) && [1, 3].contains(&y)).unwrap();
    assert_eq!(common::boundary_recall(&corners, &perimeter, 1), 1.0);
    assert_eq!(boundary_recall(&corners, &perimeter, 1).unwrap(), 1.0);
}

#[test]
fn ground_truth_boundary_matches_neighbourhood_scan() {
    let square =
        EdgeMap::from_fn(5, 5, |x, y| (1..=3).contains(&x) && (1..=3).contains(&y)).unwrap();
    let b = ground_truth_boundary(&square);
    assert_eq!(b, common::boundary(&square));
    assert!(!b.get(2, 2));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..CASES {
        let w = rng.random_range(1..=8);
        let h = rng.random_range(1..=8);
        let md = rng.random_range(0.1..0.9);
        let m = common::random_map(&mut rng, w, h, md);
        assert_eq!(ground_truth_boundary(&m), common::boundary(&m));
    }
}

fn matte_scene(size: usize, albedo: [f64; 3], gain: f64) -> SceneSpec {
    SceneSpec {
        width: size,
        height: size,
        illuminant: 1.0,
        regions: vec![
            Region::new("base", Shape::Rest, SurfacePatch::matte(albedo, gain), None),
            Region::new(
                "half",
                Shape::Half {
                    axis: Axis::X,
                    at: size / 2,
                },
                SurfacePatch::matte([0.2, 0.5, 0.3], gain),
                Some(EdgeClass::Material),
            ),
        ],
    }
}

#[test]
fn circular_splice_boundary_matches_scan() {
    let host = render(&matte_scene(16, [0.6, 0.3, 0.1], 1.0))
        .unwrap()
        .image;
    let donor = render(&matte_scene(16, [0.1, 0.3, 0.6], 0.5))
        .unwrap()
        .image;
    let mask = Shape::Circle {
        cx: 8.0,
        cy: 8.0,
        r: 5.0,
    }
    .mask(16, 16)
    .unwrap();
    let (img, truth) = make_splice(&host, &donor, &mask).unwrap();
    assert_eq!(truth.boundary, common::boundary(&mask));
    for y in 0..16 {
        for x in 0..16 {
            let src = if mask.get(x, y) { &donor } else { &host };
            assert_eq!(img.pixel(x, y), src.pixel(x, y));
        }
    }
}

#[test]
fn dilated_splice_matches_truth_table() {
    let o = EdgeMap::from_fn(5, 5, |x, y| y == 2 && (x == 2 || x == 4)).unwrap();
    let s = EdgeMap::from_fn(5, 5, |x, y| y == 2 && x == 1).unwrap();
    let grown = common::dilate(&s, 1);
    let expected = EdgeMap::from_fn(5, 5, |x, y| o.get(x, y) && !grown.get(x, y)).unwrap();
    let got = splice_from_maps(&o, &s, 1).unwrap();
    assert_eq!(got, expected);
    assert!(!got.get(2, 2));
    assert!(got.get(4, 2));

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..CASES {
        let w = rng.random_range(1..=8);
        let h = rng.random_range(1..=8);
        let o = common::random_map(&mut rng, w, h, 0.4);
        let s = common::random_map(&mut rng, w, h, 0.2);
        let r = rng.random_range(0..=2);
        let grown = common::dilate(&s, r);
        let expected = EdgeMap::from_fn(w, h, |x, y| o.get(x, y) && !grown.get(x, y)).unwrap();
        assert_eq!(splice_from_maps(&o, &s, r).unwrap(), expected);
    }
}

#[test]
fn roc_matches_enumeration() {
    // alpha = 0.5: spliced 0.9 > 0.5 yes, 0.2 no; originals 0.1 no, 0.8 yes.
    let pts = roc(&[0.9, 0.2], &[0.1, 0.8]).unwrap();
    let at = pts.iter().find(|p| p.alpha == 0.5).unwrap();
    assert_eq!((at.tpr, at.fpr), (0.5, 0.5));

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let sp: Vec<f64> = (0..rng.random_range(1..10))
            .map(|_| rng.random_range(0.0..=1.0))
            .collect();
        let or: Vec<f64> = (0..rng.random_range(1..10))
            .map(|_| rng.random_range(0.0..=1.0))
            .collect();
        for p in roc(&sp, &or).unwrap() {
            let above =
                |v: &[f64]| v.iter().filter(|&&s| s > p.alpha).count() as f64 / v.len() as f64;
            assert_eq!((p.tpr, p.fpr), (above(&sp), above(&or)));
        }
    }
}
