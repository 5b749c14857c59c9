//! Scoring detections against ground truth.
//!
//! Matching is distance tolerant: a detected pixel counts as correct when a
//! truth pixel lies within Chebyshev distance `tol`, and a truth pixel counts
//! as recalled when a detected pixel lies within the same distance.

use serde::Serialize;

use crate::classify::DetectionResult;
use crate::image::{ensure_same_dims, EdgeMap};
use crate::morphology::dilate_square;
use crate::{Error, Result};

pub const DEFAULT_TOLERANCE: usize = 2;
pub const DEFAULT_THETA: f64 = 0.3;
/// Number of uniformly spaced `alpha` (and `theta`) values swept on `[0, 1]`.
pub const SWEEP_STEPS: usize = 101;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PixelScore {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Detected pixels with a truth pixel within `tol`.
    pub matched_true_positives: usize,
    /// Truth pixels with a detected pixel within `tol`.
    pub matched_truth: usize,
    pub detected_count: usize,
    pub truth_count: usize,
}

pub fn f1_from(precision: f64, recall: f64) -> f64 {
    if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    }
}

/// Number of pixels in `a` with a pixel of `b` within Chebyshev distance `tol`.
fn matched_within(a: &EdgeMap, b: &EdgeMap, tol: usize) -> usize {
    let near_b = dilate_square(b, tol);
    a.flags()
        .iter()
        .zip(near_b.flags())
        .filter(|(&x, &y)| x && y)
        .count()
}

/// Precision, recall and F1 of `detected` against `truth`.
///
/// Both maps empty scores 1 throughout. Exactly one map empty scores 0.
pub fn pixel_f1(detected: &EdgeMap, truth: &EdgeMap, tol: usize) -> Result<PixelScore> {
    ensure_same_dims(detected.dims(), truth.dims())?;
    let detected_count = detected.count();
    let truth_count = truth.count();
    let matched_true_positives = matched_within(detected, truth, tol);
    let matched_truth = matched_within(truth, detected, tol);
    let (precision, recall) = match (detected_count, truth_count) {
        (0, 0) => (1.0, 1.0),
        (0, _) | (_, 0) => (0.0, 0.0),
        (d, t) => (
            matched_true_positives as f64 / d as f64,
            matched_truth as f64 / t as f64,
        ),
    };
    Ok(PixelScore {
        precision,
        recall,
        f1: f1_from(precision, recall),
        matched_true_positives,
        matched_truth,
        detected_count,
        truth_count,
    })
}

/// Fraction of truth pixels with a detected pixel within `tol`. An empty
/// truth map is recalled vacuously (`1`).
pub fn boundary_recall(detected: &EdgeMap, truth: &EdgeMap, tol: usize) -> Result<f64> {
    ensure_same_dims(detected.dims(), truth.dims())?;
    let truth_count = truth.count();
    if truth_count == 0 {
        return Ok(1.0);
    }
    Ok(matched_within(truth, detected, tol) as f64 / truth_count as f64)
}

/// `br >= theta`.
#[inline]
pub fn gate(br: f64, theta: f64) -> bool {
    br >= theta
}

/// `i / (steps - 1)` for `i in 0..steps`.
pub fn unit_grid(steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![0.0],
        n => (0..n).map(|i| i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RocPoint {
    pub alpha: f64,
    pub tpr: f64,
    pub fpr: f64,
}

/// Sweeps `alpha` over [`SWEEP_STEPS`] values in `[0, 1]`; a score is a
/// positive call when it is strictly greater than `alpha`.
pub fn roc(spliced_scores: &[f64], original_scores: &[f64]) -> Result<Vec<RocPoint>> {
    if spliced_scores.is_empty() {
        return Err(Error::EmptyInput("spliced scores"));
    }
    if original_scores.is_empty() {
        return Err(Error::EmptyInput("original scores"));
    }
    let rate = |scores: &[f64], alpha: f64| {
        scores.iter().filter(|&&s| s > alpha).count() as f64 / scores.len() as f64
    };
    Ok(unit_grid(SWEEP_STEPS)
        .into_iter()
        .map(|alpha| RocPoint {
            alpha,
            tpr: rate(spliced_scores, alpha),
            fpr: rate(original_scores, alpha),
        })
        .collect())
}

/// Trapezoidal area under the curve through `(0, 0)`, the sweep points and `(1, 1)`.
pub fn roc_auc(points: &[RocPoint]) -> f64 {
    let mut pts: Vec<(f64, f64)> = points.iter().map(|p| (p.fpr, p.tpr)).collect();
    pts.push((0.0, 0.0));
    pts.push((1.0, 1.0));
    pts.sort_by(|a, b| a.partial_cmp(b).expect("rates are finite"));
    pts.windows(2)
        .map(|w| (w[1].0 - w[0].0) * (w[1].1 + w[0].1) / 2.0)
        .sum()
}

/// Share of detected `o1 o2` edge pixels that survived as splice pixels.
pub fn splice_score(splice_pixels: usize, o_edge_pixels: usize) -> f64 {
    splice_pixels as f64 / o_edge_pixels.max(1) as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ImageKind {
    Spliced,
    Original,
}

/// Per-image evaluation row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ImageRow {
    pub id: String,
    pub kind: ImageKind,
    pub score: PixelScore,
    pub boundary_recall: f64,
    pub gate: bool,
    /// Splice pixels detected in a spliced image.
    pub ed_sp: usize,
    /// Splice pixels detected in an original image.
    pub ed_od: usize,
    /// Ground-truth splice boundary pixels.
    pub ed_s: usize,
    /// Image pixel count.
    pub n_o: usize,
    pub o_edge_pixels: usize,
    pub s_edge_pixels: usize,
    pub splice_score: f64,
}

impl ImageRow {
    /// Scores one detection. `truth` is the splice boundary; originals pass an
    /// empty map.
    pub fn evaluate(
        id: impl Into<String>,
        kind: ImageKind,
        detection: &DetectionResult,
        truth: &EdgeMap,
        tol: usize,
        theta: f64,
    ) -> Result<Self> {
        let splice = &detection.splice_map;
        let score = pixel_f1(splice, truth, tol)?;
        let br = boundary_recall(splice, truth, tol)?;
        let detected = splice.count();
        let o_edge_pixels = detection.o_edges.count();
        Ok(Self {
            id: id.into(),
            kind,
            score,
            boundary_recall: br,
            gate: gate(br, theta),
            ed_sp: if kind == ImageKind::Spliced {
                detected
            } else {
                0
            },
            ed_od: if kind == ImageKind::Original {
                detected
            } else {
                0
            },
            ed_s: truth.count(),
            n_o: splice.flags().len(),
            o_edge_pixels,
            s_edge_pixels: detection.s_edges.count(),
            splice_score: splice_score(detected, o_edge_pixels),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Aggregates {
    pub count: usize,
    pub f1_max: f64,
    pub f1_mean: f64,
    pub f1_median: f64,
    pub br_mean: f64,
}

/// Median; an even count averages the two middle values.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

/// Max, mean and median of F1 plus mean boundary recall over `(f1, br)` rows.
pub fn aggregate(rows: &[(f64, f64)]) -> Result<Aggregates> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("evaluation rows"));
    }
    let n = rows.len() as f64;
    let f1s: Vec<f64> = rows.iter().map(|r| r.0).collect();
    Ok(Aggregates {
        count: rows.len(),
        f1_max: f1s.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        f1_mean: f1s.iter().sum::<f64>() / n,
        f1_median: median(&f1s).expect("non-empty"),
        br_mean: rows.iter().map(|r| r.1).sum::<f64>() / n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct F1CurvePoint {
    pub theta: f64,
    /// Mean over spliced images of F1, counting images that fail the gate as 0.
    pub f1_mean: f64,
    /// Fraction of spliced images passing the gate.
    pub pass_rate: f64,
}

/// Mean gated F1 as `theta` sweeps `[0, 1]`.
pub fn f1_curve(rows: &[(f64, f64)]) -> Vec<F1CurvePoint> {
    let n = rows.len().max(1) as f64;
    unit_grid(SWEEP_STEPS)
        .into_iter()
        .map(|theta| {
            let passing = rows.iter().filter(|r| gate(r.1, theta));
            let (sum, count) = passing.fold((0.0, 0usize), |(s, c), r| (s + r.0, c + 1));
            F1CurvePoint {
                theta,
                f1_mean: sum / n,
                pass_rate: count as f64 / n,
            }
        })
        .collect()
}

/// Dataset-level summary. F1 and boundary-recall statistics cover spliced
/// images; the ROC sweep uses both kinds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub rows: Vec<ImageRow>,
    pub aggregates: Aggregates,
    pub roc: Option<Vec<RocPoint>>,
    pub roc_auc: Option<f64>,
    pub f1_curve: Vec<F1CurvePoint>,
}

impl EvalReport {
    /// Fails when there are no spliced rows.
    pub fn from_rows(rows: Vec<ImageRow>) -> Result<Self> {
        let spliced: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.kind == ImageKind::Spliced)
            .map(|r| (r.score.f1, r.boundary_recall))
            .collect();
        let aggregates = aggregate(&spliced)?;
        let scores = |kind| -> Vec<f64> {
            rows.iter()
                .filter(|r| r.kind == kind)
                .map(|r| r.splice_score)
                .collect()
        };
        let roc = roc(&scores(ImageKind::Spliced), &scores(ImageKind::Original)).ok();
        let roc_auc = roc.as_deref().map(roc_auc);
        Ok(Self {
            f1_curve: f1_curve(&spliced),
            rows,
            aggregates,
            roc,
            roc_auc,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(w: usize, h: usize, pts: &[(usize, usize)]) -> EdgeMap {
        EdgeMap::from_fn(w, h, |x, y| pts.contains(&(x, y))).unwrap()
    }

    #[test]
    fn perfect_match() {
        let t = map(6, 6, &[(1, 1), (2, 1), (3, 4)]);
        for tol in 0..4 {
            let s = pixel_f1(&t, &t, tol).unwrap();
            assert_eq!((s.precision, s.recall, s.f1), (1.0, 1.0, 1.0));
        }
    }

    #[test]
    fn far_apart_sets() {
        let a = map(10, 10, &[(0, 0), (1, 0)]);
        let b = map(10, 10, &[(9, 9), (8, 9)]);
        assert_eq!(pixel_f1(&a, &b, 0).unwrap().f1, 0.0);
        assert_eq!(boundary_recall(&a, &b, 2).unwrap(), 0.0);
    }

    #[test]
    fn empty_conventions() {
        let e = EdgeMap::empty(4, 4).unwrap();
        let t = map(4, 4, &[(1, 1)]);
        let s = pixel_f1(&e, &e, 2).unwrap();
        assert_eq!((s.precision, s.recall, s.f1), (1.0, 1.0, 1.0));
        assert_eq!(pixel_f1(&e, &t, 2).unwrap().f1, 0.0);
        assert_eq!(pixel_f1(&t, &e, 2).unwrap().f1, 0.0);
        assert_eq!(boundary_recall(&e, &t, 2).unwrap(), 0.0);
        assert_eq!(boundary_recall(&t, &t, 0).unwrap(), 1.0);
    }

    #[test]
    fn mismatched_dimensions() {
        let a = EdgeMap::empty(4, 4).unwrap();
        let b = EdgeMap::empty(5, 4).unwrap();
        assert!(pixel_f1(&a, &b, 2).is_err());
        assert!(boundary_recall(&a, &b, 2).is_err());
    }

    #[test]
    fn gate_is_non_strict() {
        assert!(gate(0.3, 0.3));
        assert!(gate(0.0, 0.0));
        assert!(!gate(0.29, 0.3));
    }

    #[test]
    fn roc_examples() {
        let pts = roc(&[1.0, 1.0], &[0.0, 0.0]).unwrap();
        assert_eq!(pts.len(), 101);
        let half = pts[50];
        assert_eq!((half.alpha, half.tpr, half.fpr), (0.5, 1.0, 0.0));
        assert_eq!(roc_auc(&pts), 1.0);

        let same = [0.1, 0.4, 0.4, 0.9];
        for p in roc(&same, &same).unwrap() {
            assert_eq!(p.tpr, p.fpr);
        }

        let mixed = roc(&[0.9, 0.2], &[0.1, 0.8]).unwrap();
        assert_eq!((mixed[50].tpr, mixed[50].fpr), (0.5, 0.5));

        assert_eq!(
            roc(&[], &[0.1]).unwrap_err(),
            Error::EmptyInput("spliced scores")
        );
        assert_eq!(
            roc(&[0.1], &[]).unwrap_err(),
            Error::EmptyInput("original scores")
        );
    }

    #[test]
    fn aggregate_examples() {
        let one = aggregate(&[(0.5, 0.2)]).unwrap();
        assert_eq!((one.f1_max, one.f1_mean, one.f1_median), (0.5, 0.5, 0.5));
        let three = aggregate(&[(0.2, 0.0), (0.4, 0.0), (0.9, 0.0)]).unwrap();
        assert_eq!(three.f1_max, 0.9);
        assert!((three.f1_mean - 0.5).abs() < 1e-15);
        assert_eq!(three.f1_median, 0.4);
        let four = aggregate(&[(0.1, 0.0), (0.2, 0.0), (0.3, 0.0), (0.8, 0.0)]).unwrap();
        assert!((four.f1_median - 0.25).abs() < 1e-15);
        assert_eq!(
            aggregate(&[]).unwrap_err(),
            Error::EmptyInput("evaluation rows")
        );
    }

    #[test]
    fn f1_curve_is_non_increasing() {
        let rows = [(0.9, 0.95), (0.5, 0.4), (0.2, 0.1)];
        let curve = f1_curve(&rows);
        assert!((curve[0].f1_mean - 1.6 / 3.0).abs() < 1e-12);
        assert!(curve.windows(2).all(|w| w[1].f1_mean <= w[0].f1_mean));
        assert_eq!(curve[100].pass_rate, 0.0);
    }

    #[test]
    fn score_uses_o_edges_denominator() {
        assert_eq!(splice_score(0, 0), 0.0);
        assert_eq!(splice_score(5, 20), 0.25);
    }
}
