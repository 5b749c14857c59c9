//! Evaluation report (`report.json`) and its text summary.

use std::fmt::Write as _;

use serde::Serialize;
use spliceedge::eval::{Aggregates, EvalReport, F1CurvePoint, ImageKind, ImageRow, RocPoint};

use crate::dataset::Layout;

pub const REPORT_SCHEMA: &str = "spliceedge.eval-report";
pub const REPORT_VERSION: u32 = 1;

/// Every parameter that influences the numbers in a report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub dataset: String,
    pub layout: Layout,
    pub dilate_s: usize,
    pub tol: usize,
    pub theta: f64,
    pub alpha_steps: usize,
    pub theta_steps: usize,
    pub linearize: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Skipped {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub spliced: usize,
    pub original: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: u32,
    pub config: RunConfig,
    pub counts: Counts,
    pub aggregates: Aggregates,
    pub roc_auc: Option<f64>,
    pub rows: Vec<ImageRow>,
    pub skipped: Vec<Skipped>,
    pub roc: Option<Vec<RocPoint>>,
    pub f1_curve: Vec<F1CurvePoint>,
}

impl Report {
    pub fn new(config: RunConfig, eval: EvalReport, skipped: Vec<Skipped>) -> Self {
        let spliced = eval
            .rows
            .iter()
            .filter(|r| r.kind == ImageKind::Spliced)
            .count();
        Self {
            schema: REPORT_SCHEMA,
            version: REPORT_VERSION,
            counts: Counts {
                spliced,
                original: eval.rows.len() - spliced,
                skipped: skipped.len(),
            },
            config,
            aggregates: eval.aggregates,
            roc_auc: eval.roc_auc,
            rows: eval.rows,
            skipped,
            roc: eval.roc,
            f1_curve: eval.f1_curve,
        }
    }

    pub fn summary(&self) -> String {
        let a = &self.aggregates;
        let mut out = String::new();
        let _ = writeln!(out, "dataset   {}", self.config.dataset);
        let _ = writeln!(
            out,
            "images    {} spliced, {} original, {} skipped",
            self.counts.spliced, self.counts.original, self.counts.skipped
        );
        let _ = writeln!(
            out,
            "params    tol={} theta={} dilate_s={} linearize={}",
            self.config.tol, self.config.theta, self.config.dilate_s, self.config.linearize
        );
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<12}{:>10}{:>10}{:>12}{:>10}",
            "", "F1_Max", "F1_Mean", "F1_Median", "BR_Mean"
        );
        let _ = writeln!(
            out,
            "{:<12}{:>10.4}{:>10.4}{:>12.4}{:>10.4}",
            "spliceedge", a.f1_max, a.f1_mean, a.f1_median, a.br_mean
        );
        let _ = writeln!(out);
        match self.roc_auc {
            Some(auc) => {
                let _ = writeln!(out, "ROC AUC   {auc:.4}");
            }
            None => {
                let _ = writeln!(out, "ROC AUC   n/a (needs spliced and original images)");
            }
        }
        let spliced: Vec<&ImageRow> = self
            .rows
            .iter()
            .filter(|r| r.kind == ImageKind::Spliced)
            .collect();
        if !spliced.is_empty() {
            let passing: Vec<&&ImageRow> = spliced.iter().filter(|r| r.gate).collect();
            let gated_f1 = passing.iter().map(|r| r.score.f1).sum::<f64>() / spliced.len() as f64;
            let _ = writeln!(
                out,
                "gate      theta={}: {}/{} spliced images pass, gated F1_Mean {:.4}",
                self.config.theta,
                passing.len(),
                spliced.len(),
                gated_f1
            );
        }
        for s in &self.skipped {
            let _ = writeln!(out, "skipped   {}: {}", s.id, s.reason);
        }
        out
    }
}
