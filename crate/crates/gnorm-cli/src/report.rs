//! Report envelopes and CSV emission.

use std::fs;
use std::path::Path;

use serde::Serialize;

use gnorm::{AxiomReport, BallSample, SolveReport, SpaceSpec};

use crate::config::BallSpec;

/// JSON envelope for the axiom-checking commands.
#[derive(Debug, Serialize)]
pub struct AxiomsEnvelope<'a> {
    pub command: &'static str,
    pub space: &'a SpaceSpec,
    pub n_samples: usize,
    pub seed: u64,
    pub all_passed: bool,
    pub reports: Vec<AxiomReport>,
}

/// JSON envelope for `estimate-k`.
#[derive(Debug, Serialize)]
pub struct EstimateEnvelope<'a> {
    pub command: &'static str,
    pub space: &'a SpaceSpec,
    pub n_samples: usize,
    pub seed: u64,
    pub estimate: f64,
}

/// JSON envelope for the solver commands.
#[derive(Debug, Serialize)]
pub struct SolveEnvelope<'a> {
    pub command: &'static str,
    pub space: &'a SpaceSpec,
    pub report: &'a SolveReport,
}

/// JSON envelope for `ball-sample`.
#[derive(Debug, Serialize)]
pub struct BallEnvelope<'a> {
    pub command: &'static str,
    pub space: &'a SpaceSpec,
    pub ball: &'a BallSpec,
    pub requested: usize,
    pub accepted: usize,
    pub empty_after_budget: bool,
    pub sample: &'a BallSample,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

/// Iteration trace as CSV: one row per step, numbers in shortest
/// round-trip form.
pub fn trace_csv(report: &SolveReport) -> String {
    let mut out = String::from("n,residual,apriori_bound\n");
    for (n, (residual, bound)) in report
        .trace
        .step_residuals
        .iter()
        .zip(&report.trace.apriori_bounds)
        .enumerate()
    {
        out.push_str(&format!("{n},{residual:?},{bound:?}\n"));
    }
    out
}

/// Accepted ball members as CSV, one row per point.
pub fn points_csv(sample: &BallSample) -> String {
    let mut out = String::new();
    for p in &sample.points {
        let row: Vec<String> = p.coords().iter().map(|c| format!("{c:?}")).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Writes the iteration trace of a report as CSV.
pub fn emit_trace_csv(report: &SolveReport, path: &Path) -> std::io::Result<()> {
    fs::write(path, trace_csv(report))
}
