//! Timed solver dispatch and the solve-report JSON format.

use std::time::Instant;

use cptagg_core::{
    algorithm1, exact_union_majority, exhaustive_optimum, optimal_for_parent_set,
    trivial_best_input, AlgorithmKind, AttributeSet, Instance, Limits, SolveReport,
};
use serde::{Deserialize, Serialize};

use crate::format::CptObj;

/// What to run; the fixed-parent solver needs its parent set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveRequest {
    Trivial,
    Algorithm1,
    FixedParent(AttributeSet),
    ExactUnion,
    /// Exhaustive search over CPTs with parents inside the pool.
    Exhaustive(AttributeSet),
}

impl SolveRequest {
    pub fn kind(&self) -> AlgorithmKind {
        match self {
            SolveRequest::Trivial => AlgorithmKind::Trivial,
            SolveRequest::Algorithm1 => AlgorithmKind::Algorithm1,
            SolveRequest::FixedParent(_) => AlgorithmKind::FixedParent,
            SolveRequest::ExactUnion => AlgorithmKind::ExactUnion,
            SolveRequest::Exhaustive(_) => AlgorithmKind::Exhaustive,
        }
    }
}

/// Runs the requested algorithm and records its wall time.
pub fn solve(
    instance: &Instance,
    request: SolveRequest,
    limits: &Limits,
) -> cptagg_core::Result<SolveReport> {
    let start = Instant::now();
    let report = match request {
        SolveRequest::Trivial => trivial_best_input(instance),
        SolveRequest::Algorithm1 => algorithm1(instance, limits),
        SolveRequest::FixedParent(p) => optimal_for_parent_set(instance, p, limits),
        SolveRequest::ExactUnion => exact_union_majority(instance, limits),
        SolveRequest::Exhaustive(pool) => exhaustive_optimum(instance, pool, limits),
    }?;
    Ok(report.with_wall_time(start.elapsed()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReportJson {
    pub algorithm: String,
    pub objective: u64,
    pub per_input: Vec<u64>,
    pub chosen_parents: Option<Vec<usize>>,
    pub cpt: CptObj,
    pub wall_time_ms: f64,
}

impl From<&SolveReport> for SolveReportJson {
    fn from(report: &SolveReport) -> Self {
        SolveReportJson {
            algorithm: report.algorithm.as_str().to_owned(),
            objective: report.objective,
            per_input: report.per_input.clone(),
            chosen_parents: report.chosen_parent_set.map(|p| p.iter().collect()),
            cpt: CptObj::from_cpt(&report.output),
            wall_time_ms: report.wall_time.as_secs_f64() * 1e3,
        }
    }
}

pub fn report_to_json(report: &SolveReport) -> String {
    serde_json::to_string_pretty(&SolveReportJson::from(report)).expect("reports always serialize")
}
