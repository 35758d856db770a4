//! Equivalence certificate for one formula: a satisfiable formula yields an
//! `n m` cover (and cut sequence), an unsatisfiable one has no cover of that
//! size according to the exhaustive search.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::segments::{cover_within, SearchOptions};
use super::{Mode, OracleError, OracleReport, SearchResult};
use crate::cover::{verify_guillotine_sequence, verify_segment_cover, CutSequence, SegmentCover, Verdict};
use crate::formula::{sat_solve, MonotoneFormula};
use crate::reduction::{build_from_formula, BuildOptions, ReductionError, ReductionInstance};
use crate::witness::{guillotine_witness, WitnessError};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertifyOptions {
    pub build: BuildOptions,
    pub search: SearchOptions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub side: Side,
    pub budget: usize,
    pub points: usize,
    pub assignment: Option<Vec<bool>>,
    /// Covers from earlier assignments or literal choices that admitted no
    /// cut order.
    pub rejected_covers: usize,
    /// Witness-builder cover on the satisfiable side.
    pub cover: Option<SegmentCover>,
    pub cuts: Option<CutSequence>,
    /// What the exhaustive search said at `budget`.
    pub oracle_result: SearchResult,
    pub nodes_explored: u64,
}

impl EquivalenceReport {
    /// For example `UNSAT ∧ NONE@18` or `SAT ∧ FOUND@6`.
    pub fn summary(&self) -> String {
        let side = match self.side {
            Side::Sat => "SAT",
            Side::Unsat => "UNSAT",
        };
        let result = match self.oracle_result {
            SearchResult::Found => "FOUND",
            SearchResult::None => "NONE",
            SearchResult::NoneInFamily => "NONE_IN_FAMILY",
        };
        format!("{side} ∧ {result}@{}", self.budget)
    }

    pub fn report(&self) -> OracleReport<SegmentCover> {
        OracleReport {
            mode: Mode::Certify,
            limit: self.budget,
            result: self.oracle_result,
            witness: self.cover.clone(),
            nodes_explored: self.nodes_explored,
        }
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    /// The two directions disagree; the reduction or a verifier is broken.
    #[error("inconsistent certificate: {reason}")]
    Inconsistent { reason: String },
}

fn inconsistent(reason: impl Into<String>) -> CertifyError {
    CertifyError::Inconsistent { reason: reason.into() }
}

/// Builds the instance for `formula` and certifies it.
pub fn certify_reduction(
    formula: &MonotoneFormula,
    options: &CertifyOptions,
) -> Result<EquivalenceReport, CertifyError> {
    let instance = build_from_formula(formula, &options.build)?;
    certify_instance(&instance, &options.search)
}

/// Certifies an already built instance.
pub fn certify_instance(
    instance: &ReductionInstance,
    search: &SearchOptions,
) -> Result<EquivalenceReport, CertifyError> {
    let points = instance.coordinates();
    let k = instance.budget;
    // the oracle runs on both sides, so caps apply uniformly
    let oracle = cover_within(&points, k, search)?;
    match sat_solve(&instance.formula) {
        Some(assignment) => {
            let witness = guillotine_witness(instance, &assignment)?;
            let cover = witness.cover;
            if cover.segments.len() != k {
                return Err(inconsistent(format!("witness cover has {} segments, expected {k}", cover.segments.len())));
            }
            if let Verdict::Reject(v) = verify_segment_cover(&points, &cover, k) {
                return Err(inconsistent(format!("witness cover rejected: {v}")));
            }
            let cuts = witness.cuts;
            if let Verdict::Reject(v) = verify_guillotine_sequence(&points, &cuts, k) {
                return Err(inconsistent(format!("witness cuts rejected: {v}")));
            }
            if oracle.result != SearchResult::Found {
                return Err(inconsistent(format!("satisfiable, but the oracle finds no cover of size {k}")));
            }
            Ok(EquivalenceReport {
                side: Side::Sat,
                budget: k,
                points: points.len(),
                assignment: Some(witness.assignment.values().to_vec()),
                rejected_covers: witness.rejected,
                cover: Some(cover),
                cuts: Some(cuts),
                oracle_result: oracle.result,
                nodes_explored: oracle.nodes_explored,
            })
        }
        None => {
            if let Some(cover) = oracle.cover {
                return Err(inconsistent(format!(
                    "unsatisfiable, but the oracle found a cover of size {}",
                    cover.segments.len()
                )));
            }
            Ok(EquivalenceReport {
                side: Side::Unsat,
                budget: k,
                points: points.len(),
                assignment: None,
                rejected_covers: 0,
                cover: None,
                cuts: None,
                oracle_result: oracle.result,
                nodes_explored: oracle.nodes_explored,
            })
        }
    }
}
