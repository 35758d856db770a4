//! Independent ground truth: an exhaustive minimum disjoint-segment cover
//! search, a bounded guillotine search over a finite line family, and the
//! equivalence certificate for a built reduction instance.

mod bits;
pub mod certify;
pub mod guillotine;
pub mod segments;

use serde::Serialize;
use thiserror::Error;

pub use certify::{certify_instance, certify_reduction, CertifyError, CertifyOptions, EquivalenceReport, Side};
pub use guillotine::{bounded_guillotine_search, GuillotineOutcome, GUILLOTINE_LIMIT_CAP, GUILLOTINE_POINT_CAP};
pub use segments::{
    candidates, cover_within, min_segment_cover, Candidate, SearchOptions, SegmentOutcome, DEFAULT_CAP,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{points} points exceed the cap of {cap}")]
    CapExceeded { points: usize, cap: usize },
    #[error("limit {limit} exceeds the cap of {cap}")]
    LimitExceeded { limit: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SearchResult {
    #[serde(rename = "FOUND")]
    Found,
    #[serde(rename = "NONE")]
    None,
    /// No sequence within the searched line family; not a proof.
    #[serde(rename = "NONE_IN_FAMILY")]
    NoneInFamily,
}

/// Which search produced a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Segments,
    Guillotine,
    Certify,
}

/// The `oracle-report.json` document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport<W> {
    pub mode: Mode,
    pub limit: usize,
    pub result: SearchResult,
    pub witness: Option<W>,
    pub nodes_explored: u64,
}

impl SegmentOutcome {
    pub fn report(&self) -> OracleReport<crate::cover::SegmentCover> {
        OracleReport {
            mode: Mode::Segments,
            limit: self.limit,
            result: self.result,
            witness: self.cover.clone(),
            nodes_explored: self.nodes_explored,
        }
    }
}

impl GuillotineOutcome {
    pub fn report(&self) -> OracleReport<crate::cover::CutSequence> {
        OracleReport {
            mode: Mode::Guillotine,
            limit: self.limit,
            result: self.result,
            witness: self.witness.clone(),
            nodes_explored: self.nodes_explored,
        }
    }
}
