//! Exact reduction laboratory for covering points with disjoint segments and
//! with guillotine cuts.
//!
//! A rectilinear planar monotone 3-SAT formula is turned into a point set
//! with exact rational coordinates whose optimal disjoint-segment cover has
//! `n m` segments iff the formula is satisfiable. The crate builds that
//! point set, constructs covers and cut sequences from satisfying
//! assignments, verifies them, and cross-checks everything with an
//! independent branch-and-bound search.

pub mod corpus;
pub mod cover;
pub mod formula;
pub mod geom;
pub mod oracle;
pub mod reduction;
pub mod svg;
pub mod witness;

pub use cover::{
    extend_to_guillotine, shorten_cuts, verify_guillotine_sequence, verify_segment_cover, CutSequence, SegmentCover,
    Verdict, Violation,
};
pub use formula::{sat_solve, validate, Assignment, Clause, FormulaSpec, MonotoneFormula, Sign};
pub use geom::{Line, Orientation, Point, Rational, Segment};
pub use reduction::{build_instance, BuildOptions, ReductionInstance};
pub use witness::{
    assignment_to_cover, cover_to_guillotine, cover_with_literals, guillotine_witness, GuillotineWitness,
};
