//! Formula to point set: the drawing phases, the variable gadgets, the final
//! instance `S` with budget `k = n m`, and the audit that guards the
//! collinearity structure the equivalence relies on.

pub mod audit;
pub mod gadget;
mod json;
pub mod phase;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{validate, FormulaError, FormulaSpec, MonotoneFormula};
use crate::geom::{bit_size, int, Line, Point, Rational, Segment};

pub use audit::{audit, AuditReport, AuditViolation};
pub use gadget::{assemble, default_delta};
pub use json::{InstanceFile, InstanceFileError};
pub use phase::{default_epsilon, phase1, phase2, DrawingSkeleton, Edge};

/// Attempts after the first one, each halving both `epsilon` and `delta`.
pub const DEFAULT_RETRIES: usize = 16;

/// Constant in the coordinate size bound
/// `bits <= COORDINATE_BITS_FACTOR * (ceil(log2(n+1)) + ceil(log2(m+1)) + retry)`.
pub const COORDINATE_BITS_FACTOR: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("epsilon too large: {reason}")]
    EpsilonTooLarge { reason: String },
    #[error("drawing edges (clause {}, variable {}) and (clause {}, variable {}) cross", first.0, first.1, second.0, second.1)]
    EdgesCross { first: (usize, usize), second: (usize, usize) },
    #[error("edge from clause {clause} to variable {variable} has the wrong slope sign after shearing")]
    SlopeSignViolation { clause: usize, variable: usize },
    #[error("audit failed with {} violation(s)", report.violations.len())]
    AuditFailure { report: AuditReport },
    #[error("coordinate uses {bits} bits, above the bound of {bound}")]
    CoordinateTooLarge { bits: u64, bound: u64 },
    #[error("construction failed after {attempts} attempts; last error: {last}")]
    ConstructionExhausted { attempts: usize, last: Box<ReductionError> },
}

/// Red is the positive bundle (apex below the axis, lines up to positive
/// clauses), blue the negative one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Bundle {
    #[serde(rename = "red")]
    Pos,
    #[serde(rename = "blue")]
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineRole {
    ClauseEdge { clause: usize },
    Filler,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleLine {
    pub line: Line,
    pub slope: Rational,
    pub role: LineRole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGadget {
    /// 1-indexed.
    pub variable: usize,
    /// Below the axis; not an instance point.
    pub pos_apex: Point,
    /// Above the axis; not an instance point.
    pub neg_apex: Point,
    pub pos_lines: Vec<BundleLine>,
    pub neg_lines: Vec<BundleLine>,
    /// `crossings[r][c]` is where positive line `r` meets negative line `c`.
    pub crossings: Vec<Vec<Point>>,
}

impl VariableGadget {
    pub fn apex(&self, bundle: Bundle) -> &Point {
        match bundle {
            Bundle::Pos => &self.pos_apex,
            Bundle::Neg => &self.neg_apex,
        }
    }

    pub fn lines(&self, bundle: Bundle) -> &[BundleLine] {
        match bundle {
            Bundle::Pos => &self.pos_lines,
            Bundle::Neg => &self.neg_lines,
        }
    }

    /// The gadget points on line `index` of `bundle`.
    pub fn points_on(&self, bundle: Bundle, index: usize) -> Vec<&Point> {
        match bundle {
            Bundle::Pos => self.crossings[index].iter().collect(),
            Bundle::Neg => self.crossings.iter().map(|row| &row[index]).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointTag {
    Clause(usize),
    Gadget { variable: usize, pos: usize, neg: usize },
}

impl fmt::Display for PointTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointTag::Clause(c) => write!(f, "clause:{c}"),
            PointTag::Gadget { variable, pos, neg } => write!(f, "gadget:{variable}:{pos}:{neg}"),
        }
    }
}

impl std::str::FromStr for PointTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("invalid tag {s:?}"));
        match parts.as_slice() {
            ["clause", c] => Ok(PointTag::Clause(num(c)?)),
            ["gadget", v, r, c] => Ok(PointTag::Gadget { variable: num(v)?, pos: num(r)?, neg: num(c)? }),
            _ => Err(format!("invalid tag {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstancePoint {
    pub point: Point,
    pub tag: PointTag,
}

/// A red or blue supporting line with the instance points it must carry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueLine {
    pub line: Line,
    pub variable: usize,
    pub bundle: Bundle,
    pub index: usize,
    pub clause: Option<usize>,
    /// Indices into the instance points, clause point first when present.
    pub points: Vec<usize>,
}

/// A segment of the gadget drawing: apex to clause point for clause edges,
/// apex to just past the furthest crossing for fillers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingSegment {
    pub variable: usize,
    pub bundle: Bundle,
    pub index: usize,
    pub segment: Segment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub formula: MonotoneFormula,
    /// Clause points by clause index, then gadget points by
    /// `(variable, positive line, negative line)`.
    pub points: Vec<InstancePoint>,
    /// `k = n m`.
    pub budget: usize,
    pub epsilon: Rational,
    pub delta: Rational,
    /// Index of the attempt that produced this instance.
    pub retry: usize,
    pub gadgets: Vec<VariableGadget>,
    pub catalogue: Vec<CatalogueLine>,
    /// The sheared drawing the gadgets were built on.
    pub skeleton: DrawingSkeleton,
}

impl ReductionInstance {
    pub fn coordinates(&self) -> Vec<Point> {
        self.points.iter().map(|p| p.point.clone()).collect()
    }

    pub fn clause_point(&self, clause: usize) -> &Point {
        &self.points[clause].point
    }

    pub fn gadget(&self, variable: usize) -> &VariableGadget {
        &self.gadgets[variable - 1]
    }

    pub fn catalogue_entry(&self, variable: usize, bundle: Bundle, index: usize) -> &CatalogueLine {
        self.catalogue
            .iter()
            .find(|c| c.variable == variable && c.bundle == bundle && c.index == index)
            .expect("every gadget line is catalogued")
    }

    pub fn drawing_segments(&self) -> Vec<DrawingSegment> {
        let mut out = Vec::new();
        for g in &self.gadgets {
            for bundle in [Bundle::Pos, Bundle::Neg] {
                let apex = g.apex(bundle);
                for (index, bl) in g.lines(bundle).iter().enumerate() {
                    let end = match bl.role {
                        LineRole::ClauseEdge { clause } => self.clause_point(clause).clone(),
                        LineRole::Filler => {
                            let far = g
                                .points_on(bundle, index)
                                .into_iter()
                                .min_by(|a, b| a.x.cmp(&b.x))
                                .cloned()
                                .unwrap_or_else(|| apex.clone());
                            // crossings sit left of the apex on every line
                            far.offset(&self.delta, &-Rational::one(), &-bl.slope.clone())
                        }
                    };
                    out.push(DrawingSegment {
                        variable: g.variable,
                        bundle,
                        index,
                        segment: Segment::new(apex.clone(), end),
                    });
                }
            }
        }
        out
    }

    /// Largest numerator or denominator bit length over all coordinates.
    pub fn max_coordinate_bits(&self) -> u64 {
        self.points.iter().flat_map(|p| [bit_size(&p.point.x), bit_size(&p.point.y)]).max().unwrap_or(0)
    }
}

fn ceil_log2(v: usize) -> u64 {
    (usize::BITS - (v.max(1) - 1).leading_zeros()) as u64
}

pub fn coordinate_bit_bound(n: usize, m: usize, retry: usize) -> u64 {
    COORDINATE_BITS_FACTOR * (ceil_log2(n + 1) + ceil_log2(m + 1) + retry as u64)
}

/// Gadgets on a sheared skeleton, audited.
pub fn build_gadgets(
    formula: &MonotoneFormula,
    skeleton: &DrawingSkeleton,
    delta: &Rational,
) -> Result<ReductionInstance, ReductionError> {
    let instance = assemble(formula, skeleton, delta)?;
    let report = audit(&instance);
    if report.passed() {
        Ok(instance)
    } else {
        Err(ReductionError::AuditFailure { report })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub retries: usize,
    /// Starting epsilon; defaults to `1/m^2`.
    pub epsilon: Option<Rational>,
    /// Starting apex offset; defaults to `1/(16 m^2 n)`.
    pub delta: Option<Rational>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { retries: DEFAULT_RETRIES, epsilon: None, delta: None }
    }
}

fn halved(value: &Rational, times: usize) -> Rational {
    value / int(1i64 << times.min(62))
}

/// Validate, draw, shear, build gadgets, audit; retrying with halved
/// `epsilon` and `delta` on recoverable failures.
pub fn build_instance(spec: &FormulaSpec, options: &BuildOptions) -> Result<ReductionInstance, ReductionError> {
    let formula = validate(spec)?;
    build_from_formula(&formula, options)
}

pub fn build_from_formula(
    formula: &MonotoneFormula,
    options: &BuildOptions,
) -> Result<ReductionInstance, ReductionError> {
    let epsilon0 = options.epsilon.clone().unwrap_or_else(|| default_epsilon(formula));
    let delta0 = options.delta.clone().unwrap_or_else(|| default_delta(formula));
    debug_assert!(!epsilon0.is_zero() && !delta0.is_zero());

    let mut last = None;
    for retry in 0..=options.retries {
        let epsilon = halved(&epsilon0, retry);
        let delta = halved(&delta0, retry);
        let attempt = phase1(formula, &epsilon)
            .and_then(|s| phase2(&s, formula))
            .and_then(|s| build_gadgets(formula, &s, &delta));
        match attempt {
            Ok(mut instance) => {
                instance.retry = retry;
                let bits = instance.max_coordinate_bits();
                let bound = coordinate_bit_bound(formula.variables(), formula.clause_count(), retry);
                if bits > bound {
                    return Err(ReductionError::CoordinateTooLarge { bits, bound });
                }
                return Ok(instance);
            }
            Err(e @ ReductionError::SlopeSignViolation { .. }) => return Err(e),
            Err(e) => last = Some(e),
        }
    }
    Err(ReductionError::ConstructionExhausted {
        attempts: options.retries + 1,
        last: Box::new(last.expect("at least one attempt")),
    })
}

#[cfg(test)]
mod tests;
