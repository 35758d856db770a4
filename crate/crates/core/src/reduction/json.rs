//! `instance.json`.

use serde::{Deserialize, Serialize};

use super::{assemble, phase1, phase2, Bundle, ReductionError, ReductionInstance};
use crate::formula::{validate, FormulaSpec};
use crate::geom::{rational_text, Point, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    #[serde(with = "rational_text")]
    pub x: Rational,
    #[serde(with = "rational_text")]
    pub y: Rational,
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetEntry {
    pub variable: usize,
    pub pos_apex: Point,
    pub neg_apex: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEntry {
    #[serde(with = "rational_text")]
    pub a: Rational,
    #[serde(with = "rational_text")]
    pub b: Rational,
    #[serde(with = "rational_text")]
    pub c: Rational,
    pub bundle: Bundle,
    pub variable: usize,
    pub index: usize,
    pub clause: Option<usize>,
    /// Expected incident instance points.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub formula: FormulaSpec,
    pub points: Vec<PointEntry>,
    pub k: usize,
    #[serde(with = "rational_text")]
    pub epsilon: Rational,
    #[serde(with = "rational_text")]
    pub delta: Rational,
    pub retry: usize,
    pub gadgets: Vec<GadgetEntry>,
    pub lines: Vec<LineEntry>,
}

impl From<&ReductionInstance> for InstanceFile {
    fn from(inst: &ReductionInstance) -> Self {
        InstanceFile {
            formula: inst.formula.to_spec(),
            points: inst
                .points
                .iter()
                .map(|p| PointEntry { x: p.point.x.clone(), y: p.point.y.clone(), tag: p.tag.to_string() })
                .collect(),
            k: inst.budget,
            epsilon: inst.epsilon.clone(),
            delta: inst.delta.clone(),
            retry: inst.retry,
            gadgets: inst
                .gadgets
                .iter()
                .map(|g| GadgetEntry {
                    variable: g.variable,
                    pos_apex: g.pos_apex.clone(),
                    neg_apex: g.neg_apex.clone(),
                })
                .collect(),
            lines: inst
                .catalogue
                .iter()
                .map(|c| {
                    let (a, b, cc) = c.line.coefficients();
                    LineEntry {
                        a,
                        b,
                        c: cc,
                        bundle: c.bundle,
                        variable: c.variable,
                        index: c.index,
                        clause: c.clause,
                        points: c.points.clone(),
                    }
                })
                .collect(),
        }
    }
}

impl InstanceFile {
    pub fn coordinates(&self) -> Vec<Point> {
        self.points.iter().map(|p| Point::new(p.x.clone(), p.y.clone())).collect()
    }

    /// Rebuilds the full instance from the formula, `epsilon` and `delta`,
    /// and checks that it reproduces this file exactly.
    pub fn to_instance(&self) -> Result<ReductionInstance, InstanceFileError> {
        let formula = validate(&self.formula).map_err(ReductionError::from)?;
        let skeleton = phase2(&phase1(&formula, &self.epsilon)?, &formula)?;
        let mut instance = assemble(&formula, &skeleton, &self.delta)?;
        instance.retry = self.retry;
        if InstanceFile::from(&instance) != *self {
            return Err(InstanceFileError::Inconsistent);
        }
        Ok(instance)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceFileError {
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error("instance file does not match the instance its formula, epsilon and delta produce")]
    Inconsistent,
}
