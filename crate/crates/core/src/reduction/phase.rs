//! The straight-line drawing of a formula: variables on the x-axis, clause
//! points above (positive) or below (negative), and the shear that makes every
//! top edge slope down to the right and every bottom edge slope up.

use num_traits::{Signed, Zero};

use super::ReductionError;
use crate::formula::{MonotoneFormula, Sign};
use crate::geom::{int, proper_intersection, ratio, shear, Point, Rational, Segment};

/// Shear factor applied above the axis; the negated factor is used below.
pub fn top_shear() -> Rational {
    ratio(-5, 4)
}

/// Every edge's absolute slope must exceed this before shearing.
pub fn slope_margin() -> Rational {
    ratio(4, 5)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub clause: usize,
    pub variable: usize,
    /// From the clause point to the variable point.
    pub segment: Segment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawingSkeleton {
    /// Variable `v` is at index `v - 1`.
    pub variable_points: Vec<Point>,
    /// By clause index.
    pub clause_points: Vec<Point>,
    pub edges: Vec<Edge>,
    pub epsilon: Rational,
    pub sheared: bool,
}

impl DrawingSkeleton {
    fn rebuild_edges(&mut self, formula: &MonotoneFormula) {
        self.edges = formula
            .clauses()
            .iter()
            .enumerate()
            .flat_map(|(ci, clause)| {
                let from = &self.clause_points[ci];
                let variables = &self.variable_points;
                clause.vars.iter().map(move |&v| Edge {
                    clause: ci,
                    variable: v,
                    segment: Segment::new(from.clone(), variables[v - 1].clone()),
                })
            })
            .collect();
    }

    fn first_crossing(&self) -> Option<(usize, usize)> {
        for j in 0..self.edges.len() {
            for i in 0..j {
                if proper_intersection(&self.edges[i].segment, &self.edges[j].segment) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// The common height of the level-`h` clauses on one side: the widest span
/// at that level, lowered by `epsilon * h`.
fn level_heights(formula: &MonotoneFormula, sign: Sign, epsilon: &Rational) -> Vec<Rational> {
    let clauses: Vec<_> = formula.clauses().iter().filter(|c| c.sign == sign).collect();
    let depth = clauses.iter().map(|c| c.level + 1).max().unwrap_or(0);
    (0..depth)
        .map(|h| {
            let widest = clauses.iter().filter(|c| c.level == h).map(|c| c.span()).max().unwrap_or(0);
            int(widest as i64) - epsilon * int(h as i64)
        })
        .collect()
}

pub fn default_epsilon(formula: &MonotoneFormula) -> Rational {
    let m = formula.clause_count() as i64;
    ratio(1, m * m)
}

/// Places variable `i` at `(i, 0)` and each clause at the midpoint of its
/// extreme variables, at its level's height (mirrored for negative clauses).
pub fn phase1(formula: &MonotoneFormula, epsilon: &Rational) -> Result<DrawingSkeleton, ReductionError> {
    let above = level_heights(formula, Sign::Positive, epsilon);
    let below = level_heights(formula, Sign::Negative, epsilon);
    let clause_points = formula
        .clauses()
        .iter()
        .map(|c| {
            let x = ratio((c.first() + c.last()) as i64, 2);
            let y = match c.sign {
                Sign::Positive => above[c.level].clone(),
                Sign::Negative => -below[c.level].clone(),
            };
            Point::new(x, y)
        })
        .collect();
    let mut skeleton = DrawingSkeleton {
        variable_points: (1..=formula.variables()).map(|i| Point::from_ints(i as i64, 0)).collect(),
        clause_points,
        edges: Vec::new(),
        epsilon: epsilon.clone(),
        sheared: false,
    };
    skeleton.rebuild_edges(formula);

    for (side, heights) in [(Sign::Positive, &above), (Sign::Negative, &below)] {
        for h in 1..heights.len() {
            if heights[h] >= heights[h - 1] || !heights[h].is_positive() {
                return Err(ReductionError::EpsilonTooLarge {
                    reason: format!("{side:?} level {h} is not strictly below level {}", h - 1),
                });
            }
        }
    }
    let margin = slope_margin();
    for edge in &skeleton.edges {
        let s = &edge.segment;
        let dx = (&s.b.x - &s.a.x).abs();
        let dy = (&s.b.y - &s.a.y).abs();
        if dy <= &margin * &dx {
            return Err(ReductionError::EpsilonTooLarge {
                reason: format!(
                    "edge from clause {} to variable {} has slope magnitude at most 4/5",
                    edge.clause, edge.variable
                ),
            });
        }
    }
    if let Some((i, j)) = skeleton.first_crossing() {
        let (a, b) = (&skeleton.edges[i], &skeleton.edges[j]);
        return Err(ReductionError::EdgesCross { first: (a.clause, a.variable), second: (b.clause, b.variable) });
    }
    Ok(skeleton)
}

/// Shears the top half by `-5/4` and the bottom half by `+5/4`.
pub fn phase2(skeleton: &DrawingSkeleton, formula: &MonotoneFormula) -> Result<DrawingSkeleton, ReductionError> {
    let factor = top_shear();
    let map = |p: &Point| {
        if p.y.is_positive() {
            shear(p, &factor)
        } else if p.y.is_negative() {
            shear(p, &-factor.clone())
        } else {
            p.clone()
        }
    };
    let mut out = DrawingSkeleton {
        variable_points: skeleton.variable_points.iter().map(map).collect(),
        clause_points: skeleton.clause_points.iter().map(map).collect(),
        edges: Vec::new(),
        epsilon: skeleton.epsilon.clone(),
        sheared: true,
    };
    out.rebuild_edges(formula);

    for edge in &out.edges {
        // segment runs clause -> variable; top edges must fall to the right,
        // bottom edges rise to the right
        let (c, v) = (&edge.segment.a, &edge.segment.b);
        let dx = &v.x - &c.x;
        let dy = &v.y - &c.y;
        let slope_ok = !dx.is_zero() && (dy.is_negative() == c.y.is_positive()) && dx.is_positive();
        if !slope_ok {
            return Err(ReductionError::SlopeSignViolation { clause: edge.clause, variable: edge.variable });
        }
    }
    if let Some((i, j)) = out.first_crossing() {
        let (a, b) = (&out.edges[i], &out.edges[j]);
        return Err(ReductionError::EdgesCross { first: (a.clause, a.variable), second: (b.clause, b.variable) });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{validate, ClauseSpec, FormulaSpec};

    fn formula(variables: usize, clauses: &[(Sign, &[usize])]) -> MonotoneFormula {
        validate(&FormulaSpec {
            variables,
            clauses: clauses
                .iter()
                .map(|(sign, vars)| ClauseSpec::Monotone { sign: *sign, vars: vars.to_vec() })
                .collect(),
        })
        .unwrap()
    }

    fn pt(x: Rational, y: Rational) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn phase1_two_nested_positive_clauses() {
        let f = formula(3, &[(Sign::Positive, &[1, 3]), (Sign::Positive, &[1, 2])]);
        let eps = default_epsilon(&f);
        assert_eq!(eps, ratio(1, 4));
        let s = phase1(&f, &eps).unwrap();
        assert_eq!(s.clause_points[0], pt(int(2), int(2)));
        assert_eq!(s.clause_points[1], pt(ratio(3, 2), ratio(3, 4)));
        assert_eq!(s.variable_points[2], Point::from_ints(3, 0));
        assert_eq!(s.edges.len(), 4);
    }

    #[test]
    fn phase1_single_clause_ignores_epsilon() {
        let f = formula(2, &[(Sign::Positive, &[1, 2])]);
        let s = phase1(&f, &ratio(1, 3)).unwrap();
        assert_eq!(s.clause_points[0], pt(ratio(3, 2), int(1)));
    }

    #[test]
    fn phase1_negative_clause_is_mirrored() {
        let f = formula(3, &[(Sign::Positive, &[1, 3]), (Sign::Positive, &[1, 2]), (Sign::Negative, &[1, 3])]);
        let s = phase1(&f, &ratio(1, 4)).unwrap();
        assert_eq!(s.clause_points[2], pt(int(2), int(-2)));
    }

    #[test]
    fn phase1_rejects_huge_epsilon() {
        let f = formula(3, &[(Sign::Positive, &[1, 3]), (Sign::Positive, &[1, 2])]);
        assert!(matches!(phase1(&f, &int(1)), Err(ReductionError::EpsilonTooLarge { .. })));
    }

    #[test]
    fn phase1_detects_wide_inner_level() {
        // a level-1 clause far wider than its sibling lifts the sibling
        // above the outer clause's edge
        let f = formula(10, &[(Sign::Positive, &[1, 10]), (Sign::Positive, &[2, 3]), (Sign::Positive, &[4, 9])]);
        assert!(matches!(phase1(&f, &default_epsilon(&f)), Err(ReductionError::EdgesCross { .. })));
    }

    #[test]
    fn phase2_shears_each_half() {
        let f = formula(3, &[(Sign::Positive, &[1, 3]), (Sign::Positive, &[1, 2]), (Sign::Negative, &[1, 3])]);
        let s = phase2(&phase1(&f, &ratio(1, 4)).unwrap(), &f).unwrap();
        assert_eq!(s.clause_points[0], pt(ratio(-1, 2), int(2)));
        assert_eq!(s.clause_points[2], pt(ratio(-1, 2), int(-2)));
        assert_eq!(s.variable_points[2], Point::from_ints(3, 0));
        assert!(s.sheared);
    }
}
