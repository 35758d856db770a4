//! Variable gadgets: each variable point is split into two apexes, each apex
//! gets exactly `m` lines, and the `m^2` crossings become instance points.

use num_traits::{One, Signed, Zero};

use super::phase::DrawingSkeleton;
use super::{
    Bundle, BundleLine, CatalogueLine, InstancePoint, LineRole, PointTag, ReductionError, ReductionInstance,
    VariableGadget,
};
use crate::formula::{MonotoneFormula, Sign};
use crate::geom::{int, line_intersection, mul_mod, residue, sub_mod, Line, Point, Rational};

pub fn default_delta(formula: &MonotoneFormula) -> Rational {
    let m = formula.clause_count() as i64;
    let n = formula.variables() as i64;
    Rational::new(1.into(), (16 * m * m * n).into())
}

/// The negative apex for a positive apex at `(v, -delta)`: `(v + 2 delta /
/// axis, delta)`, so that the line joining the apexes has slope `axis`.
///
/// With a shared x, a positive and a negative clause point that end up
/// vertically aligned after shearing (mirrored clauses) put the crossings of
/// their edges in every gadget on one horizontal line. `axis` is kept steeper
/// than every positive line so crossings stay left of both apexes.
fn neg_apex(base: &Point, delta: &Rational, axis: &Rational) -> Point {
    Point::new(&base.x + int(2) * delta / axis, &base.y + delta)
}

fn axis_slope(pos_lines: &[BundleLine]) -> Rational {
    pos_lines.iter().map(|l| l.slope.clone()).min().unwrap_or_else(|| int(-1)) - int(1)
}

/// Lines through `apex` towards each clause point of `sign` containing `v`.
fn clause_edges(
    formula: &MonotoneFormula,
    skeleton: &DrawingSkeleton,
    v: usize,
    sign: Sign,
    apex: &Point,
) -> Result<Vec<BundleLine>, ReductionError> {
    let mut lines = Vec::new();
    for (ci, clause) in formula.clauses().iter().enumerate() {
        if clause.sign != sign || !clause.contains_var(v) {
            continue;
        }
        let target = &skeleton.clause_points[ci];
        let line = Line::through(apex, target).ok_or(ReductionError::SlopeSignViolation { clause: ci, variable: v })?;
        let slope = line.slope().ok_or(ReductionError::SlopeSignViolation { clause: ci, variable: v })?;
        let wrong_sign = match sign {
            Sign::Positive => !slope.is_negative(),
            Sign::Negative => !slope.is_positive(),
        };
        if wrong_sign {
            return Err(ReductionError::SlopeSignViolation { clause: ci, variable: v });
        }
        lines.push(BundleLine { line, slope, role: LineRole::ClauseEdge { clause: ci } });
    }
    Ok(lines)
}

/// A third line meets the pencils through two apexes in line pairs related
/// by a projective map that fixes the line joining the apexes. In the
/// coordinate `1 / (slope - axis)`, with `axis` the slope of that joining
/// line, the map is affine, so three crossings from distinct lines of both
/// bundles are collinear exactly when their coordinate pairs are. Checks
/// whether adding `new` to `grow` creates such a triple against `fixed`.
fn creates_transversal(grow: &[Rational], fixed: &[Rational], new: &Rational) -> bool {
    let res = |v: &Rational| residue(v);
    let (grow_r, fixed_r, new_r): (Vec<_>, Vec<_>, _) =
        (grow.iter().map(res).collect(), fixed.iter().map(res).collect(), res(new));
    let maybe_collinear =
        |a: (Option<u64>, Option<u64>), b: (Option<u64>, Option<u64>), c: (Option<u64>, Option<u64>)| match (a, b, c) {
            ((Some(a0), Some(a1)), (Some(b0), Some(b1)), (Some(c0), Some(c1))) => {
                mul_mod(sub_mod(b0, a0), sub_mod(c1, a1)) == mul_mod(sub_mod(b1, a1), sub_mod(c0, a0))
            }
            _ => true,
        };
    let collinear = |a: (&Rational, &Rational), b: (&Rational, &Rational), c: (&Rational, &Rational)| {
        (b.0 - a.0) * (c.1 - a.1) == (b.1 - a.1) * (c.0 - a.0)
    };
    for i1 in 0..grow.len() {
        for i2 in i1 + 1..grow.len() {
            for j0 in 0..fixed.len() {
                for j1 in 0..fixed.len() {
                    for j2 in 0..fixed.len() {
                        if j0 == j1 || j0 == j2 || j1 == j2 {
                            continue;
                        }
                        let filtered =
                            maybe_collinear((new_r, fixed_r[j0]), (grow_r[i1], fixed_r[j1]), (grow_r[i2], fixed_r[j2]));
                        if filtered && collinear((new, &fixed[j0]), (&grow[i1], &fixed[j1]), (&grow[i2], &fixed[j2])) {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

fn axis_coordinate(slope: &Rational, axis: &Rational) -> Option<Rational> {
    let d = slope - axis;
    (!d.is_zero()).then(|| d.recip())
}

fn axis_coordinates(lines: &[BundleLine], axis: &Rational) -> Vec<Rational> {
    lines.iter().filter_map(|l| axis_coordinate(&l.slope, axis)).collect()
}

/// Completes a bundle to `m` lines with fillers steeper than its clause
/// edges: candidate slopes `steepest -/+ j delta` for `j = 1, 2, ...`,
/// skipping any that would make three crossings collinear.
fn add_fillers(
    lines: &mut Vec<BundleLine>,
    other: &[Rational],
    sign: Sign,
    apex: &Point,
    axis: &Rational,
    delta: &Rational,
    m: usize,
) -> Result<(), ReductionError> {
    let (base, step) = match sign {
        Sign::Positive => (lines.iter().map(|l| l.slope.clone()).min().unwrap_or_else(|| int(-1)), -delta.clone()),
        Sign::Negative => (lines.iter().map(|l| l.slope.clone()).max().unwrap_or_else(|| int(1)), delta.clone()),
    };
    let mut coords = axis_coordinates(lines, axis);
    let mut j = 0i64;
    while lines.len() < m {
        j += 1;
        let slope = &base + &step * int(j);
        if sign == Sign::Positive && &slope <= axis {
            return Err(ReductionError::EpsilonTooLarge { reason: "delta leaves no room for positive fillers".into() });
        }
        let Some(u) = axis_coordinate(&slope, axis) else { continue };
        if creates_transversal(&coords, other, &u) || creates_transversal(other, &coords, &u) {
            continue;
        }
        let line = Line::with_direction(apex, &Rational::one(), &slope).expect("non-zero direction");
        coords.push(u);
        lines.push(BundleLine { line, slope, role: LineRole::Filler });
    }
    Ok(())
}

/// Assembles gadgets, instance points and the line catalogue for a sheared
/// skeleton, without auditing the result.
pub fn assemble(
    formula: &MonotoneFormula,
    skeleton: &DrawingSkeleton,
    delta: &Rational,
) -> Result<ReductionInstance, ReductionError> {
    let mut points: Vec<InstancePoint> = skeleton
        .clause_points
        .iter()
        .enumerate()
        .map(|(ci, p)| InstancePoint { point: p.clone(), tag: PointTag::Clause(ci) })
        .collect();
    let mut gadgets = Vec::with_capacity(formula.variables());
    let mut catalogue = Vec::new();

    for (vi, base) in skeleton.variable_points.iter().enumerate() {
        let v = vi + 1;
        let m = formula.clause_count();
        let pos_apex = Point::new(base.x.clone(), &base.y - delta);
        let mut pos_lines = clause_edges(formula, skeleton, v, Sign::Positive, &pos_apex)?;
        let axis = axis_slope(&pos_lines);
        let neg_apex = neg_apex(base, delta, &axis);
        let mut neg_lines = clause_edges(formula, skeleton, v, Sign::Negative, &neg_apex)?;
        let neg_coords = axis_coordinates(&neg_lines, &axis);
        add_fillers(&mut pos_lines, &neg_coords, Sign::Positive, &pos_apex, &axis, delta, m)?;
        let pos_coords = axis_coordinates(&pos_lines, &axis);
        add_fillers(&mut neg_lines, &pos_coords, Sign::Negative, &neg_apex, &axis, delta, m)?;

        let first = points.len();
        let mut crossings = Vec::with_capacity(pos_lines.len());
        for (r, pl) in pos_lines.iter().enumerate() {
            let mut row = Vec::with_capacity(neg_lines.len());
            for (c, nl) in neg_lines.iter().enumerate() {
                let x = line_intersection(&pl.line, &nl.line).expect("opposite slope signs are never parallel");
                points.push(InstancePoint { point: x.clone(), tag: PointTag::Gadget { variable: v, pos: r, neg: c } });
                row.push(x);
            }
            crossings.push(row);
        }
        let cols = neg_lines.len();
        for (bundle, lines) in [(Bundle::Pos, &pos_lines), (Bundle::Neg, &neg_lines)] {
            for (index, bl) in lines.iter().enumerate() {
                let mut incident: Vec<usize> = match bundle {
                    Bundle::Pos => (0..cols).map(|c| first + index * cols + c).collect(),
                    Bundle::Neg => (0..pos_lines.len()).map(|r| first + r * cols + index).collect(),
                };
                let clause = match bl.role {
                    LineRole::ClauseEdge { clause } => {
                        incident.insert(0, clause);
                        Some(clause)
                    }
                    LineRole::Filler => None,
                };
                catalogue.push(CatalogueLine {
                    line: bl.line.clone(),
                    variable: v,
                    bundle,
                    index,
                    clause,
                    points: incident,
                });
            }
        }
        gadgets.push(VariableGadget { variable: v, pos_apex, neg_apex, pos_lines, neg_lines, crossings });
    }

    let m = formula.clause_count();
    Ok(ReductionInstance {
        formula: formula.clone(),
        points,
        budget: formula.variables() * m,
        epsilon: skeleton.epsilon.clone(),
        delta: delta.clone(),
        retry: 0,
        gadgets,
        catalogue,
        skeleton: skeleton.clone(),
    })
}
