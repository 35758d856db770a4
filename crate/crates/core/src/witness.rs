//! From a satisfying assignment to `n m` disjoint segments, and from those
//! segments to `n m` ordered guillotine cuts.

use std::cmp::Reverse;

use thiserror::Error;

use crate::cover::{
    extend_to_guillotine, verify_guillotine_sequence, verify_segment_cover, CutSequence, SegmentCover, Verdict,
};
use crate::formula::{Assignment, Sign};
use crate::geom::{proper_intersection, segments_touch, Line, Point, Rational, Segment};
use crate::reduction::{Bundle, LineRole, ReductionInstance};

/// Up to this many variables the bundle-permutation fallback is tried.
pub const PERMUTATION_LIMIT: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("assignment has {got} values for {expected} variables")]
    AssignmentLength { expected: usize, got: usize },
    #[error("assignment falsifies clause {clause}")]
    UnsatisfiedAssignment { clause: usize },
    #[error("variable {variable} is not a true literal of clause {clause}")]
    FalseLiteral { clause: usize, variable: usize },
    #[error("extension of the segment serving clause {clause} touches segment {other}")]
    ExtensionCollision { clause: usize, other: usize },
    #[error("cover segment {segment} is not on a gadget line")]
    ForeignSegment { segment: usize },
    #[error("no cut order works: {reason}")]
    OrderingFailure { reason: String },
}

/// True selects the positive bundle.
pub fn bundle_choice(assignment: &Assignment) -> Vec<Bundle> {
    assignment.values().iter().map(|&v| if v { Bundle::Pos } else { Bundle::Neg }).collect()
}

fn hull(points: &[&Point]) -> Segment {
    let lo = points.iter().min().expect("non-empty");
    let hi = points.iter().max().expect("non-empty");
    Segment::new((*lo).clone(), (*hi).clone())
}

/// For each variable the `m` lines of its chosen bundle trimmed to their
/// gadget points, with one segment per clause extended to the clause point.
/// Each clause is served by its true literal of smallest index.
pub fn assignment_to_cover(
    instance: &ReductionInstance,
    assignment: &Assignment,
) -> Result<SegmentCover, WitnessError> {
    check_assignment(instance, assignment)?;
    let serving: Vec<usize> = instance
        .formula
        .clauses()
        .iter()
        .map(|clause| {
            *clause
                .vars
                .iter()
                .find(|&&v| assignment.value(v) == (clause.sign == Sign::Positive))
                .expect("clause is satisfied")
        })
        .collect();
    cover_with_literals(instance, assignment, &serving)
}

fn check_assignment(instance: &ReductionInstance, assignment: &Assignment) -> Result<(), WitnessError> {
    let formula = &instance.formula;
    let n = formula.variables();
    if assignment.len() != n {
        return Err(WitnessError::AssignmentLength { expected: n, got: assignment.len() });
    }
    if let Some(clause) = formula.first_falsified(assignment) {
        return Err(WitnessError::UnsatisfiedAssignment { clause });
    }
    Ok(())
}

/// Like [`assignment_to_cover`], with `serving[c]` naming the variable whose
/// edge is extended to clause `c`; it must be a true literal of that clause.
pub fn cover_with_literals(
    instance: &ReductionInstance,
    assignment: &Assignment,
    serving: &[usize],
) -> Result<SegmentCover, WitnessError> {
    check_assignment(instance, assignment)?;
    let formula = &instance.formula;
    let n = formula.variables();
    let choice = bundle_choice(assignment);

    let mut segments = Vec::with_capacity(instance.budget);
    // (variable, line index) -> position in `segments`
    let mut slot = vec![Vec::new(); n];
    for g in &instance.gadgets {
        let bundle = choice[g.variable - 1];
        for index in 0..g.lines(bundle).len() {
            slot[g.variable - 1].push(segments.len());
            segments.push(hull(&g.points_on(bundle, index)));
        }
    }

    let mut extended = Vec::new();
    for (ci, clause) in formula.clauses().iter().enumerate() {
        let v = serving.get(ci).copied().unwrap_or(0);
        if !clause.vars.contains(&v) || assignment.value(v) != (clause.sign == Sign::Positive) {
            return Err(WitnessError::FalseLiteral { clause: ci, variable: v });
        }
        let g = instance.gadget(v);
        let bundle = choice[v - 1];
        let index = g
            .lines(bundle)
            .iter()
            .position(|l| l.role == LineRole::ClauseEdge { clause: ci })
            .expect("every clause variable has an edge line");
        let si = slot[v - 1][index];
        let mut ends: Vec<&Point> = g.points_on(bundle, index);
        ends.push(instance.clause_point(ci));
        segments[si] = hull(&ends);
        extended.push((ci, si));
    }

    for &(clause, si) in &extended {
        if let Some(other) = (0..segments.len()).find(|&j| j != si && segments_touch(&segments[si], &segments[j])) {
            return Err(WitnessError::ExtensionCollision { clause, other });
        }
    }
    let cover = SegmentCover { segments };
    debug_assert!(verify_segment_cover(&instance.coordinates(), &cover, instance.budget).is_accept());
    Ok(cover)
}

struct Target {
    segment: Segment,
    line: Line,
    variable: usize,
    apex_x: Rational,
    intercept: Option<Rational>,
}

fn targets(instance: &ReductionInstance, cover: &SegmentCover) -> Result<Vec<Target>, WitnessError> {
    cover
        .segments
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let line = s.line().ok_or(WitnessError::ForeignSegment { segment: i })?;
            let entry = instance
                .catalogue
                .iter()
                .find(|c| c.line == line)
                .ok_or(WitnessError::ForeignSegment { segment: i })?;
            let apex = instance.gadget(entry.variable).apex(entry.bundle);
            Ok(Target {
                segment: s.clone(),
                intercept: line.x_intercept(),
                line,
                variable: entry.variable,
                apex_x: apex.x.clone(),
            })
        })
        .collect()
}

/// Cuts for `order`, failing when a target is clipped by an earlier cut.
fn cuts_in_order(ts: &[Target], order: &[usize]) -> Option<CutSequence> {
    let mut seq = CutSequence::default();
    for &i in order {
        let cut = extend_to_guillotine(&ts[i].line, &ts[i].segment, &seq).ok()?;
        seq.cuts.push(cut);
    }
    Some(seq)
}

/// Within a bundle: right to left by x-intercept.
fn bundle_order(ts: &[Target], variable: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..ts.len()).filter(|&i| ts[i].variable == variable).collect();
    idx.sort_by(|&a, &b| ts[b].intercept.cmp(&ts[a].intercept));
    idx
}

/// Bundles rightmost-first by apex x.
fn rightmost_first(ts: &[Target]) -> Vec<usize> {
    let mut vars: Vec<(Rational, usize)> = ts.iter().map(|t| (t.apex_x.clone(), t.variable)).collect();
    vars.sort_by(|a, b| b.cmp(a));
    vars.dedup();
    vars.iter().flat_map(|(_, v)| bundle_order(ts, *v)).collect()
}

/// After each bundle, every uncovered point must be off the bundle's lines.
fn side_separation(ts: &[Target], order: &[usize], points: &[Point]) -> bool {
    let mut covered = vec![false; points.len()];
    let mut k = 0;
    while k < order.len() {
        let v = ts[order[k]].variable;
        let end = order[k..].iter().position(|&i| ts[i].variable != v).map_or(order.len(), |e| k + e);
        for &i in &order[k..end] {
            for (pi, p) in points.iter().enumerate() {
                if ts[i].segment.contains(p) {
                    covered[pi] = true;
                }
            }
        }
        for &i in &order[k..end] {
            if points.iter().enumerate().any(|(pi, p)| !covered[pi] && ts[i].line.contains(p)) {
                return false;
            }
        }
        k = end;
    }
    true
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Repeatedly emits the highest-priority target whose maximal extension
/// properly crosses no target still waiting.
fn free_target_greedy(ts: &[Target], priority: &[usize]) -> Option<CutSequence> {
    let mut remaining = priority.to_vec();
    let mut seq = CutSequence::default();
    while !remaining.is_empty() {
        let pick = remaining.iter().enumerate().find_map(|(k, &i)| {
            let cut = extend_to_guillotine(&ts[i].line, &ts[i].segment, &seq).ok()?;
            let blocks = remaining.iter().any(|&j| j != i && proper_intersection(&cut, &ts[j].segment));
            (!blocks).then_some((k, cut))
        })?;
        remaining.remove(pick.0);
        seq.cuts.push(pick.1);
    }
    Some(seq)
}

/// Cut sequence with one cut per cover segment. Tries the rightmost-first
/// bundle order, then all bundle orders for small `n`, then a greedy over
/// targets that block nobody; every candidate is checked by the verifier.
pub fn cover_to_guillotine(instance: &ReductionInstance, cover: &SegmentCover) -> Result<CutSequence, WitnessError> {
    let ts = targets(instance, cover)?;
    let points = instance.coordinates();
    let budget = instance.budget;
    let valid = |seq: &CutSequence| {
        seq.cuts.len() == ts.len() && verify_guillotine_sequence(&points, seq, budget) == Verdict::Accept
    };

    let primary = rightmost_first(&ts);
    if side_separation(&ts, &primary, &points) {
        if let Some(seq) = cuts_in_order(&ts, &primary).filter(|s| valid(s)) {
            return Ok(seq);
        }
    }

    let mut variables: Vec<usize> = ts.iter().map(|t| t.variable).collect();
    variables.sort_by_key(|&v| Reverse(v));
    variables.dedup();
    if variables.len() <= PERMUTATION_LIMIT {
        for perm in permutations(&variables) {
            let order: Vec<usize> = perm.iter().flat_map(|&v| bundle_order(&ts, v)).collect();
            if let Some(seq) = cuts_in_order(&ts, &order).filter(|s| valid(s)) {
                return Ok(seq);
            }
        }
    }

    match free_target_greedy(&ts, &primary) {
        Some(seq) if valid(&seq) => Ok(seq),
        Some(_) => Err(WitnessError::OrderingFailure { reason: "greedy sequence rejected by the verifier".into() }),
        None => Err(WitnessError::OrderingFailure { reason: "every remaining target blocks another".into() }),
    }
}

/// Up to this many variables [`guillotine_witness`] may enumerate every
/// assignment.
pub const ENUMERATION_LIMIT: usize = 16;

/// A satisfying assignment together with a cover and cut sequence built
/// from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuillotineWitness {
    pub assignment: Assignment,
    /// `serving[c]` is the variable whose edge reaches clause `c`.
    pub serving: Vec<usize>,
    pub cover: SegmentCover,
    pub cuts: CutSequence,
    /// Covers that failed before this one.
    pub rejected: usize,
}

/// Every way to pick one true literal per clause, first choice = smallest
/// index.
fn serving_choices(instance: &ReductionInstance, assignment: &Assignment) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for clause in instance.formula.clauses() {
        let options: Vec<usize> =
            clause.vars.iter().copied().filter(|&v| assignment.value(v) == (clause.sign == Sign::Positive)).collect();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Some cover whose segments can be ordered into guillotine cuts.
///
/// For a fixed cover the cut order search in [`cover_to_guillotine`] is
/// complete: a target whose extension crosses no waiting target stays that
/// way as cuts are added, so a greedy failure means no order exists. Not
/// every satisfying assignment admits one, so this tries `preferred` first,
/// then every satisfying assignment in lexicographic order (false before
/// true, variable 1 first) when `n` is at most [`ENUMERATION_LIMIT`], and
/// every choice of serving literal for each.
pub fn guillotine_witness(
    instance: &ReductionInstance,
    preferred: &Assignment,
) -> Result<GuillotineWitness, WitnessError> {
    check_assignment(instance, preferred)?;
    let formula = &instance.formula;
    let n = formula.variables();
    let mut assignments = vec![preferred.clone()];
    if n <= ENUMERATION_LIMIT {
        for code in 0..1u32 << n {
            // variable 1 is the most significant bit
            let a = Assignment::new((0..n).map(|i| code >> (n - 1 - i) & 1 == 1).collect());
            if a != *preferred && formula.is_satisfied_by(&a) {
                assignments.push(a);
            }
        }
    }
    let mut rejected = 0;
    let mut last = None;
    for assignment in assignments {
        for serving in serving_choices(instance, &assignment) {
            let cover = match cover_with_literals(instance, &assignment, &serving) {
                Ok(c) => c,
                Err(e) => {
                    rejected += 1;
                    last = Some(e);
                    continue;
                }
            };
            match cover_to_guillotine(instance, &cover) {
                Ok(cuts) => return Ok(GuillotineWitness { assignment, serving, cover, cuts, rejected }),
                Err(e) => {
                    rejected += 1;
                    last = Some(e);
                }
            }
        }
    }
    Err(last.expect("the preferred assignment was tried"))
}
