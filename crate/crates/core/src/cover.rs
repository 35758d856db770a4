//! Disjoint-segment covers and ordered guillotine cut sequences: the exact
//! verifiers, maximal extension of a cut, and shortening cuts into a cover.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{line_intersection, proper_intersection, segments_touch, Line, Point, Rational, Segment};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SegmentCover {
    pub segments: Vec<Segment>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CutSequence {
    pub cuts: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
struct CoverSegmentJson {
    a: Point,
    b: Point,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    unbounded_a: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    unbounded_b: bool,
}

#[derive(Serialize, Deserialize)]
struct CoverJson {
    segments: Vec<CoverSegmentJson>,
}

impl Serialize for SegmentCover {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CoverJson {
            segments: self
                .segments
                .iter()
                .map(|g| CoverSegmentJson {
                    a: g.a.clone(),
                    b: g.b.clone(),
                    unbounded_a: g.unbounded_a,
                    unbounded_b: g.unbounded_b,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SegmentCover {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = CoverJson::deserialize(d)?;
        Ok(SegmentCover {
            segments: json
                .segments
                .into_iter()
                .map(|g| Segment::with_ends(g.a, g.b, g.unbounded_a, g.unbounded_b))
                .collect(),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct CutJson {
    a: Point,
    b: Point,
    unbounded_a: bool,
    unbounded_b: bool,
}

#[derive(Serialize, Deserialize)]
struct CutsJson {
    cuts: Vec<CutJson>,
}

impl Serialize for CutSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CutsJson {
            cuts: self
                .cuts
                .iter()
                .map(|c| CutJson {
                    a: c.a.clone(),
                    b: c.b.clone(),
                    unbounded_a: c.unbounded_a,
                    unbounded_b: c.unbounded_b,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CutSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = CutsJson::deserialize(d)?;
        Ok(CutSequence {
            cuts: json.cuts.into_iter().map(|c| Segment::with_ends(c.a, c.b, c.unbounded_a, c.unbounded_b)).collect(),
        })
    }
}

/// Which end of a cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum End {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Violation {
    /// A cover segment with an unbounded end.
    UnboundedSegment {
        segment: usize,
    },
    /// A cut whose two defining points coincide.
    DegenerateCut {
        cut: usize,
    },
    Uncovered {
        point: usize,
    },
    /// Two cover segments share a point.
    NotDisjoint {
        first: usize,
        second: usize,
    },
    /// Cut `second` properly intersects the earlier cut `first`.
    ProperIntersection {
        first: usize,
        second: usize,
    },
    /// A bounded end of `cut` is not blocked by any earlier cut.
    NotMaximal {
        cut: usize,
        end: End,
    },
    OverBudget {
        size: usize,
        budget: usize,
    },
}

impl Violation {
    pub fn code(&self) -> &'static str {
        match self {
            Violation::UnboundedSegment { .. } => "UNBOUNDED_SEGMENT",
            Violation::DegenerateCut { .. } => "DEGENERATE_CUT",
            Violation::Uncovered { .. } => "UNCOVERED",
            Violation::NotDisjoint { .. } => "NOT_DISJOINT",
            Violation::ProperIntersection { .. } => "PROPER_INTERSECTION",
            Violation::NotMaximal { .. } => "NOT_MAXIMAL",
            Violation::OverBudget { .. } => "OVER_BUDGET",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnboundedSegment { segment } => write!(f, "segment {segment} is unbounded"),
            Violation::DegenerateCut { cut } => write!(f, "cut {cut} is degenerate"),
            Violation::Uncovered { point } => write!(f, "point {point} is not covered"),
            Violation::NotDisjoint { first, second } => write!(f, "segments {first} and {second} share a point"),
            Violation::ProperIntersection { first, second } => {
                write!(f, "cut {second} properly intersects earlier cut {first}")
            }
            Violation::NotMaximal { cut, end } => {
                write!(f, "end {end:?} of cut {cut} is not blocked by an earlier cut")
            }
            Violation::OverBudget { size, budget } => write!(f, "{size} segments exceed the budget of {budget}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(Violation),
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Accept => None,
            Verdict::Reject(v) => Some(v),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        match self {
            Verdict::Accept => map.serialize_entry("verdict", "ACCEPT")?,
            Verdict::Reject(v) => {
                map.serialize_entry("verdict", "REJECT")?;
                map.serialize_entry("violation", v)?;
            }
        }
        map.end()
    }
}

fn first_uncovered(points: &[Point], segments: &[Segment]) -> Option<usize> {
    points.iter().position(|p| !segments.iter().any(|s| s.contains(p)))
}

/// Checks, in order: bounded segments, coverage, pairwise disjointness
/// (closed sets), budget. Witnesses are the smallest offending indices.
pub fn verify_segment_cover(points: &[Point], cover: &SegmentCover, budget: usize) -> Verdict {
    let segs = &cover.segments;
    if let Some(segment) = segs.iter().position(|s| !s.is_bounded()) {
        return Verdict::Reject(Violation::UnboundedSegment { segment });
    }
    if let Some(point) = first_uncovered(points, segs) {
        return Verdict::Reject(Violation::Uncovered { point });
    }
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            if segments_touch(&segs[i], &segs[j]) {
                return Verdict::Reject(Violation::NotDisjoint { first: i, second: j });
            }
        }
    }
    if segs.len() > budget {
        return Verdict::Reject(Violation::OverBudget { size: segs.len(), budget });
    }
    Verdict::Accept
}

/// Whether `p` is a point past which `cut` cannot be extended: some earlier
/// cut on a different line has `p` in its relative interior.
fn blocked(p: &Point, line: &Line, earlier: &[Segment]) -> bool {
    earlier.iter().any(|c| c.line().is_some_and(|l| l != *line) && c.contains_interior(p))
}

/// Checks, in order: non-degenerate cuts; then cut by cut, no proper
/// intersection with an earlier cut and both bounded ends blocked; then
/// coverage and budget.
pub fn verify_guillotine_sequence(points: &[Point], seq: &CutSequence, budget: usize) -> Verdict {
    let cuts = &seq.cuts;
    if let Some(cut) = cuts.iter().position(Segment::is_degenerate) {
        return Verdict::Reject(Violation::DegenerateCut { cut });
    }
    for (i, cut) in cuts.iter().enumerate() {
        let earlier = &cuts[..i];
        if let Some(first) = earlier.iter().position(|c| proper_intersection(c, cut)) {
            return Verdict::Reject(Violation::ProperIntersection { first, second: i });
        }
        let line = cut.line().expect("non-degenerate");
        for (end, p, unbounded) in [(End::A, &cut.a, cut.unbounded_a), (End::B, &cut.b, cut.unbounded_b)] {
            if !unbounded && !blocked(p, &line, earlier) {
                return Verdict::Reject(Violation::NotMaximal { cut: i, end });
            }
        }
    }
    if let Some(point) = first_uncovered(points, cuts) {
        return Verdict::Reject(Violation::Uncovered { point });
    }
    if cuts.len() > budget {
        return Verdict::Reject(Violation::OverBudget { size: cuts.len(), budget });
    }
    Verdict::Accept
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtendError {
    #[error("target does not lie on the given line")]
    TargetOffLine,
    #[error("earlier cut {cut} properly crosses the target")]
    TargetBlocked { cut: usize },
    #[error("earlier cut {cut} lies on the same line and overlaps the extension")]
    CollinearObstruction { cut: usize },
}

/// The maximal piece of `line` containing `target` that properly crosses no
/// cut of `previous`. Ends are bounded exactly at blocking crossings.
pub fn extend_to_guillotine(line: &Line, target: &Segment, previous: &CutSequence) -> Result<Segment, ExtendError> {
    if !line.contains(&target.a) || !line.contains(&target.b) {
        return Err(ExtendError::TargetOffLine);
    }
    let origin = target.a.clone();
    let (dx, dy) = if target.is_degenerate() { line.direction() } else { target.direction() };
    let at = |t: &Rational| origin.offset(t, &dx, &dy);
    let param = |p: &Point| {
        let (px, py) = (&p.x - &origin.x, &p.y - &origin.y);
        (px * &dx + py * &dy) / (&dx * &dx + &dy * &dy)
    };
    // target occupies [t0, t1] (None = unbounded)
    let t0 = (!target.unbounded_a).then(Rational::zero);
    let t1 = if target.is_degenerate() { Some(Rational::zero()) } else { (!target.unbounded_b).then(Rational::one) };

    let mut lo: Option<Rational> = None;
    let mut hi: Option<Rational> = None;
    for (ci, cut) in previous.cuts.iter().enumerate() {
        let Some(cl) = cut.line() else { continue };
        if cl == *line {
            continue;
        }
        let Some(x) = line_intersection(&cl, line) else { continue };
        if !cut.contains_interior(&x) {
            continue;
        }
        let t = param(&x);
        let below_end = t0.as_ref().is_some_and(|t0| t <= *t0);
        let above_end = t1.as_ref().is_some_and(|t1| t >= *t1);
        if below_end && above_end {
            // degenerate target sitting on a blocker
            return Err(ExtendError::TargetBlocked { cut: ci });
        }
        if below_end {
            if lo.as_ref().is_none_or(|lo| t > *lo) {
                lo = Some(t);
            }
        } else if above_end {
            if hi.as_ref().is_none_or(|hi| t < *hi) {
                hi = Some(t);
            }
        } else {
            return Err(ExtendError::TargetBlocked { cut: ci });
        }
    }

    let result = match (&lo, &hi) {
        (Some(lo), Some(hi)) => Segment::new(at(lo), at(hi)),
        (Some(lo), None) => {
            let reference =
                if t1.is_some() && !target.is_degenerate() { target.b.clone() } else { at(&(lo + Rational::one())) };
            Segment::with_ends(at(lo), reference, false, true)
        }
        (None, Some(hi)) => {
            let reference =
                if t0.is_some() && !target.is_degenerate() { target.a.clone() } else { at(&(hi - Rational::one())) };
            Segment::with_ends(reference, at(hi), true, false)
        }
        (None, None) => {
            let b = if target.is_degenerate() { at(&Rational::one()) } else { target.b.clone() };
            Segment::full_line(origin.clone(), b)
        }
    };
    if let Some(ci) = previous.cuts.iter().position(|c| proper_intersection(c, &result)) {
        return Err(ExtendError::CollinearObstruction { cut: ci });
    }
    Ok(result)
}

/// Trims each cut to the hull of the points assigned to it (lowest-index
/// cut containing the point), drops empty cuts, and moves a point shared by
/// two trimmed segments to the one whose interior contains it.
pub fn shorten_cuts(points: &[Point], seq: &CutSequence) -> SegmentCover {
    let cuts = &seq.cuts;
    let mut owner: Vec<Option<usize>> = points.iter().map(|p| cuts.iter().position(|c| c.contains(p))).collect();

    let hull = |ci: usize, owner: &[Option<usize>]| -> Option<Segment> {
        let cut = &cuts[ci];
        let mine: Vec<&Point> = (0..points.len()).filter(|&i| owner[i] == Some(ci)).map(|i| &points[i]).collect();
        let lo = mine.iter().min_by(|a, b| cut.param(a).cmp(&cut.param(b)))?;
        let hi = mine.iter().max_by(|a, b| cut.param(a).cmp(&cut.param(b)))?;
        Some(Segment::new((*lo).clone(), (*hi).clone()))
    };

    // each pass moves a point out of a hull where it is an endpoint into a
    // hull that contains it in its interior; bounded by the point count
    for _ in 0..=points.len() {
        let hulls: Vec<Option<Segment>> = (0..cuts.len()).map(|ci| hull(ci, &owner)).collect();
        let mut moved = false;
        'pairs: for i in 0..cuts.len() {
            let Some(hi) = &hulls[i] else { continue };
            for j in i + 1..cuts.len() {
                let Some(hj) = &hulls[j] else { continue };
                if !segments_touch(hi, hj) {
                    continue;
                }
                for (pi, p) in points.iter().enumerate() {
                    let (to, target) = match owner[pi] {
                        Some(o) if o == i && hj.contains(p) => (j, hj),
                        Some(o) if o == j && hi.contains(p) => (i, hi),
                        _ => continue,
                    };
                    if target.contains_interior(p) {
                        owner[pi] = Some(to);
                        moved = true;
                        break 'pairs;
                    }
                }
            }
        }
        if !moved {
            break;
        }
    }

    SegmentCover { segments: (0..cuts.len()).filter_map(|ci| hull(ci, &owner)).collect() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{int, ratio};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1))
    }

    fn line(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::full_line(p(a.0, a.1), p(b.0, b.1))
    }

    fn grid() -> Vec<Point> {
        (0..3).flat_map(|y| (0..3).map(move |x| p(x, y))).collect()
    }

    fn rows() -> CutSequence {
        CutSequence { cuts: (0..3).map(|y| line((0, y), (1, y))).collect() }
    }

    #[test]
    fn cover_examples() {
        let cover = SegmentCover { segments: vec![seg((0, 0), (1, 0))] };
        assert_eq!(verify_segment_cover(&[p(0, 0), p(1, 0)], &cover, 1), Verdict::Accept);
        assert_eq!(
            verify_segment_cover(&[p(0, 0), p(0, 1)], &cover, 1),
            Verdict::Reject(Violation::Uncovered { point: 1 })
        );
    }

    #[test]
    fn cover_rejections_in_order() {
        let pts = [p(0, 0), p(1, 0), p(2, 0)];
        let touching = SegmentCover { segments: vec![seg((0, 0), (1, 0)), seg((1, 0), (2, 0))] };
        assert_eq!(
            verify_segment_cover(&pts, &touching, 5),
            Verdict::Reject(Violation::NotDisjoint { first: 0, second: 1 })
        );
        let two = SegmentCover { segments: vec![seg((0, 0), (0, 0)), seg((1, 0), (2, 0))] };
        assert_eq!(verify_segment_cover(&pts, &two, 2), Verdict::Accept);
        assert_eq!(verify_segment_cover(&pts, &two, 1), Verdict::Reject(Violation::OverBudget { size: 2, budget: 1 }));
        let unbounded = SegmentCover { segments: vec![line((0, 0), (1, 0))] };
        assert_eq!(
            verify_segment_cover(&pts, &unbounded, 1),
            Verdict::Reject(Violation::UnboundedSegment { segment: 0 })
        );
    }

    #[test]
    fn guillotine_examples() {
        let pts = [p(0, 0), p(1, 0), p(2, 0)];
        let full = CutSequence { cuts: vec![line((0, 0), (1, 0))] };
        assert_eq!(verify_guillotine_sequence(&pts, &full, 1), Verdict::Accept);

        let bounded = CutSequence { cuts: vec![seg((0, 0), (1, 0))] };
        assert_eq!(
            verify_guillotine_sequence(&pts[..2], &bounded, 1),
            Verdict::Reject(Violation::NotMaximal { cut: 0, end: End::A })
        );
        assert_eq!(verify_guillotine_sequence(&grid(), &rows(), 3), Verdict::Accept);
        assert!(matches!(
            verify_guillotine_sequence(&grid(), &rows(), 2).violation(),
            Some(Violation::OverBudget { .. })
        ));
    }

    #[test]
    fn guillotine_crossing_and_degenerate() {
        let crossing = CutSequence { cuts: vec![line((0, 0), (1, 0)), line((0, -1), (0, 1))] };
        assert_eq!(
            verify_guillotine_sequence(&[], &crossing, 2),
            Verdict::Reject(Violation::ProperIntersection { first: 0, second: 1 })
        );
        let degenerate = CutSequence { cuts: vec![seg((1, 1), (1, 1))] };
        assert_eq!(
            verify_guillotine_sequence(&[], &degenerate, 1),
            Verdict::Reject(Violation::DegenerateCut { cut: 0 })
        );
    }

    #[test]
    fn blocked_halfline_is_maximal() {
        let seq = CutSequence {
            cuts: vec![
                line((0, 0), (0, 1)),
                Segment::with_ends(p(0, 0), p(1, 0), false, true),
                // ends on the second cut's interior and on the first
                seg((0, 2), (3, 0)),
            ],
        };
        assert_eq!(verify_guillotine_sequence(&[p(0, 1), p(2, 0)], &seq, 3), Verdict::Accept);
    }

    #[test]
    fn collinear_touch_does_not_block() {
        let y0 = Line::through(&p(0, 0), &p(1, 0)).unwrap();
        let collinear = [Segment::with_ends(p(0, 0), p(1, 0), false, true)];
        assert!(!blocked(&p(0, 0), &y0, &collinear));
        let transversal = [line((0, -1), (0, 1))];
        assert!(blocked(&p(0, 0), &y0, &transversal));
        // touching a transversal cut at its endpoint does not block either
        let ending = [seg((0, 0), (0, 1))];
        assert!(!blocked(&p(0, 0), &y0, &ending));

        let overlap = CutSequence {
            cuts: vec![
                Segment::full_line(p(0, 0), p(1, 0)),
                Segment::with_ends(p(5, 0), p(5, 1), false, true),
                Segment::with_ends(p(5, 1), p(5, 2), false, true),
            ],
        };
        assert_eq!(
            verify_guillotine_sequence(&[], &overlap, 3),
            Verdict::Reject(Violation::ProperIntersection { first: 1, second: 2 })
        );
    }

    #[test]
    fn extend_examples() {
        let y0 = Line::through(&p(0, 0), &p(1, 0)).unwrap();
        let target = seg((0, 0), (1, 0));
        let empty = CutSequence::default();
        assert_eq!(extend_to_guillotine(&y0, &target, &empty).unwrap(), line((0, 0), (1, 0)));

        let x5 = CutSequence { cuts: vec![line((5, 0), (5, 1))] };
        assert_eq!(extend_to_guillotine(&y0, &target, &x5).unwrap(), Segment::with_ends(p(0, 0), p(5, 0), true, false));

        let both = CutSequence { cuts: vec![line((0, 0), (0, 1)), line((5, 0), (5, 1))] };
        assert_eq!(extend_to_guillotine(&y0, &seg((1, 0), (2, 0)), &both).unwrap(), seg((0, 0), (5, 0)));
    }

    #[test]
    fn extend_errors() {
        let y0 = Line::through(&p(0, 0), &p(1, 0)).unwrap();
        let prev = CutSequence { cuts: vec![line((1, -1), (1, 1))] };
        assert_eq!(extend_to_guillotine(&y0, &seg((0, 0), (2, 0)), &prev), Err(ExtendError::TargetBlocked { cut: 0 }));
        assert_eq!(extend_to_guillotine(&y0, &seg((1, 0), (1, 0)), &prev), Err(ExtendError::TargetBlocked { cut: 0 }));
        let collinear = CutSequence { cuts: vec![seg((5, 0), (6, 0))] };
        assert_eq!(
            extend_to_guillotine(&y0, &seg((0, 0), (1, 0)), &collinear),
            Err(ExtendError::CollinearObstruction { cut: 0 })
        );
        // stopped by a transversal blocker before reaching the collinear cut
        let shielded = CutSequence { cuts: vec![line((4, -1), (4, 1)), seg((5, 0), (6, 0))] };
        assert_eq!(
            extend_to_guillotine(&y0, &seg((0, 0), (1, 0)), &shielded),
            Ok(Segment::with_ends(p(0, 0), p(4, 0), true, false))
        );
        assert_eq!(extend_to_guillotine(&y0, &seg((0, 1), (1, 1)), &prev), Err(ExtendError::TargetOffLine));
    }

    #[test]
    fn extension_passes_maximality() {
        let prev = CutSequence { cuts: vec![line((1, 0), (1, 1)), line((4, 0), (4, 1))] };
        let y1 = Line::through(&p(0, 1), &p(1, 1)).unwrap();
        let cut = extend_to_guillotine(&y1, &seg((2, 1), (3, 1)), &prev).unwrap();
        assert_eq!(cut, seg((1, 1), (4, 1)));
        let mut seq = prev.clone();
        seq.cuts.push(cut);
        assert_eq!(verify_guillotine_sequence(&[], &seq, 3), Verdict::Accept);
    }

    #[test]
    fn degenerate_target_extends_along_line() {
        let diag = Line::through(&p(0, 0), &p(1, 1)).unwrap();
        let prev = CutSequence { cuts: vec![line((3, 0), (3, 1))] };
        let cut = extend_to_guillotine(&diag, &seg((1, 1), (1, 1)), &prev).unwrap();
        assert!(cut.contains(&p(1, 1)) && cut.contains(&p(3, 3)) && !cut.contains(&p(4, 4)));
        assert!(cut.contains(&p(-100, -100)));
    }

    #[test]
    fn shorten_grid_rows() {
        let cover = shorten_cuts(&grid(), &rows());
        assert_eq!(cover.segments, (0..3).map(|y| seg((0, y), (2, y))).collect::<Vec<_>>());
        assert_eq!(verify_segment_cover(&grid(), &cover, 3), Verdict::Accept);
    }

    #[test]
    fn shorten_drops_empty_cut() {
        let mut seq = rows();
        seq.cuts.push(seg((0, 5), (0, 5)));
        seq.cuts.insert(0, line((0, 10), (1, 10)));
        let cover = shorten_cuts(&grid(), &seq);
        assert_eq!(cover.segments.len(), 3);
    }

    #[test]
    fn shorten_moves_junction_point() {
        // the vertical cut stops on the horizontal one at (0,0); the point
        // there is assigned to the earlier cut first
        let pts = [p(-1, 0), p(0, 0), p(0, 1), p(0, 2), p(1, 0)];
        let seq = CutSequence {
            cuts: vec![
                line((0, 0), (0, 1)),
                Segment::with_ends(p(0, 0), p(1, 0), false, true),
                Segment::with_ends(p(-1, 0), p(0, 0), true, false),
            ],
        };
        assert_eq!(verify_guillotine_sequence(&pts, &seq, 3), Verdict::Accept);
        let cover = shorten_cuts(&pts, &seq);
        assert_eq!(verify_segment_cover(&pts, &cover, 3), Verdict::Accept);

        let pts = [p(0, 0), p(0, 1), p(-1, 0), p(1, 0)];
        let seq = CutSequence { cuts: vec![line((-1, 0), (1, 0)), Segment::with_ends(p(0, 0), p(0, 1), false, true)] };
        let cover = shorten_cuts(&pts, &seq);
        assert_eq!(verify_segment_cover(&pts, &cover, 2), Verdict::Accept);
        assert_eq!(cover.segments[0], seg((-1, 0), (1, 0)));
        assert_eq!(cover.segments[1], Segment::new(p(0, 1), p(0, 1)));
    }

    #[test]
    fn json_shapes() {
        let cover = SegmentCover { segments: vec![Segment::new(p(0, 0), Point::new(ratio(1, 2), int(3)))] };
        let text = serde_json::to_string(&cover).unwrap();
        assert_eq!(text, r#"{"segments":[{"a":["0","0"],"b":["1/2","3"]}]}"#);
        assert_eq!(serde_json::from_str::<SegmentCover>(&text).unwrap(), cover);

        let cuts = CutSequence { cuts: vec![line((0, 0), (1, 0))] };
        let text = serde_json::to_string(&cuts).unwrap();
        assert_eq!(text, r#"{"cuts":[{"a":["0","0"],"b":["1","0"],"unbounded_a":true,"unbounded_b":true}]}"#);
        assert_eq!(serde_json::from_str::<CutSequence>(&text).unwrap(), cuts);

        let verdict = Verdict::Reject(Violation::NotDisjoint { first: 0, second: 1 });
        assert_eq!(
            serde_json::to_string(&verdict).unwrap(),
            r#"{"verdict":"REJECT","violation":{"code":"NOT_DISJOINT","first":0,"second":1}}"#
        );
    }
}
