//! Collinearity and disjointness audit of a built instance.
//!
//! (a) each catalogue line carries exactly its expected points;
//! (b) every line through three or more instance points is a catalogue line;
//! (c) drawing segments only cross where a gadget expects them to;
//! (d) no gadget point lies on a segment other than its own two.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::{Bundle, DrawingSegment, ReductionInstance};
use crate::geom::{hom_collinear, hom_line, on_segment, proper_intersection, HomPoint, Line, Point, Rational, Segment};

/// Above this many points the pair-hashing scan replaces the triple scan.
pub const TRIPLE_SCAN_LIMIT: usize = 500;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AuditViolation {
    DuplicatePoint {
        first: usize,
        second: usize,
    },
    /// Property (a): `missing` expected points are off the line, `extra`
    /// unexpected points are on it.
    LineIncidence {
        line: usize,
        missing: Vec<usize>,
        extra: Vec<usize>,
    },
    /// Property (b): smallest collinear triple on a line outside the catalogue.
    UncataloguedCollinear {
        triple: [usize; 3],
    },
    /// Property (c): two drawing segments properly intersect.
    DrawingCrossing {
        first: SegmentId,
        second: SegmentId,
    },
    /// Property (d): a gadget point lies on a foreign segment.
    PointOnForeignSegment {
        point: usize,
        segment: SegmentId,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SegmentId {
    pub variable: usize,
    pub bundle: Bundle,
    pub index: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub violations: Vec<AuditViolation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lines through three or more of `points` that are not in `known`, each
/// reported once by its smallest collinear triple. Exhaustive over triples.
pub fn collinear_triple_scan(points: &[Point], known: &HashSet<Line>) -> Vec<[usize; 3]> {
    let points: Vec<HomPoint> = points.iter().map(HomPoint::new).collect();
    let mut reported: HashSet<Line> = HashSet::new();
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let Some(line) = hom_line(&points[i], &points[j]) else { continue };
            if known.contains(&line) || reported.contains(&line) {
                continue;
            }
            let on_line = |k: &usize| hom_collinear(&points[i], &points[j], &points[*k]);
            if let Some(k) = (j + 1..points.len()).find(on_line) {
                out.push([i, j, k]);
                reported.insert(line);
            }
        }
    }
    out.sort();
    out
}

/// Same result as [`collinear_triple_scan`], by grouping point pairs by
/// their normalized supporting line.
pub fn collinear_hash_scan(points: &[Point], known: &HashSet<Line>) -> Vec<[usize; 3]> {
    let points: Vec<HomPoint> = points.iter().map(HomPoint::new).collect();
    let mut groups: BTreeMap<Line, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let Some(line) = hom_line(&points[i], &points[j]) else { continue };
            if known.contains(&line) {
                continue;
            }
            let group = groups.entry(line).or_default();
            group.insert(i);
            group.insert(j);
        }
    }
    let mut out: Vec<[usize; 3]> = groups
        .values()
        .filter(|g| g.len() >= 3)
        .map(|g| {
            let mut it = g.iter().copied();
            [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
        })
        .collect();
    out.sort();
    out
}

/// `[min x, max x, min y, max y]` of a bounded segment.
fn bounding_box(s: &Segment) -> [Rational; 4] {
    let (x0, x1) = if s.a.x <= s.b.x { (&s.a.x, &s.b.x) } else { (&s.b.x, &s.a.x) };
    let (y0, y1) = if s.a.y <= s.b.y { (&s.a.y, &s.b.y) } else { (&s.b.y, &s.a.y) };
    [x0.clone(), x1.clone(), y0.clone(), y1.clone()]
}

fn boxes_overlap(a: &[Rational; 4], b: &[Rational; 4]) -> bool {
    a[0] <= b[1] && b[0] <= a[1] && a[2] <= b[3] && b[2] <= a[3]
}

fn box_contains(b: &[Rational; 4], p: &Point) -> bool {
    b[0] <= p.x && p.x <= b[1] && b[2] <= p.y && p.y <= b[3]
}

fn segment_id(s: &DrawingSegment) -> SegmentId {
    SegmentId { variable: s.variable, bundle: s.bundle, index: s.index }
}

pub fn audit(instance: &ReductionInstance) -> AuditReport {
    let mut violations = Vec::new();
    let points: Vec<Point> = instance.points.iter().map(|p| p.point.clone()).collect();

    let mut seen: BTreeMap<&Point, usize> = BTreeMap::new();
    for (i, p) in points.iter().enumerate() {
        if let Some(&first) = seen.get(p) {
            violations.push(AuditViolation::DuplicatePoint { first, second: i });
        } else {
            seen.insert(p, i);
        }
    }

    // (a)
    for (li, entry) in instance.catalogue.iter().enumerate() {
        let on: BTreeSet<usize> = (0..points.len()).filter(|&i| entry.line.contains(&points[i])).collect();
        let expected: BTreeSet<usize> = entry.points.iter().copied().collect();
        if on != expected {
            violations.push(AuditViolation::LineIncidence {
                line: li,
                missing: expected.difference(&on).copied().collect(),
                extra: on.difference(&expected).copied().collect(),
            });
        }
    }

    // (b)
    let known: HashSet<Line> = instance.catalogue.iter().map(|c| c.line.clone()).collect();
    let triples = if points.len() <= TRIPLE_SCAN_LIMIT {
        collinear_triple_scan(&points, &known)
    } else {
        collinear_hash_scan(&points, &known)
    };
    violations.extend(triples.into_iter().map(|triple| AuditViolation::UncataloguedCollinear { triple }));

    // (c)
    let drawing = instance.drawing_segments();
    let boxes: Vec<[Rational; 4]> = drawing.iter().map(|d| bounding_box(&d.segment)).collect();
    for j in 0..drawing.len() {
        for i in 0..j {
            let (a, b) = (&drawing[i], &drawing[j]);
            if (a.variable == b.variable && a.bundle != b.bundle) || !boxes_overlap(&boxes[i], &boxes[j]) {
                continue;
            }
            if proper_intersection(&a.segment, &b.segment) {
                violations.push(AuditViolation::DrawingCrossing { first: segment_id(a), second: segment_id(b) });
            }
        }
    }

    // (d)
    for (pi, ip) in instance.points.iter().enumerate() {
        let super::PointTag::Gadget { variable, pos, neg } = ip.tag else { continue };
        for (s, bbox) in drawing.iter().zip(&boxes) {
            if !box_contains(bbox, &ip.point) {
                continue;
            }
            let own = s.variable == variable
                && ((s.bundle == Bundle::Pos && s.index == pos) || (s.bundle == Bundle::Neg && s.index == neg));
            if !own && on_segment(&ip.point, &s.segment) {
                violations.push(AuditViolation::PointOnForeignSegment { point: pi, segment: segment_id(s) });
            }
        }
    }

    AuditReport { violations }
}
