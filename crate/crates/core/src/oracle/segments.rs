//! Exhaustive search for a cover by pairwise disjoint segments.
//!
//! Any segment of a disjoint cover can be shrunk to the hull of the points it
//! covers, which is a contiguous run of the points on its supporting line.
//! Searching over those runs (plus single points) is therefore complete.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::bits::Bits;
use super::{OracleError, SearchResult};
use crate::cover::{verify_segment_cover, SegmentCover};
use crate::geom::{hom_line, hom_orientation, HomPoint, Line, Orientation, Point, Segment};

/// Default point cap.
pub const DEFAULT_CAP: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub cap: usize,
    /// Worker threads for the root split; 1 searches sequentially.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP, threads: 1 }
    }
}

/// A contiguous run of the points on one line, or a single point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    /// Point indices in order along the line.
    pub points: Vec<usize>,
    pub line: Option<Line>,
    pub hull: Segment,
    mask: Bits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentOutcome {
    pub result: SearchResult,
    pub limit: usize,
    #[serde(rename = "witness")]
    pub cover: Option<SegmentCover>,
    pub nodes_explored: u64,
}

/// All candidates, ordered by size (largest first), then by point indices.
pub fn candidates(points: &[Point]) -> Vec<Candidate> {
    let n = points.len();
    let hom: Vec<HomPoint> = points.iter().map(HomPoint::new).collect();
    let mut lines: HashMap<Line, Vec<usize>> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(line) = hom_line(&hom[i], &hom[j]) {
                let on = lines.entry(line).or_default();
                if !on.contains(&i) {
                    on.push(i);
                }
                if !on.contains(&j) {
                    on.push(j);
                }
            }
        }
    }
    let mut out = Vec::new();
    // BTreeMap for a deterministic pass over lines
    for (line, mut on) in lines.into_iter().collect::<BTreeMap<_, _>>() {
        // lexicographic order on points is the order along any line
        on.sort_by(|&a, &b| points[a].cmp(&points[b]).then(a.cmp(&b)));
        for s in 0..on.len() {
            for e in s + 1..on.len() {
                let run = on[s..=e].to_vec();
                out.push(Candidate {
                    mask: Bits::from_indices(n, &run),
                    hull: Segment::new(points[run[0]].clone(), points[run[run.len() - 1]].clone()),
                    line: Some(line.clone()),
                    points: run,
                });
            }
        }
    }
    for (i, p) in points.iter().enumerate() {
        out.push(Candidate {
            points: vec![i],
            line: None,
            hull: Segment::point(p.clone()),
            mask: Bits::from_indices(n, &[i]),
        });
    }
    out.sort_by(|a, b| {
        let mut ka = a.points.clone();
        let mut kb = b.points.clone();
        ka.sort_unstable();
        kb.sort_unstable();
        b.points.len().cmp(&a.points.len()).then(ka.cmp(&kb))
    });
    out
}

struct Search<'a> {
    hom: Vec<HomPoint>,
    points: &'a [Point],
    cands: Vec<Candidate>,
    ends: Vec<(usize, usize)>,
}

fn on_box(points: &[Point], p: usize, q: usize, r: usize) -> bool {
    let (a, b, c) = (&points[p], &points[q], &points[r]);
    a.x.clone().min(b.x.clone()) <= c.x
        && c.x <= a.x.clone().max(b.x.clone())
        && a.y.clone().min(b.y.clone()) <= c.y
        && c.y <= a.y.clone().max(b.y.clone())
}

/// Exact lowest common multiple of `values`, or `None` on overflow.
fn lcm_u128(values: impl Iterator<Item = usize>) -> Option<u128> {
    let mut l = BigInt::from(1);
    for v in values {
        l = l.lcm(&BigInt::from(v));
    }
    l.to_u128().filter(|l| *l < (1 << 100))
}

impl<'a> Search<'a> {
    fn new(points: &'a [Point]) -> Self {
        let cands = candidates(points);
        let ends = cands.iter().map(|c| (c.points[0], c.points[c.points.len() - 1])).collect();
        Search { hom: points.iter().map(HomPoint::new).collect(), points, cands, ends }
    }

    fn orient(&self, p: usize, q: usize, r: usize) -> Orientation {
        hom_orientation(&self.hom[p], &self.hom[q], &self.hom[r])
    }

    /// Whether the closed hulls of two candidates meet.
    fn conflict(&self, a: usize, b: usize) -> bool {
        if self.cands[a].mask.intersects(&self.cands[b].mask) {
            return true;
        }
        let (p1, p2) = self.ends[a];
        let (p3, p4) = self.ends[b];
        let d1 = self.orient(p3, p4, p1);
        let d2 = self.orient(p3, p4, p2);
        let d3 = self.orient(p1, p2, p3);
        let d4 = self.orient(p1, p2, p4);
        let opposite = |x: Orientation, y: Orientation| {
            matches!(
                (x, y),
                (Orientation::Clockwise, Orientation::CounterClockwise)
                    | (Orientation::CounterClockwise, Orientation::Clockwise)
            )
        };
        if opposite(d1, d2) && opposite(d3, d4) {
            return true;
        }
        let pts = self.points;
        (d1 == Orientation::Collinear && on_box(pts, p3, p4, p1))
            || (d2 == Orientation::Collinear && on_box(pts, p3, p4, p2))
            || (d3 == Orientation::Collinear && on_box(pts, p1, p2, p3))
            || (d4 == Orientation::Collinear && on_box(pts, p1, p2, p4))
    }

    /// Prunes `live` in place against the weighted counting bound. Returns
    /// false when the node cannot be completed within `remaining`.
    fn prune(&self, uncovered: &Bits, live: &mut Vec<usize>, remaining: usize) -> bool {
        let n = self.points.len();
        loop {
            let mut cmax = vec![0usize; n];
            for &c in live.iter() {
                let size = self.cands[c].points.len();
                for &p in &self.cands[c].points {
                    cmax[p] = cmax[p].max(size);
                }
            }
            let open: Vec<usize> = uncovered.iter().collect();
            if open.iter().any(|&p| cmax[p] == 0) {
                return false;
            }
            let (scale, weight): (u128, Vec<u128>) = {
                let mut sizes: Vec<usize> = open.iter().map(|&p| cmax[p]).collect();
                sizes.sort_unstable();
                sizes.dedup();
                match lcm_u128(sizes.iter().copied()) {
                    Some(l) => (l, (0..n).map(|p| if cmax[p] > 0 { l / cmax[p] as u128 } else { 0 }).collect()),
                    None => {
                        // uniform fallback: every point weighs 1/largest
                        let top = *sizes.last().expect("non-empty") as u128;
                        (top, vec![1; n])
                    }
                }
            };
            let total: u128 = open.iter().map(|&p| weight[p]).sum();
            if total > remaining as u128 * scale {
                return false;
            }
            let before = live.len();
            let slack = (remaining as u128).saturating_sub(1) * scale;
            live.retain(|&c| {
                let w: u128 = self.cands[c].points.iter().map(|&p| weight[p]).sum();
                total - w <= slack
            });
            if live.len() == before {
                return true;
            }
        }
    }

    /// The uncovered point with the fewest live candidates, and those
    /// candidates in order.
    fn branch_point(&self, uncovered: &Bits, live: &[usize]) -> (usize, Vec<usize>) {
        let n = self.points.len();
        let mut count = vec![0usize; n];
        for &c in live {
            for &p in &self.cands[c].points {
                count[p] += 1;
            }
        }
        let p = uncovered.iter().min_by_key(|&p| (count[p], p)).expect("uncovered is non-empty");
        (p, live.iter().copied().filter(|&c| self.cands[c].mask.contains(p)).collect())
    }

    fn child_live(&self, live: &[usize], chosen: usize) -> Vec<usize> {
        live.iter().copied().filter(|&c| c != chosen && !self.conflict(c, chosen)).collect()
    }

    fn dfs(
        &self,
        uncovered: &Bits,
        mut live: Vec<usize>,
        remaining: usize,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
    ) -> bool {
        *nodes += 1;
        if uncovered.is_empty() {
            return true;
        }
        if remaining == 0 || !self.prune(uncovered, &mut live, remaining) {
            return false;
        }
        let (_, branch) = self.branch_point(uncovered, &live);
        for c in branch {
            let next = uncovered.minus(&self.cands[c].mask);
            let child = self.child_live(&live, c);
            chosen.push(c);
            if self.dfs(&next, child, remaining - 1, chosen, nodes) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// Root split across a thread pool; the first successful branch in
    /// candidate order wins, so the result does not depend on scheduling.
    fn run(&self, budget: usize, threads: usize) -> (Option<Vec<usize>>, u64) {
        let n = self.points.len();
        let uncovered = Bits::full(n);
        if n == 0 {
            return (Some(Vec::new()), 1);
        }
        let mut live: Vec<usize> = (0..self.cands.len()).collect();
        let mut nodes = 1u64;
        if budget == 0 || !self.prune(&uncovered, &mut live, budget) {
            return (None, nodes);
        }
        let (_, branch) = self.branch_point(&uncovered, &live);
        let explore = |c: usize| {
            let mut chosen = vec![c];
            let mut sub = 0u64;
            let next = uncovered.minus(&self.cands[c].mask);
            let ok = self.dfs(&next, self.child_live(&live, c), budget - 1, &mut chosen, &mut sub);
            (ok.then_some(chosen), sub)
        };
        let results: Vec<(Option<Vec<usize>>, u64)> = if threads > 1 {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
            pool.install(|| branch.par_iter().map(|&c| explore(c)).collect())
        } else {
            let mut out = Vec::new();
            for &c in &branch {
                let r = explore(c);
                let done = r.0.is_some();
                out.push(r);
                if done {
                    break;
                }
            }
            out
        };
        nodes += results.iter().map(|r| r.1).sum::<u64>();
        (results.into_iter().find_map(|r| r.0), nodes)
    }

    fn cover(&self, chosen: &[usize]) -> SegmentCover {
        SegmentCover { segments: chosen.iter().map(|&c| self.cands[c].hull.clone()).collect() }
    }
}

fn check_cap(points: &[Point], options: &SearchOptions) -> Result<(), OracleError> {
    if points.len() > options.cap {
        return Err(OracleError::CapExceeded { points: points.len(), cap: options.cap });
    }
    Ok(())
}

fn outcome(search: &Search, points: &[Point], limit: usize, found: Option<Vec<usize>>, nodes: u64) -> SegmentOutcome {
    let cover = found.map(|c| search.cover(&c));
    if let Some(cover) = &cover {
        assert!(verify_segment_cover(points, cover, limit).is_accept(), "oracle returned a cover its verifier rejects");
    }
    SegmentOutcome {
        result: if cover.is_some() { SearchResult::Found } else { SearchResult::None },
        limit,
        cover,
        nodes_explored: nodes,
    }
}

/// A disjoint cover with at most `budget` segments, or a certified `None`.
pub fn cover_within(points: &[Point], budget: usize, options: &SearchOptions) -> Result<SegmentOutcome, OracleError> {
    check_cap(points, options)?;
    let search = Search::new(points);
    let (found, nodes) = search.run(budget, options.threads);
    Ok(outcome(&search, points, budget, found, nodes))
}

/// A minimum disjoint cover if its size is at most `limit`; sizes are tried
/// upwards from the counting bound.
pub fn min_segment_cover(
    points: &[Point],
    limit: usize,
    options: &SearchOptions,
) -> Result<SegmentOutcome, OracleError> {
    check_cap(points, options)?;
    let search = Search::new(points);
    let mut nodes = 0;
    let start = if points.is_empty() { 0 } else { 1 };
    for k in start..=limit {
        let (found, sub) = search.run(k, options.threads);
        nodes += sub;
        if found.is_some() {
            return Ok(outcome(&search, points, limit, found, nodes));
        }
    }
    Ok(outcome(&search, points, limit, None, nodes.max(1)))
}
