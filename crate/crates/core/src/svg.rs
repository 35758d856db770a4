//! Deterministic SVG rendering of instances, covers and cut sequences.
//!
//! Coordinates are printed with exactly nine decimals. The conversion is for
//! display only; nothing here feeds back into a computation.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cover::{CutSequence, SegmentCover};
use crate::geom::{int, ratio, Point, Rational, Segment};
use crate::reduction::{Bundle, ReductionInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Points,
    GadgetZoom,
    Drawing,
    Cover,
    Cuts,
}

impl Layer {
    pub const ALL: [Layer; 5] = [Layer::Points, Layer::GadgetZoom, Layer::Drawing, Layer::Cover, Layer::Cuts];

    pub fn name(self) -> &'static str {
        match self {
            Layer::Points => "points",
            Layer::GadgetZoom => "gadget-zoom",
            Layer::Drawing => "drawing",
            Layer::Cover => "cover",
            Layer::Cuts => "cuts",
        }
    }
}

impl FromStr for Layer {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Layer::ALL.into_iter().find(|l| l.name() == s).ok_or_else(|| format!("unknown layer {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    /// Output units per coordinate unit; must be positive.
    pub scale: Rational,
    pub layers: BTreeSet<Layer>,
    pub label_cuts: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { scale: int(100), layers: Layer::ALL.into_iter().collect(), label_cuts: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("inputs do not belong to the same instance: {reason}")]
    InconsistentInputs { reason: String },
}

/// `value` rounded half away from zero to nine decimals.
pub fn fixed9(value: &Rational) -> String {
    let scaled = value * Rational::from_integer(BigInt::from(1_000_000_000u64));
    let half = ratio(1, 2);
    let rounded: BigInt = if scaled.is_negative() {
        -(-scaled + half).floor().to_integer()
    } else {
        (scaled + half).floor().to_integer()
    };
    let (q, r) = rounded.abs().div_rem(&BigInt::from(1_000_000_000u64));
    let sign = if rounded.is_negative() { "-" } else { "" };
    format!("{sign}{q}.{r:09}")
}

/// Axis-aligned box `[x0, x1] x [y0, y1]` in instance coordinates.
#[derive(Clone, Debug)]
struct Frame {
    x0: Rational,
    x1: Rational,
    y0: Rational,
    y1: Rational,
}

impl Frame {
    fn around<'a>(points: impl Iterator<Item = &'a Point>) -> Option<Frame> {
        let mut f: Option<Frame> = None;
        for p in points {
            f = Some(match f {
                None => Frame { x0: p.x.clone(), x1: p.x.clone(), y0: p.y.clone(), y1: p.y.clone() },
                Some(f) => Frame {
                    x0: f.x0.min(p.x.clone()),
                    x1: f.x1.max(p.x.clone()),
                    y0: f.y0.min(p.y.clone()),
                    y1: f.y1.max(p.y.clone()),
                },
            });
        }
        f
    }

    /// Grown by `fraction` of its size on every side; degenerate extents
    /// get a unit margin.
    fn padded(&self, fraction: &Rational) -> Frame {
        let pad = |lo: &Rational, hi: &Rational| {
            let w = hi - lo;
            if w.is_zero() {
                Rational::one()
            } else {
                w * fraction
            }
        };
        let (px, py) = (pad(&self.x0, &self.x1), pad(&self.y0, &self.y1));
        Frame { x0: &self.x0 - &px, x1: &self.x1 + &px, y0: &self.y0 - &py, y1: &self.y1 + &py }
    }

    fn width(&self) -> Rational {
        &self.x1 - &self.x0
    }

    fn height(&self) -> Rational {
        &self.y1 - &self.y0
    }

    /// Parameter range of `s` inside the frame, or `None` if it misses.
    fn clip(&self, s: &Segment) -> Option<(Rational, Rational)> {
        let (dx, dy) = (&s.b.x - &s.a.x, &s.b.y - &s.a.y);
        let mut lo: Option<Rational> = (!s.unbounded_a).then(Rational::zero);
        let mut hi: Option<Rational> = (!s.unbounded_b).then(Rational::one);
        for (p, d, min, max) in [(&s.a.x, &dx, &self.x0, &self.x1), (&s.a.y, &dy, &self.y0, &self.y1)] {
            if d.is_zero() {
                if p < min || p > max {
                    return None;
                }
                continue;
            }
            let (t0, t1) = ((min - p) / d, (max - p) / d);
            let (t0, t1) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
            lo = Some(lo.map_or(t0.clone(), |l| l.max(t0)));
            hi = Some(hi.map_or(t1.clone(), |h| h.min(t1)));
        }
        match (lo, hi) {
            (Some(lo), Some(hi)) if lo <= hi => Some((lo, hi)),
            _ => None,
        }
    }
}

/// Maps instance coordinates into an output rectangle, flipping y.
struct View {
    frame: Frame,
    scale: Rational,
    left: Rational,
    top: Rational,
}

impl View {
    fn x(&self, x: &Rational) -> String {
        fixed9(&(&self.left + (x - &self.frame.x0) * &self.scale))
    }

    fn y(&self, y: &Rational) -> String {
        fixed9(&(&self.top + (&self.frame.y1 - y) * &self.scale))
    }

    fn line(&self, out: &mut String, a: &Point, b: &Point, class: &str, extra: &str) {
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}"{extra}/>"#,
            self.x(&a.x),
            self.y(&a.y),
            self.x(&b.x),
            self.y(&b.y)
        );
    }

    fn circle(&self, out: &mut String, p: &Point, class: &str, r: &str) {
        let _ = writeln!(out, r#"<circle class="{class}" cx="{}" cy="{}" r="{r}"/>"#, self.x(&p.x), self.y(&p.y));
    }
}

fn at(s: &Segment, t: &Rational) -> Point {
    Point::new(&s.a.x + t * (&s.b.x - &s.a.x), &s.a.y + t * (&s.b.y - &s.a.y))
}

fn check_segments(points: &[Point], segments: &[Segment], what: &str) -> Result<(), RenderError> {
    for (i, s) in segments.iter().enumerate() {
        if !points.iter().any(|p| s.contains(p)) {
            return Err(RenderError::InconsistentInputs { reason: format!("{what} {i} contains no instance point") });
        }
    }
    if let Some(p) = points.iter().position(|p| !segments.iter().any(|s| s.contains(p))) {
        return Err(RenderError::InconsistentInputs { reason: format!("point {p} is on no {what}") });
    }
    Ok(())
}

const STYLE: &str = "circle.point{fill:#000}circle.zoom-point{fill:#000}\
line.red{stroke:#c0392b;stroke-width:1}line.blue{stroke:#2e6fb7;stroke-width:1}\
line.cover{stroke:#1e8449;stroke-width:3;stroke-opacity:0.6}\
line.cut{stroke:#7d3c98;stroke-width:1.5}text{font-family:sans-serif;font-size:12px}\
rect.inset{fill:none;stroke:#888}";

/// Renders the instance with optional cover and cuts.
pub fn render(
    instance: &ReductionInstance,
    cover: Option<&SegmentCover>,
    cuts: Option<&CutSequence>,
    spec: &RenderSpec,
) -> Result<String, RenderError> {
    if !spec.scale.is_positive() {
        return Err(RenderError::NonPositiveScale);
    }
    let points = instance.coordinates();
    if let Some(c) = cover {
        check_segments(&points, &c.segments, "cover segment")?;
    }
    if let Some(c) = cuts {
        check_segments(&points, &c.cuts, "cut")?;
    }
    let layers = &spec.layers;
    let drawing = instance.drawing_segments();

    // bounded geometry only
    let mut extent: Vec<Point> = points.clone();
    if layers.contains(&Layer::Drawing) {
        extent.extend(drawing.iter().flat_map(|d| [d.segment.a.clone(), d.segment.b.clone()]));
    }
    if let (Some(c), true) = (cover, layers.contains(&Layer::Cover)) {
        extent.extend(c.segments.iter().flat_map(|s| [s.a.clone(), s.b.clone()]));
    }
    if let (Some(c), true) = (cuts, layers.contains(&Layer::Cuts)) {
        for s in &c.cuts {
            if !s.unbounded_a {
                extent.push(s.a.clone());
            }
            if !s.unbounded_b {
                extent.push(s.b.clone());
            }
        }
    }
    let frame = Frame::around(extent.iter())
        .unwrap_or(Frame { x0: int(0), x1: int(1), y0: int(0), y1: int(1) })
        .padded(&ratio(1, 10));
    let width = frame.width() * &spec.scale;
    let main_height = frame.height() * &spec.scale;
    let view = View { frame: frame.clone(), scale: spec.scale.clone(), left: int(0), top: int(0) };

    let zoom = layers.contains(&Layer::GadgetZoom) && !instance.gadgets.is_empty();
    let inset = if zoom { &width / int(instance.gadgets.len() as i64) } else { int(0) };
    let height = &main_height + &inset;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = fixed9(&width),
        h = fixed9(&height)
    );
    let _ = writeln!(out, "<style>{STYLE}</style>");
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" markerHeight=\"8\" \
         orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#7d3c98\"/></marker></defs>\n",
    );

    if layers.contains(&Layer::Drawing) {
        out.push_str("<g id=\"drawing\">\n");
        for d in &drawing {
            let class = if d.bundle == Bundle::Pos { "red" } else { "blue" };
            view.line(&mut out, &d.segment.a, &d.segment.b, class, "");
        }
        out.push_str("</g>\n");
    }
    if let (Some(c), true) = (cover, layers.contains(&Layer::Cover)) {
        out.push_str("<g id=\"cover\">\n");
        for s in &c.segments {
            view.line(&mut out, &s.a, &s.b, "cover", "");
        }
        out.push_str("</g>\n");
    }
    if let (Some(c), true) = (cuts, layers.contains(&Layer::Cuts)) {
        out.push_str("<g id=\"cuts\">\n");
        for (i, s) in c.cuts.iter().enumerate() {
            let Some((t0, t1)) = frame.clip(s) else { continue };
            let (a, b) = (at(s, &t0), at(s, &t1));
            let mut extra = String::new();
            if s.unbounded_a {
                extra.push_str(r#" marker-start="url(#arrow)""#);
            }
            if s.unbounded_b {
                extra.push_str(r#" marker-end="url(#arrow)""#);
            }
            view.line(&mut out, &a, &b, "cut", &extra);
            if spec.label_cuts {
                let mid = at(s, &((&t0 + &t1) * ratio(1, 2)));
                let _ = writeln!(out, r#"<text x="{}" y="{}">{}</text>"#, view.x(&mid.x), view.y(&mid.y), i + 1);
            }
        }
        out.push_str("</g>\n");
    }
    if layers.contains(&Layer::Points) {
        out.push_str("<g id=\"points\">\n");
        for p in &points {
            view.circle(&mut out, p, "point", "3");
        }
        out.push_str("</g>\n");
    }
    if zoom {
        out.push_str("<g id=\"gadget-zoom\">\n");
        for (k, g) in instance.gadgets.iter().enumerate() {
            let gadget_points: Vec<&Point> = g.crossings.iter().flatten().collect();
            let local = Frame::around(gadget_points.iter().copied().chain([&g.pos_apex, &g.neg_apex]))
                .expect("gadgets have points")
                .padded(&ratio(1, 10));
            let side = local.width().max(local.height());
            let left = &inset * int(k as i64);
            let zview =
                View { frame: local.clone(), scale: &inset / side, left: left.clone(), top: main_height.clone() };
            let _ = writeln!(
                out,
                r#"<rect class="inset" x="{}" y="{}" width="{w}" height="{w}"/>"#,
                fixed9(&left),
                fixed9(&main_height),
                w = fixed9(&inset)
            );
            for bundle in [Bundle::Pos, Bundle::Neg] {
                let apex = g.apex(bundle);
                let class = if bundle == Bundle::Pos { "red" } else { "blue" };
                for index in 0..g.lines(bundle).len() {
                    let far = g.points_on(bundle, index).into_iter().min_by(|a, b| a.x.cmp(&b.x)).expect("m >= 1");
                    view_clipped(&zview, &mut out, apex, far, class);
                }
            }
            for p in gadget_points {
                zview.circle(&mut out, p, "zoom-point", "2");
            }
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}">x{}</text>"#,
                fixed9(&(&left + int(4))),
                fixed9(&(&main_height + int(14))),
                g.variable
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn view_clipped(view: &View, out: &mut String, a: &Point, b: &Point, class: &str) {
    let s = Segment::new(a.clone(), b.clone());
    if let Some((t0, t1)) = view.frame.clip(&s) {
        view.line(out, &at(&s, &t0), &at(&s, &t1), class, "");
    }
}
