//! Exact rational plane geometry.
//!
//! Every predicate in this module is decided with arbitrary-precision
//! integer arithmetic. There is no tolerance parameter anywhere.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the canonical `"p/q"` (or `"p"`) form.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Canonical `"p/q"` text, `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Number of bits in the larger of numerator and denominator.
pub fn bit_size(value: &Rational) -> u64 {
    value.numer().bits().max(value.denom().bits())
}

/// Serde adapter for rationals as canonical strings.
pub mod rational_text {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).ok_or_else(|| serde::de::Error::custom(format!("invalid rational {text:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    fn sub(&self, other: &Point) -> (Rational, Rational) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// `self + t * (dx, dy)`.
    pub fn offset(&self, t: &Rational, dx: &Rational, dy: &Rational) -> Point {
        Point::new(&self.x + t * dx, &self.y + t * dy)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", format_rational(&self.x), format_rational(&self.y))
    }
}

/// A point serialized as `["p/q", "p/q"]`.
impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let parse =
            |t: &str| parse_rational(t).ok_or_else(|| serde::de::Error::custom(format!("invalid rational {t:?}")));
        Ok(Point::new(parse(&x)?, parse(&y)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    fn from_sign(value: &Rational) -> Self {
        if value.is_positive() {
            Orientation::CounterClockwise
        } else if value.is_negative() {
            Orientation::Clockwise
        } else {
            Orientation::Collinear
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of the determinant of `(q - p, r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let (ux, uy) = q.sub(p);
    let (vx, vy) = r.sub(p);
    Orientation::from_sign(&(ux * vy - uy * vx))
}

pub fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    orientation(p, q, r) == Orientation::Collinear
}

/// `(x + factor * y, y)`.
pub fn shear(p: &Point, factor: &Rational) -> Point {
    Point::new(&p.x + factor * &p.y, p.y.clone())
}

/// The line `a x + b y + c = 0` with integer coefficients, normalized so that
/// equal lines have equal coefficient triples.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Builds a normalized line; `None` when `a = b = 0`.
    pub fn new(a: &Rational, b: &Rational, c: &Rational) -> Option<Line> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |v: &Rational| v.numer() * (&lcm / v.denom());
        let (mut a, mut b, mut c) = (scale(a), scale(b), scale(c));
        let g = a.gcd(&b).gcd(&c);
        a /= &g;
        b /= &g;
        c /= &g;
        let leading = if a.is_zero() { &b } else { &a };
        if leading.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        Some(Line { a, b, c })
    }

    /// The line through two distinct points.
    pub fn through(p: &Point, q: &Point) -> Option<Line> {
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = -(&a * &p.x + &b * &p.y);
        Line::new(&a, &b, &c)
    }

    /// The line through `p` with direction `(dx, dy)`.
    pub fn with_direction(p: &Point, dx: &Rational, dy: &Rational) -> Option<Line> {
        Line::through(p, &Point::new(&p.x + dx, &p.y + dy))
    }

    pub fn coefficients(&self) -> (Rational, Rational, Rational) {
        (
            Rational::from_integer(self.a.clone()),
            Rational::from_integer(self.b.clone()),
            Rational::from_integer(self.c.clone()),
        )
    }

    /// Signed value of `a x + b y + c`.
    pub fn eval(&self, p: &Point) -> Rational {
        let (a, b, c) = self.coefficients();
        a * &p.x + b * &p.y + c
    }

    pub fn side(&self, p: &Point) -> Ordering {
        self.eval(p).cmp(&Rational::zero())
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.eval(p).is_zero()
    }

    /// A direction vector along the line.
    pub fn direction(&self) -> (Rational, Rational) {
        (Rational::from_integer(self.b.clone()), Rational::from_integer(-self.a.clone()))
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        (&self.a * &other.b - &other.a * &self.b).is_zero()
    }

    /// Slope `dy/dx`, `None` for vertical lines.
    pub fn slope(&self) -> Option<Rational> {
        if self.b.is_zero() {
            None
        } else {
            Some(Rational::new(-self.a.clone(), self.b.clone()))
        }
    }

    /// Where the line meets `y = 0`, `None` for horizontal lines.
    pub fn x_intercept(&self) -> Option<Rational> {
        if self.a.is_zero() {
            None
        } else {
            Some(Rational::new(-self.c.clone(), self.a.clone()))
        }
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y + {} = 0", self.a, self.b, self.c)
    }
}

/// The unique intersection point of two lines, if they are not parallel.
pub fn line_intersection(l1: &Line, l2: &Line) -> Option<Point> {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return None;
    }
    let x = Rational::new(&l1.b * &l2.c - &l2.b * &l1.c, det.clone());
    let y = Rational::new(&l1.c * &l2.a - &l2.c * &l1.a, det);
    Some(Point::new(x, y))
}

/// A closed segment `a + t (b - a)`, where `t` ranges over `[0, 1]` unless an
/// end is unbounded, in which case the range is open towards infinity on that
/// side. With both ends unbounded it is a full line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
    pub unbounded_a: bool,
    pub unbounded_b: bool,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Self { a, b, unbounded_a: false, unbounded_b: false }
    }

    pub fn with_ends(a: Point, b: Point, unbounded_a: bool, unbounded_b: bool) -> Self {
        Self { a, b, unbounded_a, unbounded_b }
    }

    /// Single-point segment. Only meaningful as a cover candidate for an
    /// isolated point.
    pub(crate) fn point(p: Point) -> Self {
        Self::new(p.clone(), p)
    }

    pub fn full_line(a: Point, b: Point) -> Self {
        Self::with_ends(a, b, true, true)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn is_bounded(&self) -> bool {
        !self.unbounded_a && !self.unbounded_b
    }

    pub fn line(&self) -> Option<Line> {
        Line::through(&self.a, &self.b)
    }

    pub(crate) fn direction(&self) -> (Rational, Rational) {
        self.b.sub(&self.a)
    }

    /// Parameter of a point already known to lie on the supporting line.
    pub(crate) fn param(&self, p: &Point) -> Rational {
        let (dx, dy) = self.direction();
        let (px, py) = p.sub(&self.a);
        (px * &dx + py * &dy) / (&dx * &dx + &dy * &dy)
    }

    fn lower(&self) -> Option<Rational> {
        (!self.unbounded_a).then(Rational::zero)
    }

    fn upper(&self) -> Option<Rational> {
        (!self.unbounded_b).then(Rational::one)
    }

    fn on_line(&self, p: &Point) -> bool {
        collinear(&self.a, &self.b, p)
    }

    /// Closed containment, respecting unbounded ends.
    pub fn contains(&self, p: &Point) -> bool {
        if self.is_degenerate() {
            return *p == self.a;
        }
        if !self.on_line(p) {
            return false;
        }
        let t = self.param(p);
        self.lower().is_none_or(|lo| t >= lo) && self.upper().is_none_or(|hi| t <= hi)
    }

    /// Containment in the relative interior (bounded endpoints excluded).
    pub fn contains_interior(&self, p: &Point) -> bool {
        if self.is_degenerate() || !self.on_line(p) {
            return false;
        }
        let t = self.param(p);
        self.lower().is_none_or(|lo| t > lo) && self.upper().is_none_or(|hi| t < hi)
    }

    /// The range of `other` (collinear with `self`) in `self`'s parameter.
    fn collinear_range(&self, other: &Segment) -> (Option<Rational>, Option<Rational>) {
        let ta = self.param(&other.a);
        let tb = self.param(&other.b);
        let ends = [(ta, other.unbounded_a), (tb, other.unbounded_b)];
        let (lo, hi) = if ends[0].0 <= ends[1].0 { (&ends[0], &ends[1]) } else { (&ends[1], &ends[0]) };
        ((!lo.1).then(|| lo.0.clone()), (!hi.1).then(|| hi.0.clone()))
    }

    /// Relative-interior intersection of collinear, non-degenerate segments.
    fn collinear_overlap(&self, other: &Segment, strict: bool) -> bool {
        let (olo, ohi) = self.collinear_range(other);
        let lo = max_bound(self.lower(), olo);
        let hi = min_bound(self.upper(), ohi);
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                if strict {
                    lo < hi
                } else {
                    lo <= hi
                }
            }
            _ => true,
        }
    }
}

fn max_bound(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn min_bound(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Closed containment of `p` in `s`.
pub fn on_segment(p: &Point, s: &Segment) -> bool {
    s.contains(p)
}

/// True iff the segments share a point that is interior to both. Collinear
/// segments overlapping in more than one point qualify.
pub fn proper_intersection(s1: &Segment, s2: &Segment) -> bool {
    if s1.is_degenerate() || s2.is_degenerate() {
        return false;
    }
    let (l1, l2) = (s1.line().expect("non-degenerate"), s2.line().expect("non-degenerate"));
    if l1 == l2 {
        return s1.collinear_overlap(s2, true);
    }
    match line_intersection(&l1, &l2) {
        Some(x) => s1.contains_interior(&x) && s2.contains_interior(&x),
        None => false,
    }
}

/// True iff the segments share a point anywhere, endpoints included.
pub fn segments_touch(s1: &Segment, s2: &Segment) -> bool {
    if s1.is_degenerate() {
        return s2.contains(&s1.a);
    }
    if s2.is_degenerate() {
        return s1.contains(&s2.a);
    }
    let (l1, l2) = (s1.line().expect("non-degenerate"), s2.line().expect("non-degenerate"));
    if l1 == l2 {
        return s1.collinear_overlap(s2, false);
    }
    match line_intersection(&l1, &l2) {
        Some(x) => s1.contains(&x) && s2.contains(&x),
        None => false,
    }
}

/// True iff the segments share no point at all.
pub fn segments_disjoint(s1: &Segment, s2: &Segment) -> bool {
    !segments_touch(s1, s2)
}

/// A point in integer homogeneous form `(x/w, y/w)` with `w > 0`, for bulk
/// predicate evaluation without per-operation gcd reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoint {
    x: BigInt,
    y: BigInt,
    w: BigInt,
    small: Option<[i128; 3]>,
    residues: [u64; 3],
}

/// Entries below this magnitude let a 3x3 determinant be evaluated in i128.
const SMALL_LIMIT: i128 = 1 << 40;

impl HomPoint {
    pub fn new(p: &Point) -> Self {
        let w = p.x.denom().lcm(p.y.denom());
        let x = p.x.numer() * (&w / p.x.denom());
        let y = p.y.numer() * (&w / p.y.denom());
        let fit = |v: &BigInt| i128::try_from(v).ok().filter(|v| v.abs() < SMALL_LIMIT);
        let small = match (fit(&x), fit(&y), fit(&w)) {
            (Some(x), Some(y), Some(w)) => Some([x, y, w]),
            _ => None,
        };
        let residues = [residue_int(&x), residue_int(&y), residue_int(&w)];
        Self { x, y, w, small, residues }
    }
}

/// Prime modulus for the fast filters; a zero residue is always confirmed
/// with exact arithmetic.
pub const FILTER_PRIME: u64 = (1 << 61) - 1;

pub fn residue_int(v: &BigInt) -> u64 {
    let r = v.mod_floor(&BigInt::from(FILTER_PRIME));
    u64::try_from(r).expect("reduced below the modulus")
}

pub fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % FILTER_PRIME as u128) as u64
}

pub fn sub_mod(a: u64, b: u64) -> u64 {
    (a + FILTER_PRIME - b) % FILTER_PRIME
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// `value` modulo [`FILTER_PRIME`], `None` when the denominator vanishes.
pub fn residue(value: &Rational) -> Option<u64> {
    let den = residue_int(value.denom());
    (den != 0).then(|| mul_mod(residue_int(value.numer()), pow_mod(den, FILTER_PRIME - 2)))
}

/// Exact collinearity test, filtered by the determinant's residue.
pub fn hom_collinear(p: &HomPoint, q: &HomPoint, r: &HomPoint) -> bool {
    let [px, py, pw] = p.residues;
    let [qx, qy, qw] = q.residues;
    let [rx, ry, rw] = r.residues;
    let plus = mul_mod(px, mul_mod(qy, rw)) + mul_mod(py, mul_mod(qw, rx)) + mul_mod(pw, mul_mod(qx, ry));
    let minus = mul_mod(px, mul_mod(qw, ry)) + mul_mod(py, mul_mod(qx, rw)) + mul_mod(pw, mul_mod(qy, rx));
    if plus % FILTER_PRIME != minus % FILTER_PRIME {
        return false;
    }
    hom_orientation(p, q, r) == Orientation::Collinear
}

/// Orientation of three homogeneous points; agrees with [`orientation`].
pub fn hom_orientation(p: &HomPoint, q: &HomPoint, r: &HomPoint) -> Orientation {
    if let (Some(p), Some(q), Some(r)) = (p.small, q.small, r.small) {
        let det = p[0] * (q[1] * r[2] - q[2] * r[1]) - p[1] * (q[0] * r[2] - q[2] * r[0])
            + p[2] * (q[0] * r[1] - q[1] * r[0]);
        return match det.cmp(&0) {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        };
    }
    let det =
        &p.x * (&q.y * &r.w - &q.w * &r.y) - &p.y * (&q.x * &r.w - &q.w * &r.x) + &p.w * (&q.x * &r.y - &q.y * &r.x);
    match det.sign() {
        num_bigint::Sign::Plus => Orientation::CounterClockwise,
        num_bigint::Sign::Minus => Orientation::Clockwise,
        num_bigint::Sign::NoSign => Orientation::Collinear,
    }
}

/// The normalized line through two distinct homogeneous points.
pub fn hom_line(p: &HomPoint, q: &HomPoint) -> Option<Line> {
    let a = &p.y * &q.w - &p.w * &q.y;
    let b = &p.w * &q.x - &p.x * &q.w;
    let c = &p.x * &q.y - &p.y * &q.x;
    Line::new(&Rational::from_integer(a), &Rational::from_integer(b), &Rational::from_integer(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1))
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(2, 0)), Orientation::Collinear);
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::CounterClockwise);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 1)), Orientation::Clockwise);
    }

    #[test]
    fn on_segment_examples() {
        let s = seg((0, 0), (2, 0));
        assert!(on_segment(&p(1, 0), &s));
        assert!(!on_segment(&p(3, 0), &s));
        let ray = Segment::with_ends(p(0, 0), p(2, 0), false, true);
        assert!(on_segment(&p(3, 0), &ray));
        assert!(!on_segment(&p(-1, 0), &ray));
    }

    #[test]
    fn proper_intersection_examples() {
        assert!(proper_intersection(&seg((0, -1), (0, 1)), &seg((-1, 0), (1, 0))));
        assert!(!proper_intersection(&seg((0, 0), (1, 0)), &seg((1, 0), (1, 1))));
        assert!(!proper_intersection(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))));
        // collinear overlap shares interior points
        assert!(proper_intersection(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))));
        // collinear touch does not
        assert!(!proper_intersection(&seg((0, 0), (1, 0)), &seg((1, 0), (3, 0))));
    }

    #[test]
    fn disjoint_examples() {
        assert!(segments_disjoint(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))));
        assert!(!segments_disjoint(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 0))));
        assert!(!segments_disjoint(&seg((0, -1), (0, 1)), &seg((-1, 0), (1, 0))));
        // T-junction
        assert!(!segments_disjoint(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 5))));
        let dot = Segment::point(p(1, 0));
        assert!(!segments_disjoint(&dot, &seg((0, 0), (2, 0))));
        assert!(segments_disjoint(&dot, &seg((0, 1), (2, 1))));
    }

    #[test]
    fn line_intersection_examples() {
        let x0 = Line::new(&int(1), &int(0), &int(0)).unwrap();
        let y0 = Line::new(&int(0), &int(1), &int(0)).unwrap();
        let y1 = Line::new(&int(0), &int(1), &int(-1)).unwrap();
        assert_eq!(line_intersection(&x0, &y0), Some(p(0, 0)));
        assert_eq!(line_intersection(&y0, &y1), None);
        let diag = Line::through(&p(0, 0), &p(1, 1)).unwrap();
        let anti = Line::through(&p(0, 1), &p(1, 0)).unwrap();
        assert_eq!(line_intersection(&diag, &anti), Some(Point::new(ratio(1, 2), ratio(1, 2))));
    }

    #[test]
    fn shear_examples() {
        assert_eq!(shear(&p(1, 1), &ratio(-5, 4)), Point::new(ratio(-1, 4), int(1)));
        assert_eq!(shear(&p(3, 0), &ratio(7, 3)), p(3, 0));
        assert_eq!(shear(&p(0, -2), &ratio(5, 4)), Point::new(ratio(-5, 2), int(-2)));
    }

    #[test]
    fn line_normalization_is_canonical() {
        let l1 = Line::through(&p(0, 0), &p(2, 4)).unwrap();
        let l2 = Line::through(&p(3, 6), &p(1, 2)).unwrap();
        let l3 = Line::new(&ratio(-1, 3), &ratio(1, 6), &int(0)).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1, l3);
        assert!(Line::new(&int(0), &int(0), &int(1)).is_none());
    }

    #[test]
    fn rational_text_round_trip() {
        assert_eq!(format_rational(&ratio(-6, 8)), "-3/4");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(parse_rational("-3/4"), Some(ratio(-3, 4)));
        assert_eq!(parse_rational("10/2"), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-40i64..40, 1i64..7).prop_map(|(n, d)| ratio(n, d))
    }

    fn point() -> impl Strategy<Value = Point> {
        (small_rational(), small_rational()).prop_map(|(x, y)| Point::new(x, y))
    }

    fn bounded_segment() -> impl Strategy<Value = Segment> {
        (point(), point()).prop_filter_map("degenerate", |(a, b)| (a != b).then(|| Segment::new(a, b)))
    }

    proptest! {
        #[test]
        fn orientation_antisymmetric_and_translation_invariant(
            p in point(), q in point(), r in point(), dx in small_rational(), dy in small_rational()
        ) {
            prop_assert_eq!(orientation(&p, &q, &r), orientation(&p, &r, &q).reversed());
            let t = |v: &Point| Point::new(&v.x + &dx, &v.y + &dy);
            prop_assert_eq!(orientation(&p, &q, &r), orientation(&t(&p), &t(&q), &t(&r)));
        }

        #[test]
        fn shear_has_exact_inverse(p in point(), f in small_rational()) {
            prop_assert_eq!(shear(&shear(&p, &f), &-f.clone()), p);
        }

        #[test]
        fn line_intersection_has_zero_residual(a in point(), b in point(), c in point(), d in point()) {
            if let (Some(l1), Some(l2)) = (Line::through(&a, &b), Line::through(&c, &d)) {
                if let Some(x) = line_intersection(&l1, &l2) {
                    prop_assert!(l1.eval(&x).is_zero());
                    prop_assert!(l2.eval(&x).is_zero());
                }
            }
        }

        #[test]
        fn proper_and_disjoint_are_exclusive(s1 in bounded_segment(), s2 in bounded_segment()) {
            if proper_intersection(&s1, &s2) {
                prop_assert!(!segments_disjoint(&s1, &s2));
            }
            if segments_disjoint(&s1, &s2) {
                prop_assert!(!proper_intersection(&s1, &s2));
            }
        }

        #[test]
        fn homogeneous_orientation_agrees(p in point(), q in point(), r in point()) {
            let (hp, hq, hr) = (HomPoint::new(&p), HomPoint::new(&q), HomPoint::new(&r));
            prop_assert_eq!(hom_orientation(&hp, &hq, &hr), orientation(&p, &q, &r));
            prop_assert_eq!(hom_collinear(&hp, &hq, &hr), collinear(&p, &q, &r));
            if p != q {
                prop_assert_eq!(hom_line(&hp, &hq), Line::through(&p, &q));
            }
        }

        #[test]
        fn touch_is_symmetric(s1 in bounded_segment(), s2 in bounded_segment()) {
            prop_assert_eq!(segments_touch(&s1, &s2), segments_touch(&s2, &s1));
            prop_assert_eq!(proper_intersection(&s1, &s2), proper_intersection(&s2, &s1));
        }
    }
}
