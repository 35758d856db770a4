//! Bundled formulas and point sets, compiled into the crate.

use crate::formula::FormulaSpec;
use crate::geom::Point;
use serde::Deserialize;

/// `(name, formula.json text)` for every bundled formula.
pub const FORMULAS: [(&str, &str); 12] = [
    ("two-nested-positive", include_str!("../corpus/two-nested-positive.json")),
    ("mirrored-pair", include_str!("../corpus/mirrored-pair.json")),
    ("mirrored-triple", include_str!("../corpus/mirrored-triple.json")),
    ("unsat-six", include_str!("../corpus/unsat-six.json")),
    ("four-var-mixed", include_str!("../corpus/four-var-mixed.json")),
    ("four-var-nested", include_str!("../corpus/four-var-nested.json")),
    ("four-var-crossed", include_str!("../corpus/four-var-crossed.json")),
    ("three-var-chain", include_str!("../corpus/three-var-chain.json")),
    ("four-var-wide", include_str!("../corpus/four-var-wide.json")),
    ("negative-only", include_str!("../corpus/negative-only.json")),
    ("four-var-five", include_str!("../corpus/four-var-five.json")),
    ("four-var-six", include_str!("../corpus/four-var-six.json")),
];

/// Nine points whose disjoint-segment minimum is 3 while guillotine cuts
/// need 4.
pub const NINE_POINT_GAP: &str = include_str!("../corpus/nine-point-gap.points.json");

/// `points.json`: `{"points": [["x", "y"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, Deserialize)]
pub struct PointsFile {
    pub points: Vec<Point>,
}

pub fn formula(name: &str) -> Option<FormulaSpec> {
    FORMULAS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| serde_json::from_str(text).expect("bundled formulas parse"))
}

pub fn formulas() -> Vec<(&'static str, FormulaSpec)> {
    FORMULAS.iter().map(|(n, text)| (*n, serde_json::from_str(text).expect("bundled formulas parse"))).collect()
}

pub fn nine_point_gap() -> Vec<Point> {
    serde_json::from_str::<PointsFile>(NINE_POINT_GAP).expect("bundled points parse").points
}
