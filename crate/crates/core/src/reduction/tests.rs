use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use super::audit::{audit, collinear_hash_scan, collinear_triple_scan, AuditViolation};
use super::*;
use crate::formula::{validate, ClauseSpec, FormulaSpec, MonotoneFormula, Sign};
use crate::geom::{collinear, int, ratio, Line, Point};

fn spec(variables: usize, clauses: &[(Sign, &[usize])]) -> FormulaSpec {
    FormulaSpec {
        variables,
        clauses: clauses.iter().map(|(sign, vars)| ClauseSpec::Monotone { sign: *sign, vars: vars.to_vec() }).collect(),
    }
}

use Sign::{Negative as N, Positive as P};

fn two_positive() -> FormulaSpec {
    spec(3, &[(P, &[1, 3]), (P, &[1, 2])])
}

fn unsat_six() -> FormulaSpec {
    spec(3, &[(P, &[1, 2]), (P, &[1, 3]), (P, &[2, 3]), (N, &[1, 2]), (N, &[1, 3]), (N, &[2, 3])])
}

fn build(s: &FormulaSpec) -> ReductionInstance {
    build_instance(s, &BuildOptions::default()).expect("builds")
}

fn known_lines(inst: &ReductionInstance) -> HashSet<Line> {
    inst.catalogue.iter().map(|c| c.line.clone()).collect()
}

/// Every collinear triple off the catalogue, by plain rational orientation.
fn brute_triples(points: &[Point], known: &HashSet<Line>) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            for k in j + 1..points.len() {
                if collinear(&points[i], &points[j], &points[k]) {
                    let line = Line::through(&points[i], &points[j]).expect("distinct");
                    if !known.contains(&line) {
                        out.push([i, j, k]);
                    }
                }
            }
        }
    }
    out
}

/// The lexicographically smallest triple on each line, sorted.
fn smallest_per_line(triples: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut out: Vec<[usize; 3]> = Vec::new();
    for t in triples {
        // triples arrive in lexicographic order, so the first on a line wins
        if !out.iter().any(|s| s.iter().filter(|i| t.contains(i)).count() >= 2) {
            out.push(*t);
        }
    }
    out.sort();
    out
}

#[test]
fn small_instance_sizes() {
    let inst = build(&two_positive());
    assert_eq!(inst.points.len(), 2 + 3 * 4);
    assert_eq!(inst.budget, 6);
    for g in &inst.gadgets {
        assert_eq!(g.pos_lines.len(), 2);
        assert_eq!(g.neg_lines.len(), 2);
        let count = inst
            .points
            .iter()
            .filter(|p| matches!(p.tag, PointTag::Gadget { variable, .. } if variable == g.variable))
            .count();
        assert_eq!(count, 4);
    }
}

#[test]
fn unsat_instance_sizes() {
    let inst = build(&unsat_six());
    assert_eq!(inst.points.len(), 6 + 3 * 36);
    assert_eq!(inst.budget, 18);
    assert!(audit(&inst).passed());
}

#[test]
fn invalid_formula_builds_nothing() {
    let err = build_instance(&spec(3, &[(P, &[1, 3]), (P, &[1, 2, 3])]), &BuildOptions::default()).unwrap_err();
    assert!(matches!(err, ReductionError::Formula(_)));
}

#[test]
fn each_bundle_line_carries_its_gadget_points() {
    let inst = build(&unsat_six());
    for entry in &inst.catalogue {
        let gadget_points = entry
            .points
            .iter()
            .filter(|&&i| matches!(inst.points[i].tag, PointTag::Gadget { variable, .. } if variable == entry.variable))
            .count();
        assert_eq!(gadget_points, 6);
        let clause_points = entry.points.len() - gadget_points;
        assert_eq!(clause_points, usize::from(entry.clause.is_some()));
    }
}

#[test]
fn deterministic_rebuild() {
    let a = build(&unsat_six());
    let b = build(&unsat_six());
    assert_eq!(a, b);
    let ja = serde_json::to_string(&InstanceFile::from(&a)).unwrap();
    let jb = serde_json::to_string(&InstanceFile::from(&b)).unwrap();
    assert_eq!(ja, jb);
}

#[test]
fn instance_file_round_trip() {
    let inst = build(&two_positive());
    let file = InstanceFile::from(&inst);
    let text = serde_json::to_string(&file).unwrap();
    let back: InstanceFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_instance().unwrap(), inst);
    let mut forged = back.clone();
    forged.points[0].x += int(1);
    assert!(matches!(forged.to_instance(), Err(InstanceFileError::Inconsistent)));
}

fn reported_triples(report: &audit::AuditReport) -> Vec<[usize; 3]> {
    report
        .violations
        .iter()
        .filter_map(|v| match v {
            AuditViolation::UncataloguedCollinear { triple } => Some(*triple),
            _ => None,
        })
        .collect()
}

#[test]
fn huge_delta_fails_the_audit() {
    let f = validate(&spec(2, &[(P, &[1, 2]), (N, &[1, 2])])).unwrap();
    let skeleton = phase2(&phase1(&f, &default_epsilon(&f)).unwrap(), &f).unwrap();
    // delta = 1 tilts the fillers past the axis, so construction refuses it
    assert!(matches!(assemble(&f, &skeleton, &int(1)), Err(ReductionError::EpsilonTooLarge { .. })));
    let inst = assemble(&f, &skeleton, &ratio(1, 3)).expect("assembles");
    let report = audit(&inst);
    assert!(report.violations.iter().any(|v| matches!(v, AuditViolation::DrawingCrossing { .. })));
    // whatever (b) reports must match brute force
    assert_eq!(reported_triples(&report), smallest_per_line(&brute_triples(&inst.coordinates(), &known_lines(&inst))));
}

#[test]
fn injected_collinearity_is_reported() {
    let mut inst = build(&two_positive());
    let gadget_points: Vec<usize> = (0..inst.points.len())
        .filter(|&i| {
            matches!(
                inst.points[i].tag,
                PointTag::Gadget { variable: 1, pos: 0, neg: 0 } | PointTag::Gadget { variable: 3, pos: 1, neg: 1 }
            )
        })
        .collect();
    let (a, b) = (inst.points[gadget_points[0]].point.clone(), inst.points[gadget_points[1]].point.clone());
    let far = Point::new(&b.x * int(2) - &a.x, &b.y * int(2) - &a.y);
    inst.points.push(InstancePoint { point: far, tag: PointTag::Clause(99) });
    let report = audit(&inst);
    let reported = reported_triples(&report);
    let brute = smallest_per_line(&brute_triples(&inst.coordinates(), &known_lines(&inst)));
    assert!(!reported.is_empty());
    assert_eq!(reported, brute);
}

#[test]
fn triple_and_hash_scans_agree() {
    for s in [two_positive(), unsat_six(), spec(4, &[(P, &[1, 2, 3]), (P, &[3, 4]), (N, &[1, 2]), (N, &[2, 4])])] {
        let inst = build(&s);
        let points = inst.coordinates();
        let known = known_lines(&inst);
        assert_eq!(collinear_triple_scan(&points, &known), collinear_hash_scan(&points, &known));
        assert!(collinear_triple_scan(&points, &known).is_empty());
    }
    // and on a set with many uncatalogued triples
    let grid: Vec<Point> = (0..4).flat_map(|y| (0..4).map(move |x| Point::from_ints(x, y))).collect();
    let none = HashSet::new();
    let triple = collinear_triple_scan(&grid, &none);
    assert_eq!(triple, collinear_hash_scan(&grid, &none));
    assert_eq!(triple, smallest_per_line(&brute_triples(&grid, &none)));
}

#[test]
fn forged_point_breaks_line_incidence() {
    let mut inst = build(&two_positive());
    let entry = inst.catalogue[0].clone();
    let (a, b) = (&inst.points[entry.points[0]].point, &inst.points[entry.points[1]].point);
    let mid = Point::new((&a.x + &b.x) * ratio(1, 2), (&a.y + &b.y) * ratio(1, 2));
    inst.points.push(InstancePoint { point: mid, tag: PointTag::Clause(99) });
    let forged = inst.points.len() - 1;
    let report = audit(&inst);
    assert!(report.violations.iter().any(|v| matches!(
        v,
        AuditViolation::LineIncidence { line: 0, extra, .. } if extra.contains(&forged)
    )));
}

#[test]
fn slope_signs_after_shear() {
    let inst = build(&unsat_six());
    let f = &inst.formula;
    for e in &inst.skeleton.edges {
        let slope = e.segment.line().unwrap().slope().expect("edges are not vertical");
        match f.clauses()[e.clause].sign {
            Sign::Positive => assert!(slope.is_negative()),
            Sign::Negative => assert!(slope.is_positive()),
        }
    }
}

#[test]
fn coordinate_bits_within_bound() {
    for s in [two_positive(), unsat_six()] {
        let inst = build(&s);
        let bound = coordinate_bit_bound(inst.formula.variables(), inst.formula.clause_count(), inst.retry);
        assert!(inst.max_coordinate_bits() <= bound);
    }
}

fn nested_formula() -> MonotoneFormula {
    validate(&spec(5, &[(P, &[1, 5]), (P, &[2, 4]), (P, &[2, 3]), (N, &[1, 5]), (N, &[2, 3])])).unwrap()
}

#[test]
fn levels_are_strictly_lower() {
    let f = nested_formula();
    let s = phase1(&f, &default_epsilon(&f)).unwrap();
    for sign in [Sign::Positive, Sign::Negative] {
        let heights: Vec<(usize, crate::geom::Rational)> = f
            .clauses()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.sign == sign)
            .map(|(i, c)| (c.level, s.clause_points[i].y.abs()))
            .collect();
        for (ha, ya) in &heights {
            for (hb, yb) in &heights {
                if ha < hb {
                    assert!(ya > yb, "level {ha} at {ya} not above level {hb} at {yb}");
                }
            }
        }
    }
}

#[test]
fn apexes_straddle_the_axis() {
    let inst = build(&two_positive());
    for g in &inst.gadgets {
        assert!(g.pos_apex.y.is_negative());
        assert!(g.neg_apex.y.is_positive());
        assert_eq!(g.pos_apex.x, int(g.variable as i64));
        assert!(!inst.points.iter().any(|p| p.point == g.pos_apex || p.point == g.neg_apex));
    }
    assert!(inst.delta > crate::geom::Rational::zero() && inst.delta < crate::geom::Rational::one());
}

fn positive_chain() -> impl Strategy<Value = FormulaSpec> {
    // disjoint two-variable clauses on alternating sides always validate
    (2usize..=5, any::<u8>()).prop_map(|(n, signs)| {
        let clauses = (1..n)
            .map(|v| {
                let sign = if signs >> (v % 8) & 1 == 1 { P } else { N };
                ClauseSpec::Monotone { sign, vars: vec![v, v + 1] }
            })
            .collect();
        FormulaSpec { variables: n, clauses }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn size_law_holds(s in positive_chain()) {
        if let Ok(inst) = build_instance(&s, &BuildOptions::default()) {
            let (n, m) = (inst.formula.variables(), inst.formula.clause_count());
            prop_assert_eq!(inst.points.len(), m + n * m * m);
            prop_assert_eq!(inst.budget, n * m);
            prop_assert!(audit(&inst).passed());
        }
    }
}
