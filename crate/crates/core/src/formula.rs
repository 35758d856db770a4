//! Rectilinear planar monotone 3-SAT formulas.
//!
//! A formula is given by its variable order and its clauses; the order plus
//! the clause spans carry all the combinatorial content of the rectilinear
//! drawing (positive clauses above the variable line, negative below).
//! Validation checks that such a drawing exists for the given order and
//! derives the nesting level of every clause.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "pos")]
    Positive,
    #[serde(rename = "neg")]
    Negative,
}

impl Sign {
    /// The truth value that satisfies a literal of this sign.
    pub fn satisfied_by(self, value: bool) -> bool {
        match self {
            Sign::Positive => value,
            Sign::Negative => !value,
        }
    }
}

/// One clause as written in `formula.json`: either `{"sign", "vars"}` or a
/// DIMACS-style signed `{"literals"}` list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClauseSpec {
    Monotone { sign: Sign, vars: Vec<usize> },
    Literals { literals: Vec<i64> },
}

/// Unvalidated `formula.json` content. Variables are 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaSpec {
    pub variables: usize,
    pub clauses: Vec<ClauseSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub sign: Sign,
    /// Strictly ascending, 1-indexed, two or three entries.
    pub vars: Vec<usize>,
    /// Number of same-side clauses whose span contains this one.
    pub level: usize,
}

impl Clause {
    pub fn first(&self) -> usize {
        self.vars[0]
    }

    pub fn last(&self) -> usize {
        *self.vars.last().expect("clauses are non-empty")
    }

    /// `last - first`.
    pub fn span(&self) -> usize {
        self.last() - self.first()
    }

    pub fn contains_var(&self, v: usize) -> bool {
        self.vars.binary_search(&v).is_ok()
    }

    fn span_within(&self, outer: &Clause) -> bool {
        outer.first() <= self.first() && self.last() <= outer.last()
    }

    pub fn satisfied_by(&self, assignment: &Assignment) -> bool {
        self.vars.iter().any(|&v| self.sign.satisfied_by(assignment.value(v)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("formula must have at least one variable")]
    NoVariables,
    #[error("formula must have at least one clause")]
    NoClauses,
    #[error("clause {clause} mixes positive and negative literals")]
    NonMonotoneClause { clause: usize },
    #[error("clause {clause} has {size} literals; at least 2 are required")]
    ClauseTooSmall { clause: usize, size: usize },
    #[error("clause {clause} has {size} literals; at most 3 are allowed")]
    ClauseTooLarge { clause: usize, size: usize },
    #[error("clause {clause} references variable {var} outside 1..={variables}")]
    VariableOutOfRange { clause: usize, var: usize, variables: usize },
    #[error("clause {clause} variables are not strictly ascending")]
    UnsortedVariables { clause: usize },
    #[error("clauses {first} and {second} are identical")]
    DuplicateClause { first: usize, second: usize },
    #[error("clause {inner} is contained in clause {outer}")]
    ClauseContainment { inner: usize, outer: usize },
    #[error("clauses {first} and {second} cannot be drawn without crossing in this variable order")]
    InterleavingSpans { first: usize, second: usize },
}

/// A validated formula with nesting levels populated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneFormula {
    variables: usize,
    clauses: Vec<Clause>,
}

impl MonotoneFormula {
    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// The formula in its file form.
    pub fn to_spec(&self) -> FormulaSpec {
        FormulaSpec {
            variables: self.variables,
            clauses: self.clauses.iter().map(|c| ClauseSpec::Monotone { sign: c.sign, vars: c.vars.clone() }).collect(),
        }
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        assignment.len() == self.variables && self.clauses.iter().all(|c| c.satisfied_by(assignment))
    }

    /// Index of the first clause the assignment falsifies.
    pub fn first_falsified(&self, assignment: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.satisfied_by(assignment))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Self(values)
    }

    pub fn all(n: usize, value: bool) -> Self {
        Self(vec![value; n])
    }

    /// Value of the 1-indexed variable `v`.
    pub fn value(&self, v: usize) -> bool {
        self.0[v - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn normalize_clause(index: usize, spec: &ClauseSpec, variables: usize) -> Result<(Sign, Vec<usize>), FormulaError> {
    let (sign, vars) = match spec {
        ClauseSpec::Monotone { sign, vars } => (*sign, vars.clone()),
        ClauseSpec::Literals { literals } => {
            let positive = literals.iter().all(|&l| l > 0);
            let negative = literals.iter().all(|&l| l < 0);
            if !positive && !negative {
                return Err(FormulaError::NonMonotoneClause { clause: index });
            }
            let sign = if positive { Sign::Positive } else { Sign::Negative };
            (sign, literals.iter().map(|l| l.unsigned_abs() as usize).collect())
        }
    };
    if vars.len() < 2 {
        return Err(FormulaError::ClauseTooSmall { clause: index, size: vars.len() });
    }
    if vars.len() > 3 {
        return Err(FormulaError::ClauseTooLarge { clause: index, size: vars.len() });
    }
    if let Some(&var) = vars.iter().find(|&&v| v == 0 || v > variables) {
        return Err(FormulaError::VariableOutOfRange { clause: index, var, variables });
    }
    if vars.windows(2).any(|w| w[0] >= w[1]) {
        return Err(FormulaError::UnsortedVariables { clause: index });
    }
    Ok((sign, vars))
}

/// Two same-side clauses whose boxes and vertical edges would cross.
fn crosses(c: &Clause, d: &Clause) -> bool {
    let (i, k) = (c.first(), c.last());
    let (i2, k2) = (d.first(), d.last());
    if (i < i2 && i2 < k && k < k2) || (i2 < i && i < k2 && k2 < k) {
        return true;
    }
    // an edge of the outer clause running through the inner clause's box
    let through = |outer: &Clause, inner: &Clause| {
        inner.span_within(outer) && outer.vars.iter().any(|&v| inner.first() < v && v < inner.last())
    };
    through(c, d) || through(d, c)
}

/// Validates a raw formula and derives nesting levels.
pub fn validate(spec: &FormulaSpec) -> Result<MonotoneFormula, FormulaError> {
    if spec.variables == 0 {
        return Err(FormulaError::NoVariables);
    }
    if spec.clauses.is_empty() {
        return Err(FormulaError::NoClauses);
    }
    let mut clauses = Vec::with_capacity(spec.clauses.len());
    for (index, raw) in spec.clauses.iter().enumerate() {
        let (sign, vars) = normalize_clause(index, raw, spec.variables)?;
        clauses.push(Clause { sign, vars, level: 0 });
    }

    for (j, d) in clauses.iter().enumerate() {
        for (i, c) in clauses[..j].iter().enumerate() {
            if c.sign != d.sign {
                continue;
            }
            if c.vars == d.vars {
                return Err(FormulaError::DuplicateClause { first: i, second: j });
            }
            if c.vars.iter().all(|v| d.contains_var(*v)) {
                return Err(FormulaError::ClauseContainment { inner: i, outer: j });
            }
            if d.vars.iter().all(|v| c.contains_var(*v)) {
                return Err(FormulaError::ClauseContainment { inner: j, outer: i });
            }
            if crosses(c, d) {
                return Err(FormulaError::InterleavingSpans { first: i, second: j });
            }
        }
    }

    let levels: Vec<usize> = clauses
        .iter()
        .enumerate()
        .map(|(i, c)| {
            clauses.iter().enumerate().filter(|&(j, d)| j != i && d.sign == c.sign && c.span_within(d)).count()
        })
        .collect();
    for (clause, level) in clauses.iter_mut().zip(levels) {
        clause.level = level;
    }
    Ok(MonotoneFormula { variables: spec.variables, clauses })
}

/// Lexicographically smallest satisfying assignment (false before true,
/// variable 1 first), found by depth-first enumeration that abandons a
/// branch as soon as some clause has all its variables assigned and false.
pub fn sat_solve(formula: &MonotoneFormula) -> Option<Assignment> {
    let n = formula.variables();
    // clauses indexed by their largest variable: decided once it is assigned
    let mut decided_at: Vec<Vec<&Clause>> = vec![Vec::new(); n + 1];
    for clause in formula.clauses() {
        decided_at[clause.last()].push(clause);
    }
    let mut values = vec![false; n];

    fn descend(depth: usize, values: &mut Vec<bool>, decided_at: &[Vec<&Clause>]) -> bool {
        if depth == values.len() {
            return true;
        }
        for value in [false, true] {
            values[depth] = value;
            let var = depth + 1;
            let ok = decided_at[var].iter().all(|c| c.vars.iter().any(|&v| c.sign.satisfied_by(values[v - 1])));
            if ok && descend(depth + 1, values, decided_at) {
                return true;
            }
        }
        false
    }

    descend(0, &mut values, &decided_at).then(|| Assignment::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pos(vars: &[usize]) -> ClauseSpec {
        ClauseSpec::Monotone { sign: Sign::Positive, vars: vars.to_vec() }
    }

    fn neg(vars: &[usize]) -> ClauseSpec {
        ClauseSpec::Monotone { sign: Sign::Negative, vars: vars.to_vec() }
    }

    fn spec(variables: usize, clauses: Vec<ClauseSpec>) -> FormulaSpec {
        FormulaSpec { variables, clauses }
    }

    /// Full truth table in lexicographic order.
    fn truth_table(formula: &MonotoneFormula) -> Option<Assignment> {
        let n = formula.variables();
        (0u32..1 << n)
            .map(|mask| Assignment::new((0..n).map(|i| mask >> (n - 1 - i) & 1 == 1).collect()))
            .find(|a| formula.is_satisfied_by(a))
    }

    #[test]
    fn nesting_levels_follow_span_containment() {
        let f = validate(&spec(3, vec![pos(&[1, 3]), pos(&[1, 2])])).unwrap();
        assert_eq!(f.clauses()[0].level, 0);
        assert_eq!(f.clauses()[1].level, 1);
    }

    #[test]
    fn duplicate_clause_rejected() {
        let err = validate(&spec(2, vec![pos(&[1, 2]), pos(&[1, 2])])).unwrap_err();
        assert_eq!(err, FormulaError::DuplicateClause { first: 0, second: 1 });
    }

    #[test]
    fn contained_clause_rejected() {
        let err = validate(&spec(3, vec![pos(&[1, 3]), pos(&[1, 2, 3])])).unwrap_err();
        assert_eq!(err, FormulaError::ClauseContainment { inner: 0, outer: 1 });
    }

    #[test]
    fn opposite_signs_never_contain_each_other() {
        let f = validate(&spec(2, vec![pos(&[1, 2]), neg(&[1, 2])])).unwrap();
        assert_eq!(f.clause_count(), 2);
    }

    #[test]
    fn interleaving_rejected_but_shared_endpoints_allowed() {
        let err = validate(&spec(4, vec![pos(&[1, 3]), pos(&[2, 4])])).unwrap_err();
        assert_eq!(err, FormulaError::InterleavingSpans { first: 0, second: 1 });
        // the same spans on opposite sides do not interact
        assert!(validate(&spec(4, vec![pos(&[1, 3]), neg(&[2, 4])])).is_ok());
        assert!(validate(&spec(3, vec![pos(&[1, 2]), pos(&[2, 3])])).is_ok());
    }

    #[test]
    fn middle_edge_through_nested_clause_rejected() {
        let err = validate(&spec(5, vec![pos(&[1, 3, 5]), pos(&[2, 4])])).unwrap_err();
        assert_eq!(err, FormulaError::InterleavingSpans { first: 0, second: 1 });
        let err = validate(&spec(4, vec![pos(&[1, 2, 4]), pos(&[1, 3, 4])])).unwrap_err();
        assert_eq!(err, FormulaError::InterleavingSpans { first: 0, second: 1 });
        // middle variable on the inner clause's boundary is fine
        assert!(validate(&spec(5, vec![pos(&[1, 2, 5]), pos(&[2, 4])])).is_ok());
    }

    #[test]
    fn structural_errors() {
        assert_eq!(
            validate(&spec(3, vec![pos(&[1])])).unwrap_err(),
            FormulaError::ClauseTooSmall { clause: 0, size: 1 }
        );
        assert_eq!(
            validate(&spec(4, vec![pos(&[1, 2, 3, 4])])).unwrap_err(),
            FormulaError::ClauseTooLarge { clause: 0, size: 4 }
        );
        assert_eq!(
            validate(&spec(2, vec![pos(&[1, 3])])).unwrap_err(),
            FormulaError::VariableOutOfRange { clause: 0, var: 3, variables: 2 }
        );
        assert_eq!(validate(&spec(3, vec![pos(&[2, 1])])).unwrap_err(), FormulaError::UnsortedVariables { clause: 0 });
        assert_eq!(
            validate(&spec(3, vec![ClauseSpec::Literals { literals: vec![1, -2] }])).unwrap_err(),
            FormulaError::NonMonotoneClause { clause: 0 }
        );
        assert_eq!(validate(&spec(0, vec![])).unwrap_err(), FormulaError::NoVariables);
    }

    #[test]
    fn literal_form_is_accepted() {
        let f = validate(&spec(3, vec![ClauseSpec::Literals { literals: vec![-1, -3] }])).unwrap();
        assert_eq!(f.clauses()[0].sign, Sign::Negative);
        assert_eq!(f.clauses()[0].vars, vec![1, 3]);
    }

    #[test]
    fn json_shape() {
        let text = r#"{"variables":3,"clauses":[{"sign":"pos","vars":[1,3]},{"sign":"neg","vars":[1,2]}]}"#;
        let parsed: FormulaSpec = serde_json::from_str(text).unwrap();
        assert_eq!(parsed, spec(3, vec![pos(&[1, 3]), neg(&[1, 2])]));
        assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
    }

    #[test]
    fn sat_examples() {
        let f = validate(&spec(2, vec![pos(&[1, 2]), neg(&[1, 2])])).unwrap();
        assert_eq!(sat_solve(&f), Some(Assignment::new(vec![false, true])));

        let unsat = validate(&spec(
            3,
            vec![pos(&[1, 2]), pos(&[1, 3]), pos(&[2, 3]), neg(&[1, 2]), neg(&[1, 3]), neg(&[2, 3])],
        ))
        .unwrap();
        assert_eq!(sat_solve(&unsat), None);
        assert_eq!(truth_table(&unsat), None);

        let positive = validate(&spec(4, vec![pos(&[1, 4]), pos(&[2, 3])])).unwrap();
        let a = sat_solve(&positive).unwrap();
        assert!(positive.is_satisfied_by(&Assignment::all(4, true)));
        assert!(positive.is_satisfied_by(&a));
    }

    fn clause_strategy(n: usize) -> impl Strategy<Value = ClauseSpec> {
        (any::<bool>(), proptest::sample::subsequence((1..=n).collect::<Vec<_>>(), 2..=3)).prop_map(|(p, vars)| {
            if p {
                pos(&vars)
            } else {
                neg(&vars)
            }
        })
    }

    fn formula_strategy() -> impl Strategy<Value = FormulaSpec> {
        (3usize..=12)
            .prop_flat_map(|n| proptest::collection::vec(clause_strategy(n), 1..8).prop_map(move |c| spec(n, c)))
    }

    proptest! {
        #[test]
        fn sat_solve_matches_truth_table(raw in formula_strategy()) {
            if let Ok(f) = validate(&raw) {
                prop_assert_eq!(sat_solve(&f), truth_table(&f));
            }
        }

        #[test]
        fn validate_is_idempotent(raw in formula_strategy()) {
            if let Ok(f) = validate(&raw) {
                prop_assert_eq!(validate(&f.to_spec()), Ok(f));
            }
        }

        #[test]
        fn levels_respect_strict_containment(raw in formula_strategy()) {
            if let Ok(f) = validate(&raw) {
                for c in f.clauses() {
                    for d in f.clauses() {
                        let strictly_inside = c.sign == d.sign && d != c && d.span_within(c);
                        if strictly_inside {
                            prop_assert!(d.level > c.level);
                        }
                    }
                }
            }
        }
    }
}
