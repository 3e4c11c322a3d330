//! Translation of quantified statements into linear constraints over the atom
//! cardinalities `x_0 .. x_{K-1}`, plus the structural constraints and the
//! conclusion objective.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::interval::Interval;
use crate::quantifier::{Family, QuantifierError, Unit};
use crate::syllogism::{ConclusionTemplate, Statement, Syllogism};
use crate::term::{atoms_of, check_size, AtomSet, PropertySet, TermError, TermExpr};

/// Sparse linear combination of atom cardinalities plus a constant.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearExpr {
    terms: BTreeMap<usize, f64>,
    constant: f64,
}

impl LinearExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(k: usize) -> Self {
        let mut e = Self::zero();
        e.add_term(k, 1.0);
        e
    }

    /// `Σ_{k ∈ set} x_k`.
    pub fn sum_of(set: &AtomSet) -> Self {
        Self {
            terms: set.iter().map(|k| (k, 1.0)).collect(),
            constant: 0.0,
        }
    }

    pub fn add_term(&mut self, k: usize, coef: f64) {
        let c = self.terms.entry(k).or_insert(0.0);
        *c += coef;
        if *c == 0.0 {
            self.terms.remove(&k);
        }
    }

    /// `self + factor · other`.
    pub fn plus_scaled(mut self, other: &LinearExpr, factor: f64) -> Self {
        for (&k, &c) in &other.terms {
            self.add_term(k, factor * c);
        }
        self.constant += factor * other.constant;
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coefficient(&self, k: usize) -> f64 {
        self.terms.get(&k).copied().unwrap_or(0.0)
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant == 0.0
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.constant + self.terms().map(|(k, c)| c * x[k]).sum::<f64>()
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            let (sign, mag) = if c < 0.0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag != 1.0 {
                write!(f, "{mag}·")?;
            }
            write!(f, "x{k}")?;
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)?;
        } else if self.constant != 0.0 {
            write!(f, " + {}", self.constant)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
    Lt,
    Gt,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Lt => "<",
            Relation::Gt => ">",
        }
    }
}

/// `expr relation rhs`. `unit` tells the strict-inequality rewrite which
/// margin to use.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub expr: LinearExpr,
    pub relation: Relation,
    pub rhs: f64,
    pub unit: Unit,
}

impl Constraint {
    pub fn new(expr: LinearExpr, relation: Relation, rhs: f64, unit: Unit) -> Self {
        Self {
            expr,
            relation,
            rhs,
            unit,
        }
    }

    /// Checks the constraint at point `x`; non-strict relations get `tol` slack.
    pub fn holds(&self, x: &[f64], tol: f64) -> bool {
        let lhs = self.expr.eval(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs + tol,
            Relation::Ge => lhs >= self.rhs - tol,
            Relation::Eq => (lhs - self.rhs).abs() <= tol,
            Relation::Lt => lhs < self.rhs - tol,
            Relation::Gt => lhs > self.rhs + tol,
        }
    }

    /// `x_k >= 0`, already implied by the solver's variable bounds.
    pub fn is_nonnegativity(&self) -> bool {
        self.relation == Relation::Ge
            && self.rhs == 0.0
            && self.expr.constant() == 0.0
            && self.expr.terms.len() == 1
            && self.expr.terms.values().all(|&c| c > 0.0)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.expr, self.relation.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    Linear,
    Fractional,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Objective {
    pub numerator: LinearExpr,
    pub denominator: Option<LinearExpr>,
}

impl Objective {
    pub fn kind(&self) -> ObjectiveKind {
        if self.denominator.is_some() {
            ObjectiveKind::Fractional
        } else {
            ObjectiveKind::Linear
        }
    }

    /// Objective value at `x`; `None` when a fractional denominator vanishes.
    pub fn eval(&self, x: &[f64]) -> Option<f64> {
        let n = self.numerator.eval(x);
        match &self.denominator {
            None => Some(n),
            Some(d) => {
                let d = d.eval(x);
                (d != 0.0).then(|| n / d)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompileWarning {
    /// Count and proportion quantifiers in the same syllogism.
    MixedUnits,
}

impl fmt::Display for CompileWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompileWarning::MixedUnits => f.write_str(
                "syllogism mixes absolute and proportional quantifiers; the result relies on the declared universe size and is not guaranteed",
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSystem {
    pub atom_count: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Objective,
    pub universe_size: Option<f64>,
    pub warnings: Vec<CompileWarning>,
}

/// Atom sets of a statement's two terms.
#[derive(Debug, Clone)]
pub struct TermAtoms {
    pub restriction: AtomSet,
    pub scope: AtomSet,
}

impl TermAtoms {
    pub fn resolve(restriction: &TermExpr, scope: &TermExpr, props: &PropertySet) -> Result<Self, CompileError> {
        Ok(Self {
            restriction: atoms_of(restriction, props)?,
            scope: atoms_of(scope, props)?,
        })
    }
}

/// The family's measure as `(numerator, denominator)`; the denominator is
/// present only for ratio families.
///
/// Logical families have no numeric measure and return the set whose emptiness
/// they test.
pub fn family_measure(family: Family, atoms: &TermAtoms) -> (LinearExpr, Option<LinearExpr>) {
    let a = &atoms.restriction;
    let b = &atoms.scope;
    match family {
        Family::All | Family::NotAll | Family::Exception => (LinearExpr::sum_of(&a.difference(b)), None),
        Family::None | Family::Some | Family::Absolute => (LinearExpr::sum_of(&a.intersection(b)), None),
        Family::ComparativeAbsolute => (
            LinearExpr::sum_of(a).plus_scaled(&LinearExpr::sum_of(b), -1.0),
            None,
        ),
        Family::Proportional => (
            LinearExpr::sum_of(&a.intersection(b)),
            Some(LinearExpr::sum_of(a)),
        ),
        Family::ComparativeProportional => (LinearExpr::sum_of(a), Some(LinearExpr::sum_of(b))),
        Family::Similarity => (
            LinearExpr::sum_of(&a.intersection(b)),
            Some(LinearExpr::sum_of(&a.union(b))),
        ),
    }
}

/// Constraints equivalent to `stmt` holding with its quantifier read as `bound`.
///
/// Logical families ignore `bound`; every other family requires one.
pub fn compile_statement(
    stmt: &Statement,
    bound: Option<&Interval>,
    props: &PropertySet,
) -> Result<Vec<Constraint>, CompileError> {
    let atoms = TermAtoms::resolve(&stmt.restriction, &stmt.scope, props)?;
    compile_measure(stmt.family(), &atoms, bound)
}

pub(crate) fn compile_measure(
    family: Family,
    atoms: &TermAtoms,
    bound: Option<&Interval>,
) -> Result<Vec<Constraint>, CompileError> {
    let (num, den) = family_measure(family, atoms);
    let count = |rel| vec![Constraint::new(num.clone(), rel, 0.0, Unit::Count)];
    match family {
        Family::All | Family::None => return Ok(count(Relation::Eq)),
        Family::Some | Family::NotAll => return Ok(count(Relation::Gt)),
        _ => {}
    }
    let bound = bound.ok_or(CompileError::MissingBound(family))?;
    family.check_bound(bound)?;
    let lo_rel = if bound.lo_strict { Relation::Gt } else { Relation::Ge };
    let hi_rel = if bound.hi_strict { Relation::Lt } else { Relation::Le };
    let mut out = Vec::with_capacity(2);
    match den {
        None => {
            out.push(Constraint::new(num.clone(), lo_rel, bound.lo, Unit::Count));
            if !bound.hi_unbounded() {
                out.push(Constraint::new(num, hi_rel, bound.hi, Unit::Count));
            }
        }
        Some(den) => {
            // lo·den <= num <= hi·den, cross-multiplied to stay linear
            out.push(Constraint::new(
                num.clone().plus_scaled(&den, -bound.lo),
                lo_rel,
                0.0,
                Unit::Proportion,
            ));
            if !bound.hi_unbounded() {
                out.push(Constraint::new(
                    num.plus_scaled(&den, -bound.hi),
                    hi_rel,
                    0.0,
                    Unit::Proportion,
                ));
            }
        }
    }
    Ok(out)
}

/// Nonnegativity of every atom, positivity of every ratio denominator when
/// any ratio family is involved, and `Σ x_k = |E|` when the universe is given.
pub fn structural_constraints(
    atom_count: usize,
    premises: &[Statement],
    conclusion: &ConclusionTemplate,
    universe_size: Option<f64>,
    props: &PropertySet,
) -> Result<(Vec<Constraint>, Vec<CompileWarning>), CompileError> {
    let mut out: Vec<Constraint> = (0..atom_count)
        .map(|k| Constraint::new(LinearExpr::var(k), Relation::Ge, 0.0, Unit::Count))
        .collect();
    let mut warnings = Vec::new();

    let families: Vec<Family> = premises
        .iter()
        .map(Statement::family)
        .chain([conclusion.family])
        .collect();
    let has_count = families.iter().any(|f| f.unit() == Some(Unit::Count));
    let has_ratio = families.iter().any(|f| f.is_ratio());
    if has_count && has_ratio {
        if universe_size.is_none() {
            return Err(CompileError::UnitMixing);
        }
        warnings.push(CompileWarning::MixedUnits);
    }

    if has_ratio {
        let terms = premises
            .iter()
            .map(|p| (p.family(), &p.restriction, &p.scope))
            .chain([(conclusion.family, &conclusion.restriction, &conclusion.scope)]);
        for (family, r, s) in terms {
            if !family.is_ratio() {
                continue;
            }
            let atoms = TermAtoms::resolve(r, s, props)?;
            if let (_, Some(den)) = family_measure(family, &atoms) {
                out.push(Constraint::new(den, Relation::Gt, 0.0, Unit::Proportion));
            }
        }
    }

    if let Some(e) = universe_size {
        let all = AtomSet::full(atom_count.trailing_zeros());
        out.push(Constraint::new(LinearExpr::sum_of(&all), Relation::Eq, e, Unit::Count));
    }
    Ok((out, warnings))
}

/// Objective whose range over the feasible region is the conclusion's quantifier.
pub fn build_objective(conclusion: &ConclusionTemplate, props: &PropertySet) -> Result<Objective, CompileError> {
    if conclusion.family.is_logical() {
        return Err(CompileError::LogicalConclusion(conclusion.family));
    }
    let atoms = TermAtoms::resolve(&conclusion.restriction, &conclusion.scope, props)?;
    let (numerator, denominator) = family_measure(conclusion.family, &atoms);
    Ok(Objective {
        numerator,
        denominator,
    })
}

/// Full system for `syl` with premise `i` read at `bounds[i]`.
pub fn compile_system(
    syl: &Syllogism,
    bounds: &[Option<Interval>],
    max_properties: usize,
) -> Result<ConstraintSystem, CompileError> {
    let props = syl.properties();
    check_size(props, max_properties)?;
    assert_eq!(bounds.len(), syl.premises().len(), "one bound per premise");
    let atom_count = props.atom_count();
    // Logical statements have no unit of their own. In a purely proportional
    // syllogism their strict margins must scale with the universe too.
    let any_count = syl
        .premises()
        .iter()
        .map(Statement::family)
        .chain([syl.conclusion().family])
        .any(|f| f.unit() == Some(Unit::Count));
    let logical_unit = if any_count { Unit::Count } else { Unit::Proportion };
    let mut constraints = Vec::new();
    for (stmt, bound) in syl.premises().iter().zip(bounds) {
        let mut cs = compile_statement(stmt, bound.as_ref(), props)?;
        if stmt.family().is_logical() {
            cs.iter_mut().for_each(|c| c.unit = logical_unit);
        }
        constraints.extend(cs);
    }
    let (structural, warnings) =
        structural_constraints(atom_count, syl.premises(), syl.conclusion(), syl.universe(), props)?;
    constraints.extend(structural);
    let objective = build_objective(syl.conclusion(), props)?;
    Ok(ConstraintSystem {
        atom_count,
        constraints,
        objective,
        universe_size: syl.universe(),
        warnings,
    })
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CompileError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Quantifier(#[from] QuantifierError),
    #[error("quantifier `{0}` needs a numeric bound")]
    MissingBound(Family),
    #[error("conclusion cannot use the logical quantifier `{0}`")]
    LogicalConclusion(Family),
    #[error(
        "syllogism mixes absolute and proportional quantifiers; declare a universe size to proceed"
    )]
    UnitMixing,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantifier::QuantifierSpec;

    fn p(name: &str) -> TermExpr {
        TermExpr::prop(name)
    }

    #[test]
    fn between_three_and_six() {
        let props = PropertySet::new(["Y1", "Y2"]).unwrap();
        let stmt = Statement::new(
            QuantifierSpec::crisp(Family::Absolute, 3.0, 6.0).unwrap(),
            p("Y1"),
            p("Y2"),
        );
        let cs = compile_statement(&stmt, Some(&Interval::closed(3.0, 6.0)), &props).unwrap();
        assert_eq!(
            cs,
            vec![
                Constraint::new(LinearExpr::var(3), Relation::Ge, 3.0, Unit::Count),
                Constraint::new(LinearExpr::var(3), Relation::Le, 6.0, Unit::Count),
            ]
        );
    }

    #[test]
    fn all_but_two_animals_are_dogs() {
        let props = PropertySet::new(["dog", "cat", "parrot"]).unwrap();
        let stmt = Statement::new(
            QuantifierSpec::crisp(Family::Exception, 2.0, 2.0).unwrap(),
            TermExpr::Universe,
            p("dog"),
        );
        let cs = compile_statement(&stmt, Some(&Interval::point(2.0)), &props).unwrap();
        // the four atoms outside `dog`
        let expected = LinearExpr::sum_of(&AtomSet::from_indices(3, [0, 2, 4, 6]));
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.expr == expected && c.rhs == 2.0));
    }

    #[test]
    fn vacuous_all() {
        let props = PropertySet::new(["a", "b"]).unwrap();
        let stmt = Statement::new(
            QuantifierSpec::logical(Family::All).unwrap(),
            p("a"),
            p("a").or(p("b")),
        );
        let cs = compile_statement(&stmt, None, &props).unwrap();
        assert_eq!(cs.len(), 1);
        assert!(cs[0].expr.is_zero());
        assert!(cs[0].holds(&[0.0; 4], 0.0));
    }

    #[test]
    fn proportional_is_cross_multiplied() {
        let props = PropertySet::new(["a", "b"]).unwrap();
        let stmt = Statement::new(
            QuantifierSpec::crisp(Family::Proportional, 0.25, 0.5).unwrap(),
            p("a"),
            p("b"),
        );
        let cs = compile_statement(&stmt, Some(&Interval::closed(0.25, 0.5)), &props).unwrap();
        // x3 - 0.25(x1 + x3) >= 0 ; x3 - 0.5(x1 + x3) <= 0
        assert_eq!(cs[0].expr.coefficient(1), -0.25);
        assert_eq!(cs[0].expr.coefficient(3), 0.75);
        assert_eq!(cs[1].expr.coefficient(1), -0.5);
        assert_eq!(cs[1].expr.coefficient(3), 0.5);
        assert_eq!(cs[1].relation, Relation::Le);
    }

    #[test]
    fn unbounded_hi_emits_lower_only() {
        let props = PropertySet::new(["a", "b"]).unwrap();
        let stmt = Statement::new(
            QuantifierSpec::crisp(Family::Absolute, 25.0, f64::INFINITY).unwrap(),
            p("a"),
            p("b"),
        );
        let cs = compile_statement(&stmt, Some(&Interval::at_least(25.0)), &props).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].relation, Relation::Ge);
    }

    #[test]
    fn unit_mismatch_rejected() {
        let props = PropertySet::new(["a", "b"]).unwrap();
        let stmt = Statement::new(
            QuantifierSpec::crisp(Family::Proportional, 0.2, 0.4).unwrap(),
            p("a"),
            p("b"),
        );
        let err = compile_statement(&stmt, Some(&Interval::closed(0.5, 1.5)), &props).unwrap_err();
        assert!(matches!(err, CompileError::Quantifier(QuantifierError::BoundOutOfDomain { .. })));
        assert_eq!(
            compile_statement(&stmt, None, &props),
            Err(CompileError::MissingBound(Family::Proportional))
        );
    }

    fn concl(family: Family, r: TermExpr, s: TermExpr) -> ConclusionTemplate {
        ConclusionTemplate {
            family,
            restriction: r,
            scope: s,
        }
    }

    #[test]
    fn structural_baseline() {
        let props = PropertySet::new(["a", "b", "c"]).unwrap();
        let prem = Statement::new(
            QuantifierSpec::crisp(Family::Absolute, 1.0, 2.0).unwrap(),
            p("a"),
            p("b"),
        );
        let (cs, warn) =
            structural_constraints(8, &[prem.clone()], &concl(Family::Absolute, p("a"), p("c")), None, &props).unwrap();
        assert_eq!(cs.len(), 8);
        assert!(cs.iter().all(Constraint::is_nonnegativity));
        assert!(warn.is_empty());

        let (cs, _) =
            structural_constraints(8, &[prem], &concl(Family::Absolute, p("a"), p("c")), Some(100.0), &props).unwrap();
        let last = cs.last().unwrap();
        assert_eq!(last.relation, Relation::Eq);
        assert_eq!(last.rhs, 100.0);
        assert_eq!(last.expr.terms().count(), 8);
    }

    #[test]
    fn structural_denominators_and_mixing() {
        let names = ["student", "phys", "math", "phil", "lang"];
        let props = PropertySet::new(names).unwrap();
        let prems: Vec<Statement> = names[1..]
            .iter()
            .map(|n| {
                Statement::new(
                    QuantifierSpec::crisp(Family::Proportional, 0.7, 1.0).unwrap(),
                    p("student"),
                    p(n),
                )
            })
            .collect();
        let all = p("phys").and(p("math")).and(p("phil")).and(p("lang"));
        let c = concl(Family::Proportional, p("student"), all);
        let (cs, _) = structural_constraints(32, &prems, &c, None, &props).unwrap();
        let positivity: Vec<_> = cs.iter().filter(|c| c.relation == Relation::Gt).collect();
        // four premises plus the conclusion
        assert_eq!(positivity.len(), 5);
        let students = LinearExpr::sum_of(&atoms_of(&p("student"), &props).unwrap());
        assert!(positivity.iter().all(|c| c.expr == students && c.unit == Unit::Proportion));

        let mut mixed = prems.clone();
        mixed.push(Statement::new(
            QuantifierSpec::crisp(Family::Absolute, 3.0, 3.0).unwrap(),
            p("student"),
            p("phys"),
        ));
        assert_eq!(
            structural_constraints(32, &mixed, &c, None, &props),
            Err(CompileError::UnitMixing)
        );
        let (_, warn) = structural_constraints(32, &mixed, &c, Some(30.0), &props).unwrap();
        assert_eq!(warn, vec![CompileWarning::MixedUnits]);
    }

    #[test]
    fn objectives() {
        let props = PropertySet::new(["box", "m", "w"]).unwrap();
        let c = concl(Family::Absolute, p("box"), p("m").not().and(p("w").not()));
        let obj = build_objective(&c, &props).unwrap();
        assert_eq!(obj.kind(), ObjectiveKind::Linear);
        assert_eq!(obj.numerator, LinearExpr::var(1));

        let c = concl(Family::ComparativeAbsolute, p("m"), p("w"));
        let obj = build_objective(&c, &props).unwrap();
        // atoms in both m and w cancel
        assert_eq!(obj.numerator.coefficient(6), 0.0);
        assert_eq!(obj.numerator.coefficient(2), 1.0);
        assert_eq!(obj.numerator.coefficient(4), -1.0);

        let c = concl(Family::Similarity, p("m"), p("w"));
        let obj = build_objective(&c, &props).unwrap();
        assert_eq!(obj.kind(), ObjectiveKind::Fractional);
        assert_eq!(obj.denominator.unwrap().terms().count(), 6);

        let c = concl(Family::NotAll, p("m"), p("w"));
        assert_eq!(build_objective(&c, &props), Err(CompileError::LogicalConclusion(Family::NotAll)));
    }

    #[test]
    fn logical_margin_follows_syllogism_unit() {
        let props = PropertySet::new(["a", "b"]).unwrap();
        let some = Statement::new(QuantifierSpec::logical(Family::Some).unwrap(), p("a"), p("b"));
        let unit_of = |family| {
            let syl = Syllogism::new(props.clone(), None, vec![some.clone()], concl(family, p("a"), p("b"))).unwrap();
            compile_system(&syl, &[None], 16).unwrap().constraints[0].unit
        };
        assert_eq!(unit_of(Family::Proportional), Unit::Proportion);
        assert_eq!(unit_of(Family::Absolute), Unit::Count);
    }
}
