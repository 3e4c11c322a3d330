//! Minimizes and maximizes the conclusion objective over a compiled system.
//!
//! Linear objectives go straight to the simplex. Linear-fractional ones are
//! homogenized first: with `t = 1/den(x)` and `y = t·x` every constraint
//! `a·x ≥ b` becomes `a·y − b·t ≥ 0`, the denominator becomes `den(y) = 1`,
//! and the ratio becomes the linear objective `num(y)`.

use std::fmt;

use thiserror::Error;

use crate::compile::{Constraint, ConstraintSystem, LinearExpr, ObjectiveKind, Relation};
use crate::interval::Interval;
use crate::quantifier::Unit;
use crate::simplex::{LpOutcome, Row, SimplexError, Tableau};

/// Margins used to turn strict inequalities into non-strict ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Added to strict count-unit constraints (`Σ > r` becomes `Σ ≥ r + 1`).
    pub epsilon_count: f64,
    /// Scaled by the universe size (or 1) for proportion-unit constraints.
    pub epsilon_prop: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            epsilon_count: 1.0,
            epsilon_prop: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolveOutcome {
    Infeasible,
    /// `None` marks an unbounded side.
    Feasible { lo: Option<f64>, hi: Option<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Bounded,
    UnboundedAbove,
    UnboundedBelow,
    Unbounded,
    Infeasible,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Bounded => "bounded",
            SolveStatus::UnboundedAbove => "unbounded-above",
            SolveStatus::UnboundedBelow => "unbounded-below",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::Infeasible => "infeasible",
        }
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl SolveOutcome {
    pub fn bounded(lo: f64, hi: f64) -> Self {
        SolveOutcome::Feasible {
            lo: Some(lo),
            hi: Some(hi),
        }
    }

    pub fn status(&self) -> SolveStatus {
        match self {
            SolveOutcome::Infeasible => SolveStatus::Infeasible,
            SolveOutcome::Feasible { lo, hi } => match (lo, hi) {
                (Some(_), Some(_)) => SolveStatus::Bounded,
                (Some(_), None) => SolveStatus::UnboundedAbove,
                (None, Some(_)) => SolveStatus::UnboundedBelow,
                (None, None) => SolveStatus::Unbounded,
            },
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible { .. })
    }

    pub fn lo(&self) -> Option<f64> {
        match self {
            SolveOutcome::Feasible { lo, .. } => *lo,
            SolveOutcome::Infeasible => None,
        }
    }

    pub fn hi(&self) -> Option<f64> {
        match self {
            SolveOutcome::Feasible { hi, .. } => *hi,
            SolveOutcome::Infeasible => None,
        }
    }

    /// The outcome as an interval with infinite ends for unbounded sides.
    pub fn interval(&self) -> Option<Interval> {
        match self {
            SolveOutcome::Infeasible => None,
            SolveOutcome::Feasible { lo, hi } => Some(Interval::closed(
                lo.unwrap_or(f64::NEG_INFINITY),
                hi.unwrap_or(f64::INFINITY),
            )),
        }
    }
}

impl fmt::Display for SolveOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveOutcome::Infeasible => f.write_str("infeasible"),
            SolveOutcome::Feasible { lo, hi } => {
                match lo {
                    Some(v) => write!(f, "[{v}, ")?,
                    None => f.write_str("(-inf, ")?,
                }
                match hi {
                    Some(v) => write!(f, "{v}]"),
                    None => f.write_str("inf)"),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub lp_solves: usize,
    pub pivots: usize,
}

impl std::ops::AddAssign for SolverStats {
    fn add_assign(&mut self, rhs: Self) {
        self.lp_solves += rhs.lp_solves;
        self.pivots += rhs.pivots;
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("simplex iteration limit exceeded")]
    IterationLimit,
    #[error("expected a {expected:?} objective")]
    WrongObjective { expected: ObjectiveKind },
}

impl From<SimplexError> for SolveError {
    fn from(e: SimplexError) -> Self {
        match e {
            SimplexError::IterationLimit => SolveError::IterationLimit,
        }
    }
}

/// Replaces every strict relation with a non-strict one shifted by the
/// configured margin: `ε_count` for counts, `ε_prop · scale` for proportions.
pub fn rewrite_strict(constraints: &[Constraint], cfg: &SolverConfig, scale: f64) -> Vec<Constraint> {
    constraints
        .iter()
        .map(|c| {
            let eps = match c.unit {
                Unit::Count => cfg.epsilon_count,
                Unit::Proportion => cfg.epsilon_prop * scale,
            };
            match c.relation {
                Relation::Gt => Constraint::new(c.expr.clone(), Relation::Ge, c.rhs + eps, c.unit),
                Relation::Lt => Constraint::new(c.expr.clone(), Relation::Le, c.rhs - eps, c.unit),
                _ => c.clone(),
            }
        })
        .collect()
}

fn dense(expr: &LinearExpr, width: usize) -> Vec<f64> {
    let mut v = vec![0.0; width];
    for (k, c) in expr.terms() {
        v[k] = c;
    }
    v
}

fn prepared_rows(sys: &ConstraintSystem, cfg: &SolverConfig) -> Vec<Constraint> {
    let scale = sys.universe_size.unwrap_or(1.0);
    rewrite_strict(&sys.constraints, cfg, scale)
        .into_iter()
        .filter(|c| !c.is_nonnegativity())
        .collect()
}

fn linear_rows(constraints: &[Constraint], n: usize) -> Vec<Row> {
    constraints
        .iter()
        .map(|c| Row {
            coeffs: dense(&c.expr, n),
            relation: c.relation,
            rhs: c.rhs - c.expr.constant(),
        })
        .collect()
}

/// Min and max of `objective` from one shared feasible basis.
fn min_max(
    num_vars: usize,
    rows: &[Row],
    objective: &[f64],
    offset: f64,
    stats: &mut SolverStats,
) -> Result<SolveOutcome, SolveError> {
    let Some(base) = Tableau::feasible(num_vars, rows)? else {
        stats.lp_solves += 1;
        return Ok(SolveOutcome::Infeasible);
    };
    stats.pivots += base.pivots;
    let mut lo_tab = base.clone();
    let lo = lo_tab.minimize(objective)?;
    let mut hi_tab = base.clone();
    let negated: Vec<f64> = objective.iter().map(|c| -c).collect();
    let hi = hi_tab.minimize(&negated)?;
    stats.lp_solves += 2;
    stats.pivots += (lo_tab.pivots - base.pivots) + (hi_tab.pivots - base.pivots);
    let clean = |v: f64| v + offset + 0.0;
    Ok(SolveOutcome::Feasible {
        lo: match lo {
            LpOutcome::Optimal { value, .. } => Some(clean(value)),
            LpOutcome::Unbounded => None,
        },
        hi: match hi {
            LpOutcome::Optimal { value, .. } => Some(clean(-value)),
            LpOutcome::Unbounded => None,
        },
    })
}

pub fn solve_linear(sys: &ConstraintSystem, cfg: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    solve_linear_counted(sys, cfg).map(|r| r.0)
}

pub fn solve_linear_counted(
    sys: &ConstraintSystem,
    cfg: &SolverConfig,
) -> Result<(SolveOutcome, SolverStats), SolveError> {
    if sys.objective.kind() != ObjectiveKind::Linear {
        return Err(SolveError::WrongObjective {
            expected: ObjectiveKind::Linear,
        });
    }
    let n = sys.atom_count;
    let rows = linear_rows(&prepared_rows(sys, cfg), n);
    let mut stats = SolverStats::default();
    let obj = &sys.objective.numerator;
    let out = min_max(n, &rows, &dense(obj, n), obj.constant(), &mut stats)?;
    Ok((out, stats))
}

pub fn solve_fractional(sys: &ConstraintSystem, cfg: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    solve_fractional_counted(sys, cfg).map(|r| r.0)
}

pub fn solve_fractional_counted(
    sys: &ConstraintSystem,
    cfg: &SolverConfig,
) -> Result<(SolveOutcome, SolverStats), SolveError> {
    let Some(den) = &sys.objective.denominator else {
        return Err(SolveError::WrongObjective {
            expected: ObjectiveKind::Fractional,
        });
    };
    let n = sys.atom_count;
    let prepared = prepared_rows(sys, cfg);
    let mut stats = SolverStats::default();
    // The homogenized system is feasible with t = 0 along any recession ray,
    // even when the original one is empty, so feasibility is settled first.
    let check = Tableau::feasible(n, &linear_rows(&prepared, n))?;
    stats.lp_solves += 1;
    match check {
        None => return Ok((SolveOutcome::Infeasible, stats)),
        Some(tab) => stats.pivots += tab.pivots,
    }
    let t = n; // homogenizing variable
    let mut rows: Vec<Row> = prepared
        .iter()
        .map(|c| {
            let mut coeffs = dense(&c.expr, n + 1);
            coeffs[t] = c.expr.constant() - c.rhs;
            Row {
                coeffs,
                relation: c.relation,
                rhs: 0.0,
            }
        })
        .collect();
    let mut norm = dense(den, n + 1);
    norm[t] = den.constant();
    rows.push(Row {
        coeffs: norm,
        relation: Relation::Eq,
        rhs: 1.0,
    });
    let num = &sys.objective.numerator;
    let mut obj = dense(num, n + 1);
    obj[t] = num.constant();
    let out = min_max(n + 1, &rows, &obj, 0.0, &mut stats)?;
    Ok((out, stats))
}

/// Dispatches on the objective kind.
pub fn solve(sys: &ConstraintSystem, cfg: &SolverConfig) -> Result<(SolveOutcome, SolverStats), SolveError> {
    match sys.objective.kind() {
        ObjectiveKind::Linear => solve_linear_counted(sys, cfg),
        ObjectiveKind::Fractional => solve_fractional_counted(sys, cfg),
    }
}
