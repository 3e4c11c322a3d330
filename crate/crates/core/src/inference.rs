//! End-to-end inference in crisp, kernel/support and α-cut modes.

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::compile::{compile_system, CompileError, CompileWarning};
use crate::interval::Interval;
use crate::optimizer::{solve, SolveError, SolveOutcome, SolverConfig, SolverStats};
use crate::quantifier::{alpha_cut, fit_trapezoid, FitError, FitReport, QuantifierError, Shape, Trapezoid};
use crate::syllogism::Syllogism;
use crate::term::DEFAULT_MAX_PROPERTIES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Crisp,
    KerSup,
    Alpha,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Crisp => "crisp",
            Mode::KerSup => "ker-sup",
            Mode::Alpha => "alpha",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineConfig {
    pub solver: SolverConfig,
    /// Number of equally spaced cut levels in α-cut mode, both ends included.
    pub levels: usize,
    pub max_properties: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            solver: SolverConfig::default(),
            levels: 11,
            max_properties: DEFAULT_MAX_PROPERTIES,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelCut {
    pub level: f64,
    pub outcome: SolveOutcome,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Conclusion {
    Crisp(SolveOutcome),
    /// `kernel` is `Infeasible` for non-normalized results.
    KerSup {
        kernel: SolveOutcome,
        support: SolveOutcome,
    },
    Alpha {
        cuts: Vec<LevelCut>,
        /// Present only when every level was feasible.
        fitted: Option<(Trapezoid, FitReport)>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metadata {
    pub epsilon_count: f64,
    pub epsilon_prop: f64,
    pub stats: SolverStats,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InferenceResult {
    pub mode: Mode,
    pub conclusion: Conclusion,
    pub max_feasible_level: f64,
    pub non_normalized: bool,
    pub metadata: Metadata,
    pub warnings: Vec<CompileWarning>,
}

impl InferenceResult {
    /// The widest computed reading: the crisp result, the support, or the level-0 cut.
    pub fn support(&self) -> SolveOutcome {
        match &self.conclusion {
            Conclusion::Crisp(o) => *o,
            Conclusion::KerSup { support, .. } => *support,
            Conclusion::Alpha { cuts, .. } => cuts[0].outcome,
        }
    }

    /// The level-1 reading, if the system was feasible there.
    pub fn kernel(&self) -> Option<SolveOutcome> {
        let k = match &self.conclusion {
            Conclusion::Crisp(o) => *o,
            Conclusion::KerSup { kernel, .. } => *kernel,
            Conclusion::Alpha { cuts, .. } => cuts.last()?.outcome,
        };
        k.is_feasible().then_some(k)
    }

    /// `(level, outcome)` pairs in increasing level order.
    pub fn level_outcomes(&self) -> Vec<LevelCut> {
        match &self.conclusion {
            Conclusion::Crisp(o) => vec![
                LevelCut { level: 0.0, outcome: *o },
                LevelCut { level: 1.0, outcome: *o },
            ],
            Conclusion::KerSup { kernel, support } => vec![
                LevelCut {
                    level: 0.0,
                    outcome: *support,
                },
                LevelCut {
                    level: 1.0,
                    outcome: *kernel,
                },
            ],
            Conclusion::Alpha { cuts, .. } => cuts.clone(),
        }
    }

    /// Trapezoid `[a,b,c,d]` summarizing the result, when one exists.
    pub fn trapezoid(&self) -> Option<[f64; 4]> {
        match &self.conclusion {
            Conclusion::Crisp(_) => None,
            Conclusion::KerSup { kernel, support } => {
                let (k, s) = (kernel.interval()?, support.interval()?);
                Some([s.lo, k.lo, k.hi, s.hi])
            }
            Conclusion::Alpha { fitted, .. } => fitted.as_ref().map(|(t, _)| t.params()),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InferenceError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Quantifier(#[from] QuantifierError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error("the premises are contradictory: no population satisfies them")]
    Infeasible,
    #[error("the premises are contradictory even when every quantifier is read at its support")]
    SupportInfeasible,
    #[error("premise {index} has a fuzzy quantifier; use kernel/support or α-cut mode")]
    FuzzyInCrispMode { index: usize },
    #[error("α-cut mode needs at least 2 levels, got {0}")]
    TooFewLevels(usize),
}

/// Premise bounds for one level; crisp and logical premises pass through.
pub fn premise_bounds(syl: &Syllogism, level: f64) -> Result<Vec<Option<Interval>>, QuantifierError> {
    syl.premises()
        .iter()
        .map(|p| match p.quantifier.shape() {
            Shape::Logical => Ok(None),
            _ => alpha_cut(&p.quantifier, level).map(Some),
        })
        .collect()
}

fn solve_at(
    syl: &Syllogism,
    bounds: &[Option<Interval>],
    cfg: &EngineConfig,
) -> Result<(SolveOutcome, SolverStats, Vec<CompileWarning>), InferenceError> {
    let sys = compile_system(syl, bounds, cfg.max_properties)?;
    let (outcome, stats) = solve(&sys, &cfg.solver)?;
    Ok((outcome, stats, sys.warnings))
}

fn metadata(cfg: &EngineConfig, stats: SolverStats) -> Metadata {
    Metadata {
        epsilon_count: cfg.solver.epsilon_count,
        epsilon_prop: cfg.solver.epsilon_prop,
        stats,
    }
}

/// A fuzzy premise is still acceptable here if its kernel equals its support.
fn crisp_bound(syl: &Syllogism) -> Result<Vec<Option<Interval>>, InferenceError> {
    syl.premises()
        .iter()
        .enumerate()
        .map(|(index, p)| {
            let q = &p.quantifier;
            match q.shape() {
                Shape::Logical => Ok(None),
                Shape::Interval(iv) => Ok(Some(*iv)),
                _ if q.kernel() == q.support() => Ok(q.support()),
                _ => Err(InferenceError::FuzzyInCrispMode { index }),
            }
        })
        .collect()
}

pub fn infer_crisp(syl: &Syllogism, cfg: &EngineConfig) -> Result<InferenceResult, InferenceError> {
    let bounds = crisp_bound(syl)?;
    let (outcome, stats, warnings) = solve_at(syl, &bounds, cfg)?;
    if !outcome.is_feasible() {
        return Err(InferenceError::Infeasible);
    }
    Ok(InferenceResult {
        mode: Mode::Crisp,
        conclusion: Conclusion::Crisp(outcome),
        max_feasible_level: 1.0,
        non_normalized: false,
        metadata: metadata(cfg, stats),
        warnings,
    })
}

pub fn infer_ker_sup(syl: &Syllogism, cfg: &EngineConfig) -> Result<InferenceResult, InferenceError> {
    let (support, mut stats, warnings) = solve_at(syl, &premise_bounds(syl, 0.0)?, cfg)?;
    if !support.is_feasible() {
        return Err(InferenceError::SupportInfeasible);
    }
    let (kernel, kstats, _) = solve_at(syl, &premise_bounds(syl, 1.0)?, cfg)?;
    stats += kstats;
    let normalized = kernel.is_feasible();
    Ok(InferenceResult {
        mode: Mode::KerSup,
        conclusion: Conclusion::KerSup { kernel, support },
        max_feasible_level: if normalized { 1.0 } else { 0.0 },
        non_normalized: !normalized,
        metadata: metadata(cfg, stats),
        warnings,
    })
}

/// Cut levels `i / (n − 1)` for `i = 0..n`.
pub fn level_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { 1.0 } else { i as f64 / (n - 1) as f64 })
        .collect()
}

pub fn infer_alpha(syl: &Syllogism, cfg: &EngineConfig) -> Result<InferenceResult, InferenceError> {
    if cfg.levels < 2 {
        return Err(InferenceError::TooFewLevels(cfg.levels));
    }
    let solved: Vec<_> = level_grid(cfg.levels)
        .into_par_iter()
        .map(|level| {
            let bounds = premise_bounds(syl, level)?;
            solve_at(syl, &bounds, cfg).map(|r| (level, r))
        })
        .collect::<Result<_, InferenceError>>()?;

    let mut stats = SolverStats::default();
    let mut warnings = Vec::new();
    let mut cuts = Vec::with_capacity(solved.len());
    for (level, (outcome, s, w)) in solved {
        stats += s;
        if warnings.is_empty() {
            warnings = w;
        }
        cuts.push(LevelCut { level, outcome });
    }
    if !cuts[0].outcome.is_feasible() {
        return Err(InferenceError::SupportInfeasible);
    }
    let max_feasible_level = cuts
        .iter()
        .filter(|c| c.outcome.is_feasible())
        .map(|c| c.level)
        .fold(0.0, f64::max);
    let fitted = if cuts.iter().all(|c| c.outcome.is_feasible()) {
        let pts: Vec<(f64, Interval)> = cuts
            .iter()
            .map(|c| (c.level, c.outcome.interval().expect("feasible")))
            .collect();
        Some(fit_trapezoid(&pts)?)
    } else {
        None
    };
    Ok(InferenceResult {
        mode: Mode::Alpha,
        conclusion: Conclusion::Alpha { cuts, fitted },
        max_feasible_level,
        non_normalized: max_feasible_level < 1.0,
        metadata: metadata(cfg, stats),
        warnings,
    })
}

pub fn infer(syl: &Syllogism, mode: Mode, cfg: &EngineConfig) -> Result<InferenceResult, InferenceError> {
    match mode {
        Mode::Crisp => infer_crisp(syl, cfg),
        Mode::KerSup => infer_ker_sup(syl, cfg),
        Mode::Alpha => infer_alpha(syl, cfg),
    }
}
