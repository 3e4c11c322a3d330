//! Front end for `quantsyl`: argument handling, output formats and exit codes.
//!
//! `main.rs` only wires stdin/stdout to [`execute`].

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use quantsyl_core::compile::CompileError;
use quantsyl_core::dsl::{parse, parse_mode, ParseError, SyllogismDoc};
use quantsyl_core::inference::{infer, premise_bounds, EngineConfig, InferenceError, InferenceResult, LevelCut, Mode};
use quantsyl_core::optimizer::{SolveError, SolveOutcome};
use quantsyl_core::oracle::{enumerate_range, to_f64, OracleError, OracleReport};
use quantsyl_core::term::TermError;

#[derive(Debug, Parser)]
#[command(name = "quantsyl", version, about = "Infer the quantifier of a syllogism's conclusion")]
#[command(args_conflicts_with_subcommands = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run inference, then check it against exhaustive enumeration of small populations.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Largest population size enumerated when no universe is declared.
        #[arg(long, default_value_t = 12)]
        cap: u64,
    },
}

#[derive(Debug, Args, Clone)]
pub struct RunArgs {
    /// Syllogism file; reads stdin when absent or `-`.
    pub file: Option<PathBuf>,
    #[arg(long, value_parser = mode_arg)]
    pub mode: Option<Mode>,
    /// Number of α-cut levels, both ends included.
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long)]
    pub epsilon_count: Option<f64>,
    #[arg(long)]
    pub epsilon_prop: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also run the brute-force check with this population cap.
    #[arg(long, value_name = "CAP")]
    pub verify: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn mode_arg(s: &str) -> Result<Mode, String> {
    parse_mode(s).ok_or_else(|| format!("unknown mode `{s}` (expected crisp, kersup or alpha)"))
}

impl Cli {
    /// The effective run arguments and oracle cap, if any.
    pub fn resolve(self) -> (RunArgs, Option<u64>) {
        match self.command {
            Some(Command::Verify { run, cap }) => {
                let cap = run.verify.unwrap_or(cap);
                (run, Some(cap))
            }
            None => {
                let cap = self.run.verify;
                (self.run, cap)
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error("verification: {0}")]
    Oracle(#[from] OracleError),
    /// `output` is the full report, still printed to stdout.
    #[error("oracle values fall outside the inferred interval at level(s) {levels}")]
    Disagreement { levels: String, output: String },
}

impl CliError {
    /// 1 for bad input, 2 for contradictory premises, 3 for size and iteration guards.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 1,
            CliError::Inference(e) => match e {
                InferenceError::Infeasible | InferenceError::SupportInfeasible => 2,
                InferenceError::Compile(CompileError::Term(TermError::TooManyProperties { .. }))
                | InferenceError::Solve(SolveError::IterationLimit)
                | InferenceError::Fit(_) => 3,
                _ => 1,
            },
            CliError::Oracle(OracleError::TooLarge { .. }) | CliError::Disagreement { .. } => 3,
            CliError::Oracle(_) => 1,
        }
    }
}

/// Command-line flags win over options written in the document.
pub fn engine_config(doc: &SyllogismDoc, args: &RunArgs) -> (Mode, EngineConfig) {
    let mut cfg = EngineConfig::default();
    let o = &doc.options;
    if let Some(n) = args.levels.or(o.levels) {
        cfg.levels = n;
    }
    if let Some(e) = args.epsilon_count.or(o.epsilon_count) {
        cfg.solver.epsilon_count = e;
    }
    if let Some(e) = args.epsilon_prop.or(o.epsilon_prop) {
        cfg.solver.epsilon_prop = e;
    }
    let fuzzy = doc.syllogism.premises().iter().any(|p| p.quantifier.is_fuzzy());
    let mode = args
        .mode
        .or(o.mode)
        .unwrap_or(if fuzzy { Mode::Alpha } else { Mode::Crisp });
    (mode, cfg)
}

pub struct Verification {
    pub cap: u64,
    pub levels: Vec<(LevelCut, OracleReport, bool)>,
}

impl Verification {
    pub fn agrees(&self) -> bool {
        self.levels.iter().all(|(_, _, ok)| *ok)
    }
}

/// Whether every value the oracle attained lies inside the LP outcome.
fn contains(outcome: &SolveOutcome, report: &OracleReport) -> bool {
    let Some(range) = &report.range else {
        return true;
    };
    let tol = |v: f64| 1e-7 * (1.0 + v.abs());
    match outcome {
        SolveOutcome::Infeasible => false,
        SolveOutcome::Feasible { lo, hi } => {
            let (olo, ohi) = (to_f64(range.lo), to_f64(range.hi));
            lo.map_or(true, |l| olo >= l - tol(l)) && hi.map_or(true, |h| ohi <= h + tol(h))
        }
    }
}

pub fn verify(doc: &SyllogismDoc, result: &InferenceResult, cap: u64) -> Result<Verification, CliError> {
    let syl = &doc.syllogism;
    let mut levels = Vec::new();
    for cut in result.level_outcomes() {
        let bounds = premise_bounds(syl, cut.level).map_err(InferenceError::from)?;
        let report = enumerate_range(syl, &bounds, cap)?;
        let ok = contains(&cut.outcome, &report);
        levels.push((cut, report, ok));
    }
    Ok(Verification { cap, levels })
}

/// Rounds to 12 significant digits and drops the sign of zero.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn json_number(x: Option<f64>) -> Value {
    match x.filter(|v| v.is_finite()).map(round12) {
        None => Value::Null,
        Some(v) if v.fract() == 0.0 && v.abs() < 1e15 => Value::Number(Number::from(v as i64)),
        Some(v) => Number::from_f64(v).map_or(Value::Null, Value::Number),
    }
}

fn plain(x: Option<f64>) -> String {
    match json_number(x) {
        Value::Null => String::new(),
        v => v.to_string(),
    }
}

fn level_fields(cut: &LevelCut) -> (Option<f64>, Option<f64>) {
    (cut.outcome.lo(), cut.outcome.hi())
}

pub fn to_json(result: &InferenceResult, verification: Option<&Verification>) -> Value {
    let support = result.support();
    let mut m = Map::new();
    m.insert("lo".into(), json_number(support.lo()));
    m.insert("hi".into(), json_number(support.hi()));
    m.insert("status".into(), json!(support.status().as_str()));
    m.insert("mode".into(), json!(result.mode.as_str()));
    let levels: Vec<Value> = result
        .level_outcomes()
        .iter()
        .map(|cut| {
            let (lo, hi) = level_fields(cut);
            json!({
                "level": json_number(Some(cut.level)),
                "lo": json_number(lo),
                "hi": json_number(hi),
                "feasible": cut.outcome.is_feasible(),
            })
        })
        .collect();
    m.insert("levels".into(), Value::Array(levels));
    m.insert(
        "fitted".into(),
        result
            .trapezoid()
            .map_or(Value::Null, |t| Value::Array(t.iter().map(|&v| json_number(Some(v))).collect())),
    );
    m.insert("max_feasible_level".into(), json_number(Some(result.max_feasible_level)));
    m.insert("non_normalized".into(), json!(result.non_normalized));
    m.insert(
        "epsilon".into(),
        json!({
            "count": json_number(Some(result.metadata.epsilon_count)),
            "prop": json_number(Some(result.metadata.epsilon_prop)),
        }),
    );
    m.insert(
        "stats".into(),
        json!({
            "lp_solves": result.metadata.stats.lp_solves,
            "pivots": result.metadata.stats.pivots,
        }),
    );
    m.insert(
        "warnings".into(),
        Value::Array(result.warnings.iter().map(|w| json!(w.to_string())).collect()),
    );
    if let Some(v) = verification {
        let levels: Vec<Value> = v
            .levels
            .iter()
            .map(|(cut, report, ok)| {
                let (lo, hi) = match &report.range {
                    Some(r) => (Some(to_f64(r.lo)), Some(to_f64(r.hi))),
                    None => (None, None),
                };
                json!({
                    "level": json_number(Some(cut.level)),
                    "lo": json_number(lo),
                    "hi": json_number(hi),
                    "visited": report.visited,
                    "admitted": report.admitted,
                    "contained": ok,
                })
            })
            .collect();
        m.insert(
            "verify".into(),
            json!({ "cap": v.cap, "agree": v.agrees(), "levels": levels }),
        );
    }
    Value::Object(m)
}

pub fn to_csv(result: &InferenceResult) -> String {
    let mut out = String::from("level,lo,hi\n");
    for cut in result.level_outcomes() {
        let (lo, hi) = level_fields(&cut);
        let _ = writeln!(out, "{},{},{}", plain(Some(cut.level)), plain(lo), plain(hi));
    }
    out
}

fn show(outcome: &SolveOutcome) -> String {
    match outcome {
        SolveOutcome::Infeasible => "infeasible".into(),
        SolveOutcome::Feasible { lo, hi } => {
            let lo = lo.map_or("-inf".into(), |v| plain(Some(v)));
            let hi = hi.map_or("inf".into(), |v| plain(Some(v)));
            format!("[{lo}, {hi}]")
        }
    }
}

pub fn to_text(result: &InferenceResult, verification: Option<&Verification>) -> String {
    let mut out = String::new();
    let support = result.support();
    let _ = writeln!(out, "mode: {}", result.mode);
    match result.mode {
        Mode::Crisp => {
            let _ = writeln!(out, "conclusion: {} ({})", show(&support), support.status());
        }
        _ => {
            let kernel = result.kernel().unwrap_or(SolveOutcome::Infeasible);
            let _ = writeln!(out, "support: {} ({})", show(&support), support.status());
            let _ = writeln!(out, "kernel: {}", show(&kernel));
        }
    }
    if let Some(t) = result.trapezoid() {
        let p: Vec<String> = t.iter().map(|&v| plain(Some(v))).collect();
        let _ = writeln!(out, "trapezoid: ({})", p.join(", "));
    }
    if result.mode == Mode::Alpha {
        let _ = writeln!(out, "levels:");
        for cut in result.level_outcomes() {
            let _ = writeln!(out, "  {:<6} {}", plain(Some(cut.level)), show(&cut.outcome));
        }
    }
    if result.non_normalized {
        let _ = writeln!(
            out,
            "non-normalized: premises are jointly satisfiable only up to level {}",
            plain(Some(result.max_feasible_level))
        );
    }
    for w in &result.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(v) = verification {
        let _ = writeln!(out, "oracle (cap {}):", v.cap);
        for (cut, report, ok) in &v.levels {
            let level = plain(Some(cut.level));
            let _ = match report.range {
                None => writeln!(
                    out,
                    "  level {level}: none of {} populations satisfies the premises",
                    report.visited
                ),
                Some(r) => writeln!(
                    out,
                    "  level {level}: {} of {} populations admitted, range [{}, {}] {}",
                    report.admitted,
                    report.visited,
                    plain(Some(to_f64(r.lo))),
                    plain(Some(to_f64(r.hi))),
                    if *ok { "inside" } else { "OUTSIDE" }
                ),
            };
        }
    }
    out
}

/// Parses `text`, runs inference and renders the requested format.
pub fn execute(text: &str, args: &RunArgs, cap: Option<u64>) -> Result<String, CliError> {
    let doc = parse(text)?;
    let (mode, cfg) = engine_config(&doc, args);
    let result = infer(&doc.syllogism, mode, &cfg)?;
    let verification = cap.map(|c| verify(&doc, &result, c)).transpose()?;
    let out = match args.format {
        Format::Json => to_json(&result, verification.as_ref()).to_string() + "\n",
        Format::Csv => to_csv(&result),
        Format::Text => to_text(&result, verification.as_ref()),
    };
    if let Some(v) = verification.filter(|v| !v.agrees()) {
        let levels: Vec<String> = v
            .levels
            .iter()
            .filter(|(_, _, ok)| !ok)
            .map(|(c, _, _)| plain(Some(c.level)))
            .collect();
        return Err(CliError::Disagreement {
            levels: levels.join(", "),
            output: out,
        });
    }
    Ok(out)
}
