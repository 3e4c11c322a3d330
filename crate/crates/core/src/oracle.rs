//! Brute-force ground truth over small integer populations.
//!
//! Every assignment of nonnegative integer counts to the `2^S` atoms with
//! total at most the cap (exactly `|E|` when the universe is declared) is
//! checked against the definition of each premise using exact rational
//! arithmetic. The conclusion measure is collected over the survivors.

use std::fmt;

use num_rational::Ratio;
use rayon::prelude::*;
use thiserror::Error;

use crate::interval::Interval;
use crate::quantifier::Family;
use crate::syllogism::Syllogism;
use crate::term::{atoms_of, check_size, AtomSet, TermError, DEFAULT_MAX_PROPERTIES};

pub type Rational = Ratio<i128>;

/// Largest number of assignments the oracle agrees to visit.
pub const MAX_ASSIGNMENTS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopulationAssignment {
    pub counts: Vec<u64>,
    pub total: u64,
}

impl PopulationAssignment {
    pub fn new(counts: Vec<u64>) -> Self {
        let total = counts.iter().sum();
        Self { counts, total }
    }
}

/// Exact closed bound, `hi = None` for an unbounded upper end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactBound {
    pub lo: Rational,
    pub hi: Option<Rational>,
    pub lo_strict: bool,
    pub hi_strict: bool,
}

impl ExactBound {
    pub fn from_interval(iv: &Interval) -> Result<Self, OracleError> {
        Ok(Self {
            lo: exact(iv.lo)?,
            hi: if iv.hi_unbounded() { None } else { Some(exact(iv.hi)?) },
            lo_strict: iv.lo_strict,
            hi_strict: iv.hi_strict,
        })
    }

    pub fn contains(&self, v: Rational) -> bool {
        let above = if self.lo_strict { v > self.lo } else { v >= self.lo };
        let below = match self.hi {
            None => true,
            Some(h) if self.hi_strict => v < h,
            Some(h) => v <= h,
        };
        above && below
    }
}

/// The decimal value a float prints as, so `0.42` means exactly 42/100.
pub fn exact(x: f64) -> Result<Rational, OracleError> {
    if !x.is_finite() {
        return Err(OracleError::NotRepresentable(x));
    }
    let s = format!("{x}");
    let (neg, s) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits = format!("{int}{frac}");
    if digits.len() > 36 {
        return Err(OracleError::NotRepresentable(x));
    }
    let num: i128 = digits.parse().map_err(|_| OracleError::NotRepresentable(x))?;
    let den = 10i128.pow(frac.len() as u32);
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

fn count(set: &[usize], counts: &[u64]) -> i128 {
    set.iter().map(|&k| counts[k] as i128).sum()
}

/// One statement with its atom sets resolved to index lists.
#[derive(Debug, Clone)]
struct Predicate {
    family: Family,
    a: Vec<usize>,
    b: Vec<usize>,
    a_and_b: Vec<usize>,
    a_not_b: Vec<usize>,
    a_or_b: Vec<usize>,
}

impl Predicate {
    fn new(family: Family, a: &AtomSet, b: &AtomSet) -> Self {
        Self {
            family,
            a: a.iter().collect(),
            b: b.iter().collect(),
            a_and_b: a.intersection(b).iter().collect(),
            a_not_b: a.difference(b).iter().collect(),
            a_or_b: a.union(b).iter().collect(),
        }
    }

    /// The family's measure straight from its definition; `None` when a
    /// ratio family has an empty denominator.
    fn measure(&self, counts: &[u64]) -> Option<Rational> {
        let c = |s: &[usize]| count(s, counts);
        let ratio = |n: i128, d: i128| (d > 0).then(|| Rational::new(n, d));
        match self.family {
            Family::All | Family::NotAll | Family::Exception => Some(c(&self.a_not_b).into()),
            Family::None | Family::Some | Family::Absolute => Some(c(&self.a_and_b).into()),
            Family::ComparativeAbsolute => Some((c(&self.a) - c(&self.b)).into()),
            Family::Proportional => ratio(c(&self.a_and_b), c(&self.a)),
            Family::ComparativeProportional => ratio(c(&self.a), c(&self.b)),
            Family::Similarity => ratio(c(&self.a_and_b), c(&self.a_or_b)),
        }
    }

    fn holds(&self, bound: Option<&ExactBound>, counts: &[u64]) -> bool {
        let Some(v) = self.measure(counts) else {
            return false;
        };
        let zero = Rational::from(0);
        match self.family {
            Family::All | Family::None => v == zero,
            Family::Some | Family::NotAll => v > zero,
            _ => bound.is_some_and(|b| b.contains(v)),
        }
    }
}

/// Whether a single statement holds on `counts`, per its definition.
///
/// Logical families ignore `bound`. Ratio families are false on an empty
/// denominator.
pub fn statement_holds(
    family: Family,
    restriction: &AtomSet,
    scope: &AtomSet,
    bound: Option<&Interval>,
    counts: &[u64],
) -> Result<bool, OracleError> {
    let bound = bound.map(ExactBound::from_interval).transpose()?;
    Ok(Predicate::new(family, restriction, scope).holds(bound.as_ref(), counts))
}

/// Exact min and max of the conclusion measure over all admitted populations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleRange {
    pub lo: Rational,
    pub hi: Rational,
}

impl OracleRange {
    pub fn lo_f64(&self) -> f64 {
        to_f64(self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(self.hi)
    }

    fn merge(self, o: OracleRange) -> OracleRange {
        OracleRange {
            lo: self.lo.min(o.lo),
            hi: self.hi.max(o.hi),
        }
    }
}

impl fmt::Display for OracleRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// `None` when no population satisfies the premises.
    pub range: Option<OracleRange>,
    pub visited: u64,
    pub admitted: u64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("enumeration would visit {count} populations, over the limit of {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("universe size {0} is not a whole number")]
    FractionalUniverse(f64),
    #[error("bound value {0} has no exact decimal form the oracle can use")]
    NotRepresentable(f64),
    #[error("quantifier `{0}` needs a numeric bound")]
    MissingBound(Family),
    #[error(transparent)]
    Term(#[from] TermError),
}

/// `C(n, k)`, saturating.
fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Number of assignments of `k` atoms: total exactly `n`, or at most `n`.
pub fn assignment_count(k: usize, n: u64, exact_total: bool) -> u128 {
    let (n, k) = (n as u128, k as u128);
    if exact_total {
        binomial(n + k - 1, k - 1)
    } else {
        binomial(n + k, k)
    }
}

/// Syllogism compiled into exact predicates.
#[derive(Debug, Clone)]
pub struct Oracle {
    atom_count: usize,
    premises: Vec<(Predicate, Option<ExactBound>)>,
    conclusion: Predicate,
    universe: Option<u64>,
}

impl Oracle {
    /// Premise `i` is read at `bounds[i]`; logical premises take `None`.
    pub fn new(syl: &Syllogism, bounds: &[Option<Interval>]) -> Result<Self, OracleError> {
        assert_eq!(bounds.len(), syl.premises().len(), "one bound per premise");
        let props = syl.properties();
        check_size(props, DEFAULT_MAX_PROPERTIES)?;
        let mut premises = Vec::new();
        for (stmt, bound) in syl.premises().iter().zip(bounds) {
            let family = stmt.family();
            let pred = Predicate::new(
                family,
                &atoms_of(&stmt.restriction, props)?,
                &atoms_of(&stmt.scope, props)?,
            );
            let exact_bound = match bound {
                Some(iv) if !family.is_logical() => Some(ExactBound::from_interval(iv)?),
                None if !family.is_logical() => return Err(OracleError::MissingBound(family)),
                _ => None,
            };
            premises.push((pred, exact_bound));
        }
        let c = syl.conclusion();
        let conclusion = Predicate::new(
            c.family,
            &atoms_of(&c.restriction, props)?,
            &atoms_of(&c.scope, props)?,
        );
        let universe = match syl.universe() {
            None => None,
            Some(e) if e.fract() == 0.0 => Some(e as u64),
            Some(e) => return Err(OracleError::FractionalUniverse(e)),
        };
        Ok(Self {
            atom_count: props.atom_count(),
            premises,
            conclusion,
            universe,
        })
    }

    pub fn admits(&self, p: &PopulationAssignment) -> bool {
        if self.universe.is_some_and(|e| p.total != e) {
            return false;
        }
        self.premises.iter().all(|(pred, b)| pred.holds(b.as_ref(), &p.counts))
    }

    /// Conclusion measure, `None` when its ratio is undefined.
    pub fn conclusion_value(&self, p: &PopulationAssignment) -> Option<Rational> {
        self.conclusion.measure(&p.counts)
    }

    fn visit(&self, counts: &mut Vec<u64>, pos: usize, remaining: u64, exact_total: bool, acc: &mut Acc) {
        if pos + 1 == self.atom_count {
            let range = if exact_total { remaining..=remaining } else { 0..=remaining };
            for v in range {
                counts[pos] = v;
                acc.visited += 1;
                if self.premises.iter().all(|(pred, b)| pred.holds(b.as_ref(), counts)) {
                    if let Some(v) = self.conclusion.measure(counts) {
                        acc.admit(v);
                    }
                }
            }
            return;
        }
        for v in 0..=remaining {
            counts[pos] = v;
            self.visit(counts, pos + 1, remaining - v, exact_total, acc);
        }
    }

    /// Enumerates every population of total at most `cap`, or of total
    /// exactly `|E|` when the universe is declared (the cap is then unused).
    pub fn enumerate_range(&self, cap: u64) -> Result<OracleReport, OracleError> {
        let (total, exact_total) = match self.universe {
            Some(e) => (e, true),
            None => (cap, false),
        };
        let n = assignment_count(self.atom_count, total, exact_total);
        if n > MAX_ASSIGNMENTS {
            return Err(OracleError::TooLarge {
                count: n,
                limit: MAX_ASSIGNMENTS,
            });
        }
        let k = self.atom_count;
        let acc = (0..=total)
            .into_par_iter()
            .map(|first| {
                let mut acc = Acc::default();
                let mut counts = vec![0; k];
                counts[0] = first;
                if k == 1 {
                    if !exact_total || first == total {
                        acc.visited += 1;
                        if self.premises.iter().all(|(pred, b)| pred.holds(b.as_ref(), &counts)) {
                            if let Some(v) = self.conclusion.measure(&counts) {
                                acc.admit(v);
                            }
                        }
                    }
                } else {
                    self.visit(&mut counts, 1, total - first, exact_total, &mut acc);
                }
                acc
            })
            .reduce(Acc::default, Acc::merge);
        Ok(OracleReport {
            range: acc.range,
            visited: acc.visited,
            admitted: acc.admitted,
        })
    }
}

#[derive(Debug, Default, Clone)]
struct Acc {
    range: Option<OracleRange>,
    visited: u64,
    admitted: u64,
}

impl Acc {
    fn admit(&mut self, v: Rational) {
        self.admitted += 1;
        let point = OracleRange { lo: v, hi: v };
        self.range = Some(match self.range {
            None => point,
            Some(r) => r.merge(point),
        });
    }

    fn merge(self, o: Acc) -> Acc {
        Acc {
            range: match (self.range, o.range) {
                (Some(a), Some(b)) => Some(a.merge(b)),
                (a, b) => a.or(b),
            },
            visited: self.visited + o.visited,
            admitted: self.admitted + o.admitted,
        }
    }
}

/// One-shot convenience over [`Oracle::new`] and [`Oracle::enumerate_range`].
pub fn enumerate_range(
    syl: &Syllogism,
    bounds: &[Option<Interval>],
    cap: u64,
) -> Result<OracleReport, OracleError> {
    Oracle::new(syl, bounds)?.enumerate_range(cap)
}
