#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use quantsyl_core::dsl::{parse, SyllogismDoc};
use quantsyl_core::quantifier::{Family, QuantifierSpec};
use quantsyl_core::syllogism::{ConclusionTemplate, Statement, Syllogism};
use quantsyl_core::term::{PropertySet, TermExpr};

pub fn fixture(name: &str) -> SyllogismDoc {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        a == b
    } else {
        (a - b).abs() <= tol
    }
}

/// Collects named checks and prints one line for the whole criterion.
pub struct Criterion {
    id: &'static str,
    title: &'static str,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    pub fn new(id: &'static str, title: &'static str) -> Self {
        Self {
            id,
            title,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    pub fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    /// Prints the verdict line and panics if anything failed.
    ///
    /// Writes to stdout directly so the line survives the harness's output capture.
    pub fn finish(self) {
        use std::io::Write;
        let verdict = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut text = format!("criterion {} [{verdict}] {}\n", self.id, self.title);
        for f in &self.failures {
            text += &format!("    failed: {f}\n");
        }
        for n in &self.notes {
            text += &format!("    note: {n}\n");
        }
        let _ = std::io::stdout().lock().write_all(text.as_bytes());
        assert!(self.failures.is_empty(), "criterion {} failed: {:?}", self.id, self.failures);
    }
}

pub fn names(s: usize) -> Vec<String> {
    ["a", "b", "c"][..s].iter().map(|s| s.to_string()).collect()
}

/// Random term over the first `s` properties, depth-limited.
pub fn term(s: usize) -> impl Strategy<Value = TermExpr> {
    let leaf = prop_oneof![
        8 => (0..s).prop_map(|i| TermExpr::prop(["a", "b", "c"][i])),
        1 => Just(TermExpr::Universe),
    ];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(TermExpr::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.or(b)),
        ]
    })
}

/// Integer count bound `[lo, hi]` or `[lo, inf)`, occasionally strict.
fn count_bound(signed: bool) -> impl Strategy<Value = (f64, f64, bool, bool)> {
    let lo = if signed { -4i32..=4 } else { 0i32..=4 };
    (lo, 0u32..=4, any::<bool>(), 0u8..4).prop_map(|(lo, w, unbounded, strict)| {
        let lo = lo as f64;
        let hi = if unbounded && w > 2 { f64::INFINITY } else { lo + w as f64 };
        (lo, hi, strict == 1, strict == 2 && hi.is_finite())
    })
}

/// Proportion bound on a tenth grid.
fn prop_bound() -> impl Strategy<Value = (f64, f64, bool, bool)> {
    (0u32..=10, 0u32..=10, 0u8..4).prop_map(|(x, y, strict)| {
        let (lo, hi) = (x.min(y) as f64 / 10.0, x.max(y) as f64 / 10.0);
        (lo, hi, strict == 1 && lo < hi, strict == 2 && lo < hi)
    })
}

fn cmpprop_bound() -> impl Strategy<Value = (f64, f64, bool, bool)> {
    (0u32..=6, 0u32..=6, any::<bool>()).prop_map(|(x, y, unbounded)| {
        let lo = x.min(y) as f64 / 2.0;
        let hi = if unbounded { f64::INFINITY } else { x.max(y) as f64 / 2.0 };
        (lo, hi, false, false)
    })
}

pub fn quantifier(family: Family) -> BoxedStrategy<QuantifierSpec> {
    use quantsyl_core::interval::Interval;
    use quantsyl_core::quantifier::Shape;
    let make = move |(lo, hi, ls, hs): (f64, f64, bool, bool)| {
        QuantifierSpec::new(
            family,
            Shape::Interval(Interval {
                lo,
                hi,
                lo_strict: ls,
                hi_strict: hs,
            }),
        )
        .expect("generated bound is valid")
    };
    match family {
        Family::All | Family::None | Family::Some | Family::NotAll => {
            Just(QuantifierSpec::logical(family).unwrap()).boxed()
        }
        Family::Absolute | Family::Exception => count_bound(false).prop_map(make).boxed(),
        Family::ComparativeAbsolute => count_bound(true).prop_map(make).boxed(),
        Family::Proportional | Family::Similarity => prop_bound().prop_map(make).boxed(),
        Family::ComparativeProportional => cmpprop_bound().prop_map(make).boxed(),
    }
}

pub fn statement(s: usize, families: Vec<Family>) -> impl Strategy<Value = Statement> {
    proptest::sample::select(families)
        .prop_flat_map(move |f| (quantifier(f), term(s), term(s)))
        .prop_map(|(q, r, t)| Statement::new(q, r, t))
}

pub const COUNT_FAMILIES: [Family; 7] = [
    Family::All,
    Family::None,
    Family::Some,
    Family::NotAll,
    Family::Absolute,
    Family::Exception,
    Family::ComparativeAbsolute,
];

pub const RATIO_FAMILIES: [Family; 7] = [
    Family::All,
    Family::None,
    Family::Some,
    Family::NotAll,
    Family::Proportional,
    Family::ComparativeProportional,
    Family::Similarity,
];

/// Crisp syllogism over `S ≤ 3` properties, either count-only or
/// ratio-only so no universe size is needed.
pub fn crisp_syllogism() -> impl Strategy<Value = Syllogism> {
    (1usize..=3, any::<bool>())
        .prop_flat_map(|(s, ratio)| {
            let (fams, concl): (Vec<Family>, Vec<Family>) = if ratio {
                (
                    RATIO_FAMILIES.to_vec(),
                    vec![Family::Proportional, Family::ComparativeProportional, Family::Similarity],
                )
            } else {
                (
                    COUNT_FAMILIES.to_vec(),
                    vec![Family::Absolute, Family::Exception, Family::ComparativeAbsolute],
                )
            };
            (
                Just(s),
                proptest::collection::vec(statement(s, fams), 1..=3),
                proptest::sample::select(concl),
                term(s),
                term(s),
            )
        })
        .prop_map(|(s, premises, family, r, t)| {
            Syllogism::new(
                PropertySet::new(names(s)).unwrap(),
                None,
                premises,
                ConclusionTemplate {
                    family,
                    restriction: r,
                    scope: t,
                },
            )
            .unwrap()
        })
}

/// Trapezoid `[a,b,c,d]` on a grid inside `[0,1]`.
pub fn trapezoid01() -> impl Strategy<Value = [f64; 4]> {
    proptest::collection::vec(0u32..=20, 4).prop_map(|mut v| {
        v.sort_unstable();
        [v[0], v[1], v[2], v[3]].map(|x| x as f64 / 20.0)
    })
}

/// Proportional syllogism with trapezoidal premises over `S ≤ 3` properties.
pub fn fuzzy_syllogism() -> impl Strategy<Value = Syllogism> {
    (1usize..=3)
        .prop_flat_map(|s| {
            let prem = (trapezoid01(), term(s), term(s)).prop_map(|([a, b, c, d], r, t)| {
                Statement::new(
                    QuantifierSpec::trapezoid(Family::Proportional, a, b, c, d).unwrap(),
                    r,
                    t,
                )
            });
            (Just(s), proptest::collection::vec(prem, 1..=3), term(s), term(s))
        })
        .prop_map(|(s, premises, r, t)| {
            Syllogism::new(
                PropertySet::new(names(s)).unwrap(),
                None,
                premises,
                ConclusionTemplate {
                    family: Family::Proportional,
                    restriction: r,
                    scope: t,
                },
            )
            .unwrap()
        })
}
