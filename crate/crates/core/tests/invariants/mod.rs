//! Invariants beyond the numbered criteria: term algebra, compiled index range,
//! monotonicity, mode agreement and document round-trips.

use super::common::*;
use proptest::prelude::*;
use quantsyl_core::compile::compile_system;
use quantsyl_core::dsl::{parse, DocOptions, SyllogismDoc};
use quantsyl_core::inference::{
    infer_alpha, infer_crisp, infer_ker_sup, premise_bounds, EngineConfig, InferenceError, InferenceResult, Mode,
};
use quantsyl_core::optimizer::SolveOutcome;
use quantsyl_core::term::{atoms_of, PropertySet, TermExpr};

fn truth(e: &TermExpr, names: &[String], atom: usize) -> bool {
    match e {
        TermExpr::Universe => true,
        TermExpr::Prop(p) => atom >> names.iter().position(|n| n == p).unwrap() & 1 == 1,
        TermExpr::Not(a) => !truth(a, names, atom),
        TermExpr::And(a, b) => truth(a, names, atom) && truth(b, names, atom),
        TermExpr::Or(a, b) => truth(a, names, atom) || truth(b, names, atom),
    }
}

fn outcomes_close(a: &SolveOutcome, b: &SolveOutcome, tol: f64) -> bool {
    let end = |x: Option<f64>, y: Option<f64>| match (x, y) {
        (Some(x), Some(y)) => (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())),
        (None, None) => true,
        _ => false,
    };
    match (a, b) {
        (SolveOutcome::Infeasible, SolveOutcome::Infeasible) => true,
        (SolveOutcome::Feasible { lo: l1, hi: h1 }, SolveOutcome::Feasible { lo: l2, hi: h2 }) => {
            end(*l1, *l2) && end(*h1, *h2)
        }
        _ => false,
    }
}

/// `inner` lies within `outer`, up to `tol`.
fn within(inner: &SolveOutcome, outer: &SolveOutcome, tol: f64) -> bool {
    match (inner, outer) {
        (SolveOutcome::Infeasible, _) => true,
        (_, SolveOutcome::Infeasible) => false,
        (SolveOutcome::Feasible { lo: l1, hi: h1 }, SolveOutcome::Feasible { lo: l2, hi: h2 }) => {
            let lo_ok = match (l1, l2) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => *a >= b - tol * (1.0 + b.abs()),
            };
            let hi_ok = match (h1, h2) {
                (_, None) => true,
                (None, Some(_)) => false,
                (Some(a), Some(b)) => *a <= b + tol * (1.0 + b.abs()),
            };
            lo_ok && hi_ok
        }
    }
}

fn widest(r: &Result<InferenceResult, InferenceError>) -> SolveOutcome {
    match r {
        Ok(r) => r.support(),
        Err(InferenceError::Infeasible) | Err(InferenceError::SupportInfeasible) => SolveOutcome::Infeasible,
        Err(e) => panic!("unexpected error {e}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn term_sets_follow_truth_tables(extra in any::<bool>(), e in term(3)) {
        // An unused fourth property must not change the truth table.
        let names: Vec<String> = ["a", "b", "c", "d"][..if extra { 4 } else { 3 }].iter().map(|x| x.to_string()).collect();
        let props = PropertySet::new(names.clone()).unwrap();
        let set = atoms_of(&e, &props).unwrap();
        for k in 0..props.atom_count() {
            prop_assert_eq!(set.contains(k), truth(&e, &names, k));
        }
        let not = atoms_of(&e.clone().not(), &props).unwrap();
        prop_assert_eq!(not, set.complement());
        for (i, n) in names.iter().enumerate() {
            let p = atoms_of(&TermExpr::prop(n.as_str()), &props).unwrap();
            prop_assert_eq!(p.len(), 1 << (names.len() - 1));
            prop_assert!(p.iter().all(|k| k >> i & 1 == 1));
        }
    }

    #[test]
    fn constraints_stay_inside_atom_range(syl in crisp_syllogism()) {
        let bounds = premise_bounds(&syl, 1.0).unwrap();
        let sys = compile_system(&syl, &bounds, 16).unwrap();
        let n = syl.properties().atom_count();
        prop_assert_eq!(sys.atom_count, n);
        for c in &sys.constraints {
            prop_assert!(c.expr.max_index().map_or(true, |k| k < n), "{}", c);
        }
        prop_assert!(sys.objective.numerator.max_index().map_or(true, |k| k < n));
        if let Some(d) = &sys.objective.denominator {
            prop_assert!(d.max_index().map_or(true, |k| k < n));
        }
    }

    #[test]
    fn extra_premise_never_widens(syl in crisp_syllogism().prop_filter("two premises", |s| s.premises().len() >= 2)) {
        let cfg = EngineConfig::default();
        let full = widest(&infer_crisp(&syl, &cfg));
        let fewer = syl.with_premises(syl.premises()[..syl.premises().len() - 1].to_vec()).unwrap();
        let loose = widest(&infer_crisp(&fewer, &cfg));
        prop_assert!(within(&full, &loose, 1e-7), "full {} fewer {}", full, loose);
    }

    #[test]
    fn crisp_premises_agree_across_modes(syl in crisp_syllogism()) {
        let cfg = EngineConfig::default();
        let crisp = infer_crisp(&syl, &cfg);
        let kersup = infer_ker_sup(&syl, &cfg);
        let alpha = infer_alpha(&syl, &EngineConfig { levels: 3, ..cfg });
        match crisp {
            Ok(c) => {
                let o = c.support();
                let k = kersup.unwrap();
                prop_assert!(outcomes_close(&k.support(), &o, 1e-9));
                prop_assert!(outcomes_close(&k.kernel().unwrap(), &o, 1e-9));
                let a = alpha.unwrap();
                for cut in a.level_outcomes() {
                    prop_assert!(outcomes_close(&cut.outcome, &o, 1e-9));
                }
                prop_assert!(!a.non_normalized);
            }
            Err(InferenceError::Infeasible) => {
                prop_assert!(matches!(kersup, Err(InferenceError::SupportInfeasible)));
                prop_assert!(matches!(alpha, Err(InferenceError::SupportInfeasible)));
            }
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn alpha_ends_match_kernel_and_support(syl in fuzzy_syllogism(), levels in 2usize..=6) {
        let cfg = EngineConfig { levels, ..EngineConfig::default() };
        let (Ok(ks), Ok(a)) = (infer_ker_sup(&syl, &cfg), infer_alpha(&syl, &cfg)) else {
            return Ok(());
        };
        let cuts = a.level_outcomes();
        prop_assert_eq!(cuts.len(), levels);
        prop_assert!(outcomes_close(&cuts[0].outcome, &ks.support(), 1e-9));
        let top = &cuts[levels - 1].outcome;
        match ks.kernel() {
            Some(k) => prop_assert!(outcomes_close(top, &k, 1e-9)),
            None => prop_assert!(!top.is_feasible()),
        }
        prop_assert_eq!(a.non_normalized, ks.non_normalized);
    }

    #[test]
    fn document_round_trip(syl in prop_oneof![crisp_syllogism(), fuzzy_syllogism()], mode in proptest::option::of(prop_oneof![Just(Mode::Crisp), Just(Mode::KerSup), Just(Mode::Alpha)]), levels in proptest::option::of(2usize..30)) {
        let doc = SyllogismDoc {
            syllogism: syl,
            options: DocOptions { mode, levels, ..DocOptions::default() },
        };
        let text = doc.to_string();
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &doc, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }
}

#[test]
fn fixtures_round_trip() {
    for name in [
        "dogs_cats_parrots.syl",
        "sixth_course.syl",
        "sixth_course_kersup.syl",
        "sixth_course_fuzzy.syl",
        "sixth_course_non_normalized.syl",
        "wine_rim.syl",
        "wine_account.syl",
        "hats_and_ties.syl",
        "wine_boxes.syl",
    ] {
        let doc = fixture(name);
        let again = parse(&doc.to_string()).unwrap();
        assert_eq!(again, doc, "{name}");
    }
}
