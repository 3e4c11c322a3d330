//! Quantifier families and their crisp, kernel/support, trapezoidal and RIM
//! shapes, plus α-cut extraction and trapezoid fitting over cut collections.

use std::fmt;

use thiserror::Error;

use crate::interval::Interval;

/// Tolerance used when checking that a cut collection is nested.
pub const NESTING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    All,
    None,
    Some,
    NotAll,
    Absolute,
    Proportional,
    Exception,
    ComparativeAbsolute,
    ComparativeProportional,
    Similarity,
}

/// Unit in which a family's bounds are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Unit {
    Count,
    Proportion,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::All,
        Family::None,
        Family::Some,
        Family::NotAll,
        Family::Absolute,
        Family::Proportional,
        Family::Exception,
        Family::ComparativeAbsolute,
        Family::ComparativeProportional,
        Family::Similarity,
    ];

    pub fn is_logical(self) -> bool {
        matches!(
            self,
            Family::All | Family::None | Family::Some | Family::NotAll
        )
    }

    /// `None` for the unit-free logical families.
    pub fn unit(self) -> Option<Unit> {
        match self {
            Family::All | Family::None | Family::Some | Family::NotAll => None,
            Family::Absolute | Family::Exception | Family::ComparativeAbsolute => Some(Unit::Count),
            Family::Proportional | Family::ComparativeProportional | Family::Similarity => {
                Some(Unit::Proportion)
            }
        }
    }

    /// Families whose measure is a ratio of two cardinalities.
    pub fn is_ratio(self) -> bool {
        self.unit() == Some(Unit::Proportion)
    }

    /// Families that compare two whole terms rather than restrict/scope.
    pub fn is_comparative(self) -> bool {
        matches!(
            self,
            Family::ComparativeAbsolute | Family::ComparativeProportional | Family::Similarity
        )
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Family::All => "all",
            Family::None => "none",
            Family::Some => "some",
            Family::NotAll => "not-all",
            Family::Absolute => "abs",
            Family::Proportional => "prop",
            Family::Exception => "exc",
            Family::ComparativeAbsolute => "cmpabs",
            Family::ComparativeProportional => "cmpprop",
            Family::Similarity => "sim",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.keyword() == s)
    }

    /// Checks that a bound lies in the family's value domain.
    pub fn check_bound(self, iv: &Interval) -> Result<(), QuantifierError> {
        let bad = |reason: &'static str| {
            Err(QuantifierError::BoundOutOfDomain {
                family: self,
                bound: *iv,
                reason,
            })
        };
        if iv.lo.is_nan() || iv.hi.is_nan() || iv.lo.is_infinite() {
            return bad("bounds must be finite numbers (upper bound may be inf)");
        }
        if iv.lo > iv.hi {
            return bad("lower bound exceeds upper bound");
        }
        match self {
            Family::Absolute | Family::Exception | Family::ComparativeProportional => {
                if iv.lo < 0.0 {
                    return bad("bounds must be nonnegative");
                }
            }
            Family::Proportional | Family::Similarity => {
                if iv.lo < 0.0 || iv.hi > 1.0 {
                    return bad("proportions must lie in [0,1]");
                }
            }
            Family::ComparativeAbsolute => {}
            Family::All | Family::None | Family::Some | Family::NotAll => {}
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// Trapezoidal membership function: support `[a,d]`, kernel `[b,c]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Trapezoid {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, QuantifierError> {
        let ok = !(a.is_nan() || b.is_nan() || c.is_nan() || d.is_nan()) && a <= b && b <= c && c <= d;
        if !ok {
            return Err(QuantifierError::BadTrapezoid([a, b, c, d]));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn rectangle(iv: &Interval) -> Self {
        Self {
            a: iv.lo,
            b: iv.lo,
            c: iv.hi,
            d: iv.hi,
        }
    }

    pub fn support(&self) -> Interval {
        Interval::closed(self.a, self.d)
    }

    pub fn kernel(&self) -> Interval {
        Interval::closed(self.b, self.c)
    }

    pub fn cut(&self, level: f64) -> Interval {
        Interval::closed(lerp(self.a, self.b, level), lerp(self.d, self.c, level))
    }

    pub fn membership(&self, v: f64) -> f64 {
        if v < self.a || v > self.d {
            0.0
        } else if v < self.b {
            (v - self.a) / (self.b - self.a)
        } else if v <= self.c {
            1.0
        } else {
            (self.d - v) / (self.d - self.c)
        }
    }

    pub fn params(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

/// `from + t·(to − from)`, with infinite endpoints kept infinite.
fn lerp(from: f64, to: f64, t: f64) -> f64 {
    if from == to || t <= 0.0 {
        from
    } else if t >= 1.0 {
        to
    } else if from.is_infinite() {
        from
    } else if to.is_infinite() {
        to
    } else {
        from + t * (to - from)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSupportPair {
    pub kernel: Interval,
    pub support: Interval,
}

impl KernelSupportPair {
    pub fn new(kernel: Interval, support: Interval) -> Result<Self, QuantifierError> {
        if !kernel.is_within(&support, 0.0) || kernel.is_empty() {
            return Err(QuantifierError::KernelOutsideSupport { kernel, support });
        }
        Ok(Self { kernel, support })
    }

    /// Linear interpolation between the support (level 0) and kernel (level 1).
    pub fn cut(&self, level: f64) -> Interval {
        Interval::closed(
            lerp(self.support.lo, self.kernel.lo, level),
            lerp(self.support.hi, self.kernel.hi, level),
        )
    }
}

/// Regular increasing monotone quantifier `Q(p) = p^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RimQuantifier {
    pub exponent: f64,
}

impl RimQuantifier {
    pub fn new(exponent: f64) -> Result<Self, QuantifierError> {
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(QuantifierError::BadRimExponent(exponent));
        }
        Ok(Self { exponent })
    }

    pub fn membership(&self, p: f64) -> f64 {
        p.clamp(0.0, 1.0).powf(self.exponent)
    }

    pub fn cut(&self, level: f64) -> Interval {
        Interval::closed(level.powf(1.0 / self.exponent), 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    Logical,
    Interval(Interval),
    KerSup(KernelSupportPair),
    Trapezoid(Trapezoid),
    Rim(RimQuantifier),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantifierSpec {
    family: Family,
    shape: Shape,
}

impl QuantifierSpec {
    pub fn new(family: Family, shape: Shape) -> Result<Self, QuantifierError> {
        match (family.is_logical(), &shape) {
            (true, Shape::Logical) => {}
            (true, _) => return Err(QuantifierError::ShapeOnLogical(family)),
            (false, Shape::Logical) => return Err(QuantifierError::MissingShape(family)),
            (false, Shape::Interval(iv)) => family.check_bound(iv)?,
            (false, Shape::KerSup(p)) => {
                family.check_bound(&p.kernel)?;
                family.check_bound(&p.support)?;
            }
            (false, Shape::Trapezoid(t)) => family.check_bound(&t.support())?,
            (false, Shape::Rim(_)) => {
                if family.unit() != Some(Unit::Proportion) {
                    return Err(QuantifierError::RimNeedsProportion(family));
                }
            }
        }
        Ok(Self { family, shape })
    }

    pub fn logical(family: Family) -> Result<Self, QuantifierError> {
        Self::new(family, Shape::Logical)
    }

    pub fn crisp(family: Family, lo: f64, hi: f64) -> Result<Self, QuantifierError> {
        Self::new(family, Shape::Interval(Interval::closed(lo, hi)))
    }

    pub fn trapezoid(family: Family, a: f64, b: f64, c: f64, d: f64) -> Result<Self, QuantifierError> {
        Self::new(family, Shape::Trapezoid(Trapezoid::new(a, b, c, d)?))
    }

    pub fn rim(exponent: f64) -> Result<Self, QuantifierError> {
        Self::new(Family::Proportional, Shape::Rim(RimQuantifier::new(exponent)?))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Whether the shape carries graded membership (anything but a crisp interval).
    pub fn is_fuzzy(&self) -> bool {
        matches!(self.shape, Shape::KerSup(_) | Shape::Trapezoid(_) | Shape::Rim(_))
    }

    pub fn kernel(&self) -> Option<Interval> {
        match &self.shape {
            Shape::Logical => None,
            Shape::Interval(iv) => Some(*iv),
            Shape::KerSup(p) => Some(p.kernel),
            Shape::Trapezoid(t) => Some(t.kernel()),
            Shape::Rim(r) => Some(r.cut(1.0)),
        }
    }

    pub fn support(&self) -> Option<Interval> {
        match &self.shape {
            Shape::Logical => None,
            Shape::Interval(iv) => Some(*iv),
            Shape::KerSup(p) => Some(p.support),
            Shape::Trapezoid(t) => Some(t.support()),
            Shape::Rim(r) => Some(r.cut(0.0)),
        }
    }
}

/// The closed crisp interval `{v : μ(v) ≥ level}`; level 0 yields the closed support.
///
/// Crisp intervals are returned unchanged at every level and kernel/support
/// pairs are interpolated linearly between their two intervals.
pub fn alpha_cut(q: &QuantifierSpec, level: f64) -> Result<Interval, QuantifierError> {
    if !(0.0..=1.0).contains(&level) {
        return Err(QuantifierError::LevelOutOfRange(level));
    }
    match &q.shape {
        Shape::Logical => Err(QuantifierError::NoNumericShape(q.family)),
        Shape::Interval(iv) => Ok(*iv),
        Shape::KerSup(p) => Ok(p.cut(level)),
        Shape::Trapezoid(t) => Ok(t.cut(level)),
        Shape::Rim(r) => Ok(r.cut(level)),
    }
}

/// Cut levels with their intervals, sorted by increasing level.
///
/// Holds non-normalized results too: `max_level` is below 1 when the
/// highest levels had no solution.
#[derive(Debug, Clone, PartialEq)]
pub struct CutProfile {
    cuts: Vec<(f64, Interval)>,
}

impl CutProfile {
    pub fn new(cuts: Vec<(f64, Interval)>) -> Result<Self, FitError> {
        if cuts.is_empty() {
            return Err(FitError::Empty);
        }
        for w in cuts.windows(2) {
            let ((l0, lower), (l1, upper)) = (w[0], w[1]);
            if !(l1 > l0) {
                return Err(FitError::LevelsNotIncreasing(l0, l1));
            }
            if !upper.is_within(&lower, NESTING_TOL) {
                return Err(FitError::NotNested {
                    lower_level: l0,
                    upper_level: l1,
                });
            }
        }
        Ok(Self { cuts })
    }

    pub fn cuts(&self) -> &[(f64, Interval)] {
        &self.cuts
    }

    pub fn max_level(&self) -> f64 {
        self.cuts.last().map(|c| c.0).unwrap_or(0.0)
    }

    /// Piecewise-linear cut at any level between the first and last computed cut.
    pub fn interpolate(&self, level: f64) -> Option<Interval> {
        let first = self.cuts.first()?;
        if level < first.0 || level > self.max_level() {
            return None;
        }
        let i = self.cuts.partition_point(|c| c.0 <= level);
        if i == 0 {
            return Some(first.1);
        }
        let (l0, iv0) = self.cuts[i - 1];
        if i == self.cuts.len() || l0 == level {
            return Some(iv0);
        }
        let (l1, iv1) = self.cuts[i];
        let t = (level - l0) / (l1 - l0);
        Some(Interval::closed(lerp(iv0.lo, iv1.lo, t), lerp(iv0.hi, iv1.hi, t)))
    }

    /// Membership of `v` under piecewise-linear interpolation between cuts.
    pub fn membership(&self, v: f64) -> f64 {
        let Some(&(l0, base)) = self.cuts.first() else {
            return 0.0;
        };
        if !base.contains(v) {
            return 0.0;
        }
        let mut best = l0;
        for w in self.cuts.windows(2) {
            let ((la, a), (lb, b)) = (w[0], w[1]);
            if b.contains(v) {
                best = lb;
                continue;
            }
            // v leaves the cut somewhere in (la, lb): solve on whichever side moved.
            let mut t: f64 = 1.0;
            if v < b.lo && b.lo > a.lo {
                t = t.min((v - a.lo) / (b.lo - a.lo));
            }
            if v > b.hi && b.hi < a.hi {
                t = t.min((a.hi - v) / (a.hi - b.hi));
            }
            best = la + t.clamp(0.0, 1.0) * (lb - la);
            break;
        }
        best
    }
}

/// Diagnostics from fitting a trapezoid to a cut collection.
#[derive(Debug, Clone, PartialEq)]
pub struct FitReport {
    pub max_level: f64,
    pub normalized: bool,
    /// `(level, |lo − fit_lo|, |hi − fit_hi|)` for every input cut.
    pub residuals: Vec<(f64, f64, f64)>,
    pub max_residual: f64,
}

/// Fits the trapezoid through the lowest cut (support) and the highest cut
/// (kernel) and reports how far the intermediate cuts deviate from it.
pub fn fit_trapezoid(cuts: &[(f64, Interval)]) -> Result<(Trapezoid, FitReport), FitError> {
    let profile = CutProfile::new(cuts.to_vec())?;
    let (l0, base) = profile.cuts[0];
    let (lm, top) = *profile.cuts.last().expect("non-empty");
    let trap = Trapezoid {
        a: base.lo,
        b: top.lo,
        c: top.hi,
        d: base.hi,
    };
    let span = lm - l0;
    let residual = |actual: f64, fitted: f64| {
        if actual.is_infinite() || fitted.is_infinite() {
            if actual == fitted {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (actual - fitted).abs()
        }
    };
    let residuals: Vec<(f64, f64, f64)> = profile
        .cuts
        .iter()
        .map(|&(level, iv)| {
            let t = if span > 0.0 { (level - l0) / span } else { 0.0 };
            let lo = lerp(trap.a, trap.b, t);
            let hi = lerp(trap.d, trap.c, t);
            (level, residual(iv.lo, lo), residual(iv.hi, hi))
        })
        .collect();
    let max_residual = residuals
        .iter()
        .map(|r| r.1.max(r.2))
        .fold(0.0, f64::max);
    let report = FitReport {
        max_level: lm,
        normalized: lm >= 1.0,
        residuals,
        max_residual,
    };
    Ok((trap, report))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantifierError {
    #[error("invalid trapezoid {0:?}: parameters must satisfy a <= b <= c <= d")]
    BadTrapezoid([f64; 4]),
    #[error("RIM exponent must be a positive finite number, got {0}")]
    BadRimExponent(f64),
    #[error("kernel {kernel} is not contained in support {support}")]
    KernelOutsideSupport { kernel: Interval, support: Interval },
    #[error("bound {bound} is invalid for `{family}`: {reason}")]
    BoundOutOfDomain {
        family: Family,
        bound: Interval,
        reason: &'static str,
    },
    #[error("logical quantifier `{0}` takes no bound")]
    ShapeOnLogical(Family),
    #[error("quantifier `{0}` needs a bound")]
    MissingShape(Family),
    #[error("RIM shape requires a proportion-unit family, got `{0}`")]
    RimNeedsProportion(Family),
    #[error("α-cut level must lie in [0,1], got {0}")]
    LevelOutOfRange(f64),
    #[error("logical quantifier `{0}` has no numeric shape to cut")]
    NoNumericShape(Family),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FitError {
    #[error("no cuts to fit")]
    Empty,
    #[error("cut levels must be strictly increasing ({0} then {1})")]
    LevelsNotIncreasing(f64, f64),
    #[error("cut at level {upper_level} is not nested in the cut at level {lower_level}")]
    NotNested { lower_level: f64, upper_level: f64 },
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tz(a: f64, b: f64, c: f64, d: f64) -> QuantifierSpec {
        QuantifierSpec::trapezoid(Family::Proportional, a, b, c, d).unwrap()
    }

    #[test]
    fn trapezoid_cut_endpoints() {
        let q = tz(0.7, 0.8, 0.9, 1.0);
        assert_eq!(alpha_cut(&q, 0.0).unwrap(), Interval::closed(0.7, 1.0));
        assert_eq!(alpha_cut(&q, 1.0).unwrap(), Interval::closed(0.8, 0.9));
    }

    #[test]
    fn rim_cuts_invert_the_power() {
        let q1 = QuantifierSpec::rim(1.0).unwrap();
        let q05 = QuantifierSpec::rim(0.5).unwrap();
        let c1 = alpha_cut(&q1, 0.36).unwrap();
        let c05 = alpha_cut(&q05, 0.6).unwrap();
        assert!(c1.approx_eq(&Interval::closed(0.36, 1.0), 1e-15));
        assert!(c05.approx_eq(&Interval::closed(0.36, 1.0), 1e-15));
        // μ at the cut's lower end equals the level
        assert!((RimQuantifier::new(0.5).unwrap().membership(c05.lo) - 0.6).abs() < 1e-15);
    }

    #[test]
    fn level_out_of_range() {
        let q = tz(0.0, 0.1, 0.2, 0.3);
        assert!(matches!(alpha_cut(&q, 1.5), Err(QuantifierError::LevelOutOfRange(_))));
        assert!(matches!(alpha_cut(&q, -0.1), Err(QuantifierError::LevelOutOfRange(_))));
    }

    #[test]
    fn logical_has_no_cut() {
        let q = QuantifierSpec::logical(Family::All).unwrap();
        assert!(alpha_cut(&q, 0.5).is_err());
        assert!(QuantifierSpec::new(Family::All, Shape::Interval(Interval::point(1.0))).is_err());
        assert!(QuantifierSpec::new(Family::Absolute, Shape::Logical).is_err());
    }

    #[test]
    fn proportional_bound_domain() {
        assert!(QuantifierSpec::crisp(Family::Proportional, 0.2, 1.2).is_err());
        assert!(QuantifierSpec::crisp(Family::ComparativeProportional, 1.5, 2.0).is_ok());
        assert!(QuantifierSpec::crisp(Family::ComparativeAbsolute, -3.0, 2.0).is_ok());
        assert!(QuantifierSpec::crisp(Family::Absolute, -1.0, 2.0).is_err());
        assert!(QuantifierSpec::crisp(Family::Absolute, 3.0, 2.0).is_err());
    }

    #[test]
    fn fit_two_cuts() {
        let cuts = [(0.0, Interval::closed(0.2, 1.0)), (1.0, Interval::closed(0.42, 1.0))];
        let (t, rep) = fit_trapezoid(&cuts).unwrap();
        assert_eq!(t.params(), [0.2, 0.42, 1.0, 1.0]);
        assert!(rep.normalized);
        assert_eq!(rep.max_residual, 0.0);
    }

    #[test]
    fn fit_rectangle() {
        let iv = Interval::closed(3.0, 5.0);
        let (t, _) = fit_trapezoid(&[(0.0, iv), (1.0, iv)]).unwrap();
        assert_eq!(t, Trapezoid::rectangle(&iv));
    }

    #[test]
    fn fit_rim_has_residual() {
        let rim = RimQuantifier::new(0.5).unwrap();
        let cuts: Vec<_> = (0..=10).map(|i| i as f64 / 10.0).map(|l| (l, rim.cut(l))).collect();
        let (t, rep) = fit_trapezoid(&cuts).unwrap();
        assert_eq!(t.params(), [0.0, 1.0, 1.0, 1.0]);
        assert!(rep.max_residual > 0.2);
        assert_eq!(rep.max_level, 1.0);
    }

    #[test]
    fn fit_rejects_non_nested() {
        let cuts = [(0.0, Interval::closed(0.2, 0.5)), (1.0, Interval::closed(0.1, 0.4))];
        assert!(matches!(fit_trapezoid(&cuts), Err(FitError::NotNested { .. })));
        let cuts = [(0.5, Interval::closed(0.2, 0.5)), (0.5, Interval::closed(0.2, 0.5))];
        assert!(matches!(fit_trapezoid(&cuts), Err(FitError::LevelsNotIncreasing(..))));
    }

    #[test]
    fn non_normalized_profile() {
        let cuts = vec![(0.0, Interval::closed(0.0, 1.0)), (0.5, Interval::closed(0.4, 0.6))];
        let (_, rep) = fit_trapezoid(&cuts).unwrap();
        assert!(!rep.normalized);
        let p = CutProfile::new(cuts).unwrap();
        assert_eq!(p.max_level(), 0.5);
        assert_eq!(p.interpolate(0.75), None);
        assert!((p.membership(0.5) - 0.5).abs() < 1e-12);
        assert!((p.membership(0.2) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn profile_membership_matches_trapezoid() {
        let t = Trapezoid::new(1.0, 2.0, 4.0, 7.0).unwrap();
        let p = CutProfile::new(vec![(0.0, t.cut(0.0)), (1.0, t.cut(1.0))]).unwrap();
        for v in [0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.5, 7.0, 8.0] {
            assert!((p.membership(v) - t.membership(v)).abs() < 1e-12, "v={v}");
        }
    }

    #[test]
    fn unbounded_trapezoid_cut() {
        let t = Trapezoid::new(2.0, 3.0, f64::INFINITY, f64::INFINITY).unwrap();
        assert_eq!(t.cut(0.5), Interval::closed(2.5, f64::INFINITY));
    }

    fn arb_trapezoid() -> impl Strategy<Value = Trapezoid> {
        prop::array::uniform4(0.0f64..100.0).prop_map(|mut p| {
            p.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Trapezoid::new(p[0], p[1], p[2], p[3]).unwrap()
        })
    }

    proptest! {
        #[test]
        fn cuts_are_nested(t in arb_trapezoid(), l1 in 0.0f64..=1.0, l2 in 0.0f64..=1.0, e in 0.05f64..5.0) {
            let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
            prop_assert!(t.cut(hi).is_within(&t.cut(lo), 1e-12));
            let r = RimQuantifier::new(e).unwrap();
            prop_assert!(r.cut(hi).is_within(&r.cut(lo), 1e-12));
        }

        #[test]
        fn trapezoid_round_trip(t in arb_trapezoid(), n in 2usize..12) {
            let cuts: Vec<_> = (0..n)
                .map(|i| i as f64 / (n - 1) as f64)
                .map(|l| (l, t.cut(l)))
                .collect();
            let (fit, rep) = fit_trapezoid(&cuts).unwrap();
            for (x, y) in fit.params().iter().zip(t.params()) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
            prop_assert!(rep.max_residual <= 1e-12);
        }

        #[test]
        fn kernel_support_consistency(t in arb_trapezoid()) {
            let q = QuantifierSpec::new(Family::Absolute, Shape::Trapezoid(t)).unwrap();
            prop_assert_eq!(alpha_cut(&q, 0.0).unwrap(), q.support().unwrap());
            prop_assert_eq!(alpha_cut(&q, 1.0).unwrap(), q.kernel().unwrap());
        }
    }
}
