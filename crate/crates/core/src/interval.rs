use std::fmt;

/// A real interval used both for quantifier bounds and for inferred results.
///
/// An unbounded upper end is stored as `f64::INFINITY`; the lower end is
/// always finite for quantifier bounds but may be `-inf` for results of
/// comparative-absolute conclusions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_strict: bool,
    pub hi_strict: bool,
}

impl Interval {
    pub fn closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_strict: false,
            hi_strict: false,
        }
    }

    pub fn at_least(lo: f64) -> Self {
        Self::closed(lo, f64::INFINITY)
    }

    pub fn point(v: f64) -> Self {
        Self::closed(v, v)
    }

    pub fn hi_unbounded(&self) -> bool {
        self.hi == f64::INFINITY
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_strict || self.hi_strict))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        let above = if self.lo_strict { v > self.lo } else { v >= self.lo };
        let below = if self.hi_strict { v < self.hi } else { v <= self.hi };
        above && below
    }

    /// `self ⊆ other`, allowing `tol` slack on both ends. Strictness is ignored.
    pub fn is_within(&self, other: &Interval, tol: f64) -> bool {
        let lo_ok = other.lo == f64::NEG_INFINITY || self.lo >= other.lo - tol;
        let hi_ok = other.hi == f64::INFINITY || self.hi <= other.hi + tol;
        lo_ok && hi_ok
    }

    /// Endpoint-wise comparison with absolute tolerance; infinite ends must match.
    pub fn approx_eq(&self, other: &Interval, tol: f64) -> bool {
        fn end_eq(a: f64, b: f64, tol: f64) -> bool {
            if a.is_infinite() || b.is_infinite() {
                a == b
            } else {
                (a - b).abs() <= tol
            }
        }
        end_eq(self.lo, other.lo, tol) && end_eq(self.hi, other.hi, tol)
    }

    /// Interval difference `[a,b] ⊖ [c,d] = [a-d, b-c]`.
    pub fn minus(&self, other: &Interval) -> Interval {
        Interval::closed(self.lo - other.hi, self.hi - other.lo)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_strict { '(' } else { '[' };
        let close = if self.hi_strict || self.hi_unbounded() { ')' } else { ']' };
        write!(f, "{open}{},{}{close}", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_membership() {
        let iv = Interval {
            lo: 0.0,
            hi: 1.0,
            lo_strict: true,
            hi_strict: false,
        };
        assert!(!iv.contains(0.0));
        assert!(iv.contains(1.0));
        assert!(Interval::at_least(2.0).contains(1e300));
    }

    #[test]
    fn subtraction() {
        let r = Interval::closed(13.0, 17.0).minus(&Interval::closed(3.0, 5.0));
        assert_eq!(r, Interval::closed(8.0, 14.0));
    }

    #[test]
    fn containment_with_unbounded() {
        assert!(Interval::closed(2.0, 5.0).is_within(&Interval::at_least(0.0), 0.0));
        assert!(!Interval::at_least(0.0).is_within(&Interval::closed(0.0, 5.0), 0.0));
    }
}
