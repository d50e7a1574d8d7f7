//! Intervals with extended-rational endpoints.

use std::cmp::Ordering;
use std::fmt;

use super::rational::Rat;
use super::{ExactError, Result};

/// An extended rational: a finite value or one of the two infinities.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ext {
    NegInf,
    Fin(Rat),
    PosInf,
}

impl Ext {
    pub fn fin(&self) -> Option<&Rat> {
        match self {
            Ext::Fin(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Ext) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Ext) -> Ordering {
        use Ext::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "inf"),
            Ext::Fin(r) => write!(f, "{r}"),
        }
    }
}

/// One interval end: an extended value plus whether the end is included.
/// Infinite ends are never included.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endpoint {
    pub value: Ext,
    pub closed: bool,
}

impl Endpoint {
    pub fn open(value: Ext) -> Endpoint {
        Endpoint {
            value,
            closed: false,
        }
    }

    pub fn closed(r: Rat) -> Endpoint {
        Endpoint {
            value: Ext::Fin(r),
            closed: true,
        }
    }
}

/// A nondegenerate interval: `lo.value < hi.value` strictly. Singletons are
/// represented as points elsewhere, never as intervals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
}

/// What an interval–interval intersection produced.
pub enum Overlap {
    Empty,
    Point(Rat),
    Proper(Interval),
}

impl Interval {
    pub fn new(lo: Endpoint, hi: Endpoint) -> Result<Interval> {
        if !matches!((&lo.value, &lo.closed), (Ext::Fin(_), _) | (_, false)) {
            return Err(ExactError::Invalid("closed infinite endpoint".into()));
        }
        if !matches!((&hi.value, &hi.closed), (Ext::Fin(_), _) | (_, false)) {
            return Err(ExactError::Invalid("closed infinite endpoint".into()));
        }
        if lo.value >= hi.value {
            return Err(ExactError::Invalid(format!(
                "degenerate interval: lo {} ≥ hi {}",
                lo.value, hi.value
            )));
        }
        Ok(Interval { lo, hi })
    }

    /// The whole line.
    pub fn all() -> Interval {
        Interval {
            lo: Endpoint::open(Ext::NegInf),
            hi: Endpoint::open(Ext::PosInf),
        }
    }

    /// Bounded interval from rational endpoints.
    pub fn bounded(lo: Rat, lo_closed: bool, hi: Rat, hi_closed: bool) -> Result<Interval> {
        Interval::new(
            Endpoint {
                value: Ext::Fin(lo),
                closed: lo_closed,
            },
            Endpoint {
                value: Ext::Fin(hi),
                closed: hi_closed,
            },
        )
    }

    pub fn open(lo: Rat, hi: Rat) -> Result<Interval> {
        Interval::bounded(lo, false, hi, false)
    }

    pub fn closed(lo: Rat, hi: Rat) -> Result<Interval> {
        Interval::bounded(lo, true, hi, true)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.above_lo(x) && self.below_hi(x)
    }

    /// Is `x` on the inner side of the lower end?
    pub fn above_lo(&self, x: &Rat) -> bool {
        match &self.lo.value {
            Ext::NegInf => true,
            Ext::PosInf => false,
            Ext::Fin(lo) => match lo.cmp(x) {
                Ordering::Less => true,
                Ordering::Equal => self.lo.closed,
                Ordering::Greater => false,
            },
        }
    }

    /// Is `x` on the inner side of the upper end?
    pub fn below_hi(&self, x: &Rat) -> bool {
        match &self.hi.value {
            Ext::PosInf => true,
            Ext::NegInf => false,
            Ext::Fin(hi) => match x.cmp(hi) {
                Ordering::Less => true,
                Ordering::Equal => self.hi.closed,
                Ordering::Greater => false,
            },
        }
    }

    /// Exact intersection; may collapse to a point (`[0,1] ∩ [1,2] = {1}`).
    pub fn intersect(&self, other: &Interval) -> Overlap {
        let lo = max_lo(&self.lo, &other.lo);
        let hi = min_hi(&self.hi, &other.hi);
        match lo.value.cmp(&hi.value) {
            Ordering::Less => Overlap::Proper(Interval { lo, hi }),
            Ordering::Equal => {
                if lo.closed && hi.closed {
                    match lo.value {
                        Ext::Fin(r) => Overlap::Point(r),
                        _ => unreachable!("infinite endpoints are open"),
                    }
                } else {
                    Overlap::Empty
                }
            }
            Ordering::Greater => Overlap::Empty,
        }
    }

    /// Union when the two intervals overlap or touch compatibly, i.e. when
    /// the union is again an interval. `(0,1) ∪ (1,2)` is *not* mergeable
    /// (the union misses 1); `(0,1] ∪ (1,2)` is.
    pub fn try_merge(&self, other: &Interval) -> Option<Interval> {
        let (a, b) = if (self.lo.value.cmp(&other.lo.value))
            .then_with(|| other.lo.closed.cmp(&self.lo.closed))
            != Ordering::Greater
        {
            (self, other)
        } else {
            (other, self)
        };
        // a starts at or before b; they merge iff b's start is covered by a
        // or touches a's end with at least one side closed.
        let reach = match (&a.hi.value, &b.lo.value) {
            (hv, lv) if hv > lv => true,
            (hv, lv) if hv == lv => a.hi.closed || b.lo.closed,
            _ => false,
        };
        if !reach {
            return None;
        }
        let hi = if (a.hi.value.cmp(&b.hi.value)).then_with(|| a.hi.closed.cmp(&b.hi.closed))
            == Ordering::Less
        {
            b.hi.clone()
        } else {
            a.hi.clone()
        };
        Some(Interval {
            lo: a.lo.clone(),
            hi,
        })
    }

    /// Is every point of `self` a member of `other`?
    pub fn subset_of(&self, other: &Interval) -> bool {
        let lo_ok = match self.lo.value.cmp(&other.lo.value) {
            Ordering::Greater => true,
            Ordering::Equal => other.lo.closed || !self.lo.closed,
            Ordering::Less => false,
        };
        let hi_ok = match self.hi.value.cmp(&other.hi.value) {
            Ordering::Less => true,
            Ordering::Equal => other.hi.closed || !self.hi.closed,
            Ordering::Greater => false,
        };
        lo_ok && hi_ok
    }

    /// Some member, for witnesses: a finite representative point.
    pub fn sample(&self) -> Rat {
        match (&self.lo.value, &self.hi.value) {
            (Ext::Fin(a), Ext::Fin(b)) => {
                if self.lo.closed {
                    a.clone()
                } else if self.hi.closed {
                    b.clone()
                } else {
                    Rat::mid(a, b)
                }
            }
            (Ext::Fin(a), _) => {
                if self.lo.closed {
                    a.clone()
                } else {
                    a + &Rat::one()
                }
            }
            (_, Ext::Fin(b)) => {
                if self.hi.closed {
                    b.clone()
                } else {
                    b - &Rat::one()
                }
            }
            _ => Rat::zero(),
        }
    }

    /// Reflection `x ↦ −x`.
    pub fn reflect(&self) -> Interval {
        let flip = |e: &Endpoint| Endpoint {
            value: match &e.value {
                Ext::NegInf => Ext::PosInf,
                Ext::PosInf => Ext::NegInf,
                Ext::Fin(r) => Ext::Fin(-r),
            },
            closed: e.closed,
        };
        Interval {
            lo: flip(&self.hi),
            hi: flip(&self.lo),
        }
    }
}

/// The tighter of two lower endpoints (for intersection).
fn max_lo(a: &Endpoint, b: &Endpoint) -> Endpoint {
    match a.value.cmp(&b.value) {
        Ordering::Greater => a.clone(),
        Ordering::Less => b.clone(),
        Ordering::Equal => Endpoint {
            value: a.value.clone(),
            closed: a.closed && b.closed,
        },
    }
}

/// The tighter of two upper endpoints (for intersection).
fn min_hi(a: &Endpoint, b: &Endpoint) -> Endpoint {
    match a.value.cmp(&b.value) {
        Ordering::Less => a.clone(),
        Ordering::Greater => b.clone(),
        Ordering::Equal => Endpoint {
            value: a.value.clone(),
            closed: a.closed && b.closed,
        },
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{},{}{}",
            if self.lo.closed { '[' } else { '(' },
            self.lo.value,
            self.hi.value,
            if self.hi.closed { ']' } else { ')' },
        )
    }
}
