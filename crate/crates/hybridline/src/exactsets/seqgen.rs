//! Geometric sequence generators.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{Ext, Interval};
use super::rational::Rat;
use super::{ExactError, Result};

/// The point set `{a + c·r^k : k ≥ k0}` for `c ≠ 0`, `0 < r < 1`.
///
/// Terms converge strictly monotonically to the limit `a`, which is *not* a
/// member: decreasing toward `a` from above when `c > 0`, increasing from
/// below when `c < 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SeqGen {
    a: Rat,
    c: Rat,
    r: Rat,
    k0: u64,
}

/// A set of term indices, always contiguous because terms are monotone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRange {
    Empty,
    /// Inclusive on both ends.
    Seg(u64, u64),
    /// All `k ≥` the given index.
    Tail(u64),
}

impl SeqGen {
    pub fn new(a: Rat, c: Rat, r: Rat, k0: u64) -> Result<SeqGen> {
        if c.is_zero() {
            return Err(ExactError::Invalid("generator coefficient is zero".into()));
        }
        if !r.is_positive() || r >= Rat::one() {
            return Err(ExactError::Invalid(format!(
                "generator ratio {r} outside (0,1)"
            )));
        }
        Ok(SeqGen { a, c, r, k0 })
    }

    pub fn limit(&self) -> &Rat {
        &self.a
    }

    pub fn coeff(&self) -> &Rat {
        &self.c
    }

    pub fn ratio(&self) -> &Rat {
        &self.r
    }

    pub fn start(&self) -> u64 {
        self.k0
    }

    /// Terms increase toward the limit iff the coefficient is negative.
    pub fn increasing(&self) -> bool {
        self.c.is_negative()
    }

    /// `a + c·r^k`. The index is absolute (meaningful for `k ≥ k0`).
    pub fn term(&self, k: u64) -> Rat {
        &self.a + &(&self.c * &self.r.pow(k))
    }

    /// Equivalent generator with `k0 = 0` (the stored form inside canonical
    /// sets; coefficient absorbs `r^k0`).
    pub fn normalized(&self) -> SeqGen {
        if self.k0 == 0 {
            return self.clone();
        }
        SeqGen {
            a: self.a.clone(),
            c: &self.c * &self.r.pow(self.k0),
            r: self.r.clone(),
            k0: 0,
        }
    }

    /// Same point set with the first `n` terms dropped.
    pub fn tail(&self, from: u64) -> SeqGen {
        debug_assert!(from >= self.k0);
        SeqGen {
            a: self.a.clone(),
            c: self.c.clone(),
            r: self.r.clone(),
            k0: from,
        }
        .normalized()
    }

    pub fn reflect(&self) -> SeqGen {
        SeqGen {
            a: -&self.a,
            c: -&self.c,
            r: self.r.clone(),
            k0: self.k0,
        }
    }

    /// Exact membership: the term index of `x`, if `x` is a term.
    pub fn member_index(&self, x: &Rat) -> Option<u64> {
        let t = &(x - &self.a) / &self.c;
        if !t.is_positive() {
            return None;
        }
        // t = r^k: read k off the p-adic valuation for one prime of r,
        // then verify exactly.
        let p = smallest_prime_of(&self.r);
        let vr = valuation(&self.r, &p);
        debug_assert!(vr != 0);
        let vt = valuation(&t, &p);
        if vt % vr != 0 {
            return None;
        }
        let k = vt / vr;
        if k < 0 {
            return None;
        }
        let k = k as u64;
        if k >= self.k0 && self.r.pow(k) == t {
            Some(k)
        } else {
            None
        }
    }

    /// Smallest `k ≥ k0` with `r^k ≤ s`; requires `s > 0`.
    fn first_k_le(&self, s: &Rat) -> u64 {
        debug_assert!(s.is_positive());
        if self.r.pow(self.k0) <= *s {
            return self.k0;
        }
        let mut hi = self.k0.max(1);
        while self.r.pow(hi) > *s {
            hi *= 2;
        }
        let mut lo = self.k0; // r^lo > s
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.r.pow(mid) > *s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    /// Largest `k ≥ k0` with `r^k ≥ s`, or `None` when even `r^k0 < s`.
    /// Requires `s > 0`; unbounded-above cannot happen since `r^k → 0`.
    fn last_k_ge(&self, s: &Rat) -> Option<u64> {
        if self.r.pow(self.k0) < *s {
            return None;
        }
        // first k with r^k < s, minus one
        let mut hi = self.k0.max(1);
        while self.r.pow(hi) >= *s {
            hi *= 2;
        }
        let mut lo = self.k0; // r^lo ≥ s
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.r.pow(mid) >= *s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }

    /// Index of the largest term `≤ t` (`<` when `strict`).
    pub fn max_term_le(&self, t: &Rat, strict: bool) -> Option<u64> {
        if self.c.is_positive() {
            // terms decrease toward a from above
            let s = &(t - &self.a) / &self.c;
            if !s.is_positive() {
                return None; // all terms exceed the limit ≥ t
            }
            let k = self.first_k_le(&s);
            if strict && self.term(k) == *t {
                Some(k + 1)
            } else {
                Some(k)
            }
        } else {
            // terms increase toward a from below; larger k ⇒ larger term
            if *t >= self.a {
                return None; // no largest term: they accumulate at a < t
            }
            let s = &(t - &self.a) / &self.c; // positive scale, flipped order
            let mut k = self.last_k_ge(&s)?;
            if strict && self.term(k) == *t {
                if k == self.k0 {
                    return None;
                }
                k -= 1;
            }
            Some(k)
        }
    }

    /// Index of the smallest term `≥ t` (`>` when `strict`).
    pub fn min_term_ge(&self, t: &Rat, strict: bool) -> Option<u64> {
        self.reflect().max_term_le(&-t, strict)
    }

    /// Which term indices land inside the interval.
    pub fn k_set_in(&self, iv: &Interval) -> KRange {
        // Terms within each endpoint constraint form an initial segment or a
        // tail; the meet of the two stays contiguous.
        let above: KSide = match &iv.lo.value {
            Ext::NegInf => KSide::All,
            Ext::PosInf => KSide::None,
            Ext::Fin(v) => self.side(v, iv.lo.closed, true),
        };
        let below: KSide = match &iv.hi.value {
            Ext::PosInf => KSide::All,
            Ext::NegInf => KSide::None,
            Ext::Fin(v) => self.side(v, iv.hi.closed, false),
        };
        above.meet(below, self.k0)
    }

    /// Indices with `term(k) > v` (or `≥` when closed) if `upper` is true,
    /// else `term(k) < v` (or `≤`).
    fn side(&self, v: &Rat, closed: bool, upper: bool) -> KSide {
        let inc = self.increasing();
        // For increasing generators, {k : term(k) > v} is a tail and
        // {k : term(k) < v} an initial segment; decreasing is the mirror.
        if upper {
            if inc {
                // first index past the constraint opens a tail; no such
                // index means no term clears the bound at all
                match self.min_term_ge(v, !closed) {
                    Some(k) => KSide::From(k),
                    None => KSide::None,
                }
            } else {
                match self.max_term_le(v, closed) {
                    // terms ≤ v (non-strict when open) start at k: the
                    // complement — terms satisfying the constraint — is the
                    // initial segment before it
                    Some(k) => KSide::Until(k),
                    None => KSide::All,
                }
            }
        } else if inc {
            // first violating index truncates; none violating keeps all
            match self.min_term_ge(v, closed) {
                Some(k) => KSide::Until(k),
                None => KSide::All,
            }
        } else {
            match self.max_term_le(v, !closed) {
                Some(k) => KSide::From(k),
                None => KSide::None,
            }
        }
    }
}

/// Half-constraint on indices: everything, nothing, a tail, or a strict
/// initial segment `[k0, k)`.
#[derive(Debug, Clone, Copy)]
enum KSide {
    All,
    None,
    From(u64),
    /// Exclusive upper bound.
    Until(u64),
}

impl KSide {
    fn meet(self, other: KSide, k0: u64) -> KRange {
        use KSide::*;
        let (from, until) = match (self, other) {
            (None, _) | (_, None) => return KRange::Empty,
            (All, All) => (k0, u64::MAX),
            (All, From(f)) | (From(f), All) => (f, u64::MAX),
            (All, Until(u)) | (Until(u), All) => (k0, u),
            (From(f), Until(u)) | (Until(u), From(f)) => (f, u),
            (From(f), From(g)) => (f.max(g), u64::MAX),
            (Until(u), Until(v)) => (k0, u.min(v)),
        };
        if until == u64::MAX {
            KRange::Tail(from)
        } else if from < until {
            KRange::Seg(from, until - 1)
        } else {
            KRange::Empty
        }
    }
}

/// Smallest prime dividing numerator or denominator of `r`.
fn smallest_prime_of(r: &Rat) -> BigInt {
    let n = r.numer().abs() * r.denom();
    debug_assert!(!n.is_one());
    if n.is_even() {
        return BigInt::from(2);
    }
    let mut p = BigInt::from(3);
    loop {
        if n.is_multiple_of(&p) {
            return p;
        }
        p += 2;
    }
}

/// `v_p` of a nonzero rational.
fn valuation(x: &Rat, p: &BigInt) -> i64 {
    fn count(mut n: BigInt, p: &BigInt) -> i64 {
        let mut v = 0;
        loop {
            let (q, rem) = n.div_rem(p);
            if rem.is_zero() {
                n = q;
                v += 1;
            } else {
                return v;
            }
        }
    }
    count(x.numer().abs(), p) - count(x.denom().clone(), p)
}

impl fmt::Display for SeqGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gen({};{};{};{})", self.a, self.c, self.r, self.k0)
    }
}
