//! Representable subsets of the line and their closure operators.

use super::discrete::Discrete;
use super::interval::{Endpoint, Ext, Interval, Overlap};
use super::rational::Rat;
use super::seqgen::SeqGen;
use super::Result;

/// The three ambient topologies: the euclidean line, the lower-limit line
/// (basic sets `[x, x+ε)`), and the upper-limit line (basic sets `(x−ε, x]`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Topology {
    Real,
    LowerLimit,
    UpperLimit,
}

/// Outcome of a directed supremum or infimum query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupResult {
    /// Finite when nonempty; `−∞` (sup) or `+∞` (inf) for the empty part.
    pub value: Ext,
    /// Whether the extremum is itself a member.
    pub attained: bool,
    pub nonempty: bool,
}

/// A representable set,
///
/// ```text
/// S = (⋃ intervals ∖ minus) ∪ plus,
/// ```
///
/// kept canonical: intervals sorted, pairwise non-mergeable; `plus` entirely
/// outside the intervals (an open endpoint carrying a plus member is closed
/// instead); `minus` entirely inside them (a closed endpoint carved by minus
/// is reopened instead); `plus` and `minus` disjoint.
///
/// Equality is semantic — mutual inclusion — since a countable part may admit
/// more than one minimal generator decomposition.
#[derive(Clone, Debug, Default)]
pub struct RSet {
    intervals: Vec<Interval>,
    plus: Discrete,
    minus: Discrete,
}

impl RSet {
    pub fn empty() -> RSet {
        RSet::default()
    }

    /// The whole line.
    pub fn all() -> RSet {
        RSet {
            intervals: vec![Interval::all()],
            ..RSet::default()
        }
    }

    pub fn from_interval(iv: Interval) -> RSet {
        RSet {
            intervals: vec![iv],
            ..RSet::default()
        }
    }

    pub fn from_points<I: IntoIterator<Item = Rat>>(points: I) -> RSet {
        RSet {
            plus: Discrete::from_points(points),
            ..RSet::default()
        }
    }

    pub fn point(x: Rat) -> RSet {
        RSet::from_points([x])
    }

    /// `(−∞, t]` or `(−∞, t)`.
    pub fn ray_below(t: &Rat, closed: bool) -> RSet {
        let hi = Endpoint {
            value: Ext::Fin(t.clone()),
            closed,
        };
        RSet::from_interval(
            Interval::new(Endpoint::open(Ext::NegInf), hi).expect("ray is nondegenerate"),
        )
    }

    /// `[t, +∞)` or `(t, +∞)`.
    pub fn ray_above(t: &Rat, closed: bool) -> RSet {
        let lo = Endpoint {
            value: Ext::Fin(t.clone()),
            closed,
        };
        RSet::from_interval(
            Interval::new(lo, Endpoint::open(Ext::PosInf)).expect("ray is nondegenerate"),
        )
    }

    /// General constructor from raw parts; canonicalizes.
    pub fn new(
        intervals: Vec<Interval>,
        plus_points: Vec<Rat>,
        plus_gens: Vec<SeqGen>,
        minus_points: Vec<Rat>,
        minus_gens: Vec<SeqGen>,
    ) -> Result<RSet> {
        let plus = Discrete::new(plus_points, plus_gens)?;
        let minus = Discrete::new(minus_points, minus_gens)?;
        canonicalize(intervals, plus, minus)
    }

    /// Constructor from already-built countable parts; canonicalizes.
    pub fn from_parts(intervals: Vec<Interval>, plus: Discrete, minus: Discrete) -> Result<RSet> {
        canonicalize(intervals, plus, minus)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn plus(&self) -> &Discrete {
        &self.plus
    }

    pub fn minus(&self) -> &Discrete {
        &self.minus
    }

    /// Membership: exclusions first, then the plus part, then the intervals.
    pub fn member(&self, x: &Rat) -> bool {
        if self.minus.member(x) {
            return false;
        }
        if self.plus.member(x) {
            return true;
        }
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// True exactly when the interval list is empty.
    pub fn is_countable(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.plus.is_empty()
    }

    pub fn complement(&self) -> Result<RSet> {
        let mut gaps: Vec<Interval> = Vec::new();
        let mut boundary_points: Vec<Rat> = Vec::new();
        let mut push_gap = |lo: Endpoint, hi: Endpoint| {
            if lo.value == hi.value {
                // both flipped ends closed: the gap is the single shared value
                debug_assert!(lo.closed && hi.closed);
                if let Ext::Fin(v) = lo.value {
                    boundary_points.push(v);
                }
            } else {
                gaps.push(Interval::new(lo, hi).expect("gap endpoints are ordered"));
            }
        };
        let mut prev_hi: Option<&Endpoint> = None;
        for iv in &self.intervals {
            match prev_hi {
                None => {
                    if iv.lo.value != Ext::NegInf {
                        push_gap(Endpoint::open(Ext::NegInf), flip(&iv.lo));
                    }
                }
                Some(h) => push_gap(flip(h), flip(&iv.lo)),
            }
            prev_hi = Some(&iv.hi);
        }
        match prev_hi {
            None => push_gap(Endpoint::open(Ext::NegInf), Endpoint::open(Ext::PosInf)),
            Some(h) => {
                if h.value != Ext::PosInf {
                    push_gap(flip(h), Endpoint::open(Ext::PosInf));
                }
            }
        }
        // carved points become members; plus members become carve-outs
        let plus = self.minus.union(&Discrete::from_points(boundary_points))?;
        canonicalize(gaps, plus, self.plus.clone())
    }

    pub fn intersect(&self, other: &RSet) -> Result<RSet> {
        let mut ivs: Vec<Interval> = Vec::new();
        let mut pts: Vec<Rat> = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                match a.intersect(b) {
                    Overlap::Empty => {}
                    Overlap::Point(p) => pts.push(p),
                    Overlap::Proper(iv) => ivs.push(iv),
                }
            }
        }
        let minus = self.minus.union(&other.minus)?;
        let mut plus = Discrete::from_points(pts);
        plus = plus.union(&select_in(&self.plus, other)?)?;
        plus = plus.union(&select_in(&other.plus, self)?)?;
        canonicalize(ivs, plus, minus)
    }

    pub fn union(&self, other: &RSet) -> Result<RSet> {
        self.complement()?
            .intersect(&other.complement()?)?
            .complement()
    }

    pub fn diff(&self, other: &RSet) -> Result<RSet> {
        self.intersect(&other.complement()?)
    }

    /// Closure in the chosen topology. The euclidean closure adds every
    /// finite interval endpoint and every generator limit; the lower-limit
    /// topology adds only points approachable from above (left endpoints,
    /// limits of decreasing generators); the upper-limit topology mirrors.
    /// Countable carve-outs never remove closure points, so the minus part
    /// is dropped wholesale.
    pub fn closure(&self, top: Topology) -> Result<RSet> {
        let close_lo = matches!(top, Topology::Real | Topology::LowerLimit);
        let close_hi = matches!(top, Topology::Real | Topology::UpperLimit);
        let mut ivs = self.intervals.clone();
        for iv in &mut ivs {
            if close_lo && iv.lo.value.is_finite() {
                iv.lo.closed = true;
            }
            if close_hi && iv.hi.value.is_finite() {
                iv.hi.closed = true;
            }
        }
        let mut limit_pts: Vec<Rat> = Vec::new();
        for g in self.plus.gens() {
            let joins = match top {
                Topology::Real => true,
                // terms decrease toward the limit, approaching from above
                Topology::LowerLimit => !g.increasing(),
                Topology::UpperLimit => g.increasing(),
            };
            if joins {
                limit_pts.push(g.limit().clone());
            }
        }
        let plus = self.plus.union(&Discrete::from_points(limit_pts))?;
        canonicalize(ivs, plus, Discrete::empty())
    }

    /// `sup(S ∩ (−∞, t])` with attainment; `nonempty = false` for the empty
    /// intersection (value then `−∞`).
    pub fn sup_below(&self, t: &Rat) -> SupResult {
        self.sup_below_impl(t, false)
    }

    /// `sup(S ∩ (−∞, t))`.
    pub fn sup_strictly_below(&self, t: &Rat) -> SupResult {
        self.sup_below_impl(t, true)
    }

    /// `inf(S ∩ [t, +∞))`, mirrored through reflection.
    pub fn inf_above(&self, t: &Rat) -> SupResult {
        negate_sup(self.reflect().sup_below(&-t))
    }

    /// `inf(S ∩ (t, +∞))`.
    pub fn inf_strictly_above(&self, t: &Rat) -> SupResult {
        negate_sup(self.reflect().sup_strictly_below(&-t))
    }

    fn sup_below_impl(&self, t: &Rat, strict: bool) -> SupResult {
        let ray = Interval::new(
            Endpoint::open(Ext::NegInf),
            Endpoint {
                value: Ext::Fin(t.clone()),
                closed: !strict,
            },
        )
        .expect("downward ray is nondegenerate");
        let mut best: Option<(Rat, bool)> = self.plus.sup_below(t, strict);
        for iv in &self.intervals {
            let cand = match iv.intersect(&ray) {
                Overlap::Empty => None,
                Overlap::Point(p) => {
                    if self.minus.member(&p) {
                        None
                    } else {
                        Some((p, true))
                    }
                }
                Overlap::Proper(piece) => {
                    let v = piece
                        .hi
                        .value
                        .fin()
                        .expect("piece is bounded above by t")
                        .clone();
                    // a carved supremum is still the supremum, just unattained
                    let attained = piece.hi.closed && !self.minus.member(&v);
                    Some((v, attained))
                }
            };
            if let Some(c) = cand {
                match &best {
                    None => best = Some(c),
                    Some((bv, ba)) => {
                        if c.0 > *bv || (c.0 == *bv && c.1 && !*ba) {
                            best = Some(c);
                        }
                    }
                }
            }
        }
        match best {
            Some((v, attained)) => SupResult {
                value: Ext::Fin(v),
                attained,
                nonempty: true,
            },
            None => SupResult {
                value: Ext::NegInf,
                attained: false,
                nonempty: false,
            },
        }
    }

    /// Reflection `x ↦ −x`; canonical form is mirror-stable.
    pub fn reflect(&self) -> RSet {
        let mut intervals: Vec<Interval> = self.intervals.iter().map(Interval::reflect).collect();
        intervals.reverse();
        RSet {
            intervals,
            plus: self.plus.reflect(),
            minus: self.minus.reflect(),
        }
    }

    pub fn subset_of(&self, other: &RSet) -> Result<bool> {
        Ok(self.diff(other)?.is_empty())
    }

    pub fn set_eq(&self, other: &RSet) -> Result<bool> {
        Ok(self.subset_of(other)? && other.subset_of(self)?)
    }

    /// Some member, deterministically chosen: a plus member if one exists,
    /// otherwise a point walked into the first interval past the carve-outs.
    pub fn any_member(&self) -> Option<Rat> {
        if let Some(p) = self.plus.any() {
            return Some(p);
        }
        let iv = self.intervals.first()?;
        let limits = self.minus.limits();
        let l = limits.len() as i64;
        // interior anchors, more than there are carve accumulation points
        let anchors: Vec<Rat> = match (&iv.lo.value, &iv.hi.value) {
            (Ext::Fin(a), Ext::Fin(b)) => (1..=l + 1)
                .map(|i| a + &(&(b - a) * &Rat::new(i, l + 2)))
                .collect(),
            (Ext::Fin(a), _) => (1..=l + 1).map(|i| a + &Rat::int(i)).collect(),
            (_, Ext::Fin(b)) => (1..=l + 1).map(|i| b - &Rat::int(i)).collect(),
            _ => (0..=l).map(Rat::int).collect(),
        };
        let theta = anchors
            .into_iter()
            .find(|t| !limits.contains(t))
            .expect("one more anchor than accumulation points");
        if !self.minus.member(&theta) {
            return Some(theta);
        }
        // walk toward the anchor; the carve-outs do not accumulate there
        let mut step = match &iv.hi.value {
            Ext::Fin(b) => &(b - &theta) / &Rat::int(2),
            _ => Rat::one(),
        };
        for _ in 0..10_000 {
            let x = &theta + &step;
            if iv.contains(&x) && !self.minus.member(&x) {
                return Some(x);
            }
            step = &step / &Rat::int(2);
        }
        unreachable!("a countable carve-out cannot exhaust an interval")
    }

    /// A deterministic spread of members, at most `cap` of them: explicit
    /// plus points, early generator terms, and an interior grid of every
    /// bounded interval, all verified by [`RSet::member`]. Empty sets yield
    /// an empty vector.
    pub fn sample_members(&self, cap: usize) -> Vec<Rat> {
        let mut out: Vec<Rat> = Vec::new();
        let push = |x: Rat, out: &mut Vec<Rat>| {
            if out.len() < cap && self.member(&x) && !out.contains(&x) {
                out.push(x);
            }
        };
        for p in self.plus.points() {
            push(p.clone(), &mut out);
        }
        for g in self.plus.gens() {
            for k in g.start()..g.start() + 4 {
                push(g.term(k), &mut out);
            }
        }
        for iv in &self.intervals {
            match (&iv.lo.value, &iv.hi.value) {
                (Ext::Fin(a), Ext::Fin(b)) => {
                    push(a.clone(), &mut out);
                    push(b.clone(), &mut out);
                    let w = b - a;
                    for (n, d) in [(1, 2), (1, 3), (2, 3), (1, 5), (4, 5), (1, 7)] {
                        push(a + &(&w * &Rat::new(n, d)), &mut out);
                    }
                }
                (Ext::Fin(a), _) => {
                    push(a.clone(), &mut out);
                    for i in 1..5 {
                        push(a + &Rat::int(i), &mut out);
                        push(a + &Rat::new(1, i + 1), &mut out);
                    }
                }
                (_, Ext::Fin(b)) => {
                    push(b.clone(), &mut out);
                    for i in 1..5 {
                        push(b - &Rat::int(i), &mut out);
                        push(b - &Rat::new(1, i + 1), &mut out);
                    }
                }
                _ => {
                    for i in -4..5 {
                        push(Rat::int(i), &mut out);
                    }
                }
            }
        }
        if out.is_empty() {
            if let Some(x) = self.any_member() {
                out.push(x);
            }
        }
        out
    }
}

impl PartialEq for RSet {
    fn eq(&self, other: &RSet) -> bool {
        self.set_eq(other)
            .expect("set equality requires factorable generator data")
    }
}

impl Eq for RSet {}

fn negate_sup(mut r: SupResult) -> SupResult {
    r.value = match r.value {
        Ext::NegInf => Ext::PosInf,
        Ext::PosInf => Ext::NegInf,
        Ext::Fin(v) => Ext::Fin(-v),
    };
    r
}

fn flip(e: &Endpoint) -> Endpoint {
    debug_assert!(e.value.is_finite());
    Endpoint {
        value: e.value.clone(),
        closed: !e.closed,
    }
}

/// Members of `p` that belong to `t`.
fn select_in(p: &Discrete, t: &RSet) -> Result<Discrete> {
    let mut inside = Discrete::empty();
    for iv in t.intervals() {
        inside = inside.union(&p.restrict(iv)?)?;
    }
    inside = inside.diff(t.minus())?;
    inside.union(&p.intersect(t.plus())?)
}

/// Sorts and merges the interval list; reports whether any merge fired.
fn merge_all(ivs: &mut Vec<Interval>) -> bool {
    ivs.sort_by(|a, b| {
        a.lo.value
            .cmp(&b.lo.value)
            .then_with(|| b.lo.closed.cmp(&a.lo.closed))
    });
    let mut changed = false;
    let mut out: Vec<Interval> = Vec::with_capacity(ivs.len());
    for iv in ivs.drain(..) {
        if let Some(last) = out.last_mut() {
            if let Some(m) = last.try_merge(&iv) {
                *last = m;
                changed = true;
                continue;
            }
        }
        out.push(iv);
    }
    *ivs = out;
    changed
}

fn confine(minus: &Discrete, intervals: &[Interval]) -> Result<Discrete> {
    let mut out = Discrete::empty();
    for iv in intervals {
        out = out.union(&minus.restrict(iv)?)?;
    }
    Ok(out)
}

fn canonicalize(intervals: Vec<Interval>, plus: Discrete, minus: Discrete) -> Result<RSet> {
    let mut intervals = intervals;
    let mut plus = plus.diff(&minus)?;
    let mut minus = confine(&minus, &intervals)?;
    loop {
        let mut changed = merge_all(&mut intervals);
        // plus members covered by an interval are redundant
        for iv in &intervals {
            if !plus.restrict(iv)?.is_empty() {
                plus = plus.exclude(iv)?;
                changed = true;
            }
        }
        // open endpoints carrying a plus member close over it; closed
        // endpoints carved by minus reopen
        for iv in intervals.iter_mut() {
            for is_lo in [true, false] {
                let ep = if is_lo { iv.lo.clone() } else { iv.hi.clone() };
                let v = match &ep.value {
                    Ext::Fin(v) => v.clone(),
                    _ => continue,
                };
                if !ep.closed && plus.member(&v) {
                    set_closed(iv, is_lo, true);
                    plus = plus.diff(&Discrete::from_points([v]))?;
                    changed = true;
                } else if ep.closed && minus.member(&v) {
                    set_closed(iv, is_lo, false);
                    minus = minus.diff(&Discrete::from_points([v]))?;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(RSet {
        intervals,
        plus,
        minus,
    })
}

fn set_closed(iv: &mut Interval, is_lo: bool, closed: bool) {
    if is_lo {
        iv.lo.closed = closed;
    } else {
        iv.hi.closed = closed;
    }
}
