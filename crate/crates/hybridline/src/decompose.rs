//! Witness families for the closed-decomposition conditions, G_δ
//! certificates, and cover classification.
//!
//! For a cover with regions A₁..A₄, the right-leaning region A₃ is exhausted
//! by an indexed family F(0), F(1), … whose upper-limit closures stay inside
//! A₂ ∪ A₃; the left-leaning region A₄ is exhausted dually. The synthesis is
//! by cases on the structure of the region: interval pieces contribute closed
//! shrinking cores, carved-out points and sequences are avoided by half-open
//! deletion zones that tighten as the index grows, and isolated points and
//! generator terms enter at their enumeration index.

use std::cmp::Ordering;

use num_traits::Signed;
use thiserror::Error;

use crate::cover::{FourCover, Label};
use crate::exactsets::{
    Discrete, Endpoint, ExactError, Ext, Interval, RSet, Rat, SeqGen, Topology,
};

/// Errors from decomposition synthesis and G_δ extraction.
#[derive(Debug, Error)]
pub enum DecomposeError {
    #[error("the set is not closed in the chosen one-sided topology")]
    NotOneSideClosed,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Which family of a decomposition a statement refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// The A₃ family, closed toward the left (upper-limit closure).
    F,
    /// The A₄ family, closed toward the right (lower-limit closure).
    H,
}

/// One failed inclusion found by [`validate`].
#[derive(Clone, Debug)]
pub struct FamilyViolation {
    pub n: u64,
    pub side: Side,
    pub rule: String,
    pub witness: Option<Rat>,
}

/// An indexed pair of families F(n) ⊆ A₃ and H(n) ⊆ A₄, lazily evaluable at
/// every index. Immutable; evaluations are pure.
#[derive(Clone, Debug)]
pub struct Decomposition {
    a2: RSet,
    a3: RSet,
    a4: RSet,
    a4_reflected: RSet,
    a23: RSet,
    a24: RSet,
    /// Explicit finite family prefixes replacing the rule — used to express
    /// foreign or deliberately broken decompositions; evaluation clamps to
    /// the last listed index.
    custom: Option<(Vec<RSet>, Vec<RSet>)>,
}

impl Decomposition {
    /// Synthesizes the canonical decomposition of a validated cover.
    pub fn synthesize(c: &FourCover) -> Result<Decomposition, ExactError> {
        let a2 = c.region(Label::Isolated)?;
        let a3 = c.region(Label::Right)?;
        let a4 = c.region(Label::Left)?;
        let a4_reflected = a4.reflect();
        let a23 = a2.union(&a3)?;
        let a24 = a2.union(&a4)?;
        Ok(Decomposition {
            a2,
            a3,
            a4,
            a4_reflected,
            a23,
            a24,
            custom: None,
        })
    }

    /// A decomposition given by explicit finite prefixes (indices past the
    /// end clamp to the last element). Intended for negative controls and
    /// externally supplied families.
    pub fn custom(c: &FourCover, f: Vec<RSet>, h: Vec<RSet>) -> Result<Decomposition, ExactError> {
        assert!(
            !f.is_empty() && !h.is_empty(),
            "custom family prefixes must be nonempty"
        );
        let mut d = Decomposition::synthesize(c)?;
        d.custom = Some((f, h));
        Ok(d)
    }

    pub fn a2(&self) -> &RSet {
        &self.a2
    }

    pub fn a3(&self) -> &RSet {
        &self.a3
    }

    pub fn a4(&self) -> &RSet {
        &self.a4
    }

    /// F(n): the n-th approximation to A₃.
    pub fn f(&self, n: u64) -> Result<RSet, ExactError> {
        if let Some((fs, _)) = &self.custom {
            return Ok(clamped(fs, n));
        }
        side_family(&self.a3, n)
    }

    /// H(n): the n-th approximation to A₄, built by mirror symmetry.
    pub fn h(&self, n: u64) -> Result<RSet, ExactError> {
        if let Some((_, hs)) = &self.custom {
            return Ok(clamped(hs, n));
        }
        Ok(side_family(&self.a4_reflected, n)?.reflect())
    }

    /// An index n with `x ∈ F(n)`, or None when `x ∉ A₃`. The returned index
    /// is valid but not necessarily minimal; it also bounds the minimal one.
    pub fn coverage_f(&self, x: &Rat) -> Result<Option<u64>, ExactError> {
        if !self.a3.member(x) {
            return Ok(None);
        }
        if let Some((fs, _)) = self.custom.as_ref() {
            // no structural bound for foreign families: scan a fixed prefix
            for n in 0..fs.len() as u64 {
                if self.f(n)?.member(x) {
                    return Ok(Some(n));
                }
            }
            return Ok(None);
        }
        let n = coverage_bound(&self.a3, x);
        debug_assert!(self.f(n)?.member(x), "coverage bound misses {x} at {n}");
        Ok(Some(n))
    }

    /// Mirror of [`coverage_f`] for A₄/H.
    pub fn coverage_h(&self, x: &Rat) -> Result<Option<u64>, ExactError> {
        if !self.a4.member(x) {
            return Ok(None);
        }
        if let Some((_, hs)) = self.custom.as_ref() {
            for n in 0..hs.len() as u64 {
                if self.h(n)?.member(x) {
                    return Ok(Some(n));
                }
            }
            return Ok(None);
        }
        let n = coverage_bound(&self.a4_reflected, &-x);
        debug_assert!(self.h(n)?.member(x), "coverage bound misses {x} at {n}");
        Ok(Some(n))
    }

    /// Least `m` with `F(m) ∩ window ≠ ∅`, or `None` when no level meets the
    /// window. For synthesized families any point of `A₃ ∩ window` certifies
    /// a hit at its coverage index, so the scan is bounded; custom families
    /// are scanned over their stored prefix.
    pub fn first_f_meeting(&self, window: &Interval) -> Result<Option<u64>, ExactError> {
        let wset = RSet::from_interval(window.clone());
        if let Some((fs, _)) = &self.custom {
            for m in 0..fs.len() as u64 {
                if !self.f(m)?.intersect(&wset)?.is_empty() {
                    return Ok(Some(m));
                }
            }
            return Ok(None);
        }
        let hits = self.a3.intersect(&wset)?;
        let Some(w) = hits.any_member() else {
            return Ok(None);
        };
        let bound = self
            .coverage_f(&w)?
            .expect("witness drawn from A3 has a coverage index");
        for m in 0..=bound {
            if !self.f(m)?.intersect(&wset)?.is_empty() {
                return Ok(Some(m));
            }
        }
        unreachable!("coverage index certifies a hit at or before the bound")
    }

    /// Mirror of [`first_f_meeting`] for the H side.
    pub fn first_h_meeting(&self, window: &Interval) -> Result<Option<u64>, ExactError> {
        let wset = RSet::from_interval(window.clone());
        if let Some((_, hs)) = &self.custom {
            for m in 0..hs.len() as u64 {
                if !self.h(m)?.intersect(&wset)?.is_empty() {
                    return Ok(Some(m));
                }
            }
            return Ok(None);
        }
        let hits = self.a4.intersect(&wset)?;
        let Some(w) = hits.any_member() else {
            return Ok(None);
        };
        let bound = self
            .coverage_h(&w)?
            .expect("witness drawn from A4 has a coverage index");
        for m in 0..=bound {
            if !self.h(m)?.intersect(&wset)?.is_empty() {
                return Ok(Some(m));
            }
        }
        unreachable!("coverage index certifies a hit at or before the bound")
    }
}

fn clamped(family: &[RSet], n: u64) -> RSet {
    let i = (n as usize).min(family.len() - 1);
    family[i].clone()
}

/// Checks the two inclusion chains for every index up to `n_max`; an empty
/// report is a pass. Violations carry a witness point where one exists.
pub fn validate(d: &Decomposition, n_max: u64) -> Result<Vec<FamilyViolation>, ExactError> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let f = d.f(n)?;
        check_inclusion(&f, &d.a3, n, Side::F, "F(n) ⊆ A3", &mut out)?;
        let clf = f.closure(Topology::UpperLimit)?;
        check_inclusion(&clf, &d.a23, n, Side::F, "cl(F(n)) ⊆ A2 ∪ A3", &mut out)?;
        let h = d.h(n)?;
        check_inclusion(&h, &d.a4, n, Side::H, "H(n) ⊆ A4", &mut out)?;
        let clh = h.closure(Topology::LowerLimit)?;
        check_inclusion(&clh, &d.a24, n, Side::H, "cl(H(n)) ⊆ A2 ∪ A4", &mut out)?;
    }
    Ok(out)
}

fn check_inclusion(
    small: &RSet,
    big: &RSet,
    n: u64,
    side: Side,
    rule: &str,
    out: &mut Vec<FamilyViolation>,
) -> Result<(), ExactError> {
    let leak = small.diff(big)?;
    if !leak.is_empty() {
        out.push(FamilyViolation {
            n,
            side,
            rule: rule.to_string(),
            witness: leak.any_member(),
        });
    }
    Ok(())
}

/// Shrink offset δ used by interval cores and deletion radii at index n.
fn eta(n: u64) -> Rat {
    Rat::pow2(-(n as i64) - 2)
}

/// The n-th family member for a region treated in the A₃ orientation
/// (upper-limit closures must stay inside the region and its isolated
/// points). Used directly for F and under reflection for H.
fn side_family(region: &RSet, n: u64) -> Result<RSet, ExactError> {
    let mut core_ivs: Vec<Interval> = Vec::new();
    let mut core_pts: Vec<Rat> = Vec::new();
    for iv in region.intervals() {
        match core_of(iv, n) {
            Core::Interval(c) => core_ivs.push(c),
            Core::Point(p) => core_pts.push(p),
        }
    }
    let cores = RSet::from_parts(core_ivs, Discrete::from_points(core_pts), Discrete::empty())?;

    let mut zones: Vec<Interval> = Vec::new();
    for p in region.minus().points() {
        zones.push(left_ball(p, &eta(n)));
    }
    for g in region.minus().gens() {
        deletion_zones(g, n, &mut zones);
    }
    let deletions = RSet::from_parts(zones, Discrete::empty(), Discrete::empty())?;
    let mut family = cores.diff(&deletions)?;

    let prefix = (n as usize).saturating_add(1);
    let pts: Vec<Rat> = region
        .plus()
        .points()
        .iter()
        .take(prefix)
        .cloned()
        .collect();
    family = family.union(&RSet::from_points(pts))?;
    for g in region.plus().gens() {
        let terms: Vec<Rat> = (0..=n).map(|k| g.term(g.start() + k)).collect();
        family = family.union(&RSet::from_points(terms))?;
    }
    Ok(family)
}

enum Core {
    Interval(Interval),
    Point(Rat),
}

/// The closed core of an interval piece at index n: open finite ends shrink
/// inward by δₙ (proportional for bounded pieces), infinite ends clip near
/// ±n. Always nonempty.
fn core_of(iv: &Interval, n: u64) -> Core {
    let (lo, hi) = match (&iv.lo.value, &iv.hi.value) {
        (Ext::Fin(a), Ext::Fin(b)) => {
            let delta = &(b - a) * &eta(n);
            let lo = if iv.lo.closed { a.clone() } else { a + &delta };
            let hi = if iv.hi.closed { b.clone() } else { b - &delta };
            (lo, hi)
        }
        (Ext::Fin(a), _) => {
            let lo = if iv.lo.closed { a.clone() } else { a + &eta(n) };
            let hi = (a + &Rat::one()).max(Rat::int(n as i64));
            (lo, hi)
        }
        (_, Ext::Fin(b)) => {
            let hi = if iv.hi.closed { b.clone() } else { b - &eta(n) };
            let lo = (b - &Rat::one()).min(Rat::int(-(n as i64)));
            (lo, hi)
        }
        _ => (Rat::int(-(n as i64)), Rat::int(n as i64)),
    };
    match lo.cmp(&hi) {
        Ordering::Less => Core::Interval(
            Interval::bounded(lo, true, hi, true).expect("core interval is nondegenerate"),
        ),
        Ordering::Equal => Core::Point(lo),
        Ordering::Greater => unreachable!("core bounds inverted"),
    }
}

/// `(p − r, p]`.
fn left_ball(p: &Rat, r: &Rat) -> Interval {
    Interval::bounded(p - r, false, p.clone(), true).expect("radius is positive")
}

/// Deletion zones covering every term of a carved-out generator at index n:
/// terms past the n-th are swallowed by one open run that leaves the limit
/// itself untouched; earlier terms get individual left balls whose radius
/// never reaches the neighboring term.
fn deletion_zones(g: &SeqGen, n: u64, zones: &mut Vec<Interval>) {
    let k0 = g.start();
    let a = g.limit();
    let tail = g.term(k0 + n);
    if g.increasing() {
        // Terms climb toward the limit from below. The run must be entered
        // through a strictly positive margin below its first term: were the
        // run closed at that carved term, the family left of it would end
        // half-open there and the upper-limit closure would re-adjoin it.
        let margin = if n == 0 {
            eta(0)
        } else {
            eta(n).min(&(&tail - &g.term(k0 + n - 1)) / &Rat::int(2))
        };
        zones.push(
            Interval::bounded(&tail - &margin, false, a.clone(), false)
                .expect("terms stay below the limit"),
        );
        for k in 0..n {
            let t = g.term(k0 + k);
            let r = if k == 0 {
                eta(n)
            } else {
                eta(n).min(&(&t - &g.term(k0 + k - 1)) / &Rat::int(2))
            };
            zones.push(left_ball(&t, &r));
        }
    } else {
        // terms descend toward the limit from above
        zones.push(
            Interval::bounded(a.clone(), false, tail, true).expect("terms stay above the limit"),
        );
        for k in 0..n {
            let t = g.term(k0 + k);
            let r = eta(n).min(&(&t - &g.term(k0 + k + 1)) / &Rat::int(2));
            zones.push(left_ball(&t, &r));
        }
    }
}

/// A valid coverage index for a member `x` of the region (A₃ orientation):
/// the maximum of the core-inclusion index and every deletion-escape index.
fn coverage_bound(region: &RSet, x: &Rat) -> u64 {
    // isolated points and generator terms enter at their enumeration index
    if let Some(rank) = region.plus().points().iter().position(|p| p == x) {
        return rank as u64;
    }
    for g in region.plus().gens() {
        if let Some(k) = g.member_index(x) {
            return k - g.start();
        }
    }
    let iv = region
        .intervals()
        .iter()
        .find(|iv| iv.contains(x))
        .expect("member of the region lies in some part");
    let mut n = core_index(iv, x);
    for p in region.minus().points() {
        if x < p {
            n = n.max(escape_index(&(p - x)));
        }
    }
    for g in region.minus().gens() {
        n = n.max(gen_escape_index(g, x));
    }
    n
}

/// Smallest n with 2⁻⁽ⁿ⁺²⁾ ≤ d, for d > 0.
fn escape_index(d: &Rat) -> u64 {
    debug_assert!(d.is_positive());
    let e = d.floor_log2(); // 2^e ≤ d
    if e >= -2 {
        0
    } else {
        (-e - 2) as u64
    }
}

/// Index from which the core of `iv` contains `x`.
fn core_index(iv: &Interval, x: &Rat) -> u64 {
    match (&iv.lo.value, &iv.hi.value) {
        (Ext::Fin(a), Ext::Fin(b)) => {
            let mut d: Option<Rat> = None;
            if !iv.lo.closed {
                d = Some(x - a);
            }
            if !iv.hi.closed {
                let r = b - x;
                d = Some(match d {
                    Some(l) => l.min(r),
                    None => r,
                });
            }
            match d {
                // δₙ = (b−a)·2⁻⁽ⁿ⁺²⁾ ≤ d  ⟸  2⁻⁽ⁿ⁺²⁾ ≤ d/(b−a)
                Some(d) => escape_index(&(&d / &(b - a))),
                None => 0,
            }
        }
        (Ext::Fin(a), _) => {
            let lo_n = if iv.lo.closed {
                0
            } else {
                escape_index(&(x - a))
            };
            let hi_n = ceil_to_u64(x);
            lo_n.max(hi_n)
        }
        (_, Ext::Fin(b)) => {
            let hi_n = if iv.hi.closed {
                0
            } else {
                escape_index(&(b - x))
            };
            let lo_n = ceil_to_u64(&-x);
            lo_n.max(hi_n)
        }
        _ => ceil_to_u64(&x.abs()),
    }
}

fn ceil_to_u64(x: &Rat) -> u64 {
    if x.is_negative() {
        return 0;
    }
    u64::try_from(x.ceil_int()).expect("coverage index fits a machine word")
}

/// Index from which `x` escapes every deletion zone of a carved generator.
fn gen_escape_index(g: &SeqGen, x: &Rat) -> u64 {
    debug_assert!(g.member_index(x).is_none(), "carved points are not covered");
    let a = g.limit();
    if g.increasing() {
        if x >= a || x < &(&g.term(g.start()) - &Rat::one()) {
            // above the limit, or below every ball's reach
            return 0;
        }
        // the run's open bottom t_n − margin stays above term(n−1), so it
        // recedes past x one index after the nearest term does
        let run = match g.min_term_ge(x, true) {
            Some(k) => k - g.start() + 1,
            None => 0,
        };
        // the ball of the nearest term above x must shrink below the gap
        let ball = match g.min_term_ge(x, true) {
            Some(k) => escape_index(&(&g.term(k) - x)),
            None => 0,
        };
        run.max(ball)
    } else {
        if x <= a || x > &(&g.term(g.start()) + &Rat::one()) {
            return 0;
        }
        let run = match g.max_term_le(x, true) {
            Some(k) => k - g.start(),
            None => 0,
        };
        let ball = match g.min_term_ge(x, true) {
            Some(k) => escape_index(&(&g.term(k) - x)),
            None => 0,
        };
        run.max(ball)
    }
}

/// A concrete realization of a one-side-closed set as a countable
/// intersection of euclidean-open sets.
#[derive(Clone, Debug)]
pub struct GdeltaCertificate {
    /// The set itself.
    pub set: RSet,
    /// Its euclidean closure.
    pub h_closure: RSet,
    /// The countable defect `cl(F) ∖ F`.
    pub defect: RSet,
    /// Defect points in certificate order: increasing |numerator| +
    /// denominator, ties by value.
    pub defect_order: Vec<Rat>,
}

impl GdeltaCertificate {
    /// The n-th open superset: the 2⁻ⁿ-inflation of the closure with the
    /// first n defect points removed. The intersection over all n is the set.
    pub fn open_family(&self, n: u64) -> Result<RSet, ExactError> {
        let inflated = inflate(&self.h_closure, &Rat::pow2(-(n as i64)))?;
        let drop: Vec<Rat> = self
            .defect_order
            .iter()
            .take((n as usize).min(self.defect_order.len()))
            .cloned()
            .collect();
        inflated.diff(&RSet::from_points(drop))
    }
}

/// Builds the G_δ certificate for a set closed in the chosen one-sided
/// topology (`LowerLimit` or `UpperLimit`).
pub fn gdelta_extract(f: &RSet, side: Topology) -> Result<GdeltaCertificate, DecomposeError> {
    assert!(
        side != Topology::Real,
        "the certificate is for one-sided closed sets"
    );
    if !f.closure(side)?.set_eq(f)? {
        return Err(DecomposeError::NotOneSideClosed);
    }
    let h_closure = f.closure(Topology::Real)?;
    let defect = h_closure.diff(f)?;
    debug_assert!(defect.is_countable());
    let mut defect_order: Vec<Rat> = defect.plus().points().iter().cloned().collect();
    defect_order.sort_by(|a, b| {
        let ka = a.numer().abs() + a.denom();
        let kb = b.numer().abs() + b.denom();
        ka.cmp(&kb).then_with(|| a.cmp(b))
    });
    Ok(GdeltaCertificate {
        set: f.clone(),
        h_closure,
        defect,
        defect_order,
    })
}

/// The open 2⁻ⁿ-style inflation of a set with no carve-outs: intervals widen
/// and open, points become balls, generator terms become balls merging into
/// a single run near the limit.
fn inflate(s: &RSet, eps: &Rat) -> Result<RSet, ExactError> {
    debug_assert!(s.minus().is_empty(), "inflation input has no carve-outs");
    let mut ivs: Vec<Interval> = Vec::new();
    for iv in s.intervals() {
        let lo = match &iv.lo.value {
            Ext::Fin(a) => Endpoint::open(Ext::Fin(a - eps)),
            e => Endpoint::open(e.clone()),
        };
        let hi = match &iv.hi.value {
            Ext::Fin(b) => Endpoint::open(Ext::Fin(b + eps)),
            e => Endpoint::open(e.clone()),
        };
        ivs.push(Interval::new(lo, hi).expect("inflation keeps endpoints ordered"));
    }
    for p in s.plus().points() {
        ivs.push(Interval::bounded(p - eps, false, p + eps, false).expect("eps is positive"));
    }
    for g in s.plus().gens() {
        let a = g.limit();
        // merge once consecutive balls overlap: gap k < 2ε
        let two_eps = eps + eps;
        let mut k = g.start();
        let mut guard = 0u32;
        while (&g.term(k) - &g.term(k + 1)).abs() >= two_eps {
            k += 1;
            guard += 1;
            assert!(guard < 100_000, "geometric gaps shrink below any bound");
        }
        let t = g.term(k);
        let (lo, hi) = if g.increasing() {
            (&t - eps, a + eps)
        } else {
            (a - eps, &t + eps)
        };
        ivs.push(Interval::bounded(lo, false, hi, false).expect("ball is nondegenerate"));
        for j in g.start()..k {
            let t = g.term(j);
            ivs.push(Interval::bounded(&t - eps, false, &t + eps, false).expect("ball"));
        }
    }
    RSet::from_parts(ivs, Discrete::empty(), Discrete::empty())
}

/// Classification outcome for a cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Constantly true on this representable class; the synthesized
    /// decomposition is the witness.
    pub quasi_metrizable: bool,
    /// A₃ ∪ A₄ countable: the hybrid topology is then metrizable.
    pub metrizable_sufficient: bool,
    /// Defined when A₂ is countable: whether A₂ ∪ A₃ ∪ A₄ is countable,
    /// which is equivalent to second countability.
    pub second_countable: Option<bool>,
}

/// Classifies a cover, returning the verdict and the witnessing
/// decomposition.
pub fn classify(c: &FourCover) -> Result<(Verdict, Decomposition), ExactError> {
    let d = Decomposition::synthesize(c)?;
    let a34 = d.a3.union(&d.a4)?;
    let metrizable_sufficient = a34.is_countable();
    let second_countable = if d.a2.is_countable() {
        Some(d.a2.union(&a34)?.is_countable())
    } else {
        None
    };
    Ok((
        Verdict {
            quasi_metrizable: true,
            metrizable_sufficient,
            second_countable,
        },
        d,
    ))
}
