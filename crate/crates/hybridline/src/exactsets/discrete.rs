//! Countable sets: finitely many explicit points plus geometric generators.
//!
//! A [`Discrete`] value is kept in a canonical shape: generators are
//! normalized to start index 0, pairwise disjoint, maximally merged (a full
//! family of residue subsequences collapses back into one generator), and no
//! explicit point duplicates a generator term. Equality is *semantic* — two
//! values compare equal exactly when they denote the same set of rationals —
//! because a boundary term can sometimes extend more than one generator and
//! the stored shape alone cannot be made unique.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::Bound;

use num_bigint::BigInt;
use num_traits::One;

use super::factor::{exponents, solve_pow_match, PowMatch};
use super::interval::Interval;
use super::rational::Rat;
use super::seqgen::{KRange, SeqGen};
use super::{ExactError, Result};

/// Most generators one set may hold; interactions that would split past this
/// are reported as not canonicalizable rather than ground out.
const GEN_BUDGET: usize = 64;
/// Most explicit points a single splitting step may scatter.
const SCATTER_BUDGET: u64 = 1024;
/// Most candidate terms probed when two generators with different limits are
/// checked for coincidences.
const PROBE_BUDGET: u64 = 4096;

/// Finitely many points together with finitely many geometric generators.
#[derive(Clone, Debug, Default)]
pub struct Discrete {
    points: BTreeSet<Rat>,
    gens: Vec<SeqGen>,
}

/// How one generator's terms sit inside another's index space.
enum SharedIdx {
    None,
    /// Sorted, nonempty indices.
    Finite(Vec<u64>),
    /// `start, start+step, start+2·step, …`
    Prog {
        start: u64,
        step: u64,
    },
}

impl Discrete {
    pub fn empty() -> Discrete {
        Discrete::default()
    }

    pub fn from_points<I: IntoIterator<Item = Rat>>(points: I) -> Discrete {
        Discrete {
            points: points.into_iter().collect(),
            gens: Vec::new(),
        }
    }

    /// Builds and canonicalizes.
    pub fn new<I: IntoIterator<Item = Rat>>(points: I, gens: Vec<SeqGen>) -> Result<Discrete> {
        canonicalize(points.into_iter().collect(), gens)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.gens.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn points(&self) -> &BTreeSet<Rat> {
        &self.points
    }

    pub fn gens(&self) -> &[SeqGen] {
        &self.gens
    }

    pub fn member(&self, x: &Rat) -> bool {
        self.points.contains(x) || self.gens.iter().any(|g| g.member_index(x).is_some())
    }

    /// Limits of all generators (accumulation points of the set).
    pub fn limits(&self) -> BTreeSet<Rat> {
        self.gens.iter().map(|g| g.limit().clone()).collect()
    }

    /// Some member, deterministically chosen.
    pub fn any(&self) -> Option<Rat> {
        if let Some(p) = self.points.iter().next() {
            return Some(p.clone());
        }
        self.gens.first().map(|g| g.term(g.start()))
    }

    pub fn union(&self, other: &Discrete) -> Result<Discrete> {
        let pts = self.points.iter().chain(other.points.iter()).cloned();
        let gens = self.gens.iter().chain(other.gens.iter()).cloned().collect();
        canonicalize(pts.collect(), gens)
    }

    pub fn intersect(&self, other: &Discrete) -> Result<Discrete> {
        let mut pts: Vec<Rat> = self
            .points
            .iter()
            .filter(|p| other.member(p))
            .cloned()
            .collect();
        pts.extend(other.points.iter().filter(|p| self.member(p)).cloned());
        let mut gens = Vec::new();
        for g in &self.gens {
            for d in &other.gens {
                let (s, og) = gen_select(g, &shared_indices(g, d)?);
                pts.extend(s);
                gens.extend(og);
            }
        }
        canonicalize(pts, gens)
    }

    pub fn diff(&self, other: &Discrete) -> Result<Discrete> {
        let mut pts: Vec<Rat> = self
            .points
            .iter()
            .filter(|p| !other.member(p))
            .cloned()
            .collect();
        let mut pieces: Vec<SeqGen> = Vec::new();
        for g in &self.gens {
            let mut rem = vec![g.clone()];
            let mut scatter: Vec<Rat> = Vec::new();
            for d in &other.gens {
                let mut next = Vec::new();
                for piece in rem {
                    let (s, gs) = gen_extract(&piece, &shared_indices(&piece, d)?)?;
                    scatter.extend(s);
                    next.extend(gs);
                }
                rem = next;
            }
            // explicit points of `other` that survive as terms of a piece
            for piece in rem {
                let mut ks: Vec<u64> = other
                    .points
                    .iter()
                    .filter_map(|p| piece.member_index(p))
                    .collect();
                if ks.is_empty() {
                    pieces.push(piece);
                } else {
                    ks.sort_unstable();
                    let (s, gs) = gen_extract(&piece, &SharedIdx::Finite(ks))?;
                    scatter.extend(s);
                    pieces.extend(gs);
                }
            }
            pts.extend(scatter.into_iter().filter(|p| !other.member(p)));
        }
        canonicalize(pts, pieces)
    }

    /// The part of the set inside the interval.
    pub fn restrict(&self, iv: &Interval) -> Result<Discrete> {
        let mut pts: Vec<Rat> = self
            .points
            .iter()
            .filter(|p| iv.contains(p))
            .cloned()
            .collect();
        let mut gens = Vec::new();
        for g in &self.gens {
            match g.k_set_in(iv) {
                KRange::Empty => {}
                KRange::Tail(k) => gens.push(g.tail(k)),
                KRange::Seg(i, j) => {
                    guard_scatter(j - i + 1)?;
                    pts.extend((i..=j).map(|k| g.term(k)));
                }
            }
        }
        canonicalize(pts, gens)
    }

    /// The part of the set outside the interval.
    pub fn exclude(&self, iv: &Interval) -> Result<Discrete> {
        let mut pts: Vec<Rat> = self
            .points
            .iter()
            .filter(|p| !iv.contains(p))
            .cloned()
            .collect();
        let mut gens = Vec::new();
        for g in &self.gens {
            match g.k_set_in(iv) {
                KRange::Empty => gens.push(g.clone()),
                KRange::Tail(k) => {
                    guard_scatter(k)?;
                    pts.extend((0..k).map(|i| g.term(i)));
                }
                KRange::Seg(i, j) => {
                    guard_scatter(i)?;
                    pts.extend((0..i).map(|k| g.term(k)));
                    gens.push(g.tail(j + 1));
                }
            }
        }
        canonicalize(pts, gens)
    }

    pub fn subset_of(&self, other: &Discrete) -> Result<bool> {
        for p in &self.points {
            if !other.member(p) {
                return Ok(false);
            }
        }
        for g in &self.gens {
            let mut rem = vec![g.clone()];
            let mut scatter: Vec<Rat> = Vec::new();
            for d in &other.gens {
                let mut next = Vec::new();
                for piece in rem {
                    let (s, gs) = gen_extract(&piece, &shared_indices(&piece, d)?)?;
                    scatter.extend(s);
                    next.extend(gs);
                }
                rem = next;
            }
            if !rem.is_empty() {
                // a whole generator survives; finitely many points cannot
                // absorb it
                return Ok(false);
            }
            for p in scatter {
                if !other.member(&p) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn set_eq(&self, other: &Discrete) -> Result<bool> {
        Ok(self.subset_of(other)? && other.subset_of(self)?)
    }

    /// Largest element `≤ t` (`< t` when strict) with an attainment flag:
    /// `(a, false)` means the supremum is the generator limit `a`, which the
    /// set approaches but does not contain.
    pub fn sup_below(&self, t: &Rat, strict: bool) -> Option<(Rat, bool)> {
        let bound = if strict {
            Bound::Excluded(t.clone())
        } else {
            Bound::Included(t.clone())
        };
        let mut best: Option<(Rat, bool)> = self
            .points
            .range((Bound::Unbounded, bound))
            .next_back()
            .map(|p| (p.clone(), true));
        for g in &self.gens {
            let cand = if g.increasing() && g.limit() <= t {
                // every term lies below the limit, so below t as well
                Some((g.limit().clone(), false))
            } else {
                g.max_term_le(t, strict).map(|k| (g.term(k), true))
            };
            if let Some(c) = cand {
                better(&mut best, c);
            }
        }
        best
    }

    /// Smallest element `≥ t` (`> t` when strict), mirror of
    /// [`Discrete::sup_below`].
    pub fn inf_above(&self, t: &Rat, strict: bool) -> Option<(Rat, bool)> {
        self.reflect()
            .sup_below(&-t, strict)
            .map(|(v, at)| (-v, at))
    }

    pub fn reflect(&self) -> Discrete {
        let points = self.points.iter().map(|p| -p).collect();
        let mut gens: Vec<SeqGen> = self.gens.iter().map(|g| g.reflect()).collect();
        gens.sort_by(gen_order);
        Discrete { points, gens }
    }
}

impl PartialEq for Discrete {
    fn eq(&self, other: &Discrete) -> bool {
        self.set_eq(other)
            .expect("set equality requires factorable generator data")
    }
}

impl Eq for Discrete {}

fn better(best: &mut Option<(Rat, bool)>, cand: (Rat, bool)) {
    match best {
        None => *best = Some(cand),
        Some((bv, ba)) => {
            if cand.0 > *bv || (cand.0 == *bv && cand.1 && !*ba) {
                *best = Some(cand);
            }
        }
    }
}

fn gen_order(a: &SeqGen, b: &SeqGen) -> std::cmp::Ordering {
    (a.limit(), a.ratio(), a.coeff()).cmp(&(b.limit(), b.ratio(), b.coeff()))
}

fn guard_scatter(n: u64) -> Result<()> {
    if n > SCATTER_BUDGET {
        return Err(ExactError::NotCanonicalizable(format!(
            "splitting a generator would scatter {n} explicit points (budget {SCATTER_BUDGET})"
        )));
    }
    Ok(())
}

/// Indices of `g` whose terms also belong to `d`. Requires both normalized.
fn shared_indices(g: &SeqGen, d: &SeqGen) -> Result<SharedIdx> {
    debug_assert_eq!(g.start(), 0);
    debug_assert_eq!(d.start(), 0);
    if g.limit() == d.limit() {
        return Ok(
            match solve_pow_match(g.coeff(), g.ratio(), d.coeff(), d.ratio())? {
                PowMatch::Empty => SharedIdx::None,
                PowMatch::Point(k, j) => {
                    if k >= 0 && j >= 0 {
                        SharedIdx::Finite(vec![k as u64])
                    } else {
                        SharedIdx::None
                    }
                }
                PowMatch::Line { k0, j0, dk, dj } => {
                    let t0 = ceil_div(-k0, dk).max(ceil_div(-j0, dj));
                    SharedIdx::Prog {
                        start: (k0 + t0 * dk) as u64,
                        step: dk as u64,
                    }
                }
            },
        );
    }
    // Different limits: finitely many coincidences. Probe g's terms outside
    // a window around its own limit (there are finitely many) against d, and
    // d's terms inside that window (finitely many, since d's limit lies
    // outside) against g.
    let half = &(g.limit() - d.limit()).abs() / &Rat::int(2);
    let wg = Interval::open(g.limit() - &half, g.limit() + &half)
        .expect("window around a limit is nondegenerate");
    let mut ks: BTreeSet<u64> = BTreeSet::new();
    match g.k_set_in(&wg) {
        KRange::Tail(kin) => {
            guard_probe(kin)?;
            for k in 0..kin {
                if d.member_index(&g.term(k)).is_some() {
                    ks.insert(k);
                }
            }
        }
        // terms converge to the window's center, so a tail is always inside
        KRange::Seg(..) | KRange::Empty => unreachable!("window contains g's limit"),
    }
    match d.k_set_in(&wg) {
        KRange::Empty => {}
        KRange::Seg(i, j) => {
            guard_probe(j - i + 1)?;
            for jj in i..=j {
                if let Some(k) = g.member_index(&d.term(jj)) {
                    ks.insert(k);
                }
            }
        }
        // d's limit sits outside the closed window, so its tail leaves
        KRange::Tail(_) => unreachable!("window excludes d's limit"),
    }
    Ok(if ks.is_empty() {
        SharedIdx::None
    } else {
        SharedIdx::Finite(ks.into_iter().collect())
    })
}

fn guard_probe(n: u64) -> Result<()> {
    if n > PROBE_BUDGET {
        return Err(ExactError::NotCanonicalizable(format!(
            "generator coincidence scan needs {n} probes (budget {PROBE_BUDGET})"
        )));
    }
    Ok(())
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    (a + b - 1).div_euclid(b)
}

/// Pieces of `g` with the shared indices removed: scattered points plus
/// remaining generators.
fn gen_extract(g: &SeqGen, sh: &SharedIdx) -> Result<(Vec<Rat>, Vec<SeqGen>)> {
    match sh {
        SharedIdx::None => Ok((Vec::new(), vec![g.clone()])),
        SharedIdx::Finite(ks) => {
            let &max = ks.last().expect("finite overlap is nonempty");
            guard_scatter(max + 1)?;
            let kset: BTreeSet<u64> = ks.iter().copied().collect();
            let pts = (0..=max)
                .filter(|k| !kset.contains(k))
                .map(|k| g.term(k))
                .collect();
            Ok((pts, vec![g.tail(max + 1)]))
        }
        &SharedIdx::Prog { start, step } => {
            guard_scatter(start)?;
            if step == 1 {
                return Ok(((0..start).map(|k| g.term(k)).collect(), Vec::new()));
            }
            if step as usize > GEN_BUDGET {
                return Err(ExactError::NotCanonicalizable(format!(
                    "residue split into {} generators (budget {GEN_BUDGET})",
                    step - 1
                )));
            }
            // indices below `start` in the removed residue class survive
            let pts = (start % step..start)
                .step_by(step as usize)
                .map(|k| g.term(k))
                .collect();
            let gens = (0..step)
                .filter(|c| *c != start % step)
                .map(|c| {
                    SeqGen::new(
                        g.limit().clone(),
                        g.coeff() * &g.ratio().pow(c),
                        g.ratio().pow(step),
                        0,
                    )
                    .expect("residue of a valid generator is valid")
                })
                .collect();
            Ok((pts, gens))
        }
    }
}

/// Pieces of `g` restricted *to* the shared indices.
fn gen_select(g: &SeqGen, sh: &SharedIdx) -> (Vec<Rat>, Option<SeqGen>) {
    match sh {
        SharedIdx::None => (Vec::new(), None),
        SharedIdx::Finite(ks) => (ks.iter().map(|&k| g.term(k)).collect(), None),
        &SharedIdx::Prog { start, step } => (
            Vec::new(),
            Some(
                SeqGen::new(
                    g.limit().clone(),
                    g.coeff() * &g.ratio().pow(start),
                    g.ratio().pow(step),
                    0,
                )
                .expect("subsequence of a valid generator is valid"),
            ),
        ),
    }
}

fn canonicalize(points: Vec<Rat>, gens: Vec<SeqGen>) -> Result<Discrete> {
    let mut pool: BTreeSet<Rat> = points.into_iter().collect();
    let mut work: VecDeque<SeqGen> = gens.into_iter().map(|g| g.normalized()).collect();
    work.make_contiguous().sort_by(gen_order);
    let mut done: Vec<SeqGen> = Vec::new();
    'outer: while let Some(g) = work.pop_front() {
        for d in &done {
            let sh = shared_indices(&g, d)?;
            if matches!(sh, SharedIdx::None) {
                continue;
            }
            let (pts, pieces) = gen_extract(&g, &sh)?;
            pool.extend(pts);
            for p in pieces.into_iter().rev() {
                work.push_front(p);
            }
            if done.len() + work.len() > GEN_BUDGET {
                return Err(gen_budget_err(done.len() + work.len()));
            }
            continue 'outer;
        }
        done.push(g);
        if done.len() > GEN_BUDGET {
            return Err(gen_budget_err(done.len()));
        }
    }
    pool.retain(|p| !done.iter().any(|g| g.member_index(p).is_some()));
    loop {
        let merged = merge_pass(&mut done)?;
        let absorbed = absorb_pass(&mut done, &mut pool);
        if !merged && !absorbed {
            break;
        }
    }
    done.sort_by(gen_order);
    Ok(Discrete {
        points: pool,
        gens: done,
    })
}

fn gen_budget_err(n: usize) -> ExactError {
    ExactError::NotCanonicalizable(format!("set needs {n} generators (budget {GEN_BUDGET})"))
}

/// Collapses every complete residue family `c·s^i · (s^d)^k`, `i < d`, back
/// into the single generator `c·s^k`. Returns whether anything changed.
fn merge_pass(gens: &mut Vec<SeqGen>) -> Result<bool> {
    let mut changed = false;
    'restart: loop {
        let mut groups: BTreeMap<(Rat, Rat), Vec<usize>> = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            groups
                .entry((g.limit().clone(), g.ratio().clone()))
                .or_default()
                .push(i);
        }
        for ((limit, ratio), idxs) in &groups {
            if idxs.len() < 2 {
                continue;
            }
            let exps = exponents(ratio)?;
            let gexp = exps.values().fold(0i64, |acc, e| gcd64(acc, e.abs()));
            for d in divisors_desc(gexp) {
                if (idxs.len() as i64) < d {
                    continue;
                }
                let s = nth_root(&exps, d);
                let by_coeff: BTreeMap<Rat, usize> =
                    idxs.iter().map(|&i| (gens[i].coeff().clone(), i)).collect();
                let mut starts: Vec<Rat> = by_coeff.keys().cloned().collect();
                starts.sort_by(|a, b| b.abs().cmp(&a.abs()).then_with(|| a.cmp(b)));
                for c0 in starts {
                    let chain: Vec<Rat> = (0..d).map(|i| &c0 * &s.pow(i as u64)).collect();
                    if chain.iter().all(|c| by_coeff.contains_key(c)) {
                        let rm: BTreeSet<usize> = chain.iter().map(|c| by_coeff[c]).collect();
                        let mut kept: Vec<SeqGen> = Vec::new();
                        for (i, g) in gens.drain(..).enumerate() {
                            if !rm.contains(&i) {
                                kept.push(g);
                            }
                        }
                        *gens = kept;
                        gens.push(
                            SeqGen::new(limit.clone(), c0, s, 0)
                                .expect("merged family forms a valid generator"),
                        );
                        changed = true;
                        continue 'restart;
                    }
                }
            }
        }
        break;
    }
    Ok(changed)
}

/// Moves explicit points that extend a generator downward into it:
/// `{a + c/r} ∪ gen(a;c;r)` becomes `gen(a;c/r;r)`. First generator in the
/// canonical order wins when a point extends several.
fn absorb_pass(gens: &mut [SeqGen], pool: &mut BTreeSet<Rat>) -> bool {
    let mut changed = false;
    'restart: loop {
        gens.sort_by(gen_order);
        for g in gens.iter_mut() {
            let stretched = g.coeff() / g.ratio();
            let prev = g.limit() + &stretched;
            if pool.remove(&prev) {
                *g = SeqGen::new(g.limit().clone(), stretched, g.ratio().clone(), 0)
                    .expect("absorbing a point keeps the generator valid");
                changed = true;
                continue 'restart;
            }
        }
        break;
    }
    changed
}

fn gcd64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn divisors_desc(n: i64) -> Vec<i64> {
    (2..=n).rev().filter(|d| n % d == 0).collect()
}

/// Exact `d`-th root from a prime exponent vector whose entries `d` divides.
fn nth_root(exps: &BTreeMap<BigInt, i64>, d: i64) -> Rat {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (p, &e) in exps {
        debug_assert_eq!(e % d, 0);
        let q = (e / d).unsigned_abs() as u32;
        if e > 0 {
            num *= p.pow(q);
        } else {
            den *= p.pow(q);
        }
    }
    Rat::from_big(num_rational::BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn gen(a: (i64, i64), c: (i64, i64), r: (i64, i64)) -> SeqGen {
        SeqGen::new(q(a.0, a.1), q(c.0, c.1), q(r.0, r.1), 0).unwrap()
    }

    #[test]
    fn points_inside_generators_dissolve() {
        let d = Discrete::new(vec![q(1, 2), q(5, 1)], vec![gen((0, 1), (1, 1), (1, 2))]).unwrap();
        assert_eq!(d.points().len(), 1);
        assert!(d.points().contains(&q(5, 1)));
        assert_eq!(d.gens().len(), 1);
        assert!(d.member(&q(1, 2)));
        assert!(!d.member(&q(0, 1)));
    }

    #[test]
    fn residue_family_merges() {
        let d = Discrete::new(
            vec![],
            vec![gen((0, 1), (1, 1), (1, 4)), gen((0, 1), (1, 2), (1, 4))],
        )
        .unwrap();
        assert_eq!(d.gens().len(), 1);
        assert_eq!(d.gens()[0].ratio(), &q(1, 2));
        assert_eq!(d.gens()[0].coeff(), &q(1, 1));
        for k in 0..10 {
            assert!(d.member(&q(1, 1 << k)));
        }
    }

    #[test]
    fn downward_absorb() {
        let d = Discrete::new(vec![q(2, 1), q(5, 1)], vec![gen((0, 1), (1, 1), (1, 2))]).unwrap();
        assert_eq!(d.gens().len(), 1);
        assert_eq!(d.gens()[0].coeff(), &q(2, 1));
        assert!(d.points().contains(&q(5, 1)));
        assert!(d.member(&q(2, 1)));
        assert!(!d.member(&q(4, 1)));
    }

    #[test]
    fn same_limit_single_coincidence() {
        // {2^-k} and {3^-j} share only the value 1
        let a = Discrete::new(vec![], vec![gen((0, 1), (1, 1), (1, 2))]).unwrap();
        let b = Discrete::new(vec![], vec![gen((0, 1), (1, 1), (1, 3))]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert!(i.is_finite());
        assert_eq!(
            i.points().iter().cloned().collect::<Vec<_>>(),
            vec![q(1, 1)]
        );
        let u = a.union(&b).unwrap();
        assert!(u.member(&q(1, 1)));
        assert!(u.member(&q(1, 4)));
        assert!(u.member(&q(1, 9)));
        assert!(!u.member(&q(1, 5)));
        assert_eq!(u.gens().len(), 2);
    }

    #[test]
    fn residue_difference() {
        // {2^-k} ∖ {4^-k} = the odd-exponent residue
        let a = Discrete::new(vec![], vec![gen((0, 1), (1, 1), (1, 2))]).unwrap();
        let b = Discrete::new(vec![], vec![gen((0, 1), (1, 1), (1, 4))]).unwrap();
        let d = a.diff(&b).unwrap();
        assert_eq!(d.points().len(), 0);
        assert_eq!(d.gens().len(), 1);
        assert_eq!(d.gens()[0].coeff(), &q(1, 2));
        assert_eq!(d.gens()[0].ratio(), &q(1, 4));
        assert!(d.member(&q(1, 2)));
        assert!(!d.member(&q(1, 4)));
        assert!(d.member(&q(1, 8)));
        // and difference against itself is empty
        assert!(a.diff(&a).unwrap().is_empty());
    }

    #[test]
    fn different_limit_coincidences() {
        // {2^-k : k ≥ 0} meets {1 − 2^-k : k ≥ 0} exactly in {1/2}
        let a = Discrete::new(vec![], vec![gen((0, 1), (1, 1), (1, 2))]).unwrap();
        let b = Discrete::new(vec![], vec![gen((1, 1), (-1, 1), (1, 2))]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(
            i.points().iter().cloned().collect::<Vec<_>>(),
            vec![q(1, 2)]
        );
        assert!(i.gens().is_empty());
    }

    #[test]
    fn semantic_equality_across_shapes() {
        let whole = Discrete::new(vec![], vec![gen((0, 1), (1, 1), (1, 2))]).unwrap();
        let split = Discrete::new(
            vec![],
            vec![gen((0, 1), (1, 1), (1, 4)), gen((0, 1), (1, 2), (1, 4))],
        )
        .unwrap();
        assert_eq!(whole, split);
        let missing = Discrete::new(vec![], vec![gen((0, 1), (1, 2), (1, 2))]).unwrap();
        assert_ne!(whole, missing);
        assert!(missing.subset_of(&whole).unwrap());
        assert!(!whole.subset_of(&missing).unwrap());
    }

    #[test]
    fn restrict_and_exclude() {
        let d = Discrete::new(vec![q(10, 1)], vec![gen((0, 1), (1, 1), (1, 2))]).unwrap();
        let iv = Interval::bounded(q(1, 8), true, q(1, 1), false).unwrap();
        let inside = d.restrict(&iv).unwrap();
        assert!(inside.is_finite());
        assert_eq!(
            inside.points().iter().cloned().collect::<Vec<_>>(),
            vec![q(1, 8), q(1, 4), q(1, 2)]
        );
        let outside = d.exclude(&iv).unwrap();
        assert!(outside.member(&q(1, 1)));
        assert!(outside.member(&q(10, 1)));
        assert!(outside.member(&q(1, 16)));
        assert!(!outside.member(&q(1, 2)));
        assert_eq!(outside.gens().len(), 1);
    }

    #[test]
    fn sup_and_inf_queries() {
        // {−1, −1/2, −1/4, …} ∪ {3}
        let d = Discrete::new(vec![q(3, 1)], vec![gen((0, 1), (-1, 1), (1, 2))]).unwrap();
        assert_eq!(d.sup_below(&q(0, 1), false), Some((q(0, 1), false)));
        assert_eq!(d.sup_below(&q(-1, 2), false), Some((q(-1, 2), true)));
        assert_eq!(d.sup_below(&q(-1, 2), true), Some((q(-1, 1), true)));
        assert_eq!(d.sup_below(&q(-2, 1), false), None);
        assert_eq!(d.sup_below(&q(7, 1), false), Some((q(3, 1), true)));
        assert_eq!(d.inf_above(&q(1, 1), false), Some((q(3, 1), true)));
        assert_eq!(d.inf_above(&q(-2, 1), false), Some((q(-1, 1), true)));
        // the smallest member above −1/8 is the term −1/16, not the limit 0
        assert_eq!(d.inf_above(&q(-1, 8), true), Some((q(-1, 16), true)));
    }

    #[test]
    fn duplicate_generators_collapse() {
        let d = Discrete::new(
            vec![],
            vec![gen((0, 1), (1, 1), (1, 2)), gen((0, 1), (1, 1), (1, 2))],
        )
        .unwrap();
        assert_eq!(d.gens().len(), 1);
    }

    #[test]
    fn three_way_residue_merge() {
        let d = Discrete::new(
            vec![],
            vec![
                gen((1, 1), (1, 1), (1, 8)),
                gen((1, 1), (1, 2), (1, 8)),
                gen((1, 1), (1, 4), (1, 8)),
            ],
        )
        .unwrap();
        assert_eq!(d.gens().len(), 1);
        assert_eq!(d.gens()[0].ratio(), &q(1, 2));
        assert_eq!(d.gens()[0].limit(), &q(1, 1));
    }
}
