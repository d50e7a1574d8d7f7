//! The countable family base: a fixed enumeration of the rationals, a fixed
//! pairing, and the induced sequence of neighborhood families whose running
//! intersections form the kernels Mₙ(x).
//!
//! Everything here is pinned bit-exactly so that derived quantities are
//! reproducible: the rational enumeration interleaves 0, the Calkin–Wilf
//! sequence and its negation, and family descriptors are decoded from an
//! index via the Cantor pairing. Inverse queries (the index of a given
//! rational, the least index inside an interval) run along the
//! Stern–Brocot tree, so they stay cheap even when the answer is
//! astronomically large; indices are therefore arbitrary-precision.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cover::{CoverError, FourCover, Label, Openness};
use crate::decompose::Decomposition;
use crate::exactsets::{ExactError, Ext, Interval, Overlap, RSet, Rat};

/// Hard ceiling on tree-walk depth for enumeration queries. Depth grows with
/// the continued-fraction weight of the rationals involved, so this budget
/// is far beyond anything reachable from sampled inputs.
const TREE_BUDGET: usize = 1_000_000;

/// The m-th entry of the Calkin–Wilf sequence (m ≥ 1), decoded from the
/// binary digits of m as a path in the Calkin–Wilf tree.
pub fn cw_at(m: &BigUint) -> Rat {
    assert!(!m.is_zero(), "the sequence starts at position 1");
    let mut p = BigInt::one();
    let mut q = BigInt::one();
    let len = m.bits();
    // digits below the leading 1, most significant first: 1 = right, 0 = left
    for i in (0..len - 1).rev() {
        if m.bit(i) {
            p += &q;
        } else {
            q += &p;
        }
    }
    Rat::from_big(BigRational::new(p, q))
}

/// Position of a positive rational in the Calkin–Wilf sequence; exact
/// inverse of [`cw_at`]. Walks up the tree with euclidean steps.
pub fn cw_pos(x: &Rat) -> BigUint {
    assert!(
        x.is_positive(),
        "the sequence enumerates positive rationals"
    );
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    // bits collected leaf-to-root; bit j of the result is the j-th collected
    let mut bits: Vec<bool> = Vec::new();
    while !(p.is_one() && q.is_one()) {
        if p > q {
            let k = (&p - BigInt::one()) / &q;
            let steps = usize::try_from(&k).expect("tree depth fits memory");
            assert!(
                bits.len() + steps <= TREE_BUDGET,
                "tree depth budget exceeded"
            );
            bits.extend(std::iter::repeat_n(true, steps));
            p -= k * &q;
        } else {
            let k = (&q - BigInt::one()) / &p;
            let steps = usize::try_from(&k).expect("tree depth fits memory");
            assert!(
                bits.len() + steps <= TREE_BUDGET,
                "tree depth budget exceeded"
            );
            bits.extend(std::iter::repeat_n(false, steps));
            q -= k * &p;
        }
    }
    let mut m = BigUint::zero();
    for (j, &b) in bits.iter().enumerate() {
        if b {
            m.set_bit(j as u64, true);
        }
    }
    m.set_bit(bits.len() as u64, true);
    m
}

/// The fixed bijective enumeration of ℚ: 0, then the Calkin–Wilf values
/// interleaved with their negations (odd indices positive, even negative).
pub fn q_at(i: &BigUint) -> Rat {
    if i.is_zero() {
        return Rat::zero();
    }
    if i.bit(0) {
        cw_at(&((i + BigUint::one()) >> 1))
    } else {
        -cw_at(&(i >> 1))
    }
}

/// Convenience form of [`q_at`] for machine-word indices.
pub fn q_rat(i: u64) -> Rat {
    q_at(&BigUint::from(i))
}

/// Index of a rational in the enumeration; exact inverse of [`q_at`].
pub fn q_index(x: &Rat) -> BigUint {
    if x.is_zero() {
        BigUint::zero()
    } else if x.is_positive() {
        (cw_pos(x) << 1) - BigUint::one()
    } else {
        cw_pos(&-x) << 1
    }
}

/// The least enumeration index whose value lies in the interval, with that
/// value. The interval must be nondegenerate, so a rational always exists.
pub fn min_q_index_in(iv: &Interval) -> (BigUint, Rat) {
    if iv.contains(&Rat::zero()) {
        return (BigUint::zero(), Rat::zero());
    }
    let pos = positive_part(iv).map(|p| min_cw_pos_in(&p));
    let neg = positive_part(&iv.reflect()).map(|p| min_cw_pos_in(&p));
    match (pos, neg) {
        // positive index 2m−1, negative index 2m: positive wins ties
        (Some((mp, vp)), Some((mn, _))) if mp <= mn => ((mp << 1) - BigUint::one(), vp),
        (_, Some((mn, vn))) => (mn << 1, -vn),
        (Some((mp, vp)), None) => ((mp << 1) - BigUint::one(), vp),
        (None, None) => unreachable!("a nondegenerate interval meets the rationals"),
    }
}

/// Restriction of an interval to (0, ∞), if nondegenerate.
fn positive_part(iv: &Interval) -> Option<Interval> {
    let ray = Interval::new(
        crate::exactsets::Endpoint::open(Ext::Fin(Rat::zero())),
        crate::exactsets::Endpoint::open(Ext::PosInf),
    )
    .expect("ray is valid");
    match iv.intersect(&ray) {
        Overlap::Proper(p) => Some(p),
        _ => None,
    }
}

/// Least Calkin–Wilf position inside a positive nondegenerate interval, with
/// its value: descend the Stern–Brocot tree to the shallowest node inside
/// the interval; the path bits, read leaf-ward, are the low binary digits of
/// the position.
fn min_cw_pos_in(iv: &Interval) -> (BigUint, Rat) {
    let mut lp = BigInt::zero();
    let mut lq = BigInt::one();
    let mut rp = BigInt::one();
    let mut rq = BigInt::zero();
    let mut bits: Vec<bool> = Vec::new();
    loop {
        assert!(bits.len() <= TREE_BUDGET, "tree depth budget exceeded");
        let mp = &lp + &rp;
        let mq = &lq + &rq;
        let med = Rat::from_big(BigRational::new(mp.clone(), mq.clone()));
        if !iv.above_lo(&med) {
            // mediant is below the interval: go right
            bits.push(true);
            lp = mp;
            lq = mq;
        } else if !iv.below_hi(&med) {
            bits.push(false);
            rp = mp;
            rq = mq;
        } else {
            let mut m = BigUint::zero();
            for (j, &b) in bits.iter().enumerate() {
                if b {
                    m.set_bit(j as u64, true);
                }
            }
            m.set_bit(bits.len() as u64, true);
            return (m, med);
        }
    }
}

/// Cantor pairing (a, b) ↦ (a+b)(a+b+1)/2 + b.
pub fn cantor_pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + BigUint::one())) / BigUint::from(2u32) + b
}

/// Exact inverse of [`cantor_pair`] on machine words.
pub fn cantor_unpair(t: u64) -> (u64, u64) {
    let t128 = t as u128;
    let mut s = ((((8 * t128 + 1) as f64).sqrt() - 1.0) / 2.0) as u128;
    while s * (s + 1) / 2 > t128 {
        s -= 1;
    }
    while (s + 1) * (s + 2) / 2 <= t128 {
        s += 1;
    }
    let b = t128 - s * (s + 1) / 2;
    ((s - b) as u64, b as u64)
}

/// A basic neighborhood family, decoded from an enumeration index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyDescriptor {
    /// Singletons at every isolated point.
    D,
    /// The single open interval (p, q); empty when p ≥ q.
    W(Rat, Rat),
    /// Half-open strips [v, q) anchored at the points of F(n).
    U(Rat, u64),
    /// Half-open strips (q, v] anchored at the points of H(n).
    V(Rat, u64),
}

impl std::fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyDescriptor::D => write!(f, "D"),
            FamilyDescriptor::W(p, q) => write!(f, "W({p},{q})"),
            FamilyDescriptor::U(q, n) => write!(f, "U({q},{n})"),
            FamilyDescriptor::V(q, n) => write!(f, "V({q},{n})"),
        }
    }
}

/// The fixed enumeration of family descriptors: index 0 is D, and index
/// i ≥ 1 decodes kind and parameters from (i−1) by thirds and the Cantor
/// pairing.
pub fn descriptor(i: u64) -> FamilyDescriptor {
    if i == 0 {
        return FamilyDescriptor::D;
    }
    let t = (i - 1) / 3;
    let (a, b) = cantor_unpair(t);
    match (i - 1) % 3 {
        0 => FamilyDescriptor::W(q_rat(a), q_rat(b)),
        1 => FamilyDescriptor::U(q_rat(a), b),
        _ => FamilyDescriptor::V(q_rat(a), b),
    }
}

/// Human-readable decoding of an arbitrary-precision family index. Unlike
/// [`descriptor`], which materializes the family for evaluation and is
/// limited to machine-word levels, this only prints — so astronomically
/// large separation levels can still name their witnessing family.
pub fn describe_level(i: &BigUint) -> String {
    if i.is_zero() {
        return "D".to_string();
    }
    let im1 = i - 1u32;
    let t = &im1 / 3u32;
    let r = &im1 % 3u32;
    // Inverse Cantor pairing over big integers.
    let w = (num_integer::Roots::sqrt(&(&t * 8u32 + 1u32)) - 1u32) / 2u32;
    let b = &t - &(&w * (&w + 1u32) / 2u32);
    let a = &w - &b;
    if r == BigUint::zero() {
        format!("W({},{})", q_at(&a), q_at(&b))
    } else if r == BigUint::one() {
        format!("U({},{})", q_at(&a), b)
    } else {
        format!("V({},{})", q_at(&a), b)
    }
}

/// Enumeration index of a W-family with the given parameter indices.
pub fn w_index(a: &BigUint, b: &BigUint) -> BigUint {
    cantor_pair(a, b) * BigUint::from(3u32) + BigUint::one()
}

/// Enumeration index of a U-family.
pub fn u_index(a: &BigUint, n: u64) -> BigUint {
    cantor_pair(a, &BigUint::from(n)) * BigUint::from(3u32) + BigUint::from(2u32)
}

/// Enumeration index of a V-family.
pub fn v_index(a: &BigUint, n: u64) -> BigUint {
    cantor_pair(a, &BigUint::from(n)) * BigUint::from(3u32) + BigUint::from(3u32)
}

/// The intersection of all members of the family that contain x — the whole
/// line when no member does.
pub fn family_min_nbhd(
    c: &FourCover,
    d: &Decomposition,
    f: &FamilyDescriptor,
    x: &Rat,
) -> Result<RSet, ExactError> {
    match f {
        FamilyDescriptor::D => {
            if c.label_of(x) == Label::Isolated {
                Ok(RSet::point(x.clone()))
            } else {
                Ok(RSet::all())
            }
        }
        FamilyDescriptor::W(p, q) => {
            if p < x && x < q {
                Ok(RSet::from_interval(
                    Interval::bounded(p.clone(), false, q.clone(), false)
                        .expect("p < x < q is nondegenerate"),
                ))
            } else {
                Ok(RSet::all())
            }
        }
        FamilyDescriptor::U(q, n) => {
            if x < q {
                let sup = d.f(*n)?.sup_below(x);
                if sup.nonempty {
                    let s = sup.value.fin().expect("bounded above by x").clone();
                    return Ok(RSet::from_interval(
                        Interval::bounded(s, true, q.clone(), false)
                            .expect("s ≤ x < q is nondegenerate"),
                    ));
                }
            }
            Ok(RSet::all())
        }
        FamilyDescriptor::V(q, n) => {
            if x > q {
                let inf = d.h(*n)?.inf_above(x);
                if inf.nonempty {
                    let s = inf.value.fin().expect("bounded below by x").clone();
                    return Ok(RSet::from_interval(
                        Interval::bounded(q.clone(), false, s, true)
                            .expect("q < x ≤ s is nondegenerate"),
                    ));
                }
            }
            Ok(RSet::all())
        }
    }
}

/// Mₙ(x): the intersection of the minimal neighborhoods of the first n+1
/// families. Always an interval or singleton containing x, and shrinks as n
/// grows.
pub fn min_nbhd_level(
    c: &FourCover,
    d: &Decomposition,
    n: u64,
    x: &Rat,
) -> Result<RSet, ExactError> {
    let mut m = RSet::all();
    for i in 0..=n {
        m = m.intersect(&family_min_nbhd(c, d, &descriptor(i), x)?)?;
    }
    Ok(m)
}

/// All of `Mₙ(x)` for `n = 0..=max`, computed in one incremental sweep so
/// callers that need a whole ladder of kernels pay each level once.
pub fn min_nbhd_prefix(
    c: &FourCover,
    d: &Decomposition,
    max: u64,
    x: &Rat,
) -> Result<Vec<RSet>, ExactError> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut m = RSet::all();
    for i in 0..=max {
        m = m.intersect(&family_min_nbhd(c, d, &descriptor(i), x)?)?;
        out.push(m.clone());
    }
    Ok(out)
}

/// Checks, at each probe, that the family's minimal neighborhood is open in
/// the sampled sense, including at the strip anchor whose label must make
/// the half-open end a neighborhood of itself. Returns human-readable
/// failures; empty means verified.
pub fn verify_interior_preserving(
    c: &FourCover,
    d: &Decomposition,
    f: &FamilyDescriptor,
    probes: &[Rat],
) -> Result<Vec<String>, CoverError> {
    let mut failures = Vec::new();
    for x in probes {
        let v = family_min_nbhd(c, d, f, x)?;
        if v.set_eq(&RSet::all())? {
            continue;
        }
        let mut samples = vec![x.clone()];
        match f {
            FamilyDescriptor::U(_, _) => {
                let iv = &v.intervals()[0];
                let s = iv.lo.value.fin().expect("strip anchors are finite").clone();
                let lab = c.label_of(&s);
                if lab != Label::Isolated && lab != Label::Right {
                    failures.push(format!(
                        "anchor {s} of the strip at {x} has label {lab}, not right-open"
                    ));
                }
                samples.push(s);
            }
            FamilyDescriptor::V(_, _) => {
                let iv = &v.intervals()[0];
                let s = iv.hi.value.fin().expect("strip anchors are finite").clone();
                let lab = c.label_of(&s);
                if lab != Label::Isolated && lab != Label::Left {
                    failures.push(format!(
                        "anchor {s} of the strip at {x} has label {lab}, not left-open"
                    ));
                }
                samples.push(s);
            }
            _ => {}
        }
        match c.is_open_sampled(&v, &samples)? {
            Openness::Verified => {}
            Openness::NotVerified { sample } => {
                failures.push(format!("neighborhood of {x} is not open at {sample}"));
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::CoverSpec;
    use crate::exactsets::SeqGen;

    fn q(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    fn big(i: u64) -> BigUint {
        BigUint::from(i)
    }

    /// Successor form of the sequence, used as an independent oracle.
    fn cw_successor(x: &Rat) -> Rat {
        let floor = Rat::from_big(num_rational::BigRational::from_integer(
            x.numer() / x.denom(),
        ));
        (&(&floor + &floor) - x + &Rat::one()).recip()
    }

    #[test]
    fn sequence_prefix_is_the_classic_one() {
        let expect = [
            q(1, 1),
            q(1, 2),
            q(2, 1),
            q(1, 3),
            q(3, 2),
            q(2, 3),
            q(3, 1),
            q(1, 4),
            q(4, 3),
            q(3, 5),
        ];
        for (i, v) in expect.iter().enumerate() {
            assert_eq!(&cw_at(&big(i as u64 + 1)), v, "position {}", i + 1);
        }
    }

    #[test]
    fn tree_decode_matches_the_successor_recurrence() {
        let mut x = Rat::one();
        for m in 1..=512u64 {
            assert_eq!(cw_at(&big(m)), x, "position {m}");
            x = cw_successor(&x);
        }
    }

    #[test]
    fn rational_enumeration_interleaves_signs() {
        let expect = [
            Rat::zero(),
            q(1, 1),
            q(-1, 1),
            q(1, 2),
            q(-1, 2),
            q(2, 1),
            q(-2, 1),
            q(1, 3),
            q(-1, 3),
        ];
        for (i, v) in expect.iter().enumerate() {
            assert_eq!(&q_rat(i as u64), v, "index {i}");
        }
    }

    #[test]
    fn enumeration_inverts_exactly() {
        for i in 0..600u64 {
            assert_eq!(q_index(&q_rat(i)), big(i), "index {i}");
        }
        // a deeper spot check: 7/3 sits at tree position 19
        assert_eq!(cw_pos(&q(7, 3)), big(19));
        assert_eq!(q_index(&q(7, 3)), big(37));
        assert_eq!(q_rat(37), q(7, 3));
    }

    #[test]
    fn least_index_in_interval() {
        let iv = Interval::bounded(q(1, 4), false, Rat::one(), false).unwrap();
        let (i, v) = min_q_index_in(&iv);
        assert_eq!((i, v), (big(3), q(1, 2)));

        let ray = Interval::new(
            crate::exactsets::Endpoint::open(Ext::NegInf),
            crate::exactsets::Endpoint::open(Ext::Fin(Rat::zero())),
        )
        .unwrap();
        assert_eq!(min_q_index_in(&ray), (big(2), q(-1, 1)));

        let tight = Interval::bounded(q(1, 3), false, q(1, 2), false).unwrap();
        let (i, v) = min_q_index_in(&tight);
        assert_eq!(v, q(2, 5));
        assert_eq!(i, big(23));
        // exhaustive confirmation on the enumeration prefix
        for j in 0..23u64 {
            assert!(!tight.contains(&q_rat(j)), "index {j} should lie outside");
        }

        // zero always wins when available
        let wide = Interval::bounded(q(-1, 1), false, Rat::one(), false).unwrap();
        assert_eq!(min_q_index_in(&wide), (big(0), Rat::zero()));
    }

    #[test]
    fn pairing_inverts() {
        let known = [
            (0, (0, 0)),
            (1, (1, 0)),
            (2, (0, 1)),
            (3, (2, 0)),
            (4, (1, 1)),
            (5, (0, 2)),
        ];
        for (t, ab) in known {
            assert_eq!(cantor_unpair(t), ab);
            assert_eq!(cantor_pair(&big(ab.0), &big(ab.1)), big(t));
        }
        for t in 0..400u64 {
            let (a, b) = cantor_unpair(t);
            assert_eq!(cantor_pair(&big(a), &big(b)), big(t));
        }
    }

    #[test]
    fn descriptor_decode_and_index_builders_agree() {
        assert_eq!(descriptor(0), FamilyDescriptor::D);
        assert_eq!(descriptor(1), FamilyDescriptor::W(Rat::zero(), Rat::zero()));
        assert_eq!(descriptor(2), FamilyDescriptor::U(Rat::zero(), 0));
        assert_eq!(descriptor(3), FamilyDescriptor::V(Rat::zero(), 0));
        assert_eq!(descriptor(7), FamilyDescriptor::W(Rat::zero(), Rat::one()));
        for i in 1..400u64 {
            match descriptor(i) {
                FamilyDescriptor::D => panic!("D only at 0"),
                FamilyDescriptor::W(p, r) => {
                    assert_eq!(w_index(&q_index(&p), &q_index(&r)), big(i));
                }
                FamilyDescriptor::U(p, n) => {
                    assert_eq!(u_index(&q_index(&p), n), big(i));
                }
                FamilyDescriptor::V(p, n) => {
                    assert_eq!(v_index(&q_index(&p), n), big(i));
                }
            }
        }
        // all three parametric kinds occur early and often
        let mut w = 0;
        let mut u = 0;
        let mut v = 0;
        for i in 1..=100u64 {
            match descriptor(i) {
                FamilyDescriptor::W(..) => w += 1,
                FamilyDescriptor::U(..) => u += 1,
                FamilyDescriptor::V(..) => v += 1,
                FamilyDescriptor::D => unreachable!(),
            }
        }
        assert!(w >= 33 && u >= 33 && v >= 33);
    }

    #[test]
    fn minimal_neighborhoods_by_kind() {
        let c = FourCover::sorgenfrey();
        let d = Decomposition::synthesize(&c).unwrap();
        let x = Rat::zero();

        let w = FamilyDescriptor::W(q(-1, 1), Rat::one());
        assert_eq!(
            family_min_nbhd(&c, &d, &w, &x).unwrap().to_string(),
            "(-1,1)"
        );
        assert!(family_min_nbhd(&c, &d, &w, &q(5, 1))
            .unwrap()
            .set_eq(&RSet::all())
            .unwrap());

        // the strip anchored at sup F(5) ∩ (−∞, 0] = 0
        let u = FamilyDescriptor::U(Rat::one(), 5);
        assert_eq!(
            family_min_nbhd(&c, &d, &u, &x).unwrap().to_string(),
            "[0,1)"
        );

        // no H-material anywhere: V families degenerate to the whole line
        let v = FamilyDescriptor::V(q(-1, 1), 3);
        assert!(family_min_nbhd(&c, &d, &v, &x)
            .unwrap()
            .set_eq(&RSet::all())
            .unwrap());

        // D singles out isolated points only
        let iso = CoverSpec {
            piece_labels: vec![Label::Isolated],
            ..CoverSpec::default()
        }
        .validate()
        .unwrap();
        let di = Decomposition::synthesize(&iso).unwrap();
        assert_eq!(
            family_min_nbhd(&iso, &di, &FamilyDescriptor::D, &x)
                .unwrap()
                .to_string(),
            "{0}"
        );
    }

    #[test]
    fn kernels_shrink_and_contain_their_center() {
        let c = FourCover::sorgenfrey();
        let d = Decomposition::synthesize(&c).unwrap();
        let x = Rat::zero();
        // the first shrinking family is U(q(1), 0) at index 5
        assert!(min_nbhd_level(&c, &d, 4, &x)
            .unwrap()
            .set_eq(&RSet::all())
            .unwrap());
        assert_eq!(min_nbhd_level(&c, &d, 5, &x).unwrap().to_string(), "[0,1)");

        let mut prev = RSet::all();
        for n in 0..=24u64 {
            let m = min_nbhd_level(&c, &d, n, &x).unwrap();
            assert!(m.member(&x), "center at level {n}");
            assert!(m.subset_of(&prev).unwrap(), "monotone at level {n}");
            prev = m;
        }
    }

    #[test]
    fn kernel_transitivity_on_a_mixed_cover() {
        let c = CoverSpec {
            breakpoints: vec![Rat::zero(), Rat::one()],
            piece_labels: vec![
                Label::Left,
                Label::Isolated,
                Label::Right,
                Label::TwoSided,
                Label::TwoSided,
            ],
            ..CoverSpec::default()
        }
        .validate()
        .unwrap();
        let d = Decomposition::synthesize(&c).unwrap();
        let xs = [q(-3, 2), q(0, 1), q(1, 3), q(1, 2), q(3, 2), q(7, 4)];
        for n in [3u64, 8, 13] {
            for x in &xs {
                let mx = min_nbhd_level(&c, &d, n, x).unwrap();
                assert!(mx.member(x));
                for z in &xs {
                    if mx.member(z) {
                        let mz = min_nbhd_level(&c, &d, n, z).unwrap();
                        assert!(
                            mz.subset_of(&mx).unwrap(),
                            "kernel at {z} escapes kernel at {x}, level {n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn interior_preservation_checks_the_anchor_label() {
        let c = FourCover::sorgenfrey();
        let d = Decomposition::synthesize(&c).unwrap();
        let probes = vec![Rat::zero(), q(1, 2)];
        let ok = verify_interior_preserving(&c, &d, &FamilyDescriptor::U(Rat::one(), 5), &probes)
            .unwrap();
        assert!(ok.is_empty(), "{ok:?}");

        // a foreign family with an open set behind the strip: its sup anchor
        // 1 is unattained, lands on a two-sided point, and the strip is not
        // open there
        let mixed = CoverSpec {
            breakpoints: vec![Rat::one()],
            piece_labels: vec![Label::Right, Label::TwoSided, Label::Right],
            ..CoverSpec::default()
        }
        .validate()
        .unwrap();
        let open =
            RSet::from_interval(Interval::bounded(Rat::zero(), false, Rat::one(), false).unwrap());
        let dd = Decomposition::custom(&mixed, vec![open], vec![RSet::empty()]).unwrap();
        let bad =
            verify_interior_preserving(&mixed, &dd, &FamilyDescriptor::U(q(3, 1), 0), &[q(2, 1)])
                .unwrap();
        assert!(!bad.is_empty());
        assert!(bad[0].contains("anchor 1"), "{bad:?}");
    }

    #[test]
    fn generator_material_anchors_strips_exactly() {
        // A₃ = the increasing sequence 1 − 2⁻ᵏ: strips anchor at its terms
        let c = CoverSpec {
            piece_labels: vec![Label::TwoSided],
            gen_overrides: vec![(
                SeqGen::new(Rat::one(), q(-1, 1), q(1, 2), 1).unwrap(),
                Label::Right,
            )],
            ..CoverSpec::default()
        }
        .validate()
        .unwrap();
        let d = Decomposition::synthesize(&c).unwrap();
        // F(2) = {1/2, 3/4, 7/8}; at x = 7/8 the strip [7/8, 2) results
        let u = FamilyDescriptor::U(q(2, 1), 2);
        assert_eq!(
            family_min_nbhd(&c, &d, &u, &q(7, 8)).unwrap().to_string(),
            "[7/8,2)"
        );
        // at a point below all terms the family is inapplicable from there
        assert!(family_min_nbhd(&c, &d, &u, &q(1, 4))
            .unwrap()
            .set_eq(&RSet::all())
            .unwrap());
    }
}
