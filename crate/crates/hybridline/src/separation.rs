//! Separating neighborhoods, sampled normality checks, and exact
//! piecewise-linear Urysohn functions.
//!
//! For a point `c` away from a closed set, the least `n` with the basic
//! `1/n`-neighborhood of `c` disjoint from the set is computed exactly from
//! the gap between `c` and the set; the separator keeps the half radius
//! `1/(2n)`, which is what makes separators of two disjoint closed sets
//! pairwise disjoint. Urysohn functions are piecewise linear with a ramp of
//! slope `2/ε` on the far half of the chosen neighborhood, evaluated in
//! exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::cover::{basic_nbhd, FourCover, Label};
use crate::exactsets::{ExactError, Ext, RSet, Rat};
use crate::max_level;

/// Errors from separator construction and Urysohn evaluation.
#[derive(Debug, Error)]
pub enum SepError {
    /// No `n` that fits in 64 bits gives a neighborhood disjoint from the
    /// other set — the point lies in (or is a one-sided limit of) the set.
    #[error("no finite n separates {point} from the set")]
    NoFiniteN { point: Rat },
    /// The claimed neighborhood–set disjointness does not hold.
    #[error("invalid specification: {0}")]
    SpecInvalid(String),
    /// The two closed sets overlap; `witness` is a common point.
    #[error("sets overlap at {witness}")]
    Overlap { witness: Rat },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A separating neighborhood: the basic neighborhood of `center` at half the
/// largest radius `1/n` that avoids the other set.
#[derive(Clone, Debug)]
pub struct SepNbhd {
    pub center: Rat,
    pub n_of_c: u64,
    pub set: RSet,
}

/// Gap from `c` to the members of `other` weakly above it: `None` when no
/// member lies in `[c, ∞)`, otherwise the (possibly zero) difference.
fn gap_above(other: &RSet, c: &Rat) -> Option<Rat> {
    let r = other.inf_above(c);
    if !r.nonempty {
        return None;
    }
    match &r.value {
        Ext::Fin(v) => Some(v - c),
        _ => None,
    }
}

fn gap_below(other: &RSet, c: &Rat) -> Option<Rat> {
    let r = other.sup_below(c);
    if !r.nonempty {
        return None;
    }
    match &r.value {
        Ext::Fin(v) => Some(c - v),
        _ => None,
    }
}

/// Least positive `n` with `1/n ≤ g`, exactly; `None` when it overflows 64
/// bits or the gap is not positive.
fn least_n_for_gap(g: &Rat) -> Option<u64> {
    if !g.is_positive() {
        return None;
    }
    g.recip().ceil_int().to_u64().map(|n| n.max(1))
}

/// The separating neighborhood of `c` against `other`.
///
/// For isolated points the singleton separates at once. Otherwise the basic
/// `1/n`-neighborhood of `c` in the direction(s) its label opens must miss
/// `other`; the least such `n` is the reciprocal gap rounded up, computed
/// from exact one-sided infima rather than by trial. The returned set uses
/// half that radius.
pub fn sep_nbhd(c: &FourCover, center: &Rat, other: &RSet) -> Result<SepNbhd, SepError> {
    let label = c.label_of(center);
    if label == Label::Isolated {
        return Ok(SepNbhd {
            center: center.clone(),
            n_of_c: 1,
            set: RSet::point(center.clone()),
        });
    }
    let mut n = 1u64;
    let mut need = |gap: Option<Rat>| -> Result<(), SepError> {
        if let Some(g) = gap {
            let k = least_n_for_gap(&g).ok_or(SepError::NoFiniteN {
                point: center.clone(),
            })?;
            n = n.max(k);
        }
        Ok(())
    };
    match label {
        Label::Right => need(gap_above(other, center))?,
        Label::Left => need(gap_below(other, center))?,
        Label::TwoSided => {
            need(gap_above(other, center))?;
            need(gap_below(other, center))?;
        }
        Label::Isolated => unreachable!(),
    }
    let radius = Rat::from_big(BigRational::new(
        BigInt::one(),
        BigInt::from(2u8) * BigInt::from(n),
    ));
    Ok(SepNbhd {
        center: center.clone(),
        n_of_c: n,
        set: basic_nbhd(label, center, &radius),
    })
}

/// Outcome of a sampled normality check.
#[derive(Debug)]
pub struct NormalityReport {
    pub pairs_checked: u64,
    pub violations: Vec<String>,
}

/// Verifies the normality construction pairwise: every sampled point of each
/// set gets its separating neighborhood against the other set, and all cross
/// pairs of separators must be exactly disjoint. The sets themselves must be
/// exactly disjoint up front.
pub fn check_normality(
    c: &FourCover,
    c0: &RSet,
    c1: &RSet,
    samples0: &[Rat],
    samples1: &[Rat],
) -> Result<NormalityReport, SepError> {
    let common = c0.intersect(c1)?;
    if let Some(w) = common.any_member() {
        return Err(SepError::Overlap { witness: w });
    }
    let mut violations = Vec::new();
    let mut seps0 = Vec::new();
    for s in samples0 {
        if !c0.member(s) {
            violations.push(format!("sample {s} is not in the first set"));
            continue;
        }
        seps0.push(sep_nbhd(c, s, c1)?);
    }
    let mut seps1 = Vec::new();
    for s in samples1 {
        if !c1.member(s) {
            violations.push(format!("sample {s} is not in the second set"));
            continue;
        }
        seps1.push(sep_nbhd(c, s, c0)?);
    }
    let mut pairs = 0u64;
    for u0 in &seps0 {
        for u1 in &seps1 {
            pairs += 1;
            if !u0.set.intersect(&u1.set)?.is_empty() {
                violations.push(format!(
                    "separators at {} (n={}) and {} (n={}) intersect",
                    u0.center, u0.n_of_c, u1.center, u1.n_of_c
                ));
            }
        }
    }
    Ok(NormalityReport {
        pairs_checked: pairs,
        violations,
    })
}

/// A verified Urysohn specification: the basic neighborhood of `x` with
/// radius `eps` is exactly disjoint from `e`.
#[derive(Clone, Debug)]
pub struct UrysohnSpec {
    pub x: Rat,
    pub label: Label,
    pub eps: Rat,
    pub e: RSet,
}

impl UrysohnSpec {
    pub fn new(c: &FourCover, x: Rat, eps: Rat, e: RSet) -> Result<UrysohnSpec, SepError> {
        if !eps.is_positive() {
            return Err(SepError::SpecInvalid("radius must be positive".into()));
        }
        let label = c.label_of(&x);
        let nbhd = basic_nbhd(label, &x, &eps);
        if let Some(w) = nbhd.intersect(&e)?.any_member() {
            return Err(SepError::SpecInvalid(format!(
                "the chosen neighborhood of {x} meets the set at {w}"
            )));
        }
        Ok(UrysohnSpec { x, label, eps, e })
    }
}

/// Evaluates the separating function: `0` at `x` (and on the near half of
/// its neighborhood), `1` on the far side including all of `e`, and a linear
/// ramp of slope `2/ε` between. The label decides which sides ramp:
/// right-stub points ramp only rightward and jump at `x` from the left,
/// mirrored for left stubs; two-sided points get a symmetric tent; isolated
/// points get the indicator of the complement of `{x}`.
pub fn urysohn_eval(spec: &UrysohnSpec, t: &Rat) -> Rat {
    let one = Rat::one();
    let ramp = |u: &Rat| -> Rat {
        // (2/ε)·u − 1, for u in the open band (ε/2, ε)
        (Rat::int(2) / spec.eps.clone()) * u.clone() - Rat::one()
    };
    let half = spec.eps.clone() / Rat::int(2);
    match spec.label {
        Label::Isolated => {
            if t == &spec.x {
                Rat::zero()
            } else {
                one
            }
        }
        Label::Right => {
            if t < &spec.x {
                return one;
            }
            let u = t - &spec.x;
            if u <= half {
                Rat::zero()
            } else if u >= spec.eps {
                one
            } else {
                ramp(&u)
            }
        }
        Label::Left => {
            if t > &spec.x {
                return one;
            }
            let u = &spec.x - t;
            if u <= half {
                Rat::zero()
            } else if u >= spec.eps {
                one
            } else {
                ramp(&u)
            }
        }
        Label::TwoSided => {
            let u = (t - &spec.x).abs();
            if u <= half {
                Rat::zero()
            } else if u >= spec.eps {
                one
            } else {
                ramp(&u)
            }
        }
    }
}

/// Least `k ≥ 0` with `2⁻ᵏ` at most the gap; `None` when the gap is not
/// positive. An absent gap (`None`: nothing on that side) needs no
/// shrinking at all.
fn k_for_gap(gap: Option<Rat>) -> Option<u64> {
    match gap {
        None => Some(0),
        Some(g) => {
            if !g.is_positive() {
                None
            } else if g >= Rat::one() {
                Some(0)
            } else {
                Some((-g.floor_log2()) as u64)
            }
        }
    }
}

/// The largest dyadic radius `2⁻ᵏ` (`k ≥ 0`, smallest `k` first) whose
/// basic neighborhood of `x` misses `e` exactly. The minimal `k` is
/// computed from the exact gap between `x` and `e` — the same value the
/// upward scan would find, without stepping — and is still subject to the
/// global search cap.
pub fn choose_epsilon(c: &FourCover, x: &Rat, e: &RSet) -> Result<Rat, SepError> {
    if e.member(x) {
        return Err(SepError::NoFiniteN { point: x.clone() });
    }
    let label = c.label_of(x);
    let fail = || SepError::NoFiniteN { point: x.clone() };
    let k = match label {
        Label::Isolated => 0,
        Label::Right => k_for_gap(gap_above(e, x)).ok_or_else(fail)?,
        Label::Left => k_for_gap(gap_below(e, x)).ok_or_else(fail)?,
        Label::TwoSided => {
            let r = k_for_gap(gap_above(e, x)).ok_or_else(fail)?;
            let l = k_for_gap(gap_below(e, x)).ok_or_else(fail)?;
            r.max(l)
        }
    };
    if k > max_level() {
        return Err(fail());
    }
    let eps = Rat::dyadic(k);
    debug_assert!(basic_nbhd(label, x, &eps)
        .intersect(e)
        .map(|i| i.is_empty())
        .unwrap_or(false));
    Ok(eps)
}
