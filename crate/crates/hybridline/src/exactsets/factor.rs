//! Prime-exponent solving for generator interactions.
//!
//! Two geometric sequences with the same limit share points exactly where
//! `c₁·r₁^k = c₂·r₂^j`. Writing every value by its prime exponent vector
//! turns this into a small integer-linear system in `(k, j)`; the solution
//! set is empty, a single point, or an arithmetic progression (a lattice
//! line), and each case stays inside the representable class.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rat;
use super::{ExactError, Result};

/// Trial-division bound. A cofactor surviving division by everything below
/// the bound is prime whenever it is below the bound squared; larger
/// survivors abort with `NotCanonicalizable` rather than guessing.
const TRIAL_BOUND: u64 = 1_000_000;

/// Solutions `(k, j)` of `c₁·r₁^k = c₂·r₂^j` over ℤ².
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowMatch {
    Empty,
    Point(i64, i64),
    /// `(k, j) = (k0 + t·dk, j0 + t·dj)` for all `t ∈ ℤ`, with `dk, dj ≥ 1`.
    Line {
        k0: i64,
        j0: i64,
        dk: i64,
        dj: i64,
    },
}

/// Factors a positive integer exactly, or fails if it resists trial division.
fn factorize(n: &BigInt, out: &mut BTreeMap<BigInt, i64>, sign: i64) -> Result<()> {
    debug_assert!(n.is_positive());
    let mut n = n.clone();
    let mut push = |p: BigInt, e: i64| {
        let slot = out.entry(p).or_insert(0);
        *slot += e * sign;
    };
    let mut e2 = 0;
    while n.is_even() {
        n /= 2;
        e2 += 1;
    }
    if e2 > 0 {
        push(BigInt::from(2), e2);
    }
    let mut p = 3u64;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if (&bp * &bp) > n {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&bp);
            if r.is_zero() {
                n = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            push(bp, e);
        }
        p += 2;
    }
    if !n.is_one() {
        // survivor: prime iff below TRIAL_BOUND², otherwise give up
        if n.to_u128()
            .is_none_or(|v| v > (TRIAL_BOUND as u128) * (TRIAL_BOUND as u128))
        {
            return Err(ExactError::NotCanonicalizable(format!(
                "cannot factor {n} within the trial-division bound"
            )));
        }
        push(n, 1);
    }
    Ok(())
}

/// Prime exponent vector of a nonzero rational (numerator minus denominator).
pub(super) fn exponents(r: &Rat) -> Result<BTreeMap<BigInt, i64>> {
    debug_assert!(!r.is_zero());
    let mut out = BTreeMap::new();
    let num = r.numer().abs();
    if !num.is_one() {
        factorize(&num, &mut out, 1)?;
    }
    if !r.denom().is_one() {
        factorize(r.denom(), &mut out, -1)?;
    }
    out.retain(|_, e| *e != 0);
    Ok(out)
}

/// All integer solutions of `c₁·r₁^k = c₂·r₂^j`.
///
/// `r₁, r₂ ∈ (0,1)`, `c₁, c₂ ≠ 0`. Index bounds (`k ≥ 0` etc.) are applied
/// by the caller; this reports the full lattice of solutions.
pub fn solve_pow_match(c1: &Rat, r1: &Rat, c2: &Rat, r2: &Rat) -> Result<PowMatch> {
    if c1.is_positive() != c2.is_positive() {
        return Ok(PowMatch::Empty);
    }
    // d · r1^k / r2^j = 1 with d = c1/c2 > 0
    let d = (c1 / c2).abs();
    let vd = exponents(&d)?;
    let v1 = exponents(r1)?;
    let v2 = exponents(r2)?;

    let mut primes: Vec<&BigInt> = vd.keys().chain(v1.keys()).chain(v2.keys()).collect();
    primes.sort();
    primes.dedup();

    // Per prime: α + k·β − j·γ = 0.
    let mut sol = Sol::All;
    for p in primes {
        let alpha = *vd.get(p).unwrap_or(&0);
        let beta = *v1.get(p).unwrap_or(&0);
        let gamma = *v2.get(p).unwrap_or(&0);
        sol = sol.meet(alpha, beta, gamma);
        if matches!(sol, Sol::Empty) {
            return Ok(PowMatch::Empty);
        }
    }
    Ok(match sol {
        Sol::Empty => PowMatch::Empty,
        Sol::Point(k, j) => PowMatch::Point(k, j),
        Sol::Line { k0, j0, dk, dj } => {
            debug_assert!(dk >= 1 && dj >= 1, "ratios in (0,1) pin both directions");
            PowMatch::Line { k0, j0, dk, dj }
        }
        // No prime constrained anything: impossible for ratios in (0,1),
        // whose exponent vectors are nonzero.
        Sol::All => unreachable!("ratio in (0,1) always has prime support"),
    })
}

enum Sol {
    All,
    Line { k0: i64, j0: i64, dk: i64, dj: i64 },
    Point(i64, i64),
    Empty,
}

impl Sol {
    /// Intersect with the solution set of `α + k·β − j·γ = 0`.
    fn meet(self, alpha: i64, beta: i64, gamma: i64) -> Sol {
        match self {
            Sol::Empty => Sol::Empty,
            Sol::All => line_of(alpha, beta, gamma),
            Sol::Point(k, j) => {
                if alpha + k * beta - j * gamma == 0 {
                    Sol::Point(k, j)
                } else {
                    Sol::Empty
                }
            }
            Sol::Line { k0, j0, dk, dj } => {
                // substitute k = k0 + t·dk, j = j0 + t·dj
                let coeff = beta * dk - gamma * dj;
                let rhs = -(alpha + beta * k0 - gamma * j0);
                if coeff == 0 {
                    if rhs == 0 {
                        Sol::Line { k0, j0, dk, dj }
                    } else {
                        Sol::Empty
                    }
                } else if rhs % coeff == 0 {
                    let t = rhs / coeff;
                    Sol::Point(k0 + t * dk, j0 + t * dj)
                } else {
                    Sol::Empty
                }
            }
        }
    }
}

/// Solution line of a single equation `k·β − j·γ = −α`.
fn line_of(alpha: i64, beta: i64, gamma: i64) -> Sol {
    if beta == 0 && gamma == 0 {
        return if alpha == 0 { Sol::All } else { Sol::Empty };
    }
    if gamma == 0 {
        // k fixed, j free
        return if alpha % beta == 0 {
            Sol::Line {
                k0: -alpha / beta,
                j0: 0,
                dk: 0,
                dj: 1,
            }
        } else {
            Sol::Empty
        };
    }
    if beta == 0 {
        return if alpha % gamma == 0 {
            Sol::Line {
                k0: 0,
                j0: alpha / gamma,
                dk: 1,
                dj: 0,
            }
        } else {
            Sol::Empty
        };
    }
    let g = gcd(beta, gamma);
    if alpha % g != 0 {
        return Sol::Empty;
    }
    // particular solution of β·k − γ·j = −α via extended gcd
    let (x, y) = ext_gcd(beta, -gamma);
    let scale = -alpha / g;
    let (k0, j0) = (x * scale, y * scale);
    let (mut dk, mut dj) = (gamma / g, beta / g);
    if dk < 0 || (dk == 0 && dj < 0) {
        dk = -dk;
        dj = -dj;
    }
    debug_assert_eq!(beta * (k0 + dk) - gamma * (j0 + dj), -alpha);
    Sol::Line { k0, j0, dk, dj }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(x, y)` with `a·x + b·y = gcd(a, b)` (sign of gcd as returned by `gcd`).
fn ext_gcd(a: i64, b: i64) -> (i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-x0, -y0)
    } else {
        (x0, y0)
    }
}
