//! Exact arithmetic for hybrid topologies on the real line.
//!
//! A *four-cover* assigns each point of ℝ one of four neighborhood styles:
//! two-sided intervals, isolated singletons, right half-open stubs `[x, x+ε)`,
//! or left half-open stubs `(x−ε, x]`. The resulting topology refines the
//! Euclidean line and is non-archimedeanly quasi-metrizable; this crate
//! computes with it exactly, over arbitrary-precision rationals.
//!
//! Everything is organized around a representable class of point sets
//! ([`exactsets::RSet`]): finite unions of rational intervals, finite point
//! sets, and geometric sequences, minus countable carve-outs of the same
//! shape. All operations are exact; there is no floating point anywhere.
//!
//! Module map:
//! - [`exactsets`] — rationals, intervals, sequence generators, set algebra,
//!   closures, and the canonical text format.
//! - [`cover`] — four-covers of ℝ, validation, label lookup, label regions,
//!   local base neighborhoods.
//! - [`decompose`] — closed families witnessing quasi-metrizability, G_δ
//!   certificates for one-side-closed sets, and the classification verdict.
//! - [`qbase`] — the fixed countable enumeration of neighborhood families and
//!   minimal-neighborhood kernels.
//! - [`qmetric`] — the induced dyadic-valued quasi-metric, balls, axiom
//!   checks, and the countable-cover extractor.
//! - [`separation`] — separating neighborhoods, normality checks, and exact
//!   Urysohn functions.

#![forbid(unsafe_code)]

pub mod cover;
pub mod decompose;
pub mod exactsets;
pub mod qbase;
pub mod qmetric;
pub mod separation;

use std::sync::OnceLock;

/// Parses the cap grammar: a decimal integer, or `2^k` for a power of two.
fn parse_cap(s: &str) -> Option<num_bigint::BigUint> {
    let t = s.trim();
    if let Some(k) = t.strip_prefix("2^") {
        let k: u64 = k.trim().parse().ok()?;
        return Some(num_bigint::BigUint::from(1u8) << k);
    }
    t.parse().ok()
}

fn cap_big() -> &'static num_bigint::BigUint {
    static CAP: OnceLock<num_bigint::BigUint> = OnceLock::new();
    CAP.get_or_init(|| {
        std::env::var("HYBRIDLINE_MAX_LEVEL")
            .ok()
            .and_then(|s| parse_cap(&s))
            .unwrap_or_else(|| num_bigint::BigUint::from(64u32))
    })
}

/// Global cap for bounded searches (ball fitting, openness certification,
/// dyadic ε search). Read once from `HYBRIDLINE_MAX_LEVEL` (a decimal, or
/// `2^k`); defaults to 64. Values beyond `u64` saturate here.
pub fn max_level() -> u64 {
    static CAP: OnceLock<u64> = OnceLock::new();
    *CAP.get_or_init(|| {
        use num_traits::ToPrimitive;
        cap_big().to_u64().unwrap_or(u64::MAX)
    })
}

/// The same cap as an arbitrary-precision integer. Level indices into the
/// family enumeration grow exponentially with the arithmetic complexity of
/// the rationals involved, so symbolic witnesses are compared against this
/// rather than iterated up to. Values too large for `u64` are exact here.
pub fn max_level_big() -> num_bigint::BigUint {
    cap_big().clone()
}
