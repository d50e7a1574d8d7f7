//! Exact representable point sets on the rational line.
//!
//! The representable class is closed under finite boolean operations and
//! under the three closure operators used elsewhere in the crate (Euclidean,
//! lower-limit, upper-limit). A set is stored in a deterministic reduced form
//!
//! ```text
//! S  =  (⋃ intervals  ∖  minus part)  ∪  plus part
//! ```
//!
//! with the countable minus part confined to the interiors of the intervals
//! and the countable plus part kept outside them. Generators denote geometric
//! sequences `{a + c·r^k : k ≥ 0}` converging to `a` (the limit itself is
//! never a member). Reduction is deterministic per construction path, but a
//! countable set may admit several minimal generator decompositions, so
//! equality is decided semantically (mutual inclusion), not by comparing
//! representations.

mod discrete;
mod factor;
mod interval;
mod rational;
mod rset;
mod seqgen;
mod text;

pub use discrete::Discrete;
pub use interval::{Endpoint, Ext, Interval, Overlap};
pub use rational::Rat;
pub use rset::{RSet, SupResult, Topology};
pub use seqgen::{KRange, SeqGen};
pub use text::parse_rset;

use thiserror::Error;

/// Errors from construction and algebra of representable sets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// Two generators with equal limits interact in a way that the bounded
    /// resolution (prime-exponent solving, residue splitting) cannot express
    /// with finitely many parts. Never produces silent wrong output.
    #[error("cannot canonicalize: {0}")]
    NotCanonicalizable(String),
    /// A rational or set literal failed to parse.
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    /// Invalid component (zero coefficient, ratio outside (0,1), degenerate
    /// interval, …).
    #[error("invalid component: {0}")]
    Invalid(String),
}

pub(crate) type Result<T> = std::result::Result<T, ExactError>;
