//! Command implementations behind the `hybridline` binary: cover parsing
//! (presets and JSON files), numeric literals, deterministic cover fuzzing,
//! and the reproducible property-suite runner.

pub mod fuzz;
pub mod suite;

use std::path::Path;

use thiserror::Error;

use hybridline::cover::{CoverError, CoverFile, FourCover, Label};
use hybridline::exactsets::{ExactError, Rat};
use hybridline::qmetric::QMetricError;
use hybridline::separation::SepError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Metric(#[from] QMetricError),
    #[error(transparent)]
    Separation(#[from] SepError),
    #[error("{0}")]
    Usage(String),
}

/// Built-in covers addressable by name everywhere a `<cover>` argument is
/// accepted.
pub const PRESETS: [&str; 5] = [
    "real-line",
    "sorgenfrey",
    "sorgenfrey-left",
    "hattori-approx",
    "discrete",
];

fn preset(name: &str) -> Option<FourCover> {
    match name {
        "real-line" => Some(FourCover::real_line()),
        "sorgenfrey" => Some(FourCover::sorgenfrey()),
        "sorgenfrey-left" => Some(FourCover::sorgenfrey_left()),
        "hattori-approx" => Some(FourCover::hattori_approx()),
        "discrete" => Some(FourCover::uniform(Label::Isolated)),
        _ => None,
    }
}

/// Resolves a `<cover>` argument: a preset name, or a path to a JSON cover
/// document. Returns the cover together with a short identifier for
/// reports.
pub fn parse_cover(input: &str) -> Result<(String, FourCover), CliError> {
    if let Some(c) = preset(input) {
        return Ok((input.to_string(), c));
    }
    let text = std::fs::read_to_string(input).map_err(|source| CliError::Io {
        path: input.to_string(),
        source,
    })?;
    let file: CoverFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: input.to_string(),
        source,
    })?;
    let cover = file.into_spec()?.validate()?;
    let id = Path::new(input)
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| input.to_string());
    Ok((id, cover))
}

/// Parses a numeric literal: `p/q`, an integer, or a dyadic `2^-k`.
pub fn parse_numeric(s: &str) -> Result<Rat, CliError> {
    let t = s.trim();
    if let Some(exp) = t.strip_prefix("2^-") {
        let k: u64 = exp
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("bad dyadic exponent in {t:?}")))?;
        return Ok(Rat::dyadic(k));
    }
    Ok(t.parse::<Rat>()?)
}

/// Parses a label number 1..4.
pub fn parse_label(v: u8) -> Result<Label, CliError> {
    Label::from_u8(v).ok_or_else(|| CliError::Usage(format!("label must be 1..4, got {v}")))
}
