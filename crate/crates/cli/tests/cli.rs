//! Integration tests for the command-line crate: cover parsing, fuzz
//! determinism, suite reproducibility, and the binary's exit behavior.

use std::path::PathBuf;
use std::process::Command;

use hybridline::cover::{CoverFile, Label};
use hybridline::exactsets::RSet;
use hybridline_cli::fuzz::{fuzz_cover, FuzzSpec};
use hybridline_cli::suite::{run_suite, Suite, SuiteConfig};
use hybridline_cli::{parse_cover, CliError, PRESETS};

/// Writes `text` under a unique name in the target temp dir and returns the
/// path.
fn temp_file(stem: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("hybridline-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(format!("{stem}-{}.json", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

fn canonical_json(c: &hybridline::cover::FourCover) -> String {
    serde_json::to_string(&CoverFile::from_cover(c)).unwrap()
}

#[test]
fn every_preset_parses_by_name() {
    for name in PRESETS {
        let (id, _) = parse_cover(name).unwrap();
        assert_eq!(id, name);
    }
    let (_, sorgenfrey) = parse_cover("sorgenfrey").unwrap();
    assert_eq!(sorgenfrey.region(Label::Right).unwrap(), RSet::all());
}

#[test]
fn cover_files_round_trip_through_parsing() {
    let specimen = fuzz_cover(&FuzzSpec {
        seed: 7,
        ..FuzzSpec::default()
    });
    for c in [
        parse_cover("sorgenfrey").unwrap().1,
        parse_cover("hattori-approx").unwrap().1,
        specimen,
    ] {
        let first = canonical_json(&c);
        let path = temp_file("roundtrip", &first);
        let (id, reparsed) = parse_cover(path.to_str().unwrap()).unwrap();
        assert!(id.starts_with("roundtrip"));
        assert_eq!(canonical_json(&reparsed), first);
    }
}

#[test]
fn wrong_label_count_is_a_parse_error() {
    // one breakpoint needs 2·1+1 = 3 labels
    let path = temp_file("badlen", r#"{"breakpoints":["0"],"piece_labels":[1,2]}"#);
    let err = parse_cover(path.to_str().unwrap()).unwrap_err();
    match err {
        CliError::Cover(e) => {
            assert!(e.to_string().contains("piece labels"), "{e}");
        }
        other => panic!("expected a cover error, got {other}"),
    }
}

#[test]
fn duplicate_override_point_is_an_overlap_error() {
    let path = temp_file(
        "dupover",
        r#"{"piece_labels":[1],"point_overrides":[["1/2",2],["1/2",3]]}"#,
    );
    let err = parse_cover(path.to_str().unwrap()).unwrap_err();
    match err {
        CliError::Cover(e) => {
            let msg = e.to_string();
            assert!(msg.contains("1/2"), "witness point missing: {msg}");
        }
        other => panic!("expected a cover error, got {other}"),
    }
}

#[test]
fn unreadable_and_malformed_inputs_fail_cleanly() {
    assert!(matches!(
        parse_cover("no-such-file.json").unwrap_err(),
        CliError::Io { .. }
    ));
    let path = temp_file("notjson", "{[");
    assert!(matches!(
        parse_cover(path.to_str().unwrap()).unwrap_err(),
        CliError::Json { .. }
    ));
}

#[test]
fn fuzzing_is_deterministic() {
    for seed in [0u64, 1, 2, 42, 9_999_999] {
        let spec = FuzzSpec {
            seed,
            ..FuzzSpec::default()
        };
        let a = fuzz_cover(&spec);
        let b = fuzz_cover(&spec);
        assert_eq!(canonical_json(&a), canonical_json(&b), "seed {seed}");
    }
}

#[test]
fn a_thousand_fuzzed_covers_validate() {
    for seed in 0..1000u64 {
        let c = fuzz_cover(&FuzzSpec {
            seed,
            ..FuzzSpec::default()
        });
        // round-trip through the file schema and the full validator again
        let file: CoverFile = serde_json::from_str(&canonical_json(&c)).unwrap();
        let revalidated = file
            .into_spec()
            .and_then(|s| s.validate())
            .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert_eq!(canonical_json(&revalidated), canonical_json(&c));
    }
}

#[test]
fn all_maxima_zero_gives_a_pure_piece_cover() {
    let c = fuzz_cover(&FuzzSpec {
        max_breakpoints: 0,
        max_point_overrides: 0,
        max_gen_overrides: 0,
        seed: 5,
    });
    assert!(c.breakpoints().is_empty());
    assert!(c.point_overrides().is_empty());
    assert!(c.gen_overrides().is_empty());
    assert_eq!(c.piece_labels().len(), 1);
}

fn small_cover_set() -> Vec<(String, hybridline::cover::FourCover)> {
    let mut covers = vec![
        parse_cover("sorgenfrey").unwrap(),
        parse_cover("hattori-approx").unwrap(),
    ];
    for i in 0..2u64 {
        let c = fuzz_cover(&FuzzSpec {
            seed: 100 + i,
            ..FuzzSpec::default()
        });
        covers.push((format!("fuzz-{i}"), c));
    }
    covers
}

#[test]
fn reports_are_a_pure_function_of_the_config() {
    let cfg = SuiteConfig {
        suite: Suite::All,
        seed: 42,
        samples: 10,
        levels: 6,
        corrupt: false,
    };
    let covers = small_cover_set();
    let a = run_suite(&cfg, &covers).unwrap();
    let b = run_suite(&cfg, &covers).unwrap();
    assert_eq!(a.to_jsonl(), b.to_jsonl());
    assert_eq!(a.failures(), 0, "{}", a.to_jsonl());
    // every record carries the full field set
    for line in a.to_jsonl().lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for field in ["suite", "cover_id", "check", "witness", "status"] {
            assert!(v.get(field).is_some(), "missing {field} in {line}");
        }
    }
    // a different seed moves the sampled witnesses
    let other = run_suite(
        &SuiteConfig {
            seed: 43,
            ..cfg.clone()
        },
        &covers,
    )
    .unwrap();
    assert_ne!(a.to_jsonl(), other.to_jsonl());
}

#[test]
fn corrupt_hook_reports_violations_on_every_cover() {
    let cfg = SuiteConfig {
        suite: Suite::Decomposition,
        seed: 42,
        samples: 5,
        levels: 3,
        corrupt: true,
    };
    let covers = small_cover_set();
    let report = run_suite(&cfg, &covers).unwrap();
    assert!(report.failures() > 0);
    for (id, _) in &covers {
        assert!(
            report
                .records
                .iter()
                .any(|r| &r.cover_id == id && r.status == "fail"),
            "cover {id} escaped the negative control"
        );
    }
}

#[test]
fn zero_samples_give_an_empty_clean_report() {
    let cfg = SuiteConfig {
        suite: Suite::All,
        seed: 42,
        samples: 0,
        levels: 8,
        corrupt: false,
    };
    let report = run_suite(&cfg, &small_cover_set()).unwrap();
    assert!(report.records.is_empty());
    assert_eq!(report.failures(), 0);
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hybridline"))
}

#[test]
fn binary_check_is_reproducible_and_green() {
    let run = || {
        bin()
            .args([
                "check",
                "--suite",
                "all",
                "--seed",
                "42",
                "--samples",
                "8",
                "--levels",
                "5",
                "--fuzz-covers",
                "2",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout, "reports must be byte-identical");
    assert!(!a.stdout.is_empty());
}

#[test]
fn binary_corrupt_run_exits_nonzero_with_witnesses() {
    let out = bin()
        .args([
            "check",
            "--suite",
            "decomposition",
            "--seed",
            "42",
            "--samples",
            "5",
            "--levels",
            "3",
            "--fuzz-covers",
            "1",
            "--corrupt",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("\"fail\""), "{text}");
}

#[test]
fn binary_zero_samples_exits_zero_with_empty_report() {
    let out = bin()
        .args(["check", "--samples", "0", "--fuzz-covers", "1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn binary_rejects_a_broken_cover_file() {
    let path = temp_file("binbad", r#"{"breakpoints":["0"],"piece_labels":[1]}"#);
    let out = bin()
        .args(["validate", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("piece labels"), "{err}");
}
