//! Acceptance suite for the command-line layer:
//!
//! 8. cli determinism and round-trip — parse/serialize round-trips
//!    byte-identically on the sample corpus, and running the full corpus
//!    twice produces identical CSV artifacts (checked for all artifact
//!    kinds, in-process and through the installed binary).

use std::path::PathBuf;

use eqred_cli::{engine, parse_spec, OutputFormat, RunOutcome};

/// Sample documents shipped with the repository, with their pinned exits.
fn corpus() -> Vec<(PathBuf, i32)> {
    let samples = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples");
    vec![
        (samples.join("closure.eq"), 0),
        (samples.join("constructions.eq"), 0),
        (samples.join("reduce.eq"), 0),
        (samples.join("audit.eq"), 5),
        (samples.join("refute.eq"), 3),
    ]
}

fn run_file(path: &PathBuf) -> RunOutcome {
    let text = std::fs::read_to_string(path).unwrap();
    let doc = parse_spec(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    engine::run(&doc, OutputFormat::Csv)
}

#[test]
fn cli_round_trip() {
    let corpus = corpus();
    for (path, _) in &corpus {
        let text = std::fs::read_to_string(path).unwrap();
        let doc = parse_spec(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let first = doc.to_string();
        let reparsed = parse_spec(&first).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(doc, reparsed, "{}: structural round trip", path.display());
        assert_eq!(
            first,
            reparsed.to_string(),
            "{}: serialized form must re-serialize byte-identically",
            path.display()
        );
    }
    println!(
        "acceptance cli_round_trip: PASS — {} corpus documents, canonical form is a parse fixpoint",
        corpus.len()
    );
}

#[test]
fn cli_determinism() {
    let corpus = corpus();
    let mut csv_artifacts = 0;
    for (path, expected_exit) in &corpus {
        let first = run_file(path);
        let second = run_file(path);
        assert_eq!(first.exit, *expected_exit, "{}: exit code", path.display());
        assert_eq!(second.exit, *expected_exit, "{}: exit code", path.display());
        assert_eq!(
            first.stdout,
            second.stdout,
            "{}: transcripts differ between runs",
            path.display()
        );
        assert_eq!(
            first.artifacts.len(),
            second.artifacts.len(),
            "{}: artifact counts differ",
            path.display()
        );
        for (a, b) in first.artifacts.iter().zip(&second.artifacts) {
            assert_eq!(a.filename, b.filename, "{}: artifact names", path.display());
            assert_eq!(
                a.bytes,
                b.bytes,
                "{}: bytes of {} differ between runs",
                path.display(),
                a.filename
            );
            if a.filename.ends_with(".csv") {
                csv_artifacts += 1;
            }
        }
    }
    assert!(csv_artifacts > 0, "corpus must exercise CSV artifacts");
    println!(
        "acceptance cli_determinism: PASS — {} documents run twice, identical artifacts \
         ({csv_artifacts} CSV files)",
        corpus.len()
    );
}

#[test]
fn cli_determinism_through_the_binary() {
    let corpus = corpus();
    for (path, expected_exit) in &corpus {
        let dirs = [
            tempfile::tempdir().unwrap(),
            tempfile::tempdir().unwrap(),
        ];
        let mut outputs = Vec::new();
        for dir in &dirs {
            let output = std::process::Command::new(env!("CARGO_BIN_EXE_eqred"))
                .args(["run"])
                .arg(path)
                .arg("--out")
                .arg(dir.path())
                .output()
                .unwrap();
            assert_eq!(
                output.status.code(),
                Some(*expected_exit),
                "{}: binary exit code",
                path.display()
            );
            outputs.push(output.stdout);
        }
        assert_eq!(outputs[0], outputs[1], "{}: binary transcripts", path.display());
        let list = |dir: &tempfile::TempDir| -> Vec<(String, Vec<u8>)> {
            let mut entries: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir.path())
                .unwrap()
                .map(|e| {
                    let e = e.unwrap();
                    (
                        e.file_name().into_string().unwrap(),
                        std::fs::read(e.path()).unwrap(),
                    )
                })
                .collect();
            entries.sort();
            entries
        };
        assert_eq!(
            list(&dirs[0]),
            list(&dirs[1]),
            "{}: on-disk artifacts differ between runs",
            path.display()
        );
    }
    println!(
        "acceptance cli_determinism_through_the_binary: PASS — {} documents, \
         byte-identical artifact directories",
        corpus.len()
    );
}
