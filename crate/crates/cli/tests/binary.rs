//! End-to-end tests of the `eqred` binary: parsing, one-off subcommands,
//! output-directory resolution, and usage errors.

use std::path::Path;
use std::process::{Command, Output};

fn eqred(args: &[&str], cwd: &Path, env_out: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_eqred"));
    cmd.args(args).current_dir(cwd).env_remove("EQRED_OUT");
    if let Some(dir) = env_out {
        cmd.env("EQRED_OUT", dir);
    }
    cmd.output().unwrap()
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path.to_str().unwrap().to_string()
}

const DECLS: &str = "default bound = 7\nrel mod4 = idn 4\nrel mod2 = idn 2\n\
                     set w = {0, 1}\nfn parity = tail mod 2 [0, 1]\n";

#[test]
fn parse_reports_counts_and_validates() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.eq", "rel R = idn 3\nclasses R --bound 4\n");
    let out = eqred(&["parse", &good], dir.path(), None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok: 1 declarations, 1 commands\n");

    let bad = write(dir.path(), "bad.eq", "rel R = idn 0\n");
    let out = eqred(&["parse", &bad], dir.path(), None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid modulus"));
}

#[test]
fn parse_emit_prints_the_canonical_fixpoint() {
    let dir = tempfile::tempdir().unwrap();
    let messy = write(dir.path(), "messy.eq", "rel  R=idn 3 # noise\nclasses R   --bound 4");
    let first = eqred(&["parse", &messy, "--emit"], dir.path(), None);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&first.stdout),
        "rel R = idn 3\nclasses R --bound 4\n"
    );
    let canonical = write(
        dir.path(),
        "canonical.eq",
        std::str::from_utf8(&first.stdout).unwrap(),
    );
    let second = eqred(&["parse", &canonical, "--emit"], dir.path(), None);
    assert_eq!(second.stdout, first.stdout);
}

#[test]
fn one_off_classes_runs_against_spec_declarations() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "decls.eq", DECLS);
    let out = eqred(
        &["classes", "mod4", "--spec", &spec, "--bound", "5"],
        dir.path(),
        None,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("01-classes-mod4.csv")).unwrap();
    assert!(csv.starts_with("element,representative,class_size_on_window\n"));
    assert!(csv.contains("5,1,2\n"), "{csv}");
}

#[test]
fn one_off_reduce_assert_uses_refutation_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "decls.eq", DECLS);
    let out = eqred(
        &["reduce", "assert", "mod4", "mod2", "--spec", &spec],
        dir.path(),
        None,
    );
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stdout).contains("pigeonhole"));
}

#[test]
fn one_off_audit_minimality_flags_violations() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "decls.eq", DECLS);
    let out = eqred(
        &[
            "audit",
            "minimality",
            "mod4",
            "w",
            "--spec",
            &spec,
            "--threshold",
            "1",
        ],
        dir.path(),
        None,
    );
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn spec_files_with_commands_are_rejected_for_one_offs() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "decls.eq", "rel R = idn 2\nclasses R --bound 3\n");
    let out = eqred(&["classes", "R", "--spec", &spec], dir.path(), None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("contains commands"));
}

#[test]
fn artifacts_go_to_the_env_directory_when_no_flag_is_given() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = tempfile::tempdir().unwrap();
    let doc = write(dir.path(), "doc.eq", "rel R = idn 2\nclasses R --bound 3\n");
    let out = eqred(&["run", &doc], dir.path(), Some(out_dir.path()));
    assert_eq!(out.status.code(), Some(0));
    assert!(out_dir.path().join("01-classes-R.csv").exists());
    // And --out wins over the environment.
    let flag_dir = tempfile::tempdir().unwrap();
    let out = eqred(
        &["run", &doc, "--out", flag_dir.path().to_str().unwrap()],
        dir.path(),
        Some(out_dir.path()),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(flag_dir.path().join("01-classes-R.csv").exists());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = eqred(&["no-such-subcommand"], dir.path(), None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn run_format_flag_sets_the_default_partition_format() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = tempfile::tempdir().unwrap();
    let doc = write(
        dir.path(),
        "doc.eq",
        "rel R = idn 2\nclasses R --bound 3\nclasses R --bound 3 --format csv\n",
    );
    let out = eqred(
        &[
            "run",
            &doc,
            "--out",
            out_dir.path().to_str().unwrap(),
            "--format",
            "text",
        ],
        dir.path(),
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out_dir.path().join("01-classes-R.txt").exists());
    assert!(out_dir.path().join("02-classes-R.csv").exists());
}
