//! Engine-level behavior: exit codes, transcripts, and artifact contents
//! for small documents with hand-checked outputs.

use eqred_cli::{engine, parse_spec, OutputFormat, RunOutcome};
use eqred_core::{
    build_thm21_e, close, ConstructionSpec, MergeSpec, OracleSet, Relation, Variant,
};

fn run_text(text: &str) -> RunOutcome {
    let doc = parse_spec(text).unwrap_or_else(|e| panic!("parse failed: {e}\n{text}"));
    engine::run(&doc, OutputFormat::Csv)
}

fn artifact<'a>(outcome: &'a RunOutcome, name: &str) -> &'a str {
    let artifact = outcome
        .artifacts
        .iter()
        .find(|a| a.filename == name)
        .unwrap_or_else(|| {
            panic!(
                "artifact {name} not in {:?}",
                outcome.artifacts.iter().map(|a| &a.filename).collect::<Vec<_>>()
            )
        });
    std::str::from_utf8(&artifact.bytes).unwrap()
}

#[test]
fn empty_document_runs_clean() {
    let outcome = run_text("");
    assert_eq!(outcome.exit, 0);
    assert!(outcome.artifacts.is_empty());
    assert!(outcome.stdout.is_empty());
}

#[test]
fn declarations_only_document_produces_no_artifacts() {
    let outcome = run_text("rel R = idn 3\nset B = {0}\nfn f = tail identity");
    assert_eq!(outcome.exit, 0);
    assert!(outcome.artifacts.is_empty());
}

#[test]
fn witnessed_assertion_exits_zero_and_prints_the_witness() {
    let outcome =
        run_text("rel two = idn 2\nrel three = idn 3\nreduce assert two -> three --bound 6");
    assert_eq!(outcome.exit, 0);
    assert!(outcome.stdout.contains("witness: table"), "{}", outcome.stdout);
}

#[test]
fn refuted_assertion_exits_3_with_certificate_and_stops() {
    let outcome = run_text(
        "rel two = idn 2\nrel three = idn 3\n\
         reduce assert three -> two --bound 9\nclasses two --bound 4",
    );
    assert_eq!(outcome.exit, 3);
    assert!(
        outcome
            .stdout
            .contains("pigeonhole: 3 source classes vs 2 target classes"),
        "{}",
        outcome.stdout
    );
    assert!(outcome.stdout.contains("conclusive"), "{}", outcome.stdout);
    // The classes command after the failed assertion never ran.
    assert_eq!(outcome.artifacts.len(), 1);
    assert_eq!(outcome.artifacts[0].filename, "01-reduce-assert-three-two.txt");
}

#[test]
fn class_table_csv_uses_the_pinned_schema() {
    let outcome = run_text("rel three = idn 3\nclasses three --bound 5");
    assert_eq!(outcome.exit, 0);
    assert_eq!(
        artifact(&outcome, "01-classes-three.csv"),
        "element,representative,class_size_on_window\n\
         0,0,2\n1,1,2\n2,2,2\n3,0,2\n4,1,2\n5,2,2\n"
    );
}

#[test]
fn text_and_dot_formats_are_stable() {
    let outcome = run_text(
        "rel four = idn 4\nclosure four with [(0, 1)] --bound 7 --format text\n\
         rel two = idn 2\nclasses two --bound 3 --format dot",
    );
    assert_eq!(outcome.exit, 0);
    assert_eq!(
        artifact(&outcome, "01-closure-four.txt"),
        "classes on [0, 7]:\n  {0, 1, 4, 5}\n  {2, 6}\n  {3, 7}\n"
    );
    assert_eq!(
        artifact(&outcome, "02-classes-two.dot"),
        "graph classes {\n  0;\n  1;\n  2;\n  3;\n  2 -- 0;\n  3 -- 1;\n}\n"
    );
}

#[test]
fn closure_command_matches_the_library_closure() {
    let outcome = run_text("rel four = idn 4\nclosure four with [(1, 2)] --bound 11");
    let spec = MergeSpec::new(Relation::id_n(4).unwrap(), vec![(1, 2)]).unwrap();
    let closed = close(&spec, 11).unwrap();
    let mut expected = String::from("element,representative,class_size_on_window\n");
    for x in 0..=11 {
        expected.push_str(&format!(
            "{x},{},{}\n",
            closed.rep(x).unwrap(),
            closed.class_of(x, 11).unwrap().len()
        ));
    }
    assert_eq!(artifact(&outcome, "01-closure-four.csv"), expected);
}

#[test]
fn construct_log_artifact_matches_the_library_log() {
    let outcome = run_text(
        "rel base = ceer { stages = [[(0, 1)], [(4, 5)]] }\nset b = {0, 1}\n\
         construct thm21-e --base base --oracle b --bound 10",
    );
    assert_eq!(outcome.exit, 0);
    let spec = ConstructionSpec::from_relation(
        Variant::Thm21E,
        Relation::from_enumeration(&eqred_core::Enumeration::from_stages(&[
            vec![(0, 1)],
            vec![(4, 5)],
        ])),
        OracleSet::explicit([0, 1]),
        None,
    );
    let out = build_thm21_e(&spec, 10).unwrap();
    assert_eq!(
        artifact(&outcome, "01-construct-thm21-e-base-log.txt"),
        out.log.to_string()
    );
}

#[test]
fn windowed_relation_queried_past_its_bound_exits_4() {
    let outcome = run_text(
        "rel four = idn 4\nrel c = close four with [(0, 1)] bound 4\nclasses c --bound 9",
    );
    assert_eq!(outcome.exit, 4);
    assert!(outcome.stdout.contains("command 1 (classes c): error:"), "{}", outcome.stdout);
}

#[test]
fn unrealizable_explicit_oracle_member_exits_4() {
    let outcome = run_text(
        "rel b = ceer { stages = [[(0, 1)]] }\nset big = {9}\n\
         construct thm21-e --base b --oracle big --bound 5",
    );
    assert_eq!(outcome.exit, 4);
    assert!(outcome.stdout.contains("error:"), "{}", outcome.stdout);
}

#[test]
fn failing_declaration_is_reported_with_its_name() {
    let outcome = run_text("rel four = idn 4\nrel c = close four with [(0, 1)] bound 4\n\
                            rel d = close c with [(2, 3)] bound 9");
    assert_eq!(outcome.exit, 4);
    assert!(outcome.stdout.contains("declaration 'd': error:"), "{}", outcome.stdout);
}

#[test]
fn violation_evidence_exits_5_after_running_everything() {
    let outcome = run_text(
        "rel four = idn 4\nset w = {0, 1, 2}\n\
         audit minimality four w --bound 11\nclasses four --bound 3",
    );
    assert_eq!(outcome.exit, 5);
    assert_eq!(outcome.artifacts.len(), 2, "both commands ran");
    assert!(
        outcome.stdout.contains("findings: violation-evidence"),
        "{}",
        outcome.stdout
    );
}

#[test]
fn consistent_minimality_audit_exits_zero() {
    let outcome = run_text(
        "rel four = idn 4\nset w = {0, 1}\naudit minimality four w --bound 11",
    );
    assert_eq!(outcome.exit, 0);
    assert!(outcome.stdout.contains("findings: consistent"), "{}", outcome.stdout);
}

#[test]
fn command_numbering_counts_commands_only() {
    let outcome = run_text(
        "rel a = idn 2\nclasses a --bound 3\nrel b = idn 3\nclasses b --bound 3",
    );
    let names: Vec<&str> = outcome.artifacts.iter().map(|a| a.filename.as_str()).collect();
    assert_eq!(names, ["01-classes-a.csv", "02-classes-b.csv"]);
}

#[test]
fn default_bound_applies_to_later_commands_only() {
    let outcome = run_text(
        "rel a = idn 2\nclasses a --bound 3\ndefault bound = 5\nclasses a",
    );
    assert_eq!(outcome.exit, 0);
    assert!(outcome.stdout.contains("2 classes on [0, 3]"), "{}", outcome.stdout);
    assert!(outcome.stdout.contains("2 classes on [0, 5]"), "{}", outcome.stdout);
}

#[test]
fn chain_artifact_is_an_index_value_table() {
    let outcome = run_text(
        "fn double = table {0:0, 1:2, 2:4} tail const 0\nfn ident = tail identity\n\
         chain double ident --start 1 --len 3",
    );
    assert_eq!(
        artifact(&outcome, "01-chain-double-ident.csv"),
        "index,value\n0,1\n1,2\n2,4\n3,0\n"
    );
}

#[test]
fn witness_map_round_trips_through_the_target_relation() {
    let outcome = run_text(
        "rel t = ceer { stages = [[(0, 3), (1, 4)]] }\nfn ident = tail identity\n\
         witness-map ident t --bound 6",
    );
    assert_eq!(outcome.exit, 0);
    let text = artifact(&outcome, "01-witness-map-ident-t.txt");
    assert!(text.contains("fn = "), "{text}");
}
