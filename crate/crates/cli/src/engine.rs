//! Executes a parsed document: builds declared objects in order, runs each
//! command, and collects a transcript plus per-command artifacts.
//!
//! Exit codes:
//! - 0: all commands ran, no violation evidence
//! - 1: parse or validation error (reported by the caller, not here)
//! - 2: command-line usage error (reported by the argument parser)
//! - 3: a `reduce assert` was refuted; execution stops there
//! - 4: a window or domain error; execution stops there
//! - 5: every command ran, but an audit produced violation evidence
//! - 6: internal error (failed to write artifacts, etc.)
//!
//! Artifacts are named `NN-<command>-<names>.<ext>` where NN is the
//! 1-based command number. Class tables use the CSV schema
//! `element,representative,class_size_on_window`; DOT output has one node
//! per window element and one edge per union-find merge (each non-least
//! element links to its class representative).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use eqred_core::{
    build_chain, build_prop31, build_thm21_e, build_thm21_f, close, collapse_map,
    darkness_evidence, incomparability_refute, minimality_criterion, search_reduction,
    verify_reduction, witness_map, AuditReport, ConstructionSpec, Enumeration, Error, MergeSpec,
    OracleSet, Pigeonhole, ReductionFn, Relation, Variant, Verdict,
};

use crate::document::{
    Command, CommandOpts, Declaration, Item, OutputFormat, RelExpr, SetExpr, SpecDocument,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;
pub const EXIT_WINDOW: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;
pub const EXIT_INTERNAL: i32 = 6;

/// One output file produced by a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub filename: String,
    pub bytes: Vec<u8>,
}

/// Everything a run produces, kept in memory so callers decide where it goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit: i32,
    pub stdout: String,
    pub artifacts: Vec<Artifact>,
}

/// Execute every command of a validated document in order.
pub fn run(doc: &SpecDocument, default_format: OutputFormat) -> RunOutcome {
    let mut session = Session {
        rels: BTreeMap::new(),
        enums: BTreeMap::new(),
        sets: BTreeMap::new(),
        fns: BTreeMap::new(),
        default_bound: None,
        default_format,
        transcript: String::new(),
        artifacts: Vec::new(),
        violation: false,
    };
    let mut seq = 0usize;
    for item in &doc.items {
        match item {
            Item::Declaration(decl) => {
                if let Err(err) = session.declare(decl) {
                    let name = decl_name(decl);
                    let _ = writeln!(session.transcript, "declaration '{name}': error: {err}");
                    return session.finish(EXIT_WINDOW);
                }
            }
            Item::Command(cmd) => {
                seq += 1;
                match session.execute(seq, cmd) {
                    Ok(Flow::Continue) => {}
                    Ok(Flow::Stop(code)) => return session.finish(code),
                    Err(err) => {
                        let _ = writeln!(
                            session.transcript,
                            "command {seq} ({}): error: {err}",
                            cmd.label()
                        );
                        return session.finish(EXIT_WINDOW);
                    }
                }
            }
        }
    }
    let code = if session.violation { EXIT_VIOLATION } else { EXIT_OK };
    session.finish(code)
}

fn decl_name(decl: &Declaration) -> &str {
    match decl {
        Declaration::Rel { name, .. }
        | Declaration::Set { name, .. }
        | Declaration::Fn { name, .. } => name,
        Declaration::DefaultBound(_) => "default bound",
    }
}

enum Flow {
    Continue,
    Stop(i32),
}

struct Session {
    rels: BTreeMap<String, Relation>,
    enums: BTreeMap<String, Enumeration>,
    sets: BTreeMap<String, OracleSet>,
    fns: BTreeMap<String, ReductionFn>,
    default_bound: Option<u64>,
    default_format: OutputFormat,
    transcript: String,
    artifacts: Vec<Artifact>,
    violation: bool,
}

impl Session {
    fn finish(self, exit: i32) -> RunOutcome {
        RunOutcome {
            exit,
            stdout: self.transcript,
            artifacts: self.artifacts,
        }
    }

    fn bound_of(&self, opts: &CommandOpts) -> u64 {
        opts.bound
            .or(self.default_bound)
            .expect("bound availability is checked during validation")
    }

    fn declare(&mut self, decl: &Declaration) -> Result<(), Error> {
        match decl {
            Declaration::DefaultBound(n) => {
                self.default_bound = Some(*n);
            }
            Declaration::Set { name, expr } => {
                let set = match expr {
                    SetExpr::Explicit(members) => OracleSet::explicit(members.iter().copied()),
                    SetExpr::Residues { modulus, residues } => {
                        OracleSet::residues(*modulus, residues.iter().copied())?
                    }
                };
                self.sets.insert(name.clone(), set);
            }
            Declaration::Fn { name, table, tail } => {
                let f = ReductionFn::from_table(table.clone(), tail.clone())?;
                self.fns.insert(name.clone(), f);
            }
            Declaration::Rel { name, expr } => {
                let rel = match expr {
                    RelExpr::Id => Relation::id(),
                    RelExpr::IdN(n) => Relation::id_n(*n)?,
                    RelExpr::Ceer { stages } => {
                        let e = Enumeration::from_stages(stages);
                        let rel = Relation::from_enumeration(&e);
                        self.enums.insert(name.clone(), e);
                        rel
                    }
                    RelExpr::Close { base, pairs, bound } => {
                        let bound = bound
                            .or(self.default_bound)
                            .expect("bound availability is checked during validation");
                        let spec = MergeSpec::new(self.rels[base].clone(), pairs.clone())?;
                        close(&spec, bound)?
                    }
                    RelExpr::Construct {
                        variant,
                        base,
                        oracle_b,
                        oracle_c,
                        bound,
                    } => {
                        let bound = bound
                            .or(self.default_bound)
                            .expect("bound availability is checked during validation");
                        let out = self.build(*variant, base, oracle_b, oracle_c.as_deref(), bound)?;
                        out.relation
                    }
                };
                self.rels.insert(name.clone(), rel);
            }
        }
        Ok(())
    }

    fn build(
        &self,
        variant: Variant,
        base: &str,
        oracle_b: &str,
        oracle_c: Option<&str>,
        bound: u64,
    ) -> Result<eqred_core::ConstructionOutput, Error> {
        let spec = ConstructionSpec::from_relation(
            variant,
            self.rels[base].clone(),
            self.sets[oracle_b].clone(),
            oracle_c.map(|c| self.sets[c].clone()),
        );
        match variant {
            Variant::Thm21E => build_thm21_e(&spec, bound),
            Variant::Thm21F => build_thm21_f(&spec, bound),
            Variant::Prop31 => build_prop31(&spec, bound),
        }
    }

    fn execute(&mut self, seq: usize, cmd: &Command) -> Result<Flow, Error> {
        let label = cmd.label();
        let slug = cmd.slug();
        match cmd {
            Command::Classes { rel, opts } => {
                let bound = self.bound_of(opts);
                let relation = self.rels[rel].clone();
                let k = relation.class_count(bound)?;
                let format = opts.format.unwrap_or(self.default_format);
                let file = self.partition_artifact(seq, &slug, &relation, bound, format)?;
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): {k} classes on [0, {bound}] -> {file}"
                );
            }
            Command::Closure { rel, pairs, opts } => {
                let bound = self.bound_of(opts);
                let spec = MergeSpec::new(self.rels[rel].clone(), pairs.clone())?;
                let closed = close(&spec, bound)?;
                let k = closed.class_count(bound)?;
                let format = opts.format.unwrap_or(self.default_format);
                let file = self.partition_artifact(seq, &slug, &closed, bound, format)?;
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): {k} classes after merging {} pairs on [0, {bound}] -> {file}",
                    pairs.len()
                );
            }
            Command::Construct {
                variant,
                base,
                oracle_b,
                oracle_c,
                opts,
            } => {
                let bound = self.bound_of(opts);
                let out = self.build(*variant, base, oracle_b, oracle_c.as_deref(), bound)?;
                let k = out.relation.class_count(bound)?;
                let format = opts.format.unwrap_or(self.default_format);
                let file = self.partition_artifact(seq, &slug, &out.relation, bound, format)?;
                let log_file = format!("{seq:02}-{slug}-log.txt");
                self.artifacts.push(Artifact {
                    filename: log_file.clone(),
                    bytes: format!("{}", out.log).into_bytes(),
                });
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): {k} classes, {} merges, truncated: {} -> {file}, {log_file}",
                    out.log.applied.len(),
                    if out.log.truncated { "yes" } else { "no" }
                );
            }
            Command::ReduceCheck {
                func,
                source,
                target,
                opts,
            } => {
                let bound = self.bound_of(opts);
                let f = self.fns[func].clone();
                let verdict =
                    verify_reduction(&f, &self.rels[source], &self.rels[target], bound)?;
                let result = match &verdict {
                    Verdict::Valid => format!("valid on [0, {bound}]"),
                    Verdict::Invalid { counterexample: (x, y) } => {
                        format!("invalid: counterexample ({x}, {y})")
                    }
                    other => format!("{other:?}"),
                };
                let file = self.text_artifact(
                    seq,
                    &slug,
                    format!("{label} on [0, {bound}]\nfunction: {f}\nresult: {result}\n"),
                );
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): {result} -> {file}"
                );
            }
            Command::ReduceSearch {
                source,
                target,
                opts,
            } => {
                let bound = self.bound_of(opts);
                let image_bound = opts.image_bound.unwrap_or(bound);
                let verdict = search_reduction(
                    &self.rels[source],
                    &self.rels[target],
                    bound,
                    image_bound,
                )?;
                let result = describe_search(&verdict, bound);
                let file =
                    self.text_artifact(seq, &slug, format!("{label} on [0, {bound}]\n{result}\n"));
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): {result} -> {file}"
                );
            }
            Command::ReduceAssert {
                source,
                target,
                opts,
            } => {
                let bound = self.bound_of(opts);
                let image_bound = opts.image_bound.unwrap_or(bound);
                let verdict = search_reduction(
                    &self.rels[source],
                    &self.rels[target],
                    bound,
                    image_bound,
                )?;
                let result = describe_search(&verdict, bound);
                let file =
                    self.text_artifact(seq, &slug, format!("{label} on [0, {bound}]\n{result}\n"));
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): {result} -> {file}"
                );
                if !matches!(verdict, Verdict::Witness(_)) {
                    let _ = writeln!(
                        self.transcript,
                        "command {seq} ({label}): assertion refuted, stopping"
                    );
                    return Ok(Flow::Stop(EXIT_REFUTED));
                }
            }
            Command::AuditMinimality {
                rel,
                witness_set,
                opts,
            } => {
                let bound = self.bound_of(opts);
                let w = self.sets[witness_set].members_up_to(bound);
                let report = minimality_criterion(
                    &self.rels[rel],
                    &w,
                    bound,
                    opts.threshold.map(|t| t as usize),
                    rel,
                )?;
                self.report_artifact(seq, &label, &slug, &report);
            }
            Command::AuditDarkness {
                rel,
                candidates,
                opts,
            } => {
                let bound = self.bound_of(opts);
                let cands: Vec<ReductionFn> =
                    candidates.iter().map(|c| self.fns[c].clone()).collect();
                let report = darkness_evidence(
                    &self.rels[rel],
                    &self.enums[rel],
                    &cands,
                    bound,
                    rel,
                )?;
                self.report_artifact(seq, &label, &slug, &report);
            }
            Command::AuditIncomparability { left, right, opts } => {
                let bound = self.bound_of(opts);
                let image_bound = opts.image_bound.unwrap_or(bound);
                let report = incomparability_refute(
                    &self.rels[left],
                    &self.rels[right],
                    bound,
                    image_bound,
                    &format!("{left} vs {right}"),
                )?;
                self.report_artifact(seq, &label, &slug, &report);
            }
            Command::Chain {
                func_f,
                func_g,
                start,
                len,
            } => {
                let chain = build_chain(&self.fns[func_f], &self.fns[func_g], *start, *len);
                let mut csv = String::from("index,value\n");
                for (i, v) in chain.iter().enumerate() {
                    let _ = writeln!(csv, "{i},{v}");
                }
                let file = format!("{seq:02}-{slug}.csv");
                self.artifacts.push(Artifact {
                    filename: file.clone(),
                    bytes: csv.into_bytes(),
                });
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): {} elements from {start}, last {} -> {file}",
                    chain.len(),
                    chain.last().expect("chain is never empty")
                );
            }
            Command::CollapseMap { func, rel, opts } => {
                let bound = self.bound_of(opts);
                let h = collapse_map(&self.fns[func], &self.rels[rel], bound)?;
                let mut range: Vec<u64> = (0..=bound).map(|x| h.eval(x)).collect();
                range.sort_unstable();
                range.dedup();
                let file = self.text_artifact(
                    seq,
                    &slug,
                    format!("{label} on [0, {bound}]\nfn = {h}\nrange size: {}\n", range.len()),
                );
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): range size {} -> {file}",
                    range.len()
                );
            }
            Command::WitnessMap { func, rel, opts } => {
                let bound = self.bound_of(opts);
                let g = witness_map(&self.fns[func], &self.enums[rel], &self.rels[rel], bound)?;
                let file = self.text_artifact(
                    seq,
                    &slug,
                    format!("{label} on [0, {bound}]\nfn = {g}\n"),
                );
                let _ = writeln!(
                    self.transcript,
                    "command {seq} ({label}): witness map built -> {file}"
                );
            }
        }
        Ok(Flow::Continue)
    }

    fn report_artifact(&mut self, seq: usize, label: &str, slug: &str, report: &AuditReport) {
        let file = format!("{seq:02}-{slug}.txt");
        self.artifacts.push(Artifact {
            filename: file.clone(),
            bytes: report.to_string().into_bytes(),
        });
        let labels: Vec<&str> = report
            .findings
            .iter()
            .map(|f| f.outcome.label())
            .collect();
        let _ = writeln!(
            self.transcript,
            "command {seq} ({label}): findings: {} -> {file}",
            labels.join(", ")
        );
        if report.has_violation_evidence() {
            self.violation = true;
        }
    }

    fn text_artifact(&mut self, seq: usize, slug: &str, content: String) -> String {
        let file = format!("{seq:02}-{slug}.txt");
        self.artifacts.push(Artifact {
            filename: file.clone(),
            bytes: content.into_bytes(),
        });
        file
    }

    fn partition_artifact(
        &mut self,
        seq: usize,
        slug: &str,
        rel: &Relation,
        bound: u64,
        format: OutputFormat,
    ) -> Result<String, Error> {
        let (ext, content) = match format {
            OutputFormat::Csv => ("csv", class_table_csv(rel, bound)?),
            OutputFormat::Dot => ("dot", dot_graph(rel, bound)?),
            OutputFormat::Text => ("txt", classes_text(rel, bound)?),
        };
        let file = format!("{seq:02}-{slug}.{ext}");
        self.artifacts.push(Artifact {
            filename: file.clone(),
            bytes: content.into_bytes(),
        });
        Ok(file)
    }
}

fn describe_search(verdict: &Verdict, bound: u64) -> String {
    match verdict {
        Verdict::Witness(f) => format!("witness: {f}"),
        Verdict::NoWitness { bound: b, pigeonhole } => {
            format!("no witness on [0, {b}]; {}", describe_pigeonhole(pigeonhole))
        }
        other => format!("unexpected verdict on [0, {bound}]: {other:?}"),
    }
}

fn describe_pigeonhole(ph: &Option<Pigeonhole>) -> String {
    match ph {
        None => "no certificate".to_string(),
        Some(p) => {
            let total = match p.target_class_total {
                Some(t) => format!("target total {t}"),
                None => "target total unknown".to_string(),
            };
            let strength = if p.is_conclusive() {
                "conclusive"
            } else {
                "bound-relative"
            };
            format!(
                "pigeonhole: {} source classes vs {} target classes ({total}; {strength})",
                p.source_classes, p.target_classes
            )
        }
    }
}

/// Class table with the pinned schema `element,representative,class_size_on_window`.
fn class_table_csv(rel: &Relation, bound: u64) -> Result<String, Error> {
    let mut out = String::from("element,representative,class_size_on_window\n");
    for x in 0..=bound {
        let rep = rel.rep(x)?;
        let size = rel.class_of(x, bound)?.len();
        let _ = writeln!(out, "{x},{rep},{size}");
    }
    Ok(out)
}

/// Undirected graph: one node per window element, one edge per merge.
fn dot_graph(rel: &Relation, bound: u64) -> Result<String, Error> {
    let mut out = String::from("graph classes {\n");
    for x in 0..=bound {
        let _ = writeln!(out, "  {x};");
    }
    for x in 0..=bound {
        let rep = rel.rep(x)?;
        if rep != x {
            let _ = writeln!(out, "  {x} -- {rep};");
        }
    }
    out.push_str("}\n");
    Ok(out)
}

/// Human-readable class listing, one class per line.
fn classes_text(rel: &Relation, bound: u64) -> Result<String, Error> {
    let mut out = format!("classes on [0, {bound}]:\n");
    for class in rel.classes(bound)? {
        let members: Vec<String> = class.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "  {{{}}}", members.join(", "));
    }
    Ok(out)
}
