//! `eqred`: run relation-spec documents or one-off operations.
//!
//! `eqred run doc.eq` executes every command in a document. The one-off
//! subcommands (`classes`, `reduce`, …) take declarations from a
//! `--spec` file and run a single command against them; they accept the
//! same names and flags as the document language. Artifacts go to
//! `--out`, the `EQRED_OUT` environment variable, or the current
//! directory, in that order.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eqred_cli::engine::{EXIT_INTERNAL, EXIT_PARSE};
use eqred_cli::{engine, parse_spec, OutputFormat, RunOutcome, SpecDocument};

#[derive(Parser)]
#[command(
    name = "eqred",
    version,
    about = "Workbench for equivalence relations on an initial segment of the naturals",
    after_help = "Exit codes: 0 ok; 1 parse/validation error; 2 usage error; \
                  3 assertion refuted; 4 window or domain error; \
                  5 audit violation evidence; 6 internal error."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Csv,
    Dot,
    Text,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Dot => OutputFormat::Dot,
            FormatArg::Text => OutputFormat::Text,
        }
    }
}

/// Options shared by every subcommand that executes something.
#[derive(Args)]
struct ExecArgs {
    /// File with the declarations the command refers to (no commands).
    #[arg(long)]
    spec: PathBuf,
    /// Directory for artifacts (default: $EQRED_OUT, then '.').
    #[arg(long)]
    out: Option<PathBuf>,
    /// Window bound for the command (falls back to the file's default bound).
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a document without running it.
    Parse {
        file: PathBuf,
        /// Print the canonical form of the document.
        #[arg(long)]
        emit: bool,
    },
    /// Execute every command in a document and write its artifacts.
    Run {
        file: PathBuf,
        /// Directory for artifacts (default: $EQRED_OUT, then '.').
        #[arg(long)]
        out: Option<PathBuf>,
        /// Default output format for partition artifacts.
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// List the classes of a declared relation.
    Classes {
        rel: String,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Close a declared relation over extra pairs, e.g. --with "[(0, 1)]".
    Closure {
        rel: String,
        #[arg(long = "with")]
        with_pairs: String,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Build a construction over a declared base and oracle set(s).
    Construct {
        /// thm21-e, thm21-f, or prop31
        variant: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        oracle: String,
        #[arg(long = "oracle-c")]
        oracle_c: Option<String>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Verify, search for, or assert reductions between declared relations.
    Reduce {
        #[command(subcommand)]
        which: ReduceCmd,
    },
    /// Run audit heuristics against declared relations.
    Audit {
        #[command(subcommand)]
        which: AuditCmd,
    },
    /// Iterate a_{i+1} = g(f(a_i)) and emit the chain as CSV.
    Chain {
        func_f: String,
        func_g: String,
        #[arg(long)]
        start: u64,
        #[arg(long)]
        len: u64,
        /// File with the declarations the command refers to (no commands).
        #[arg(long)]
        spec: PathBuf,
        /// Directory for artifacts (default: $EQRED_OUT, then '.').
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the class-collapse function h with h(x) ~ f(x).
    CollapseMap {
        func: String,
        rel: String,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Build the inverse-witness function g with f(g(x)) ~ x.
    WitnessMap {
        func: String,
        rel: String,
        #[command(flatten)]
        exec: ExecArgs,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Verify a declared function as a reduction.
    Check {
        func: String,
        source: String,
        target: String,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Search for the least class-respecting map.
    Search {
        source: String,
        target: String,
        #[arg(long = "image-bound")]
        image_bound: Option<u64>,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Like search, but a refutation stops with exit code 3.
    Assert {
        source: String,
        target: String,
        #[arg(long = "image-bound")]
        image_bound: Option<u64>,
        #[command(flatten)]
        exec: ExecArgs,
    },
}

#[derive(Subcommand)]
enum AuditCmd {
    /// Check how many classes a declared witness set hits.
    Minimality {
        rel: String,
        witness_set: String,
        #[arg(long)]
        threshold: Option<u64>,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Collect darkness evidence from candidate functions, e.g. --with "f, g".
    Darkness {
        rel: String,
        #[arg(long = "with")]
        with_funcs: String,
        #[command(flatten)]
        exec: ExecArgs,
    },
    /// Try reductions both ways between two declared relations.
    Incomparability {
        left: String,
        right: String,
        #[arg(long = "image-bound")]
        image_bound: Option<u64>,
        #[command(flatten)]
        exec: ExecArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Parse { file, emit } => cmd_parse(&file, emit),
        Cmd::Run { file, out, format } => cmd_run(&file, out, format.into()),
        Cmd::Classes { rel, format, exec } => one_off(
            &exec,
            format!("classes {rel}{}{}", bound_flag(&exec), format_flag(format)),
        ),
        Cmd::Closure {
            rel,
            with_pairs,
            format,
            exec,
        } => one_off(
            &exec,
            format!(
                "closure {rel} with {with_pairs}{}{}",
                bound_flag(&exec),
                format_flag(format)
            ),
        ),
        Cmd::Construct {
            variant,
            base,
            oracle,
            oracle_c,
            format,
            exec,
        } => {
            let c = oracle_c
                .map(|c| format!(" --oracle-c {c}"))
                .unwrap_or_default();
            one_off(
                &exec,
                format!(
                    "construct {variant} --base {base} --oracle {oracle}{c}{}{}",
                    bound_flag(&exec),
                    format_flag(format)
                ),
            )
        }
        Cmd::Reduce { which } => match which {
            ReduceCmd::Check {
                func,
                source,
                target,
                exec,
            } => one_off(
                &exec,
                format!("reduce check {func} : {source} -> {target}{}", bound_flag(&exec)),
            ),
            ReduceCmd::Search {
                source,
                target,
                image_bound,
                exec,
            } => one_off(
                &exec,
                format!(
                    "reduce search {source} -> {target}{}{}",
                    bound_flag(&exec),
                    num_flag("image-bound", image_bound)
                ),
            ),
            ReduceCmd::Assert {
                source,
                target,
                image_bound,
                exec,
            } => one_off(
                &exec,
                format!(
                    "reduce assert {source} -> {target}{}{}",
                    bound_flag(&exec),
                    num_flag("image-bound", image_bound)
                ),
            ),
        },
        Cmd::Audit { which } => match which {
            AuditCmd::Minimality {
                rel,
                witness_set,
                threshold,
                exec,
            } => one_off(
                &exec,
                format!(
                    "audit minimality {rel} {witness_set}{}{}",
                    bound_flag(&exec),
                    num_flag("threshold", threshold)
                ),
            ),
            AuditCmd::Darkness {
                rel,
                with_funcs,
                exec,
            } => one_off(
                &exec,
                format!("audit darkness {rel} with {with_funcs}{}", bound_flag(&exec)),
            ),
            AuditCmd::Incomparability {
                left,
                right,
                image_bound,
                exec,
            } => one_off(
                &exec,
                format!(
                    "audit incomparability {left} {right}{}{}",
                    bound_flag(&exec),
                    num_flag("image-bound", image_bound)
                ),
            ),
        },
        Cmd::Chain {
            func_f,
            func_g,
            start,
            len,
            spec,
            out,
        } => {
            let exec = ExecArgs {
                spec,
                out,
                bound: None,
            };
            one_off(
                &exec,
                format!("chain {func_f} {func_g} --start {start} --len {len}"),
            )
        }
        Cmd::CollapseMap { func, rel, exec } => one_off(
            &exec,
            format!("collapse-map {func} {rel}{}", bound_flag(&exec)),
        ),
        Cmd::WitnessMap { func, rel, exec } => one_off(
            &exec,
            format!("witness-map {func} {rel}{}", bound_flag(&exec)),
        ),
    };
    ExitCode::from(code as u8)
}

fn bound_flag(exec: &ExecArgs) -> String {
    num_flag("bound", exec.bound)
}

fn num_flag(name: &str, value: Option<u64>) -> String {
    value.map(|v| format!(" --{name} {v}")).unwrap_or_default()
}

fn format_flag(format: Option<FormatArg>) -> String {
    format
        .map(|f| format!(" --format {}", OutputFormat::from(f)))
        .unwrap_or_default()
}

fn cmd_parse(file: &Path, emit: bool) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return EXIT_INTERNAL;
        }
    };
    match parse_spec(&text) {
        Ok(doc) => {
            if emit {
                print!("{doc}");
            } else {
                let commands = doc.commands().count();
                let declarations = doc.items.len() - commands;
                println!("ok: {declarations} declarations, {commands} commands");
            }
            0
        }
        Err(err) => {
            eprintln!("{}: {err}", file.display());
            EXIT_PARSE
        }
    }
}

fn cmd_run(file: &Path, out: Option<PathBuf>, format: OutputFormat) -> i32 {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", file.display());
            return EXIT_INTERNAL;
        }
    };
    let doc = match parse_spec(&text) {
        Ok(doc) => doc,
        Err(err) => {
            eprintln!("{}: {err}", file.display());
            return EXIT_PARSE;
        }
    };
    deliver(engine::run(&doc, format), out)
}

/// Run a single command against the declarations of a `--spec` file by
/// splicing its text into the document and reusing the parser's validation.
fn one_off(exec: &ExecArgs, command_text: String) -> i32 {
    let decls = match std::fs::read_to_string(&exec.spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("{}: {e}", exec.spec.display());
            return EXIT_INTERNAL;
        }
    };
    match parse_spec(&decls) {
        Ok(doc) if !doc.is_declarations_only() => {
            eprintln!(
                "{}: spec file contains commands; use 'eqred run' for full documents",
                exec.spec.display()
            );
            return EXIT_PARSE;
        }
        Ok(_) => {}
        Err(err) => {
            eprintln!("{}: {err}", exec.spec.display());
            return EXIT_PARSE;
        }
    }
    let full = format!("{decls}\n{command_text}\n");
    let doc: SpecDocument = match parse_spec(&full) {
        Ok(doc) => doc,
        Err(err) => {
            eprintln!("{command_text}: {err}");
            return EXIT_PARSE;
        }
    };
    deliver(engine::run(&doc, OutputFormat::Csv), exec.out.clone())
}

/// Print the transcript and write artifacts to the resolved output directory.
fn deliver(outcome: RunOutcome, out: Option<PathBuf>) -> i32 {
    print!("{}", outcome.stdout);
    let dir = out
        .or_else(|| std::env::var_os("EQRED_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    if !outcome.artifacts.is_empty() {
        if let Err(e) = std::fs::create_dir_all(&dir) {
            eprintln!("{}: {e}", dir.display());
            return EXIT_INTERNAL;
        }
    }
    for artifact in &outcome.artifacts {
        let path = dir.join(&artifact.filename);
        if let Err(e) = std::fs::write(&path, &artifact.bytes) {
            eprintln!("{}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    }
    outcome.exit
}
