//! Document model for relation-spec files, plus the canonical serializer.
//!
//! A document is an ordered list of declarations and commands. The
//! `Display` impl emits the canonical text form: one item per line, fixed
//! spacing, table keys ascending, set members sorted, flags in a fixed
//! order, comments dropped. Parsing canonical text yields a structurally
//! identical document, and serializing again reproduces the same bytes.

use std::fmt;

use eqred_core::{TailRule, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecDocument {
    pub items: Vec<Item>,
}

impl SpecDocument {
    /// The commands of the document, in order.
    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.items.iter().filter_map(|item| match item {
            Item::Command(c) => Some(c),
            Item::Declaration(_) => None,
        })
    }

    /// True when the document declares things but runs nothing.
    pub fn is_declarations_only(&self) -> bool {
        self.commands().next().is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Declaration(Declaration),
    Command(Command),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Declaration {
    Rel { name: String, expr: RelExpr },
    Set { name: String, expr: SetExpr },
    Fn { name: String, table: Vec<u64>, tail: TailRule },
    /// `default bound = N`: applies to subsequent items without their own bound.
    DefaultBound(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelExpr {
    Id,
    IdN(u64),
    Ceer {
        stages: Vec<Vec<(u64, u64)>>,
    },
    Close {
        base: String,
        pairs: Vec<(u64, u64)>,
        bound: Option<u64>,
    },
    Construct {
        variant: Variant,
        base: String,
        oracle_b: String,
        oracle_c: Option<String>,
        bound: Option<u64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    /// Finite set; stored sorted and deduplicated.
    Explicit(Vec<u64>),
    /// All numbers congruent to one of `residues` mod `modulus`; residues
    /// stored reduced, sorted, deduplicated.
    Residues { modulus: u64, residues: Vec<u64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Dot,
    Text,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutputFormat::Csv => write!(f, "csv"),
            OutputFormat::Dot => write!(f, "dot"),
            OutputFormat::Text => write!(f, "text"),
        }
    }
}

/// Optional per-command flags; `None` means "inherit or default".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CommandOpts {
    pub bound: Option<u64>,
    pub image_bound: Option<u64>,
    pub threshold: Option<u64>,
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Classes {
        rel: String,
        opts: CommandOpts,
    },
    Closure {
        rel: String,
        pairs: Vec<(u64, u64)>,
        opts: CommandOpts,
    },
    Construct {
        variant: Variant,
        base: String,
        oracle_b: String,
        oracle_c: Option<String>,
        opts: CommandOpts,
    },
    ReduceCheck {
        func: String,
        source: String,
        target: String,
        opts: CommandOpts,
    },
    ReduceSearch {
        source: String,
        target: String,
        opts: CommandOpts,
    },
    ReduceAssert {
        source: String,
        target: String,
        opts: CommandOpts,
    },
    AuditMinimality {
        rel: String,
        witness_set: String,
        opts: CommandOpts,
    },
    AuditDarkness {
        rel: String,
        candidates: Vec<String>,
        opts: CommandOpts,
    },
    AuditIncomparability {
        left: String,
        right: String,
        opts: CommandOpts,
    },
    Chain {
        func_f: String,
        func_g: String,
        start: u64,
        len: u64,
    },
    CollapseMap {
        func: String,
        rel: String,
        opts: CommandOpts,
    },
    WitnessMap {
        func: String,
        rel: String,
        opts: CommandOpts,
    },
}

impl Command {
    pub fn opts(&self) -> CommandOpts {
        match self {
            Command::Classes { opts, .. }
            | Command::Closure { opts, .. }
            | Command::Construct { opts, .. }
            | Command::ReduceCheck { opts, .. }
            | Command::ReduceSearch { opts, .. }
            | Command::ReduceAssert { opts, .. }
            | Command::AuditMinimality { opts, .. }
            | Command::AuditDarkness { opts, .. }
            | Command::AuditIncomparability { opts, .. }
            | Command::CollapseMap { opts, .. }
            | Command::WitnessMap { opts, .. } => *opts,
            Command::Chain { .. } => CommandOpts::default(),
        }
    }

    /// Short human label used in transcripts and error messages.
    pub fn label(&self) -> String {
        match self {
            Command::Classes { rel, .. } => format!("classes {rel}"),
            Command::Closure { rel, .. } => format!("closure {rel}"),
            Command::Construct { variant, base, .. } => format!("construct {variant} {base}"),
            Command::ReduceCheck {
                func,
                source,
                target,
                ..
            } => format!("reduce check {func} : {source} -> {target}"),
            Command::ReduceSearch { source, target, .. } => {
                format!("reduce search {source} -> {target}")
            }
            Command::ReduceAssert { source, target, .. } => {
                format!("reduce assert {source} -> {target}")
            }
            Command::AuditMinimality { rel, .. } => format!("audit minimality {rel}"),
            Command::AuditDarkness { rel, .. } => format!("audit darkness {rel}"),
            Command::AuditIncomparability { left, right, .. } => {
                format!("audit incomparability {left} {right}")
            }
            Command::Chain { func_f, func_g, .. } => format!("chain {func_f} {func_g}"),
            Command::CollapseMap { func, rel, .. } => format!("collapse-map {func} {rel}"),
            Command::WitnessMap { func, rel, .. } => format!("witness-map {func} {rel}"),
        }
    }

    /// Filename fragment for the command's artifacts.
    pub fn slug(&self) -> String {
        match self {
            Command::Classes { rel, .. } => format!("classes-{rel}"),
            Command::Closure { rel, .. } => format!("closure-{rel}"),
            Command::Construct { variant, base, .. } => format!("construct-{variant}-{base}"),
            Command::ReduceCheck {
                func,
                source,
                target,
                ..
            } => format!("reduce-check-{func}-{source}-{target}"),
            Command::ReduceSearch { source, target, .. } => {
                format!("reduce-search-{source}-{target}")
            }
            Command::ReduceAssert { source, target, .. } => {
                format!("reduce-assert-{source}-{target}")
            }
            Command::AuditMinimality { rel, .. } => format!("audit-minimality-{rel}"),
            Command::AuditDarkness { rel, .. } => format!("audit-darkness-{rel}"),
            Command::AuditIncomparability { left, right, .. } => {
                format!("audit-incomparability-{left}-{right}")
            }
            Command::Chain { func_f, func_g, .. } => format!("chain-{func_f}-{func_g}"),
            Command::CollapseMap { func, rel, .. } => format!("collapse-map-{func}-{rel}"),
            Command::WitnessMap { func, rel, .. } => format!("witness-map-{func}-{rel}"),
        }
    }
}

fn write_pairs(f: &mut fmt::Formatter<'_>, pairs: &[(u64, u64)]) -> fmt::Result {
    write!(f, "[")?;
    for (i, (a, b)) in pairs.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "({a}, {b})")?;
    }
    write!(f, "]")
}

fn write_members(f: &mut fmt::Formatter<'_>, members: &[u64]) -> fmt::Result {
    write!(f, "{{")?;
    for (i, m) in members.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{m}")?;
    }
    write!(f, "}}")
}

fn write_bound_suffix(f: &mut fmt::Formatter<'_>, bound: Option<u64>) -> fmt::Result {
    if let Some(b) = bound {
        write!(f, " bound {b}")?;
    }
    Ok(())
}

/// Flags in canonical order; omitted when unset.
fn write_opts(f: &mut fmt::Formatter<'_>, opts: &CommandOpts) -> fmt::Result {
    if let Some(b) = opts.bound {
        write!(f, " --bound {b}")?;
    }
    if let Some(b) = opts.image_bound {
        write!(f, " --image-bound {b}")?;
    }
    if let Some(t) = opts.threshold {
        write!(f, " --threshold {t}")?;
    }
    if let Some(fmt) = opts.format {
        write!(f, " --format {fmt}")?;
    }
    Ok(())
}

impl fmt::Display for RelExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelExpr::Id => write!(f, "id"),
            RelExpr::IdN(n) => write!(f, "idn {n}"),
            RelExpr::Ceer { stages } => {
                write!(f, "ceer {{ stages = [")?;
                for (i, stage) in stages.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write_pairs(f, stage)?;
                }
                write!(f, "] }}")
            }
            RelExpr::Close { base, pairs, bound } => {
                write!(f, "close {base} with ")?;
                write_pairs(f, pairs)?;
                write_bound_suffix(f, *bound)
            }
            RelExpr::Construct {
                variant,
                base,
                oracle_b,
                oracle_c,
                bound,
            } => {
                write!(f, "construct {variant} of {base} using {oracle_b}")?;
                if let Some(c) = oracle_c {
                    write!(f, ", {c}")?;
                }
                write_bound_suffix(f, *bound)
            }
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Explicit(members) => write_members(f, members),
            SetExpr::Residues { modulus, residues } => {
                write!(f, "residues mod {modulus} of ")?;
                write_members(f, residues)
            }
        }
    }
}

impl fmt::Display for Declaration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Declaration::Rel { name, expr } => write!(f, "rel {name} = {expr}"),
            Declaration::Set { name, expr } => write!(f, "set {name} = {expr}"),
            Declaration::Fn { name, table, tail } => {
                write!(f, "fn {name} = ")?;
                if !table.is_empty() {
                    write!(f, "table {{")?;
                    for (k, v) in table.iter().enumerate() {
                        if k > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{k}:{v}")?;
                    }
                    write!(f, "}} ")?;
                }
                write!(f, "tail {tail}")
            }
            Declaration::DefaultBound(b) => write!(f, "default bound = {b}"),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Classes { rel, opts } => {
                write!(f, "classes {rel}")?;
                write_opts(f, opts)
            }
            Command::Closure { rel, pairs, opts } => {
                write!(f, "closure {rel} with ")?;
                write_pairs(f, pairs)?;
                write_opts(f, opts)
            }
            Command::Construct {
                variant,
                base,
                oracle_b,
                oracle_c,
                opts,
            } => {
                write!(f, "construct {variant} --base {base} --oracle {oracle_b}")?;
                if let Some(c) = oracle_c {
                    write!(f, " --oracle-c {c}")?;
                }
                write_opts(f, opts)
            }
            Command::ReduceCheck {
                func,
                source,
                target,
                opts,
            } => {
                write!(f, "reduce check {func} : {source} -> {target}")?;
                write_opts(f, opts)
            }
            Command::ReduceSearch {
                source,
                target,
                opts,
            } => {
                write!(f, "reduce search {source} -> {target}")?;
                write_opts(f, opts)
            }
            Command::ReduceAssert {
                source,
                target,
                opts,
            } => {
                write!(f, "reduce assert {source} -> {target}")?;
                write_opts(f, opts)
            }
            Command::AuditMinimality {
                rel,
                witness_set,
                opts,
            } => {
                write!(f, "audit minimality {rel} {witness_set}")?;
                write_opts(f, opts)
            }
            Command::AuditDarkness {
                rel,
                candidates,
                opts,
            } => {
                write!(f, "audit darkness {rel} with ")?;
                for (i, c) in candidates.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write_opts(f, opts)
            }
            Command::AuditIncomparability { left, right, opts } => {
                write!(f, "audit incomparability {left} {right}")?;
                write_opts(f, opts)
            }
            Command::Chain {
                func_f,
                func_g,
                start,
                len,
            } => write!(f, "chain {func_f} {func_g} --start {start} --len {len}"),
            Command::CollapseMap { func, rel, opts } => {
                write!(f, "collapse-map {func} {rel}")?;
                write_opts(f, opts)
            }
            Command::WitnessMap { func, rel, opts } => {
                write!(f, "witness-map {func} {rel}")?;
                write_opts(f, opts)
            }
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Declaration(d) => d.fmt(f),
            Item::Command(c) => c.fmt(f),
        }
    }
}

impl fmt::Display for SpecDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{item}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let decl = Declaration::Rel {
            name: "E".into(),
            expr: RelExpr::Ceer {
                stages: vec![vec![(0, 5)], vec![(1, 6), (2, 7)]],
            },
        };
        assert_eq!(decl.to_string(), "rel E = ceer { stages = [[(0, 5)], [(1, 6), (2, 7)]] }");

        let f = Declaration::Fn {
            name: "f".into(),
            table: vec![1, 0],
            tail: TailRule::Identity,
        };
        assert_eq!(f.to_string(), "fn f = table {0:1, 1:0} tail identity");

        let g = Declaration::Fn {
            name: "g".into(),
            table: vec![],
            tail: TailRule::Constant(7),
        };
        assert_eq!(g.to_string(), "fn g = tail const 7");

        let s = Declaration::Set {
            name: "B".into(),
            expr: SetExpr::Residues {
                modulus: 3,
                residues: vec![1, 2],
            },
        };
        assert_eq!(s.to_string(), "set B = residues mod 3 of {1, 2}");
    }

    #[test]
    fn command_flags_in_canonical_order() {
        let cmd = Command::ReduceSearch {
            source: "R".into(),
            target: "S".into(),
            opts: CommandOpts {
                bound: Some(8),
                image_bound: Some(12),
                ..CommandOpts::default()
            },
        };
        assert_eq!(cmd.to_string(), "reduce search R -> S --bound 8 --image-bound 12");
    }

    #[test]
    fn construct_command_and_declaration_forms() {
        let cmd = Command::Construct {
            variant: Variant::Thm21F,
            base: "E".into(),
            oracle_b: "B".into(),
            oracle_c: None,
            opts: CommandOpts::default(),
        };
        assert_eq!(cmd.to_string(), "construct thm21-f --base E --oracle B");

        let decl = Declaration::Rel {
            name: "X".into(),
            expr: RelExpr::Construct {
                variant: Variant::Prop31,
                base: "E".into(),
                oracle_b: "B".into(),
                oracle_c: Some("C".into()),
                bound: Some(16),
            },
        };
        assert_eq!(decl.to_string(), "rel X = construct prop31 of E using B, C bound 16");
    }
}
