//! Document language and execution engine behind the `eqred` binary.
//!
//! A relation-spec document declares relations, oracle sets, and total
//! functions, then runs commands against them: class listings, closures,
//! oracle-driven constructions, reduction search and verification, audit
//! heuristics, and function synthesis. The full grammar is documented on
//! [`parser`]; the canonical serializer lives with the document model in
//! [`document`]; execution, exit codes, and artifact formats live in
//! [`engine`].

pub mod document;
pub mod engine;
pub mod parser;
pub mod token;

pub use document::{
    Command, CommandOpts, Declaration, Item, OutputFormat, RelExpr, SetExpr, SpecDocument,
};
pub use engine::{run, Artifact, RunOutcome};
pub use parser::parse_spec;
pub use token::ParseError;
