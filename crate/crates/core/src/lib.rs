//! Desk-scale workbench for equivalence relations on the naturals under
//! computable reducibility.
//!
//! The crate works with *windowed* relations: every relation knows the
//! initial segment `[0, window_bound]` on which it is decided, and every
//! derived claim — class tables, closure results, reduction verdicts,
//! audit findings — is relative to an explicitly stated bound inside that
//! window. Queries past the window are errors, not guesses, and the few
//! genuinely global statements (pigeonhole refutations with a complete
//! target inventory, exact function composition) say so explicitly.
//!
//! Module map:
//! * [`relation`] — relations, classes, least representatives; with
//!   [`partition`], [`enumeration`] and [`oracle`] as its building blocks.
//! * [`closure`] — least equivalence closure of a base plus merge pairs,
//!   twice: the union-find engine and an independent brute-force oracle.
//! * [`reduction`] — candidate reductions as table+tail functions;
//!   verification, search, composition, collapse and witness maps, chains.
//! * [`construction`] — the `thm21-e` / `thm21-f` / `prop31` builders over
//!   a base relation and oracle index sets.
//! * [`audit`] — bounded evidence reports: minimality coverage, darkness
//!   fragments, incomparability searches.

pub mod audit;
pub mod closure;
pub mod construction;
pub mod enumeration;
pub mod error;
pub mod oracle;
pub mod partition;
pub mod reduction;
pub mod relation;

pub use audit::{
    darkness_evidence, incomparability_refute, minimality_criterion, AuditReport, Finding,
    Outcome,
};
pub use closure::{close, close_oracle, MergeSpec};
pub use construction::{
    base_classes_per_class, build_prop31, build_thm21_e, build_thm21_f, prop31_membership,
    ConstructionOutput, ConstructionSpec, MergeFamily, MergeLog, MergeRecord, Variant,
};
pub use enumeration::Enumeration;
pub use error::Error;
pub use oracle::{OracleSet, ResidueRule};
pub use partition::Partition;
pub use reduction::{
    build_chain, class_image_check, collapse_map, compose, search_reduction, verify_reduction,
    witness_map, Pigeonhole, ReductionFn, TailRule, Verdict,
};
pub use relation::{Relation, RelationKind};
