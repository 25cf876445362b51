//! Error type shared across the crate.
//!
//! Every operation that consults a relation outside its decided window, or
//! that is handed structurally invalid input, reports one of these variants
//! instead of guessing. Window errors are deliberately first-class: all
//! claims made by this crate are relative to a finite window, and asking
//! past the window is a contract violation, not a recoverable "unknown".

use crate::construction::Variant;

/// Errors produced by relation queries, closures, reductions, constructions
/// and audits.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A query touched an element beyond the window on which the relation
    /// is decided.
    #[error("element {value} is beyond the decided window [0, {bound}]")]
    UndecidedWindow { value: u64, bound: u64 },

    /// A modulus of zero was supplied where a positive one is required.
    #[error("modulus must be at least 1")]
    InvalidModulus,

    /// A merge pair mentions an element outside the working window.
    #[error("merge pair ({x}, {y}) lies outside the window [0, {bound}]")]
    OutOfWindow { x: u64, y: u64, bound: u64 },

    /// An explicitly requested merge index cannot be realized because the
    /// window does not expose enough class representatives.
    #[error(
        "merge index {index} needs representative a_{needed} but only \
         {rep_count} representatives exist on [0, {bound}]"
    )]
    MergeIndexOutOfWindow {
        index: u64,
        needed: u64,
        rep_count: usize,
        bound: u64,
    },

    /// Stage marks of an enumeration are not a monotone cut sequence
    /// ending at the pair count.
    #[error("stage marks must be non-decreasing and end at the pair count")]
    InvalidStageMarks,

    /// A residue rule or residue tail lists the wrong number of values.
    #[error("residue rule over modulus {modulus} needs exactly {modulus} values, got {got}")]
    ResidueArity { modulus: u64, got: usize },

    /// A witness map was requested but some class on the window is missed
    /// by the range of the candidate function.
    #[error("class of representative {missed_rep} is disjoint from the function's range")]
    Coverage { missed_rep: u64 },

    /// A construction builder was invoked on a spec for a different variant.
    #[error("construction spec is for variant {found}, builder expects {expected}")]
    VariantMismatch { expected: Variant, found: Variant },

    /// The second oracle set is required by the requested construction
    /// but was not supplied.
    #[error("construction variant requires a second oracle set")]
    MissingOracle,
}
