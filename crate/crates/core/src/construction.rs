//! Closure-based constructions over a base relation and oracle index sets.
//!
//! All three builders follow the same recipe: list the least
//! representatives `a_0 < a_1 < …` of the base relation on the window,
//! pick merge pairs among them as directed by the oracle sets, and close.
//!
//! * `thm21-e` merges `a_{2j}` with `a_{2j+1}` for every index `j` in the
//!   oracle set.
//! * `thm21-f` merges the same pairs for every realizable index *not* in
//!   the oracle set.
//! * `prop31` chains all even-position representatives `a_{2i}` with
//!   `i` in the first oracle set into one block, and all odd-position
//!   representatives `a_{2i+1}` with `i` in the second set into another.
//!
//! Merges are realizable only while both representatives exist on the
//! window. Individually listed oracle members that do not fit are an
//! error — the caller asked for them by name. Residue rules and
//! complements extend past any window by nature; those are truncated and
//! the truncation is recorded in the merge log.

use std::fmt;

use crate::closure::{close, MergeSpec};
use crate::enumeration::Enumeration;
use crate::error::Error;
use crate::oracle::OracleSet;
use crate::relation::Relation;

/// Which construction a [`ConstructionSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Thm21E,
    Thm21F,
    Prop31,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::Thm21E => "thm21-e",
            Variant::Thm21F => "thm21-f",
            Variant::Prop31 => "prop31",
        };
        f.write_str(s)
    }
}

/// Inputs to a construction: the base relation, the enumeration behind it
/// (empty for rule-given bases), and the oracle index sets.
#[derive(Debug, Clone)]
pub struct ConstructionSpec {
    pub base: Relation,
    pub base_enum: Enumeration,
    pub oracle_b: OracleSet,
    pub oracle_c: Option<OracleSet>,
    pub variant: Variant,
}

impl ConstructionSpec {
    /// Spec over a rule-given base relation (no backing enumeration).
    pub fn from_relation(
        variant: Variant,
        base: Relation,
        oracle_b: OracleSet,
        oracle_c: Option<OracleSet>,
    ) -> Self {
        ConstructionSpec {
            base,
            base_enum: Enumeration::empty(),
            oracle_b,
            oracle_c,
            variant,
        }
    }

    /// Spec over a base given by a pair enumeration; the base relation is
    /// its closure.
    pub fn from_enumeration(
        variant: Variant,
        base_enum: Enumeration,
        oracle_b: OracleSet,
        oracle_c: Option<OracleSet>,
    ) -> Self {
        let base = Relation::from_enumeration(&base_enum);
        ConstructionSpec {
            base,
            base_enum,
            oracle_b,
            oracle_c,
            variant,
        }
    }
}

/// Which merge family a record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeFamily {
    /// `(a_{2j}, a_{2j+1})` pairing of the thm21 builders.
    Pairing,
    /// Chaining of even-position representatives (first oracle set).
    EvenBlock,
    /// Chaining of odd-position representatives (second oracle set).
    OddBlock,
}

/// One merge actually applied by a builder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeRecord {
    pub family: MergeFamily,
    /// Oracle index that triggered the merge.
    pub index: u64,
    /// The two representatives identified.
    pub pair: (u64, u64),
}

impl fmt::Display for MergeRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self.family {
            MergeFamily::Pairing => "pair j",
            MergeFamily::EvenBlock => "even-block i",
            MergeFamily::OddBlock => "odd-block i",
        };
        write!(f, "{label}={}: ({}, {})", self.index, self.pair.0, self.pair.1)
    }
}

/// What a builder did: every merge applied, plus whether the requested
/// merge families kept going past the realizable index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeLog {
    pub variant: Variant,
    pub bound: u64,
    /// Representatives of the base relation on the window.
    pub rep_count: usize,
    pub applied: Vec<MergeRecord>,
    /// True when a residue rule or a complement reaches indices the
    /// window cannot realize; those merges were dropped.
    pub truncated: bool,
}

impl fmt::Display for MergeLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "construction {} on [0, {}]", self.variant, self.bound)?;
        writeln!(f, "base representatives on window: {}", self.rep_count)?;
        writeln!(f, "applied merges: {}", self.applied.len())?;
        for rec in &self.applied {
            writeln!(f, "  {rec}")?;
        }
        if self.truncated {
            writeln!(
                f,
                "truncation: requested merges extend beyond the realizable index range"
            )
        } else {
            writeln!(f, "truncation: none")
        }
    }
}

/// A built relation together with its merge log.
#[derive(Debug, Clone)]
pub struct ConstructionOutput {
    pub relation: Relation,
    pub log: MergeLog,
}

fn expect_variant(spec: &ConstructionSpec, expected: Variant) -> Result<(), Error> {
    if spec.variant != expected {
        Err(Error::VariantMismatch {
            expected,
            found: spec.variant,
        })
    } else {
        Ok(())
    }
}

/// Shared body of the two pairing builders; `complement` selects whether
/// indices in the oracle set or outside it trigger merges.
fn build_pairing(
    spec: &ConstructionSpec,
    bound: u64,
    complement: bool,
) -> Result<ConstructionOutput, Error> {
    let reps = spec.base.least_representatives(bound)?;
    let m = reps.len() as u64;
    // Index j is realizable iff a_{2j+1} exists on the window: 2j+1 < m.
    let j_limit = m / 2;
    if !complement {
        for j in spec.oracle_b.explicit_members() {
            if j >= j_limit {
                return Err(Error::MergeIndexOutOfWindow {
                    index: j,
                    needed: 2 * j + 1,
                    rep_count: reps.len(),
                    bound,
                });
            }
        }
    }
    let mut applied = Vec::new();
    for j in 0..j_limit {
        if spec.oracle_b.contains(j) != complement {
            let pair = (reps[(2 * j) as usize], reps[(2 * j + 1) as usize]);
            applied.push(MergeRecord {
                family: MergeFamily::Pairing,
                index: j,
                pair,
            });
        }
    }
    let truncated = if complement {
        spec.oracle_b.complement_has_member_at_or_above(j_limit)
    } else {
        spec.oracle_b.has_member_at_or_above(j_limit)
    };
    let pairs: Vec<(u64, u64)> = applied.iter().map(|r| r.pair).collect();
    let relation = close(&MergeSpec::new(spec.base.clone(), pairs)?, bound)?;
    Ok(ConstructionOutput {
        relation,
        log: MergeLog {
            variant: spec.variant,
            bound,
            rep_count: reps.len(),
            applied,
            truncated,
        },
    })
}

/// Merge `a_{2j}` with `a_{2j+1}` for every oracle index `j`, then close.
/// Every class of the result is one base-class or the union of exactly two.
pub fn build_thm21_e(spec: &ConstructionSpec, bound: u64) -> Result<ConstructionOutput, Error> {
    expect_variant(spec, Variant::Thm21E)?;
    build_pairing(spec, bound, false)
}

/// Merge `a_{2j}` with `a_{2j+1}` for every realizable index `j` *not* in
/// the oracle set, then close. The complemented index family always
/// reaches past the window unless the oracle rule covers every natural,
/// so the log usually records truncation.
pub fn build_thm21_f(spec: &ConstructionSpec, bound: u64) -> Result<ConstructionOutput, Error> {
    expect_variant(spec, Variant::Thm21F)?;
    build_pairing(spec, bound, true)
}

/// Chain the even-position representatives selected by the first oracle
/// set into one block and the odd-position representatives selected by
/// the second set into another, then close.
pub fn build_prop31(spec: &ConstructionSpec, bound: u64) -> Result<ConstructionOutput, Error> {
    expect_variant(spec, Variant::Prop31)?;
    let oracle_c = spec.oracle_c.as_ref().ok_or(Error::MissingOracle)?;
    let reps = spec.base.least_representatives(bound)?;
    let m = reps.len() as u64;
    // Index i is realizable iff a_{2i} (even family) or a_{2i+1} (odd
    // family) exists on the window.
    let even_limit = m.div_ceil(2); // 2i < m
    let odd_limit = m / 2; // 2i+1 < m
    for i in spec.oracle_b.explicit_members() {
        if i >= even_limit {
            return Err(Error::MergeIndexOutOfWindow {
                index: i,
                needed: 2 * i,
                rep_count: reps.len(),
                bound,
            });
        }
    }
    for i in oracle_c.explicit_members() {
        if i >= odd_limit {
            return Err(Error::MergeIndexOutOfWindow {
                index: i,
                needed: 2 * i + 1,
                rep_count: reps.len(),
                bound,
            });
        }
    }
    let mut applied = Vec::new();
    let b_members: Vec<u64> = (0..even_limit).filter(|&i| spec.oracle_b.contains(i)).collect();
    for w in b_members.windows(2) {
        applied.push(MergeRecord {
            family: MergeFamily::EvenBlock,
            index: w[1],
            pair: (reps[(2 * w[0]) as usize], reps[(2 * w[1]) as usize]),
        });
    }
    let c_members: Vec<u64> = (0..odd_limit).filter(|&i| oracle_c.contains(i)).collect();
    for w in c_members.windows(2) {
        applied.push(MergeRecord {
            family: MergeFamily::OddBlock,
            index: w[1],
            pair: (reps[(2 * w[0] + 1) as usize], reps[(2 * w[1] + 1) as usize]),
        });
    }
    let truncated = spec.oracle_b.has_member_at_or_above(even_limit)
        || oracle_c.has_member_at_or_above(odd_limit);
    let pairs: Vec<(u64, u64)> = applied.iter().map(|r| r.pair).collect();
    let relation = close(&MergeSpec::new(spec.base.clone(), pairs)?, bound)?;
    Ok(ConstructionOutput {
        relation,
        log: MergeLog {
            variant: spec.variant,
            bound,
            rep_count: reps.len(),
            applied,
            truncated,
        },
    })
}

/// Decide membership in the prop31 relation directly from closed-form
/// conditions, without building anything. Writing `g(x)` for the position
/// of `x`'s base-class among the window representatives, `x ~ y` holds iff
///
/// (a) `g(x) = g(y)`, or
/// (b) both `g` values are odd and both halves `⌊g/2⌋` lie in the second
///     oracle set, or
/// (c) both `g` values are even and both halves lie in the first set.
///
/// Agrees pointwise with [`build_prop31`] on the window.
pub fn prop31_membership(
    spec: &ConstructionSpec,
    x: u64,
    y: u64,
    bound: u64,
) -> Result<bool, Error> {
    expect_variant(spec, Variant::Prop31)?;
    let oracle_c = spec.oracle_c.as_ref().ok_or(Error::MissingOracle)?;
    let reps = spec.base.least_representatives(bound)?;
    for v in [x, y] {
        if v > bound {
            return Err(Error::UndecidedWindow { value: v, bound });
        }
    }
    let g = |v: u64| -> Result<u64, Error> {
        let r = spec.base.rep(v)?;
        Ok(reps.binary_search(&r).expect("representative is listed") as u64)
    };
    let gx = g(x)?;
    let gy = g(y)?;
    if gx == gy {
        return Ok(true); // (a)
    }
    if gx % 2 == 1 && gy % 2 == 1 && oracle_c.contains(gx / 2) && oracle_c.contains(gy / 2) {
        return Ok(true); // (b)
    }
    if gx % 2 == 0 && gy % 2 == 0 && spec.oracle_b.contains(gx / 2) && spec.oracle_b.contains(gy / 2)
    {
        return Ok(true); // (c)
    }
    Ok(false)
}

/// For each class of `built` on the window (by least representative),
/// count how many `base`-classes it is a union of. Used to check the
/// class-shape claims of the builders.
pub fn base_classes_per_class(
    base: &Relation,
    built: &Relation,
    bound: u64,
) -> Result<Vec<usize>, Error> {
    let mut counts = Vec::new();
    for class in built.classes(bound)? {
        let mut base_reps: Vec<u64> = class.iter().map(|&x| base.rep(x)).collect::<Result<_, _>>()?;
        base_reps.sort_unstable();
        base_reps.dedup();
        counts.push(base_reps.len());
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::close_oracle;

    fn id_spec(variant: Variant, b: OracleSet, c: Option<OracleSet>) -> ConstructionSpec {
        ConstructionSpec::from_relation(variant, Relation::id(), b, c)
    }

    /// Re-derive the expected relation through the fixpoint oracle using
    /// the merge pairs the builder reported, and check agreement.
    fn assert_matches_oracle(spec: &ConstructionSpec, out: &ConstructionOutput, bound: u64) {
        let pairs: Vec<(u64, u64)> = out.log.applied.iter().map(|r| r.pair).collect();
        let merge = MergeSpec::new(spec.base.clone(), pairs).unwrap();
        let oracle = close_oracle(&merge, bound).unwrap();
        assert!(out.relation.agrees_on(&oracle, bound).unwrap());
    }

    #[test]
    fn e_merges_adjacent_pairs_at_oracle_indices() {
        let spec = id_spec(Variant::Thm21E, OracleSet::explicit([0, 2]), None);
        let out = build_thm21_e(&spec, 6).unwrap();
        assert_eq!(
            out.relation.classes(6).unwrap(),
            vec![vec![0, 1], vec![2], vec![3], vec![4, 5], vec![6]]
        );
        assert_eq!(out.log.applied.len(), 2);
        assert_eq!(out.log.applied[0].pair, (0, 1));
        assert_eq!(out.log.applied[1].pair, (4, 5));
        assert!(!out.log.truncated);
        assert_matches_oracle(&spec, &out, 6);
    }

    #[test]
    fn e_with_empty_oracle_is_the_base() {
        let spec = id_spec(Variant::Thm21E, OracleSet::empty(), None);
        let out = build_thm21_e(&spec, 6).unwrap();
        assert!(out.relation.agrees_on(&Relation::id(), 6).unwrap());
        assert!(out.log.applied.is_empty());
    }

    #[test]
    fn e_pairs_representatives_not_raw_elements() {
        // Base identifies 0 and 5, so its representatives on [0,7] are
        // 0,1,2,3,4,6,7 and index 0 pairs a_0=0 with a_1=1.
        let base = close(
            &MergeSpec::new(Relation::id(), vec![(0, 5)]).unwrap(),
            7,
        )
        .unwrap();
        let spec =
            ConstructionSpec::from_relation(Variant::Thm21E, base, OracleSet::explicit([0]), None);
        let out = build_thm21_e(&spec, 7).unwrap();
        assert_eq!(out.relation.class_of(0, 7).unwrap(), vec![0, 1, 5]);
        assert_eq!(out.log.rep_count, 7);
        assert_matches_oracle(&spec, &out, 7);
    }

    #[test]
    fn f_merges_the_complement_of_the_oracle() {
        // On [0,6] the identity has 7 representatives, so indices {0,1,2}
        // are realizable; the complement of {0,2} there is {1}.
        let spec = id_spec(Variant::Thm21F, OracleSet::explicit([0, 2]), None);
        let out = build_thm21_f(&spec, 6).unwrap();
        assert_eq!(out.log.applied.len(), 1);
        assert_eq!(out.log.applied[0].index, 1);
        assert_eq!(out.log.applied[0].pair, (2, 3));
        assert_eq!(out.relation.class_of(2, 6).unwrap(), vec![2, 3]);
        // The complement is infinite, so truncation is inherent.
        assert!(out.log.truncated);
        assert_matches_oracle(&spec, &out, 6);

        // One element more exposes index 3 as well: j ∉ {0,2} now means
        // j ∈ {1,3}, merging (2,3) and (6,7).
        let out7 = build_thm21_f(&spec, 7).unwrap();
        assert_eq!(
            out7.log.applied.iter().map(|r| r.pair).collect::<Vec<_>>(),
            vec![(2, 3), (6, 7)]
        );
    }

    #[test]
    fn f_with_a_full_oracle_is_the_base() {
        let all = OracleSet::residues(1, [0]).unwrap();
        let spec = id_spec(Variant::Thm21F, all, None);
        let out = build_thm21_f(&spec, 6).unwrap();
        assert!(out.relation.agrees_on(&Relation::id(), 6).unwrap());
        assert!(out.log.applied.is_empty());
        assert!(!out.log.truncated);
    }

    #[test]
    fn f_with_an_empty_oracle_pairs_everything() {
        let spec = id_spec(Variant::Thm21F, OracleSet::empty(), None);
        let out = build_thm21_f(&spec, 5).unwrap();
        assert_eq!(
            out.relation.classes(5).unwrap(),
            vec![vec![0, 1], vec![2, 3], vec![4, 5]]
        );
        assert_matches_oracle(&spec, &out, 5);
    }

    #[test]
    fn prop31_chains_even_and_odd_blocks() {
        let spec = id_spec(
            Variant::Prop31,
            OracleSet::explicit([0, 1]),
            Some(OracleSet::explicit([0, 1])),
        );
        let out = build_prop31(&spec, 7).unwrap();
        assert_eq!(
            out.relation.classes(7).unwrap(),
            vec![vec![0, 2], vec![1, 3], vec![4], vec![5], vec![6], vec![7]]
        );
        assert_eq!(out.log.applied.len(), 2);
        assert_eq!(out.log.applied[0].family, MergeFamily::EvenBlock);
        assert_eq!(out.log.applied[0].pair, (0, 2));
        assert_eq!(out.log.applied[1].family, MergeFamily::OddBlock);
        assert_eq!(out.log.applied[1].pair, (1, 3));
        assert!(!out.log.truncated);
        assert_matches_oracle(&spec, &out, 7);
    }

    #[test]
    fn prop31_with_empty_oracles_is_the_base() {
        let spec = id_spec(Variant::Prop31, OracleSet::empty(), Some(OracleSet::empty()));
        let out = build_prop31(&spec, 5).unwrap();
        assert!(out.relation.agrees_on(&Relation::id(), 5).unwrap());
    }

    #[test]
    fn prop31_even_block_only() {
        let spec = id_spec(
            Variant::Prop31,
            OracleSet::explicit([0, 1, 2]),
            Some(OracleSet::empty()),
        );
        let out = build_prop31(&spec, 8).unwrap();
        assert_eq!(out.relation.class_of(0, 8).unwrap(), vec![0, 2, 4]);
        assert_eq!(out.relation.class_count(8).unwrap(), 7); // {0,2,4} + 6 singletons
        assert_matches_oracle(&spec, &out, 8);
    }

    #[test]
    fn membership_condition_c_relates_even_positions() {
        let spec = id_spec(
            Variant::Prop31,
            OracleSet::explicit([0, 1]),
            Some(OracleSet::empty()),
        );
        assert!(prop31_membership(&spec, 0, 2, 8).unwrap());
        assert!(!prop31_membership(&spec, 0, 4, 8).unwrap()); // 2 ∉ B
        assert!(!prop31_membership(&spec, 0, 1, 8).unwrap()); // parities differ
    }

    #[test]
    fn membership_condition_a_is_reflexive_on_classes() {
        let spec = id_spec(Variant::Prop31, OracleSet::empty(), Some(OracleSet::empty()));
        for x in 0..=8 {
            assert!(prop31_membership(&spec, x, x, 8).unwrap());
        }
    }

    #[test]
    fn membership_condition_b_relates_odd_positions() {
        let spec = id_spec(
            Variant::Prop31,
            OracleSet::empty(),
            Some(OracleSet::explicit([0, 1])),
        );
        assert!(prop31_membership(&spec, 1, 3, 8).unwrap());
        assert!(!prop31_membership(&spec, 1, 5, 8).unwrap()); // 2 ∉ C
    }

    #[test]
    fn membership_agrees_with_the_builder_on_an_example() {
        let spec = id_spec(
            Variant::Prop31,
            OracleSet::explicit([0, 2]),
            Some(OracleSet::residues(2, [1]).unwrap()),
        );
        let out = build_prop31(&spec, 9).unwrap();
        for x in 0..=9 {
            for y in 0..=9 {
                assert_eq!(
                    prop31_membership(&spec, x, y, 9).unwrap(),
                    out.relation.holds(x, y).unwrap(),
                    "disagreement at ({x}, {y})"
                );
            }
        }
    }

    #[test]
    fn explicit_members_beyond_the_window_are_errors() {
        let spec = id_spec(Variant::Thm21E, OracleSet::explicit([5]), None);
        // On [0,6] only indices 0..3 are realizable; 5 was asked for by name.
        assert_eq!(
            build_thm21_e(&spec, 6).unwrap_err(),
            Error::MergeIndexOutOfWindow {
                index: 5,
                needed: 11,
                rep_count: 7,
                bound: 6
            }
        );

        let spec = id_spec(
            Variant::Prop31,
            OracleSet::empty(),
            Some(OracleSet::explicit([4])),
        );
        assert_eq!(
            build_prop31(&spec, 6).unwrap_err(),
            Error::MergeIndexOutOfWindow {
                index: 4,
                needed: 9,
                rep_count: 7,
                bound: 6
            }
        );
    }

    #[test]
    fn residue_rules_truncate_instead_of_erroring() {
        let spec = id_spec(Variant::Thm21E, OracleSet::residues(2, [0]).unwrap(), None);
        let out = build_thm21_e(&spec, 6).unwrap();
        // Realizable indices 0..3; rule selects {0, 2}.
        assert_eq!(
            out.log.applied.iter().map(|r| r.index).collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert!(out.log.truncated);
    }

    #[test]
    fn builders_reject_mismatched_variants() {
        let spec = id_spec(Variant::Prop31, OracleSet::empty(), Some(OracleSet::empty()));
        assert_eq!(
            build_thm21_e(&spec, 5).unwrap_err(),
            Error::VariantMismatch {
                expected: Variant::Thm21E,
                found: Variant::Prop31
            }
        );
    }

    #[test]
    fn prop31_requires_the_second_oracle() {
        let spec = id_spec(Variant::Prop31, OracleSet::empty(), None);
        assert_eq!(build_prop31(&spec, 5).unwrap_err(), Error::MissingOracle);
        assert_eq!(
            prop31_membership(&spec, 0, 0, 5).unwrap_err(),
            Error::MissingOracle
        );
    }

    #[test]
    fn class_shape_counts_base_classes() {
        let spec = id_spec(Variant::Thm21E, OracleSet::explicit([0, 2]), None);
        let out = build_thm21_e(&spec, 6).unwrap();
        let counts = base_classes_per_class(&Relation::id(), &out.relation, 6).unwrap();
        assert_eq!(counts, vec![2, 1, 1, 2, 1]);
    }

    #[test]
    fn merge_log_renders_as_text() {
        let spec = id_spec(Variant::Thm21E, OracleSet::explicit([0]), None);
        let out = build_thm21_e(&spec, 4).unwrap();
        let text = out.log.to_string();
        assert!(text.contains("construction thm21-e on [0, 4]"));
        assert!(text.contains("pair j=0: (0, 1)"));
        assert!(text.contains("truncation: none"));
    }
}
