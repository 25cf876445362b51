//! Deterministic input generators shared by the benchmark targets.
//!
//! Benchmarks want inputs that are fixed across runs but not degenerate:
//! enough merges to exercise union chains, enough classes left for
//! searches and constructions to do real work. Everything here is a pure
//! function of its arguments.

use eqred_core::{Enumeration, MergeSpec, OracleSet, Relation};

/// A staged enumeration spreading merges across `[0, max_elem]`, four
/// pairs per stage, mixing short and long jumps.
pub fn staged_enumeration(max_elem: u64) -> Enumeration {
    let m = max_elem + 1;
    let pairs: Vec<(u64, u64)> = (0..m / 3)
        .map(|i| ((3 * i) % m, (5 * i + 1) % m))
        .collect();
    let stages: Vec<Vec<(u64, u64)>> = pairs.chunks(4).map(|c| c.to_vec()).collect();
    Enumeration::from_stages(&stages)
}

/// An everywhere-decided base relation over roughly `[0, max_elem]`.
pub fn bench_base(max_elem: u64) -> Relation {
    Relation::from_enumeration(&staged_enumeration(max_elem))
}

/// A merge spec over [`bench_base`] with `bound / 8 + 1` extra pairs,
/// all within `[0, bound]`.
pub fn bench_spec(bound: u64) -> MergeSpec {
    let pairs: Vec<(u64, u64)> = (0..=bound / 8)
        .map(|i| (i % (bound + 1), (i * 7 + 3) % (bound + 1)))
        .collect();
    MergeSpec::new(bench_base(bound), pairs).expect("pairs stay within the window")
}

/// An explicit oracle set holding every third index below `limit`.
pub fn sparse_oracle(limit: u64) -> OracleSet {
    OracleSet::explicit((0..limit).step_by(3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use eqred_core::close;

    #[test]
    fn generators_produce_usable_inputs() {
        for bound in [32u64, 64, 128] {
            let spec = bench_spec(bound);
            let closed = close(&spec, bound).unwrap();
            let classes = closed.class_count(bound).unwrap();
            assert!(classes > 1, "bound {bound}: degenerate single class");
            assert!(
                classes < bound as usize + 1,
                "bound {bound}: no merges happened at all"
            );
        }
    }

    #[test]
    fn oracle_is_nonempty_and_bounded() {
        let oracle = sparse_oracle(12);
        assert!(oracle.contains(0) && oracle.contains(3));
        assert!(!oracle.contains(1));
        assert!(!oracle.has_member_at_or_above(12));
    }
}
