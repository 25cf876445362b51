//! Least equivalence closure of a base relation plus merge pairs.
//!
//! [`close`] is the working implementation: incremental union-find with
//! least-element representatives. [`close_oracle`] computes the same
//! relation by brute force — naive fixpoint iteration over the full
//! incidence matrix — and exists purely so the two routes can be checked
//! against each other. They share no code beyond the input types; keep it
//! that way, the redundancy is the point.

use crate::error::Error;
use crate::partition::Partition;
use crate::relation::Relation;

/// A base relation together with extra pairs to be identified.
#[derive(Debug, Clone)]
pub struct MergeSpec {
    base: Relation,
    extra_pairs: Vec<(u64, u64)>,
}

impl MergeSpec {
    /// Build a merge spec. Every pair member must lie inside the base
    /// relation's decided window.
    pub fn new(base: Relation, extra_pairs: Vec<(u64, u64)>) -> Result<Self, Error> {
        let w = base.window_bound();
        for &(x, y) in &extra_pairs {
            if x > w || y > w {
                return Err(Error::OutOfWindow { x, y, bound: w });
            }
        }
        Ok(MergeSpec { base, extra_pairs })
    }

    pub fn base(&self) -> &Relation {
        &self.base
    }

    pub fn extra_pairs(&self) -> &[(u64, u64)] {
        &self.extra_pairs
    }
}

/// Least equivalence relation on `[0, bound]` containing the base relation
/// (restricted to the window) and all extra pairs.
pub fn close(spec: &MergeSpec, bound: u64) -> Result<Relation, Error> {
    let w = spec.base.window_bound();
    if bound > w {
        return Err(Error::UndecidedWindow { value: bound, bound: w });
    }
    let n = usize::try_from(bound).expect("window fits in usize") + 1;
    let mut p = Partition::new(n);
    // Seed the base classes: linking every element to its least equivalent
    // element connects each base class restricted to the window.
    for x in 0..=bound {
        let r = spec.base.rep(x)?;
        p.union(x as usize, r as usize);
    }
    for &(x, y) in &spec.extra_pairs {
        if x > bound || y > bound {
            return Err(Error::OutOfWindow { x, y, bound });
        }
        p.union(x as usize, y as usize);
    }
    p.compress();
    Ok(Relation::from_windowed_partition(p))
}

/// Same contract as [`close`], computed by naive fixpoint iteration over
/// the full `(bound+1)²` incidence matrix: apply symmetry and transitivity
/// passes until nothing changes.
pub fn close_oracle(spec: &MergeSpec, bound: u64) -> Result<Relation, Error> {
    let w = spec.base.window_bound();
    if bound > w {
        return Err(Error::UndecidedWindow { value: bound, bound: w });
    }
    let n = usize::try_from(bound).expect("window fits in usize") + 1;
    let mut m = BitMatrix::new(n);
    for x in 0..n {
        for y in 0..n {
            if x == y || spec.base.holds(x as u64, y as u64)? {
                m.set_idx(x, y);
            }
        }
    }
    for &(x, y) in &spec.extra_pairs {
        if x > bound || y > bound {
            return Err(Error::OutOfWindow { x, y, bound });
        }
        m.set_idx(x as usize, y as usize);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in 0..n {
                if m.get_idx(x, y) && !m.get_idx(y, x) {
                    m.set_idx(y, x);
                    changed = true;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !m.get_idx(x, y) {
                    continue;
                }
                for z in 0..n {
                    if m.get_idx(y, z) && !m.get_idx(x, z) {
                        m.set_idx(x, z);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(Relation::from_matrix(m));
        }
    }
}

/// Square boolean incidence matrix backing oracle-produced relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        BitMatrix {
            n,
            bits: vec![false; n * n],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.n
    }

    pub(crate) fn get(&self, x: u64, y: u64) -> bool {
        self.get_idx(x as usize, y as usize)
    }

    fn get_idx(&self, x: usize, y: usize) -> bool {
        self.bits[x * self.n + y]
    }

    fn set_idx(&mut self, x: usize, y: usize) {
        self.bits[x * self.n + y] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classes_of(r: &Relation, bound: u64) -> Vec<Vec<u64>> {
        r.classes(bound).unwrap()
    }

    #[test]
    fn transitive_chain_collapses() {
        let spec = MergeSpec::new(Relation::id(), vec![(0, 1), (1, 2)]).unwrap();
        let r = close(&spec, 5).unwrap();
        assert_eq!(
            classes_of(&r, 5),
            vec![vec![0, 1, 2], vec![3], vec![4], vec![5]]
        );
    }

    #[test]
    fn empty_merge_restricts_the_base() {
        let spec = MergeSpec::new(Relation::id_n(2).unwrap(), vec![]).unwrap();
        let r = close(&spec, 5).unwrap();
        let id2 = Relation::id_n(2).unwrap();
        assert!(r.agrees_on(&id2, 5).unwrap());
    }

    #[test]
    fn disjoint_pairs_merge_independently() {
        // Expected classes derived with the fixpoint oracle below.
        let spec = MergeSpec::new(Relation::id(), vec![(0, 1), (4, 5)]).unwrap();
        let expected = vec![vec![0, 1], vec![2], vec![3], vec![4, 5], vec![6]];
        let fast = close(&spec, 6).unwrap();
        let slow = close_oracle(&spec, 6).unwrap();
        assert_eq!(classes_of(&fast, 6), expected);
        assert_eq!(classes_of(&slow, 6), expected);
    }

    #[test]
    fn full_chain_gives_a_single_class() {
        let pairs: Vec<(u64, u64)> = (0..10).map(|i| (i, i + 1)).collect();
        let spec = MergeSpec::new(Relation::id(), pairs).unwrap();
        let r = close_oracle(&spec, 10).unwrap();
        assert_eq!(r.class_count(10).unwrap(), 1);
        assert_eq!(r.class_of(0, 10).unwrap(), (0..=10).collect::<Vec<_>>());
    }

    #[test]
    fn oracle_merges_across_a_rule_base() {
        // Expected classes derived with the fixpoint oracle itself.
        let spec = MergeSpec::new(Relation::id_n(3).unwrap(), vec![(0, 1)]).unwrap();
        let r = close_oracle(&spec, 8).unwrap();
        assert_eq!(
            classes_of(&r, 8),
            vec![vec![0, 1, 3, 4, 6, 7], vec![2, 5, 8]]
        );
        let fast = close(&spec, 8).unwrap();
        assert!(fast.agrees_on(&r, 8).unwrap());
    }

    #[test]
    fn pairs_outside_the_window_are_rejected() {
        let spec = MergeSpec::new(Relation::id(), vec![(0, 9)]).unwrap();
        assert_eq!(
            close(&spec, 5).unwrap_err(),
            Error::OutOfWindow { x: 0, y: 9, bound: 5 }
        );
        assert_eq!(
            close_oracle(&spec, 5).unwrap_err(),
            Error::OutOfWindow { x: 0, y: 9, bound: 5 }
        );
    }

    #[test]
    fn merge_spec_enforces_the_base_window() {
        let base = close(&MergeSpec::new(Relation::id(), vec![]).unwrap(), 4).unwrap();
        // base is decided on [0,4] only; a pair touching 7 is malformed.
        assert_eq!(
            MergeSpec::new(base, vec![(1, 7)]).unwrap_err(),
            Error::OutOfWindow { x: 1, y: 7, bound: 4 }
        );
    }

    #[test]
    fn closing_beyond_the_base_window_is_an_error() {
        let base = close(&MergeSpec::new(Relation::id(), vec![]).unwrap(), 4).unwrap();
        let spec = MergeSpec::new(base, vec![]).unwrap();
        assert_eq!(
            close(&spec, 6).unwrap_err(),
            Error::UndecidedWindow { value: 6, bound: 4 }
        );
    }
}
