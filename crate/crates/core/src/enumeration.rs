//! Stage-wise pair enumerations.
//!
//! An [`Enumeration`] is the finite trace of a pair-enumeration procedure:
//! a flat list of unordered pairs plus *stage marks* recording how many
//! pairs had appeared by the end of each stage. Closing a prefix of the
//! trace under reflexivity, symmetry and transitivity yields the relation
//! "as seen so far"; replaying successive stages yields a coarsening
//! sequence of partitions.
//!
//! The trace also fixes an *occurrence order* on elements: an element that
//! shows up in the trace is ordered by the slot of its first occurrence
//! (pairs are read left member first), and elements that never occur are
//! ordered after all occurring ones, by value. This total order is what
//! "first-enumerated" means everywhere else in the crate.

use crate::error::Error;
use crate::partition::Partition;

/// A finite, staged enumeration of unordered pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pairs: Vec<(u64, u64)>,
    /// `stage_marks[s]` = number of pairs enumerated by the end of stage `s`.
    /// Non-decreasing; the last mark equals `pairs.len()`.
    stage_marks: Vec<usize>,
}

impl Enumeration {
    /// Build from a flat pair list and explicit stage cuts.
    pub fn new(pairs: Vec<(u64, u64)>, stage_marks: Vec<usize>) -> Result<Self, Error> {
        let ok = if stage_marks.is_empty() {
            pairs.is_empty()
        } else {
            stage_marks.windows(2).all(|w| w[0] <= w[1])
                && *stage_marks.last().unwrap() == pairs.len()
        };
        if !ok {
            return Err(Error::InvalidStageMarks);
        }
        Ok(Enumeration { pairs, stage_marks })
    }

    /// The empty enumeration: no pairs, no stages.
    pub fn empty() -> Self {
        Enumeration {
            pairs: Vec::new(),
            stage_marks: Vec::new(),
        }
    }

    /// Build from per-stage pair lists. Always well-formed.
    pub fn from_stages(stages: &[Vec<(u64, u64)>]) -> Self {
        let mut pairs = Vec::new();
        let mut stage_marks = Vec::with_capacity(stages.len());
        for stage in stages {
            pairs.extend_from_slice(stage);
            stage_marks.push(pairs.len());
        }
        Enumeration { pairs, stage_marks }
    }

    /// All pairs enumerated in a single stage.
    pub fn single_stage(pairs: Vec<(u64, u64)>) -> Self {
        let marks = vec![pairs.len()];
        Enumeration {
            pairs,
            stage_marks: marks,
        }
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn stage_count(&self) -> usize {
        self.stage_marks.len()
    }

    /// Pairs of stage `s` (a slice of the flat trace).
    pub fn stage(&self, s: usize) -> &[(u64, u64)] {
        let end = self.stage_marks[s];
        let start = if s == 0 { 0 } else { self.stage_marks[s - 1] };
        &self.pairs[start..end]
    }

    /// Pairs grouped per stage, reconstructing the input of
    /// [`Enumeration::from_stages`].
    pub fn stages(&self) -> Vec<Vec<(u64, u64)>> {
        (0..self.stage_count()).map(|s| self.stage(s).to_vec()).collect()
    }

    /// Largest element mentioned in the trace, if any pair exists.
    pub fn max_element(&self) -> Option<u64> {
        self.pairs.iter().map(|&(a, b)| a.max(b)).max()
    }

    /// Partition of `[0, bound]` obtained by closing the first `n_pairs`
    /// pairs of the trace. Errors if a pair in that prefix leaves the window.
    pub fn close_prefix(&self, n_pairs: usize, bound: u64) -> Result<Partition, Error> {
        let n = usize::try_from(bound).expect("window fits in usize") + 1;
        let mut p = Partition::new(n);
        for &(a, b) in &self.pairs[..n_pairs] {
            if a > bound || b > bound {
                return Err(Error::OutOfWindow { x: a, y: b, bound });
            }
            p.union(a as usize, b as usize);
        }
        p.compress();
        Ok(p)
    }

    /// Partition of `[0, bound]` after replaying stages `0..=s`.
    pub fn replay_stage(&self, s: usize, bound: u64) -> Result<Partition, Error> {
        self.close_prefix(self.stage_marks[s], bound)
    }

    /// Partition of `[0, bound]` after replaying the whole trace.
    pub fn replay_full(&self, bound: u64) -> Result<Partition, Error> {
        self.close_prefix(self.pairs.len(), bound)
    }

    /// Slot of the first occurrence of `e` in the trace (left member of
    /// pair `i` is slot `2i`, right member slot `2i + 1`).
    pub fn first_occurrence(&self, e: u64) -> Option<usize> {
        self.pairs.iter().enumerate().find_map(|(i, &(a, b))| {
            if a == e {
                Some(2 * i)
            } else if b == e {
                Some(2 * i + 1)
            } else {
                None
            }
        })
    }

    /// Total-order key realizing the occurrence order: occurring elements
    /// first (by slot), then never-occurring elements by value.
    pub fn occurrence_key(&self, e: u64) -> (u8, u64) {
        match self.first_occurrence(e) {
            Some(slot) => (0, slot as u64),
            None => (1, e),
        }
    }

    /// Distinct elements of the trace in occurrence order.
    pub fn occurring_elements(&self) -> Vec<u64> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for &(a, b) in &self.pairs {
            for e in [a, b] {
                if seen.insert(e) {
                    out.push(e);
                }
            }
        }
        out
    }
}
