//! Equivalence relations on the naturals, decided on a window.
//!
//! A [`Relation`] answers `holds(x, y)` for all `x, y` up to its
//! `window_bound` and refuses to answer beyond it. Rule-given relations
//! (identity, congruence mod n) and relations closed from a finite
//! enumeration are decided everywhere; relations produced by the closure
//! engine or the construction builders are decided exactly on the window
//! they were built for. Every claim derived from a relation — class lists,
//! representatives, reduction verdicts — is relative to a stated bound,
//! and that bound must sit inside the window.

use std::fmt;

use crate::closure::BitMatrix;
use crate::enumeration::Enumeration;
use crate::error::Error;
use crate::partition::Partition;

/// How the relation came to be. Carried as metadata on artifacts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationKind {
    /// Given by a total rule (identity, congruence mod n).
    Rule,
    /// Closure of a finite pair enumeration; identity beyond its segment.
    Ceer,
    /// Output of the closure engine or a construction builder.
    Construction,
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RelationKind::Rule => "rule",
            RelationKind::Ceer => "ceer",
            RelationKind::Construction => "construction",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Source {
    /// Equality.
    Id,
    /// Congruence modulo a positive modulus.
    IdMod(u64),
    /// Closure of a finite enumeration: partition on an initial segment,
    /// equality beyond it. Decided everywhere.
    Segment(Partition),
    /// Partition decided only on `[0, len)`.
    Windowed(Partition),
    /// Incidence matrix decided only on its index range.
    Matrix(BitMatrix),
}

/// An equivalence relation together with the window on which it is decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    kind: RelationKind,
    window_bound: u64,
    source: Source,
}

impl Relation {
    /// The identity relation: `x ~ y` iff `x = y`. Decided everywhere.
    pub fn id() -> Self {
        Relation {
            kind: RelationKind::Rule,
            window_bound: u64::MAX,
            source: Source::Id,
        }
    }

    /// Congruence modulo `n`: `x ~ y` iff `x ≡ y (mod n)`. Decided
    /// everywhere. A modulus of zero is rejected.
    pub fn id_n(n: u64) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidModulus);
        }
        Ok(Relation {
            kind: RelationKind::Rule,
            window_bound: u64::MAX,
            source: Source::IdMod(n),
        })
    }

    /// Close a finite enumeration into a relation: the enumerated pairs are
    /// identified, everything beyond the touched segment stays a singleton.
    /// Decided everywhere.
    pub fn from_enumeration(e: &Enumeration) -> Self {
        let seg_bound = e.max_element().unwrap_or(0);
        let p = e
            .replay_full(seg_bound)
            .expect("segment covers every enumerated pair");
        Relation {
            kind: RelationKind::Ceer,
            window_bound: u64::MAX,
            source: Source::Segment(p),
        }
    }

    /// Wrap a partition of `[0, p.len())` as a relation decided exactly
    /// there. Used by the closure engine and the construction builders.
    pub(crate) fn from_windowed_partition(p: Partition) -> Self {
        debug_assert!(!p.is_empty());
        Relation {
            kind: RelationKind::Construction,
            window_bound: p.len() as u64 - 1,
            source: Source::Windowed(p),
        }
    }

    /// Wrap an incidence matrix as a relation decided exactly on its
    /// index range. Used by the reference closure.
    pub(crate) fn from_matrix(m: BitMatrix) -> Self {
        debug_assert!(m.len() > 0);
        Relation {
            kind: RelationKind::Construction,
            window_bound: m.len() as u64 - 1,
            source: Source::Matrix(m),
        }
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    /// Largest element on which the relation is decided.
    pub fn window_bound(&self) -> u64 {
        self.window_bound
    }

    /// Total number of classes over all of ω, when that is knowable from
    /// the relation's rule. `None` means infinite or not determined by the
    /// decided window: identity has infinitely many classes, a closed
    /// enumeration keeps infinitely many singletons beyond its segment,
    /// and a windowed relation says nothing past its window.
    pub fn global_class_count(&self) -> Option<u64> {
        match &self.source {
            Source::IdMod(n) => Some(*n),
            Source::Id | Source::Segment(_) | Source::Windowed(_) | Source::Matrix(_) => None,
        }
    }

    fn check_value(&self, value: u64) -> Result<(), Error> {
        if value > self.window_bound {
            Err(Error::UndecidedWindow {
                value,
                bound: self.window_bound,
            })
        } else {
            Ok(())
        }
    }

    /// Does the relation hold between `x` and `y`? Errors when either
    /// argument leaves the decided window.
    pub fn holds(&self, x: u64, y: u64) -> Result<bool, Error> {
        self.check_value(x)?;
        self.check_value(y)?;
        Ok(match &self.source {
            Source::Id => x == y,
            Source::IdMod(n) => x % n == y % n,
            Source::Segment(p) => {
                let n = p.len() as u64;
                if x < n && y < n {
                    p.same(x as usize, y as usize)
                } else {
                    x == y
                }
            }
            Source::Windowed(p) => p.same(x as usize, y as usize),
            Source::Matrix(m) => m.get(x, y),
        })
    }

    /// Least element equivalent to `x` (always `≤ x`).
    pub fn rep(&self, x: u64) -> Result<u64, Error> {
        self.check_value(x)?;
        Ok(match &self.source {
            Source::Id => x,
            Source::IdMod(n) => x % n,
            Source::Segment(p) => {
                if x < p.len() as u64 {
                    p.rep(x as usize) as u64
                } else {
                    x
                }
            }
            Source::Windowed(p) => p.rep(x as usize) as u64,
            Source::Matrix(m) => (0..=x)
                .find(|&y| m.get(y, x))
                .expect("matrix is reflexive"),
        })
    }

    /// The least representatives `a_0 < a_1 < …` of the classes met on
    /// `[0, bound]`. Always starts with 0.
    pub fn least_representatives(&self, bound: u64) -> Result<Vec<u64>, Error> {
        self.check_value(bound)?;
        let mut reps = Vec::new();
        for x in 0..=bound {
            if self.rep(x)? == x {
                reps.push(x);
            }
        }
        Ok(reps)
    }

    /// Members of the class of `x` within `[0, bound]`, in increasing
    /// order. Requires `x ≤ bound ≤ window`.
    pub fn class_of(&self, x: u64, bound: u64) -> Result<Vec<u64>, Error> {
        self.check_value(bound)?;
        if x > bound {
            return Err(Error::UndecidedWindow { value: x, bound });
        }
        let mut class = Vec::new();
        for y in 0..=bound {
            if self.holds(x, y)? {
                class.push(y);
            }
        }
        Ok(class)
    }

    /// All classes met on `[0, bound]`, ordered by least representative.
    pub fn classes(&self, bound: u64) -> Result<Vec<Vec<u64>>, Error> {
        let reps = self.least_representatives(bound)?;
        reps.into_iter().map(|r| self.class_of(r, bound)).collect()
    }

    /// Number of classes met on `[0, bound]`.
    pub fn class_count(&self, bound: u64) -> Result<usize, Error> {
        Ok(self.least_representatives(bound)?.len())
    }

    /// Do `self` and `other` agree on every pair from `[0, bound]`?
    pub fn agrees_on(&self, other: &Relation, bound: u64) -> Result<bool, Error> {
        for x in 0..=bound {
            for y in x..=bound {
                if self.holds(x, y)? != other.holds(x, y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
