//! Decidable index sets used to parameterize constructions.
//!
//! An [`OracleSet`] stands in for an arbitrary set of naturals: it is the
//! union of finitely many explicit members and, optionally, a residue rule
//! (all `x` with `x mod m` in a fixed set of residues). Membership is total
//! and decidable — the desk-scale stand-in for an oracle answer.

use std::collections::BTreeSet;

use crate::error::Error;

/// Residue rule: all naturals congruent to one of `residues` modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRule {
    modulus: u64,
    residues: BTreeSet<u64>,
}

impl ResidueRule {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues.iter().copied()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.residues.contains(&(x % self.modulus))
    }

    /// Does the rule accept infinitely many naturals?
    pub fn is_nonempty(&self) -> bool {
        !self.residues.is_empty()
    }

    /// Does the rule accept *every* natural?
    pub fn is_full(&self) -> bool {
        self.residues.len() as u64 == self.modulus
    }
}

/// A decidable set of naturals: explicit members plus an optional residue rule.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OracleSet {
    members: BTreeSet<u64>,
    rule: Option<ResidueRule>,
}

impl OracleSet {
    /// The empty set.
    pub fn empty() -> Self {
        OracleSet::default()
    }

    /// A finite set given by listing its members.
    pub fn explicit(members: impl IntoIterator<Item = u64>) -> Self {
        OracleSet {
            members: members.into_iter().collect(),
            rule: None,
        }
    }

    /// The set of naturals whose residue modulo `modulus` lies in `residues`.
    /// Residues are normalized into `[0, modulus)`.
    pub fn residues(
        modulus: u64,
        residues: impl IntoIterator<Item = u64>,
    ) -> Result<Self, Error> {
        if modulus == 0 {
            return Err(Error::InvalidModulus);
        }
        let residues: BTreeSet<u64> = residues.into_iter().map(|r| r % modulus).collect();
        Ok(OracleSet {
            members: BTreeSet::new(),
            rule: Some(ResidueRule { modulus, residues }),
        })
    }

    /// Add explicit members on top of whatever the set already accepts.
    pub fn with_members(mut self, members: impl IntoIterator<Item = u64>) -> Self {
        self.members.extend(members);
        self
    }

    /// Explicit members, in increasing order.
    pub fn explicit_members(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    pub fn rule(&self) -> Option<&ResidueRule> {
        self.rule.as_ref()
    }

    /// Total membership test.
    pub fn contains(&self, x: u64) -> bool {
        self.members.contains(&x) || self.rule.as_ref().is_some_and(|r| r.contains(x))
    }

    /// All members `≤ bound`, in increasing order.
    pub fn members_up_to(&self, bound: u64) -> Vec<u64> {
        (0..=bound).filter(|&x| self.contains(x)).collect()
    }

    /// Does the set have a member `≥ k`?
    ///
    /// Decidable because the explicit part is finite and a residue rule is
    /// periodic: a nonempty rule always reaches past any threshold.
    pub fn has_member_at_or_above(&self, k: u64) -> bool {
        self.members.iter().any(|&m| m >= k)
            || self.rule.as_ref().is_some_and(|r| r.is_nonempty())
    }

    /// Does the *complement* of the set have a member `≥ k`?
    ///
    /// Without a rule the set is finite, so the complement is cofinal. With
    /// a rule, the complement reaches past every threshold unless the rule
    /// accepts all residues and hides nothing.
    pub fn complement_has_member_at_or_above(&self, _k: u64) -> bool {
        match &self.rule {
            None => true,
            Some(r) => !r.is_full(),
        }
    }
}
