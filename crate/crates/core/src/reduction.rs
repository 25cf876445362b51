//! Candidate computable reductions between relations, and the operations
//! that verify, search, compose and synthesize them.
//!
//! A reduction from `r` into `s` is a total function `f` with
//! `x r y  ⇔  f(x) s f(y)`. A [`ReductionFn`] represents one as a finite
//! table plus a *tail rule* that keeps it total beyond the table — the
//! three tail forms (identity, constant, residue map) cover every witness
//! the search can emit.
//!
//! All verdicts are relative to stated windows. The single exception is a
//! pigeonhole refutation whose certificate shows the target's complete
//! class inventory already visible on the image window; only then does a
//! no-witness verdict refute the reduction globally.

use std::collections::BTreeMap;
use std::fmt;

use crate::enumeration::Enumeration;
use crate::error::Error;
use crate::relation::Relation;

/// Rule applied to inputs beyond the table of a [`ReductionFn`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailRule {
    /// `f(x) = x`.
    Identity,
    /// `f(x) = c`.
    Constant(u64),
    /// `f(x) = values[x mod modulus]`; `values` has exactly `modulus` entries.
    Residue { modulus: u64, values: Vec<u64> },
}

impl fmt::Display for TailRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailRule::Identity => write!(f, "identity"),
            TailRule::Constant(c) => write!(f, "const {c}"),
            TailRule::Residue { modulus, values } => {
                write!(f, "mod {modulus} [")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// A total function on the naturals: explicit values on `[0, d)` from the
/// table, the tail rule everywhere above.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionFn {
    table: Vec<u64>,
    tail: TailRule,
}

impl ReductionFn {
    /// The identity function.
    pub fn identity() -> Self {
        ReductionFn {
            table: Vec::new(),
            tail: TailRule::Identity,
        }
    }

    /// The constant function `x ↦ c`.
    pub fn constant(c: u64) -> Self {
        ReductionFn {
            table: Vec::new(),
            tail: TailRule::Constant(c),
        }
    }

    /// The residue map `x ↦ values[x mod modulus]`.
    pub fn residue(modulus: u64, values: Vec<u64>) -> Result<Self, Error> {
        Self::from_table(Vec::new(), TailRule::Residue { modulus, values })
    }

    /// Build from an explicit table (value at `x` is `table[x]`) and a
    /// tail rule; residue tails must list one value per residue.
    pub fn from_table(table: Vec<u64>, tail: TailRule) -> Result<Self, Error> {
        if let TailRule::Residue { modulus, values } = &tail {
            if *modulus == 0 {
                return Err(Error::InvalidModulus);
            }
            if values.len() as u64 != *modulus {
                return Err(Error::ResidueArity {
                    modulus: *modulus,
                    got: values.len(),
                });
            }
        }
        Ok(ReductionFn { table, tail })
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    /// Evaluate at `x`. Total.
    pub fn eval(&self, x: u64) -> u64 {
        if let Ok(i) = usize::try_from(x) {
            if i < self.table.len() {
                return self.table[i];
            }
        }
        match &self.tail {
            TailRule::Identity => x,
            TailRule::Constant(c) => *c,
            TailRule::Residue { modulus, values } => values[(x % modulus) as usize],
        }
    }
}

impl fmt::Display for ReductionFn {
    /// Canonical text form, e.g. `table {0:1, 1:0} tail identity`.
    /// An empty table is omitted entirely.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.table.is_empty() {
            write!(f, "table {{")?;
            for (i, v) in self.table.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{i}:{v}")?;
            }
            write!(f, "}} ")?;
        }
        write!(f, "tail {}", self.tail)
    }
}

/// Certificate attached to a pigeonhole refutation: the source relation
/// shows more classes on its window than the target shows on the image
/// window, so no class-respecting map exists there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pigeonhole {
    /// Classes of the source relation met on `[0, bound]`.
    pub source_classes: u64,
    /// Classes of the target relation met on `[0, image_bound]`.
    pub target_classes: u64,
    /// The target's class count over all of ω, when its rule determines
    /// one. `None` for relations with infinitely many or unknown classes.
    pub target_class_total: Option<u64>,
}

impl Pigeonhole {
    /// Is the refutation global rather than window-relative? True exactly
    /// when the target's complete class inventory is already visible on
    /// the image window, so no larger window could offer more room.
    pub fn is_conclusive(&self) -> bool {
        self.target_class_total == Some(self.target_classes)
    }
}

/// Outcome of verifying or searching for a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// The candidate satisfies the biconditional on the whole window.
    Valid,
    /// Least lexicographic pair violating the biconditional.
    Invalid { counterexample: (u64, u64) },
    /// A witness found by search.
    Witness(ReductionFn),
    /// No witness exists on the stated windows; carries a pigeonhole
    /// certificate when the refutation is by class counting.
    NoWitness {
        bound: u64,
        pigeonhole: Option<Pigeonhole>,
    },
}

/// Check `x r y ⇔ f(x) s f(y)` for all `x, y ≤ bound`. Returns the least
/// lexicographic counterexample on failure.
pub fn verify_reduction(
    f: &ReductionFn,
    r: &Relation,
    s: &Relation,
    bound: u64,
) -> Result<Verdict, Error> {
    if bound > r.window_bound() {
        return Err(Error::UndecidedWindow {
            value: bound,
            bound: r.window_bound(),
        });
    }
    for x in 0..=bound {
        let v = f.eval(x);
        if v > s.window_bound() {
            return Err(Error::UndecidedWindow {
                value: v,
                bound: s.window_bound(),
            });
        }
    }
    for x in 0..=bound {
        for y in 0..=bound {
            if r.holds(x, y)? != s.holds(f.eval(x), f.eval(y))? {
                return Ok(Verdict::Invalid {
                    counterexample: (x, y),
                });
            }
        }
    }
    Ok(Verdict::Valid)
}

/// Search for the lexicographically least class-respecting map from the
/// `r`-classes on `[0, bound]` into `s`-elements `≤ image_bound`, extended
/// to a total [`ReductionFn`].
///
/// The least map sends the i-th source class to the i-th least
/// representative of `s` on the image window, so a witness exists exactly
/// when the source shows no more classes than the target; otherwise the
/// verdict carries the pigeonhole certificate.
pub fn search_reduction(
    r: &Relation,
    s: &Relation,
    bound: u64,
    image_bound: u64,
) -> Result<Verdict, Error> {
    if bound > r.window_bound() {
        return Err(Error::UndecidedWindow {
            value: bound,
            bound: r.window_bound(),
        });
    }
    if image_bound > s.window_bound() {
        return Err(Error::UndecidedWindow {
            value: image_bound,
            bound: s.window_bound(),
        });
    }
    let source_reps = r.least_representatives(bound)?;
    let target_reps = s.least_representatives(image_bound)?;
    if source_reps.len() > target_reps.len() {
        return Ok(Verdict::NoWitness {
            bound,
            pigeonhole: Some(Pigeonhole {
                source_classes: source_reps.len() as u64,
                target_classes: target_reps.len() as u64,
                target_class_total: s.global_class_count(),
            }),
        });
    }
    // Greedy least assignment: the i-th source class maps to the i-th
    // target representative. Greedy is lexicographically least because
    // any assignment consumes exactly one target class, so feasibility
    // depends only on how many classes remain.
    let image_of_rep: BTreeMap<u64, u64> = source_reps
        .iter()
        .copied()
        .zip(target_reps.iter().copied())
        .collect();
    let mut table = Vec::with_capacity(bound as usize + 1);
    for x in 0..=bound {
        table.push(image_of_rep[&r.rep(x)?]);
    }
    let tail = TailRule::Constant(table[0]);
    Ok(Verdict::Witness(ReductionFn { table, tail }))
}

/// Composition `x ↦ g(f(x))`, exact for every natural, not just a window.
/// The tail forms are closed under composition, which is what makes the
/// table+tail representation workable.
pub fn compose(f: &ReductionFn, g: &ReductionFn) -> ReductionFn {
    let d_f = f.table.len();
    match &f.tail {
        TailRule::Constant(c) => ReductionFn {
            table: f.table.iter().map(|&v| g.eval(v)).collect(),
            tail: TailRule::Constant(g.eval(*c)),
        },
        TailRule::Residue { modulus, values } => ReductionFn {
            table: f.table.iter().map(|&v| g.eval(v)).collect(),
            tail: TailRule::Residue {
                modulus: *modulus,
                values: values.iter().map(|&v| g.eval(v)).collect(),
            },
        },
        // f is the identity past its table, so the composite must carry
        // g's own table far enough before falling back to g's tail.
        TailRule::Identity => {
            let d = d_f.max(g.table.len());
            ReductionFn {
                table: (0..d as u64).map(|x| g.eval(f.eval(x))).collect(),
                tail: g.tail.clone(),
            }
        }
    }
}

/// Collapse `f` through the classes of `e`: returns `h` with `h(x)` = the
/// least representative of the `e`-class containing `f(x)`. `h` is constant
/// on each `f`-preimage of an `e`-class and its range is the finite set of
/// representatives hit by `f` on the window.
pub fn collapse_map(f: &ReductionFn, e: &Relation, bound: u64) -> Result<ReductionFn, Error> {
    let mut table = Vec::with_capacity(bound as usize + 1);
    for x in 0..=bound {
        let v = f.eval(x);
        if v > e.window_bound() {
            return Err(Error::UndecidedWindow {
                value: v,
                bound: e.window_bound(),
            });
        }
        table.push(e.rep(v)?);
    }
    let tail = TailRule::Constant(table[0]);
    Ok(ReductionFn { table, tail })
}

/// Invert `f` through the classes of `e`: returns `g` with `g(x)` = the
/// least `z` such that `f(z)` is the earliest-enumerated element of
/// `[x]_e ∩ range(f)`, where "earliest" is the occurrence order of
/// `e_enum`. By construction `f(g(x))` is `e`-equivalent to `x` for every
/// `x` on the window.
///
/// Errors with a coverage error if some `e`-class on the window is
/// disjoint from the range of `f` — the situation where a collapse map
/// applies instead.
pub fn witness_map(
    f: &ReductionFn,
    e_enum: &Enumeration,
    e: &Relation,
    bound: u64,
) -> Result<ReductionFn, Error> {
    // Range of f on the window, with the least preimage of each value.
    let mut least_preimage: BTreeMap<u64, u64> = BTreeMap::new();
    for z in 0..=bound {
        let v = f.eval(z);
        if v > e.window_bound() {
            return Err(Error::UndecidedWindow {
                value: v,
                bound: e.window_bound(),
            });
        }
        least_preimage.entry(v).or_insert(z);
    }
    let mut table = Vec::with_capacity(bound as usize + 1);
    for x in 0..=bound {
        let witness_value = least_preimage
            .keys()
            .copied()
            .filter(|&v| e.holds(x, v).unwrap_or(false))
            .min_by_key(|&v| e_enum.occurrence_key(v));
        match witness_value {
            Some(v) => table.push(least_preimage[&v]),
            None => {
                return Err(Error::Coverage {
                    missed_rep: e.rep(x)?,
                })
            }
        }
    }
    let tail = TailRule::Constant(table[0]);
    Ok(ReductionFn { table, tail })
}

/// Iterate the round trip `g ∘ f` from a start point: returns
/// `(a_0, …, a_n)` with `a_0 = a` and `a_{i+1} = g(f(a_i))`.
pub fn build_chain(f: &ReductionFn, g: &ReductionFn, a: u64, n: u64) -> Vec<u64> {
    let mut chain = Vec::with_capacity(n as usize + 1);
    let mut current = a;
    chain.push(current);
    for _ in 0..n {
        current = g.eval(f.eval(current));
        chain.push(current);
    }
    chain
}

/// Check that `f` maps the `s`-class of `x0` into the `t`-class of
/// `f(x0)` and nothing else into it: valid iff for all `x ≤ bound`,
/// `x ∈ [x0]_s ⇔ f(x) ∈ [f(x0)]_t`.
pub fn class_image_check(
    f: &ReductionFn,
    s: &Relation,
    t: &Relation,
    x0: u64,
    bound: u64,
) -> Result<Verdict, Error> {
    if bound > s.window_bound() {
        return Err(Error::UndecidedWindow {
            value: bound,
            bound: s.window_bound(),
        });
    }
    if x0 > bound {
        return Err(Error::UndecidedWindow { value: x0, bound });
    }
    let fx0 = f.eval(x0);
    for x in 0..=bound {
        let v = f.eval(x);
        if fx0.max(v) > t.window_bound() {
            return Err(Error::UndecidedWindow {
                value: fx0.max(v),
                bound: t.window_bound(),
            });
        }
        if s.holds(x0, x)? != t.holds(fx0, v)? {
            return Ok(Verdict::Invalid {
                counterexample: (x0, x),
            });
        }
    }
    Ok(Verdict::Valid)
}
