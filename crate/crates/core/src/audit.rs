//! Bounded evidence reports for degree-theoretic hypotheses.
//!
//! Nothing in this module certifies a global property from a window. The
//! reports collect what *can* be checked — class coverage counts, validity
//! of finite reduction fragments, pigeonhole refutations — and flag every
//! finding as either `conclusive` (backed by a finite certificate that is
//! independently re-checkable) or bound-relative. The only conclusive
//! findings are pigeonhole refutations whose target class inventory is
//! complete; in particular no finding ever *confirms* that a relation is
//! dark, and chain-growth diagnostics are labeled heuristic.

use std::collections::BTreeSet;
use std::fmt;

use crate::enumeration::Enumeration;
use crate::error::Error;
use crate::reduction::{search_reduction, Pigeonhole, ReductionFn, Verdict};
use crate::relation::Relation;

/// Outcome of a single audit check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Coverage consistent with the minimality criterion: the set hits
    /// all classes on the window, or too few for the criterion to bite.
    Consistent {
        classes_hit: usize,
        classes_total: usize,
        threshold: usize,
        missed_reps: Vec<u64>,
    },
    /// The set hits many classes (above threshold) yet misses some —
    /// window-scale evidence against the minimality criterion.
    ViolationEvidence {
        classes_hit: usize,
        classes_total: usize,
        threshold: usize,
        missed_reps: Vec<u64>,
    },
    /// Candidate maps the window to pairwise inequivalent elements:
    /// a valid identity-reduction fragment.
    FragmentValid { points: usize },
    /// Two window points whose images are equivalent.
    FragmentInvalid { counterexample: (u64, u64) },
    /// Growth of distinct classes along a round-trip chain. Heuristic.
    ChainDiagnostic {
        chain_len: usize,
        distinct_classes: usize,
        pairwise_inequivalent: bool,
    },
    /// Search found a witness on the stated windows.
    Witnessed { witness: ReductionFn },
    /// Search found no witness; carries the pigeonhole certificate when
    /// the refutation is by class counting.
    NotWitnessed { pigeonhole: Option<Pigeonhole> },
}

impl Outcome {
    /// Stable one-word label, used in the CSV export.
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Consistent { .. } => "consistent",
            Outcome::ViolationEvidence { .. } => "violation-evidence",
            Outcome::FragmentValid { .. } => "fragment-valid",
            Outcome::FragmentInvalid { .. } => "fragment-invalid",
            Outcome::ChainDiagnostic { .. } => "chain-diagnostic",
            Outcome::Witnessed { .. } => "witnessed",
            Outcome::NotWitnessed { .. } => "no-witness",
        }
    }

    /// Human-readable description of the witness data.
    pub fn detail(&self) -> String {
        fn missed(reps: &[u64]) -> String {
            if reps.is_empty() {
                "none".to_string()
            } else {
                reps.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        }
        match self {
            Outcome::Consistent {
                classes_hit,
                classes_total,
                threshold,
                missed_reps,
            }
            | Outcome::ViolationEvidence {
                classes_hit,
                classes_total,
                threshold,
                missed_reps,
            } => format!(
                "hits {classes_hit} of {classes_total} classes (threshold {threshold}); \
                 missed representatives: {}",
                missed(missed_reps)
            ),
            Outcome::FragmentValid { points } => {
                format!("{points} images pairwise inequivalent")
            }
            Outcome::FragmentInvalid { counterexample: (x, y) } => {
                format!("images of {x} and {y} are equivalent")
            }
            Outcome::ChainDiagnostic {
                chain_len,
                distinct_classes,
                pairwise_inequivalent,
            } => format!(
                "heuristic: chain of {chain_len} elements meets {distinct_classes} classes; \
                 pairwise inequivalent: {pairwise_inequivalent}"
            ),
            Outcome::Witnessed { witness } => format!("witness: {witness}"),
            Outcome::NotWitnessed { pigeonhole: Some(ph) } => {
                let inventory = match ph.target_class_total {
                    Some(t) => format!("; complete target inventory: {t}"),
                    None => String::new(),
                };
                format!(
                    "pigeonhole: {} source classes vs {} target classes{}",
                    ph.source_classes, ph.target_classes, inventory
                )
            }
            Outcome::NotWitnessed { pigeonhole: None } => {
                "no witness on the stated windows".to_string()
            }
        }
    }
}

/// One named check with its outcome and conclusiveness flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: String,
    /// True only when a finite, independently re-checkable certificate
    /// backs a claim about all of ω; everything else is bound-relative.
    pub conclusive: bool,
    pub outcome: Outcome,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scope = if self.conclusive {
            "conclusive"
        } else {
            "bound-relative"
        };
        write!(
            f,
            "{} [{}]: {} — {}",
            self.check,
            scope,
            self.outcome.label(),
            self.outcome.detail()
        )
    }
}

/// Findings for one subject relation (or pair) on one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub subject: String,
    pub bound: u64,
    pub findings: Vec<Finding>,
}

impl AuditReport {
    /// Any finding carrying window-scale evidence against a checked
    /// criterion? Drives the process exit code so scripts can react.
    pub fn has_violation_evidence(&self) -> bool {
        self.findings
            .iter()
            .any(|f| matches!(f.outcome, Outcome::ViolationEvidence { .. }))
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "audit of {} on [0, {}]", self.subject, self.bound)?;
        for finding in &self.findings {
            writeln!(f, "  {finding}")?;
        }
        Ok(())
    }
}

/// Check how many classes of `r` on the window the set `w` intersects.
///
/// Heuristic reading of "a set intersecting enough classes must intersect
/// all of them": hitting every class, or no more than `threshold` classes,
/// is consistent; hitting more than `threshold` while missing some is
/// violation evidence. The default threshold is half the window's class
/// count. Elements of `w` beyond the bound are ignored — the window is
/// the whole story. Always bound-relative.
pub fn minimality_criterion(
    r: &Relation,
    w: &[u64],
    bound: u64,
    threshold: Option<usize>,
    subject: &str,
) -> Result<AuditReport, Error> {
    let reps = r.least_representatives(bound)?;
    let threshold = threshold.unwrap_or(reps.len() / 2);
    let mut hit: BTreeSet<u64> = BTreeSet::new();
    for &x in w {
        if x <= bound {
            hit.insert(r.rep(x)?);
        }
    }
    let missed_reps: Vec<u64> = reps.iter().copied().filter(|p| !hit.contains(p)).collect();
    let classes_hit = hit.len();
    let classes_total = reps.len();
    let outcome = if classes_hit > threshold && !missed_reps.is_empty() {
        Outcome::ViolationEvidence {
            classes_hit,
            classes_total,
            threshold,
            missed_reps,
        }
    } else {
        Outcome::Consistent {
            classes_hit,
            classes_total,
            threshold,
            missed_reps,
        }
    };
    Ok(AuditReport {
        subject: subject.to_string(),
        bound,
        findings: vec![Finding {
            check: "minimality-criterion".to_string(),
            conclusive: false,
            outcome,
        }],
    })
}

/// Gather window-scale evidence about whether `r` admits a reduction from
/// the identity relation. For each candidate `f`, checks that the images
/// `f(0), …, f(bound)` are pairwise `r`-inequivalent (a valid fragment is
/// evidence *against* darkness), and runs a round-trip chain diagnostic
/// driven by the occurrence order of `r_enum`. Never confirms darkness.
pub fn darkness_evidence(
    r: &Relation,
    r_enum: &Enumeration,
    candidates: &[ReductionFn],
    bound: u64,
    subject: &str,
) -> Result<AuditReport, Error> {
    let mut findings = Vec::new();
    // Occurrence-indexing back map: v ↦ the v-th distinct element the
    // enumeration mentions, falling back to v itself past the trace.
    let occurring = r_enum.occurring_elements();
    let back = |v: u64| -> u64 {
        usize::try_from(v)
            .ok()
            .and_then(|i| occurring.get(i).copied())
            .unwrap_or(v)
    };
    for (i, f) in candidates.iter().enumerate() {
        let images: Vec<u64> = (0..=bound).map(|x| f.eval(x)).collect();
        for &v in &images {
            if v > r.window_bound() {
                return Err(Error::UndecidedWindow {
                    value: v,
                    bound: r.window_bound(),
                });
            }
        }
        let mut fragment = Outcome::FragmentValid {
            points: images.len(),
        };
        'scan: for x in 0..images.len() {
            for y in (x + 1)..images.len() {
                if r.holds(images[x], images[y])? {
                    fragment = Outcome::FragmentInvalid {
                        counterexample: (x as u64, y as u64),
                    };
                    break 'scan;
                }
            }
        }
        findings.push(Finding {
            check: format!("fragment-{i}"),
            conclusive: false,
            outcome: fragment,
        });

        // Round-trip chain from 0; stops on leaving the window or on the
        // first repeated element (the repeat is kept so a settled chain
        // is visibly not pairwise inequivalent).
        let mut chain = vec![0u64];
        let mut seen: BTreeSet<u64> = chain.iter().copied().collect();
        for _ in 0..bound {
            let next = back(f.eval(*chain.last().expect("chain is nonempty")));
            if next > bound {
                break;
            }
            chain.push(next);
            if !seen.insert(next) {
                break;
            }
        }
        let mut class_reps = BTreeSet::new();
        for &a in &chain {
            class_reps.insert(r.rep(a)?);
        }
        findings.push(Finding {
            check: format!("chain-{i}"),
            conclusive: false,
            outcome: Outcome::ChainDiagnostic {
                chain_len: chain.len(),
                distinct_classes: class_reps.len(),
                pairwise_inequivalent: class_reps.len() == chain.len(),
            },
        });
    }
    Ok(AuditReport {
        subject: subject.to_string(),
        bound,
        findings,
    })
}

/// Search for reductions both ways between `r` and `s` on the stated
/// windows. A direction is conclusive only when its pigeonhole certificate
/// shows the target's complete class inventory; witnessed directions are
/// always bound-relative (finite fragments of incomparable relations are
/// often comparable).
pub fn incomparability_refute(
    r: &Relation,
    s: &Relation,
    bound: u64,
    image_bound: u64,
    subject: &str,
) -> Result<AuditReport, Error> {
    let mut findings = Vec::new();
    for (check, from, to) in [("reduce-forward", r, s), ("reduce-backward", s, r)] {
        let verdict = search_reduction(from, to, bound, image_bound)?;
        let (conclusive, outcome) = match verdict {
            Verdict::Witness(f) => (false, Outcome::Witnessed { witness: f }),
            Verdict::NoWitness { pigeonhole, .. } => (
                pigeonhole.as_ref().is_some_and(Pigeonhole::is_conclusive),
                Outcome::NotWitnessed { pigeonhole },
            ),
            Verdict::Valid | Verdict::Invalid { .. } => {
                unreachable!("search never returns a verification verdict")
            }
        };
        findings.push(Finding {
            check: check.to_string(),
            conclusive,
            outcome,
        });
    }
    Ok(AuditReport {
        subject: subject.to_string(),
        bound,
        findings,
    })
}
