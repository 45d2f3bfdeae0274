//! Complete discovery of minimal canonical dependencies by breadth-first
//! traversal of the context lattice, reusing partitions level to level.
//!
//! Contexts are visited by ascending size; the partition for a context is
//! refined from its parent (the context minus its largest attribute)
//! rather than rebuilt. Within each context, constants are evaluated
//! before compatibilities so a fresh constant can immediately prune the
//! pairs it dominates.
//!
//! Minimality is defined by three result-set rules, each individually
//! toggleable through [`MinimalityPolicy`]:
//!
//! - context-subset: drop a statement when the same body was already
//!   emitted over a proper subset context;
//! - constant-side: drop a compatibility when either side is constant over
//!   a subset context (a constant attribute never swaps with anything);
//! - determined-context skip: never visit a context containing an
//!   attribute that is constant over a subset of the remaining context
//!   (its partition equals the partition without it).
//!
//! With every rule off, the traversal emits the full valid set. Whatever
//! the toggles, the emitted set derives every valid canonical statement
//! within the depth bound; [`is_derivable`] is that judgment and
//! [`explain_minimality`] names the rule that kept a statement out.
//!
//! Contexts within one level are independent, so a level may be processed
//! in parallel; outputs are merged in context order either way, and the
//! result is identical bit for bit.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::checker::{constant_within, swap_free_within};
use crate::combinatorics::k_subsets;
use crate::deps::{Body, CanonicalDependency, DependencySet};
use crate::model::{AttributeSet, Table};
use crate::partition::{partition, refine, Partition};

/// Traversal controls (orthogonal to the minimality rules).
#[derive(Debug, Clone, Default)]
pub struct DiscoveryConfig {
    /// Largest context visited; defaults to the schema arity (full depth).
    pub max_context_size: Option<usize>,
    /// Collect a rendered note for every trivial statement skipped
    /// (debugging aid; trivial statements have no value representation).
    pub emit_trivial: bool,
    /// Process each lattice level's contexts concurrently. Output is
    /// identical either way.
    pub parallel: bool,
}

/// Which minimality rules prune the result set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinimalityPolicy {
    pub context_subset: bool,
    pub constant_side: bool,
    pub skip_determined_contexts: bool,
}

impl Default for MinimalityPolicy {
    fn default() -> Self {
        MinimalityPolicy {
            context_subset: true,
            constant_side: true,
            skip_determined_contexts: true,
        }
    }
}

impl MinimalityPolicy {
    /// Every rule off: the traversal emits the full valid set.
    pub fn none() -> Self {
        MinimalityPolicy {
            context_subset: false,
            constant_side: false,
            skip_determined_contexts: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DiscoveryStats {
    /// Contexts whose candidates were evaluated.
    pub contexts_visited: usize,
    /// Contexts pruned whole by the determined-context rule.
    pub contexts_skipped: usize,
}

/// A discovery result with its traversal statistics.
#[derive(Debug, Clone)]
pub struct DiscoveryRun {
    pub dependencies: DependencySet,
    pub stats: DiscoveryStats,
    /// Rendered trivial statements skipped, when `emit_trivial` asked for
    /// them; empty otherwise.
    pub trivial_skipped: Vec<String>,
}

/// Emitted statements indexed for the subsumption checks.
#[derive(Default)]
struct Emitted {
    constants: Vec<(AttributeSet, usize)>,
    compatibles: Vec<(AttributeSet, (usize, usize))>,
}

impl Emitted {
    fn constant_over_subset(&self, context: &AttributeSet, attribute: usize) -> bool {
        self.constants
            .iter()
            .any(|(over, a)| *a == attribute && over.is_subset(context))
    }

    fn compatible_over_proper_subset(&self, context: &AttributeSet, pair: (usize, usize)) -> bool {
        self.compatibles
            .iter()
            .any(|(over, p)| *p == pair && over.is_proper_subset(context))
    }
}

/// What one context contributed.
struct ContextOutcome {
    context: AttributeSet,
    classes: Partition,
    constants: Vec<usize>,
    compatibles: Vec<(usize, usize)>,
    trivial: Vec<String>,
}

fn evaluate_context(
    table: &Table,
    context: &AttributeSet,
    classes: Partition,
    emitted: &Emitted,
    policy: &MinimalityPolicy,
    collect_trivial: bool,
) -> ContextOutcome {
    let arity = table.arity();
    let mut trivial = Vec::new();
    if collect_trivial {
        for a in context.iter() {
            trivial.push(format!(
                "{context}: [] -> {a} (context attribute, constant within its own classes)"
            ));
        }
        for a in 0..arity {
            for b in a + 1..arity {
                if context.contains(a) || context.contains(b) {
                    trivial.push(format!(
                        "{context}: {a} ~ {b} (context attribute, tied within its own classes)"
                    ));
                }
            }
        }
    }

    // Constants first: a constant found here prunes this context's pairs.
    let mut constants = Vec::new();
    for a in (0..arity).filter(|&a| !context.contains(a)) {
        if policy.context_subset && emitted.constant_over_subset(context, a) {
            continue;
        }
        if constant_within(table, &classes, a) {
            constants.push(a);
        }
    }

    let mut compatibles = Vec::new();
    for a in (0..arity).filter(|&a| !context.contains(a)) {
        for b in (a + 1..arity).filter(|&b| !context.contains(b)) {
            if policy.context_subset && emitted.compatible_over_proper_subset(context, (a, b)) {
                continue;
            }
            if policy.constant_side
                && (constants.contains(&a)
                    || constants.contains(&b)
                    || emitted.constant_over_subset(context, a)
                    || emitted.constant_over_subset(context, b))
            {
                continue;
            }
            if swap_free_within(table, &classes, a, b) {
                compatibles.push((a, b));
            }
        }
    }

    ContextOutcome {
        context: context.clone(),
        classes,
        constants,
        compatibles,
        trivial,
    }
}

/// Runs discovery and returns the dependency set alone.
pub fn discover(table: &Table, config: &DiscoveryConfig, policy: &MinimalityPolicy) -> DependencySet {
    discover_with_stats(table, config, policy).dependencies
}

/// Runs discovery, keeping traversal statistics and any trivial-statement
/// notes.
pub fn discover_with_stats(
    table: &Table,
    config: &DiscoveryConfig,
    policy: &MinimalityPolicy,
) -> DiscoveryRun {
    let arity = table.arity();
    let depth = config.max_context_size.unwrap_or(arity).min(arity);

    let mut emitted = Emitted::default();
    let mut dependencies = DependencySet::new();
    let mut stats = DiscoveryStats::default();
    let mut trivial_skipped = Vec::new();
    // Partitions of the previous level, keyed by context.
    let mut parents: HashMap<AttributeSet, Partition> = HashMap::new();

    for size in 0..=depth {
        let mut level: Vec<AttributeSet> = Vec::new();
        for context in k_subsets(arity, size) {
            // Skip contexts containing an attribute already determined by
            // the rest: its partition adds nothing new, and everything
            // valid over it is valid over the smaller context too.
            let determined = policy.skip_determined_contexts
                && emitted.constants.iter().any(|(over, a)| {
                    context.contains(*a) && !over.contains(*a) && over.is_subset(&context)
                });
            if determined {
                stats.contexts_skipped += 1;
            } else {
                level.push(context);
            }
        }

        let classes_for = |context: &AttributeSet| -> Partition {
            match context.iter().last() {
                None => partition(table, context),
                Some(largest) => {
                    let parent: AttributeSet =
                        context.iter().filter(|&a| a != largest).collect();
                    match parents.get(&parent) {
                        Some(coarser) => refine(coarser, table, largest),
                        // The parent was skipped (possible only with the
                        // determined-context rule off mid-policy changes);
                        // fall back to a direct build.
                        None => partition(table, context),
                    }
                }
            }
        };

        let outcomes: Vec<ContextOutcome> = if config.parallel {
            level
                .par_iter()
                .map(|context| {
                    evaluate_context(
                        table,
                        context,
                        classes_for(context),
                        &emitted,
                        policy,
                        config.emit_trivial,
                    )
                })
                .collect()
        } else {
            level
                .iter()
                .map(|context| {
                    evaluate_context(
                        table,
                        context,
                        classes_for(context),
                        &emitted,
                        policy,
                        config.emit_trivial,
                    )
                })
                .collect()
        };

        // Merge in context order; `collect` preserved it above, so the
        // result is independent of scheduling.
        parents.clear();
        for outcome in outcomes {
            stats.contexts_visited += 1;
            for a in outcome.constants {
                let d = CanonicalDependency::constant(outcome.context.clone(), a)
                    .expect("candidate attributes lie outside the context");
                dependencies.insert(d);
                emitted.constants.push((outcome.context.clone(), a));
            }
            for (a, b) in outcome.compatibles {
                let d = CanonicalDependency::compatible(outcome.context.clone(), a, b)
                    .expect("candidate attributes lie outside the context");
                dependencies.insert(d);
                emitted.compatibles.push((outcome.context.clone(), (a, b)));
            }
            trivial_skipped.extend(outcome.trivial);
            parents.insert(outcome.context.clone(), outcome.classes);
        }
    }

    DiscoveryRun {
        dependencies,
        stats,
        trivial_skipped,
    }
}

/// Can the statement be read off the set? A constant follows from the same
/// constant over any subset context; a compatibility from the same body
/// over a subset context, or from a constant on either of its sides over a
/// subset context. Membership itself counts (subset includes equality).
pub fn is_derivable(dependency: &CanonicalDependency, from: &DependencySet) -> bool {
    let context = dependency.context();
    match dependency.body() {
        Body::Constant(a) => from.iter().any(|e| {
            matches!(e.body(), Body::Constant(c) if c == a) && e.context().is_subset(context)
        }),
        Body::Compatible(a, b) => from.iter().any(|e| {
            e.context().is_subset(context)
                && match e.body() {
                    Body::Compatible(x, y) => (x, y) == (a, b),
                    Body::Constant(c) => c == a || c == b,
                }
        }),
    }
}

/// Why a valid statement is absent from a discovery result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalityExplanation {
    /// Present in the result: nothing prunes it.
    Minimal,
    /// Dropped because this emitted statement carries the same body over a
    /// proper subset context.
    ContextSubset { by: CanonicalDependency },
    /// Dropped because this emitted constant covers one side of the pair.
    ConstantSide { by: CanonicalDependency },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("the statement neither appears in nor follows from the discovered set")]
    UnknownDependency,
}

/// Explains a statement's standing relative to a discovery result produced
/// under `policy`: minimal (present), pruned by a named rule, or unknown
/// (it does not follow from the result at all, e.g. it simply does not
/// hold on the table).
pub fn explain_minimality(
    dependency: &CanonicalDependency,
    result: &DependencySet,
    policy: &MinimalityPolicy,
) -> Result<MinimalityExplanation, ExplainError> {
    if result.contains(dependency) {
        return Ok(MinimalityExplanation::Minimal);
    }
    let context = dependency.context();
    if policy.context_subset {
        let same_body = result.iter().find(|e| {
            e.body() == dependency.body() && e.context().is_proper_subset(context)
        });
        if let Some(by) = same_body {
            return Ok(MinimalityExplanation::ContextSubset { by: by.clone() });
        }
    }
    if policy.constant_side {
        if let Body::Compatible(a, b) = dependency.body() {
            let side_constant = result.iter().find(|e| {
                matches!(e.body(), Body::Constant(c) if c == a || c == b)
                    && e.context().is_subset(context)
            });
            if let Some(by) = side_constant {
                return Ok(MinimalityExplanation::ConstantSide { by: by.clone() });
            }
        }
    }
    Err(ExplainError::UnknownDependency)
}
