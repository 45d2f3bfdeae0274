//! Order dependencies over typed relational tables: checking, witnesses,
//! translation between list-shaped and set-based canonical statements,
//! exhaustive reference enumeration, and two discovery engines.
//!
//! An order dependency ⟨X⟩ ↦ ⟨Y⟩ says that sorting a table by the
//! attribute list X also sorts it by Y. It factors into an equality part
//! (tuples agreeing on X agree on Y — violations are *splits*) and an
//! ordering part (X and Y never rank a pair in opposite directions —
//! violations are *swaps*). The set-based canonical form expresses both
//! parts inside equivalence-class contexts: `{X}: [] -> A` (A constant
//! within each class of the partition by X) and `{X}: A ~ B` (A and B
//! swap-free within each class).
//!
//! Module map:
//!
//! - [`model`] — values, typed tables, attribute lists/sets, and the
//!   lexicographic comparisons everything else builds on;
//! - [`deps`] — dependency statements of both shapes and the mappings
//!   from list-shaped statements to their canonical image sets;
//! - [`partition`] — equivalence-class partitions and their refinement;
//! - [`checker`] — pairwise checks, split/swap witnesses, and canonical
//!   statement evaluation within partitions;
//! - [`oracle`] — brute-force enumeration of valid statements within
//!   bounds, the reference the fast paths are tested against;
//! - [`discovery_set`] — complete, minimality-pruned discovery over the
//!   context lattice;
//! - [`discovery_list`] — the list-shaped traversal that cannot spell
//!   repeated attributes, plus the differential report that quantifies
//!   what it misses;
//! - [`samples`] — the small worked tables the documentation and tests
//!   refer to.

mod combinatorics;

pub mod checker;
pub mod deps;
pub mod discovery_list;
pub mod discovery_set;
pub mod model;
pub mod oracle;
pub mod partition;
pub mod samples;

pub use checker::{
    check, decompose_check, find_splits, find_swaps, holds_canonical, order_compatible,
    order_equivalent, satisfies_od, Witness, WitnessReport,
};
pub use deps::{
    fd_as_od, map_fd_to_canonical, map_ocd_to_canonical, map_od_to_canonical, Body,
    CanonicalDependency, DependencySet, ListOd, OdKind, TrivialStatement,
};
pub use discovery_list::{
    diff_against_complete, DiffReport, ListCandidate, ListDiscoveryError, MissedOcd,
    TraversalRun, TraversalStats,
};
pub use discovery_set::{
    explain_minimality, is_derivable, DiscoveryConfig, DiscoveryRun, DiscoveryStats, ExplainError,
    MinimalityExplanation, MinimalityPolicy,
};
pub use model::{
    compare_values, leq_lex, strict_less_lex, AttributeList, AttributeSet, ModelError, Table,
    Tuple, Value, ValueType,
};
pub use oracle::{
    canonical_closure_agrees, enumerate_canonical_candidates, enumerate_valid_list_ods,
    enumerate_valid_ocds, EnumerationBounds, OracleError,
};
pub use partition::{partition, refine, EquivalenceClass, Partition};
