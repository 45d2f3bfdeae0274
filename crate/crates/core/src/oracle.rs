//! Brute-force ground truth: exhaustive enumeration of valid dependencies
//! within explicit bounds.
//!
//! Everything here is deliberately unclever. Statements are checked
//! straight off their tuple-pair definitions, candidate spaces are
//! enumerated in full, and a combinatorial guard fails hard rather than
//! silently truncating. The discovery engines are differential-tested
//! against these functions; when the two disagree, trust this module.

use thiserror::Error;

use crate::checker::{holds_canonical, order_compatible, satisfies_od};
use crate::combinatorics::{k_subsets, repeat_free_lists};
use crate::deps::{map_od_to_canonical, CanonicalDependency, DependencySet, ListOd};
use crate::discovery_set::is_derivable;
use crate::model::Table;

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationBounds {
    /// Longest attribute list on either side of a candidate.
    pub max_list_len: usize,
    /// Whether one attribute may appear on both sides of a candidate
    /// (lists never repeat an attribute internally).
    pub allow_repeats: bool,
    /// Widest schema accepted; enumeration over a wider table is an error,
    /// never a truncation.
    pub max_attrs: usize,
}

impl EnumerationBounds {
    /// Bounds with the default schema guard of six attributes.
    pub fn new(max_list_len: usize, allow_repeats: bool) -> Self {
        EnumerationBounds {
            max_list_len,
            allow_repeats,
            max_attrs: 6,
        }
    }

    pub fn with_max_attrs(mut self, max_attrs: usize) -> Self {
        self.max_attrs = max_attrs;
        self
    }
}

impl Default for EnumerationBounds {
    fn default() -> Self {
        EnumerationBounds::new(2, true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("table has {arity} attributes, enumeration is guarded at {max_attrs}; raise max_attrs explicitly to proceed")]
    BoundsExceeded { arity: usize, max_attrs: usize },
    #[error("max_list_len must be at least 1")]
    EmptyBounds,
}

fn guard(table: &Table, bounds: &EnumerationBounds) -> Result<(), OracleError> {
    if bounds.max_list_len == 0 {
        return Err(OracleError::EmptyBounds);
    }
    if table.arity() > bounds.max_attrs {
        return Err(OracleError::BoundsExceeded {
            arity: table.arity(),
            max_attrs: bounds.max_attrs,
        });
    }
    Ok(())
}

fn side_key(list: &crate::model::AttributeList) -> (usize, Vec<usize>) {
    (list.len(), list.as_slice().to_vec())
}

fn sides_overlap(x: &crate::model::AttributeList, y: &crate::model::AttributeList) -> bool {
    x.iter().any(|a| y.contains(a))
}

/// Every valid, nontrivial order compatibility statement with both sides
/// within the length bound, deduplicated under symmetry (the side with the
/// shorter, lexicographically smaller list comes first). With
/// `allow_repeats` off, the two sides must be disjoint.
pub fn enumerate_valid_ocds(
    table: &Table,
    bounds: &EnumerationBounds,
) -> Result<Vec<ListOd>, OracleError> {
    guard(table, bounds)?;
    let mut sides = repeat_free_lists(table.arity(), bounds.max_list_len, false);
    sides.sort_by_key(side_key);

    let mut valid = Vec::new();
    for (i, lhs) in sides.iter().enumerate() {
        for rhs in &sides[i + 1..] {
            if !bounds.allow_repeats && sides_overlap(lhs, rhs) {
                continue;
            }
            let candidate = ListOd::order_compatible(lhs.clone(), rhs.clone());
            if candidate.is_trivial() {
                continue;
            }
            if order_compatible(table, lhs, rhs) {
                valid.push(candidate);
            }
        }
    }
    valid.sort_by_key(ListOd::sort_key);
    Ok(valid)
}

/// Every valid ordering statement with both sides within the length bound,
/// including trivially valid ones (flag them with [`ListOd::is_trivial`]).
/// Sides may be empty; with `allow_repeats` off they must be disjoint.
pub fn enumerate_valid_list_ods(
    table: &Table,
    bounds: &EnumerationBounds,
) -> Result<Vec<ListOd>, OracleError> {
    guard(table, bounds)?;
    let sides = repeat_free_lists(table.arity(), bounds.max_list_len, true);

    let mut valid = Vec::new();
    for lhs in &sides {
        for rhs in &sides {
            if !bounds.allow_repeats && sides_overlap(lhs, rhs) {
                continue;
            }
            if satisfies_od(table, lhs, rhs) {
                valid.push(ListOd::orders(lhs.clone(), rhs.clone()));
            }
        }
    }
    valid.sort_by_key(ListOd::sort_key);
    Ok(valid)
}

/// Every nontrivial canonical statement over schemas of `arity` attributes
/// with a context of at most `max_context` attributes, in set order. Pure
/// combinatorics, no table involved; the candidate count grows as
/// 2^arity · arity², so keep arity small.
pub fn enumerate_canonical_candidates(arity: usize, max_context: usize) -> Vec<CanonicalDependency> {
    let mut all = DependencySet::new();
    for size in 0..=max_context.min(arity) {
        for context in k_subsets(arity, size) {
            for a in (0..arity).filter(|&a| !context.contains(a)) {
                all.insert(
                    CanonicalDependency::constant(context.clone(), a)
                        .expect("attribute chosen outside the context"),
                );
                for b in (a + 1..arity).filter(|&b| !context.contains(b)) {
                    all.insert(
                        CanonicalDependency::compatible(context.clone(), a, b)
                            .expect("attributes chosen outside the context"),
                    );
                }
            }
        }
    }
    all.iter().cloned().collect()
}

/// Does the canonical layer characterize list-level validity within the
/// bounds? For every ordering statement in the bounded candidate space,
/// three verdicts must coincide: the direct tuple-pair check, the
/// conjunction of its canonical image under [`holds_canonical`], and the
/// derivability of that image from `canon`.
///
/// `canon` should come from a discovery run deep enough to cover contexts
/// of size 2·max_list_len − 2 (the deepest context an image can mention);
/// the default discovery depth always qualifies.
pub fn canonical_closure_agrees(
    table: &Table,
    canon: &DependencySet,
    bounds: &EnumerationBounds,
) -> Result<bool, OracleError> {
    guard(table, bounds)?;
    let sides = repeat_free_lists(table.arity(), bounds.max_list_len, true);
    for lhs in &sides {
        for rhs in &sides {
            if !bounds.allow_repeats && sides_overlap(lhs, rhs) {
                continue;
            }
            let valid = satisfies_od(table, lhs, rhs);
            let image = map_od_to_canonical(lhs, rhs);
            let image_holds = image.iter().all(|d| holds_canonical(table, d));
            let image_derivable = image.iter().all(|d| is_derivable(d, canon));
            if valid != image_holds || valid != image_derivable {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
