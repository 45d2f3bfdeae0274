//! Discovery over attribute-list candidates, preserving a deliberate
//! blind spot, plus a differential comparator that makes the blind spot
//! visible.
//!
//! The traversal seeds single-attribute compatibility candidates
//! ⟨a⟩ ~ ⟨b⟩ and grows them by appending one fresh attribute to the end
//! of either side. No candidate ever names the same attribute twice —
//! neither within a side nor across sides — so statements that need a
//! shared prefix, like ⟨a,b⟩ ~ ⟨a,c⟩, are structurally outside the search
//! space even when they hold on the data. Candidates that fail are not
//! grown, which is sound here: appending attributes can never repair a
//! swap, so every valid candidate's ancestors are valid and the traversal
//! reaches all valid candidates its space contains.
//!
//! [`diff_against_complete`] runs the exhaustive enumeration, groups the
//! valid compatibilities by their canonical image so syntactic variants
//! are not double-counted, and reports each group no list-shaped
//! candidate can reach — cross-referenced with whether the set-based
//! discovery covers it (it does: the set-based form has no repeated-name
//! blind spot).

use std::collections::{BTreeMap, HashSet};

use thiserror::Error;

use crate::checker::order_compatible;
use crate::deps::{map_ocd_to_canonical, DependencySet, ListOd};
use crate::discovery_set::{discover as discover_canonical, is_derivable, DiscoveryConfig, MinimalityPolicy};
use crate::model::{AttributeList, Table};
use crate::oracle::{enumerate_valid_ocds, EnumerationBounds, OracleError};

/// A compatibility candidate ⟨lhs⟩ ~ ⟨rhs⟩ in the list-shaped search
/// space: both sides repeat-free, disjoint, and oriented so the first
/// left attribute is smaller than the first right one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListCandidate {
    lhs: AttributeList,
    rhs: AttributeList,
}

impl ListCandidate {
    pub fn lhs(&self) -> &AttributeList {
        &self.lhs
    }

    pub fn rhs(&self) -> &AttributeList {
        &self.rhs
    }

    /// Total number of attribute occurrences; the traversal works level
    /// by level in this measure.
    pub fn level(&self) -> usize {
        self.lhs.len() + self.rhs.len()
    }

    fn uses(&self, attribute: usize) -> bool {
        self.lhs.contains(attribute) || self.rhs.contains(attribute)
    }

    fn as_od(&self) -> ListOd {
        ListOd::order_compatible(self.lhs.clone(), self.rhs.clone())
    }
}

/// All ⟨a⟩ ~ ⟨b⟩ with a < b: one candidate per unordered attribute pair,
/// the mirror image being the same statement.
pub fn seed_candidates(arity: usize) -> Vec<ListCandidate> {
    let mut seeds = Vec::new();
    for a in 0..arity {
        for b in a + 1..arity {
            seeds.push(ListCandidate {
                lhs: AttributeList::from(vec![a]),
                rhs: AttributeList::from(vec![b]),
            });
        }
    }
    seeds
}

/// Grows a candidate by one level: every attribute the candidate does not
/// yet use, appended to the end of either side. The repeat-free shape is
/// preserved by construction and asserted.
pub fn expand(candidate: &ListCandidate, arity: usize) -> Vec<ListCandidate> {
    let mut grown = Vec::new();
    for attribute in (0..arity).filter(|&a| !candidate.uses(a)) {
        let left = ListCandidate {
            lhs: candidate.lhs.concat(&AttributeList::from(vec![attribute])),
            rhs: candidate.rhs.clone(),
        };
        let right = ListCandidate {
            lhs: candidate.lhs.clone(),
            rhs: candidate.rhs.concat(&AttributeList::from(vec![attribute])),
        };
        for child in [left, right] {
            debug_assert!(
                {
                    let mut seen = HashSet::new();
                    child
                        .lhs
                        .iter()
                        .chain(child.rhs.iter())
                        .all(|a| seen.insert(a))
                },
                "expansion repeated an attribute"
            );
            grown.push(child);
        }
    }
    grown
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraversalStats {
    /// Candidate instances produced, duplicates included: the size of the
    /// explored space, not of its deduplicated frontier.
    pub candidates_generated: usize,
    /// Distinct candidates actually evaluated against the table.
    pub candidates_checked: usize,
    /// How many of those were satisfied (and therefore grown).
    pub candidates_satisfied: usize,
}

#[derive(Debug, Clone)]
pub struct TraversalRun {
    pub dependencies: Vec<ListOd>,
    pub stats: TraversalStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListDiscoveryError {
    /// The candidate space is factorial; the depth guard keeps requests
    /// at desk scale.
    #[error("requested level {requested} exceeds the guard of {limit} (twice the arity)")]
    LevelGuard { requested: usize, limit: usize },
}

/// Runs the list-shaped traversal up to `max_level` total attributes per
/// candidate and returns the satisfied compatibilities, sorted.
pub fn discover(table: &Table, max_level: usize) -> Result<Vec<ListOd>, ListDiscoveryError> {
    discover_with_stats(table, max_level).map(|run| run.dependencies)
}

/// As [`discover`], also reporting how much of the space was explored.
pub fn discover_with_stats(
    table: &Table,
    max_level: usize,
) -> Result<TraversalRun, ListDiscoveryError> {
    let arity = table.arity();
    let limit = arity * 2;
    if max_level > limit {
        return Err(ListDiscoveryError::LevelGuard {
            requested: max_level,
            limit,
        });
    }

    let mut stats = TraversalStats::default();
    let mut satisfied: Vec<ListCandidate> = Vec::new();
    let mut seen: HashSet<ListCandidate> = HashSet::new();

    let mut frontier = if max_level >= 2 { seed_candidates(arity) } else { Vec::new() };
    stats.candidates_generated += frontier.len();

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for candidate in frontier {
            if !seen.insert(candidate.clone()) {
                continue;
            }
            stats.candidates_checked += 1;
            if !order_compatible(table, &candidate.lhs, &candidate.rhs) {
                continue;
            }
            stats.candidates_satisfied += 1;
            if candidate.level() < max_level {
                let grown = expand(&candidate, arity);
                stats.candidates_generated += grown.len();
                next.extend(grown);
            }
            satisfied.push(candidate);
        }
        frontier = next;
    }

    let mut dependencies: Vec<ListOd> = satisfied.iter().map(ListCandidate::as_od).collect();
    dependencies.sort_by_key(ListOd::sort_key);
    Ok(TraversalRun {
        dependencies,
        stats,
    })
}

/// A valid compatibility no list-shaped candidate reaches.
#[derive(Debug, Clone)]
pub struct MissedOcd {
    /// Representative of the group of syntactic variants (smallest by
    /// length then content).
    pub od: ListOd,
    /// The canonical image shared by the whole group.
    pub canonical: DependencySet,
    /// Whether the set-based discovery output derives that image.
    pub covered_by_set: bool,
}

/// Outcome of comparing the list-shaped traversal against the exhaustive
/// enumeration, with the set-based discovery as cross-reference.
#[derive(Debug, Clone)]
pub struct DiffReport {
    pub missed: Vec<MissedOcd>,
    pub found_by_both: Vec<ListOd>,
    pub found_only_by_set: Vec<ListOd>,
    pub bounds: EnumerationBounds,
}

/// Orients a pair of sides deterministically (shorter first, then
/// lexicographic) so mirror-image statements compare equal.
fn normalized_sides(od: &ListOd) -> (AttributeList, AttributeList) {
    let key = |l: &AttributeList| (l.len(), l.clone());
    let lhs = od.lhs().clone();
    let rhs = od.rhs().clone();
    if key(&rhs) < key(&lhs) {
        (rhs, lhs)
    } else {
        (lhs, rhs)
    }
}

/// Enumerates every compatibility valid within `bounds` (repeats allowed
/// regardless of the flag passed in — the point is to see the statements
/// the list shape cannot spell), groups them by canonical image, and
/// reports each group the traversal cannot reach. Valid groups with a
/// reachable member land in `found_by_both`; missed groups the set-based
/// output covers land in `found_only_by_set` as well as in `missed`.
pub fn diff_against_complete(
    table: &Table,
    bounds: &EnumerationBounds,
) -> Result<DiffReport, OracleError> {
    let bounds = EnumerationBounds {
        allow_repeats: true,
        ..bounds.clone()
    };
    let valid = enumerate_valid_ocds(table, &bounds)?;

    // The deepest repeat-free candidate that could match a group member
    // has one side of full `max_list_len`, so this depth decides
    // reachability for every enumerated statement.
    let depth = (bounds.max_list_len * 2).min(table.arity());
    let run = discover_with_stats(table, depth)
        .expect("depth is capped at the arity, within the guard");
    let reachable: HashSet<(AttributeList, AttributeList)> =
        run.dependencies.iter().map(normalized_sides).collect();

    let set_output =
        discover_canonical(table, &DiscoveryConfig::default(), &MinimalityPolicy::default());

    let mut groups: BTreeMap<DependencySet, Vec<ListOd>> = BTreeMap::new();
    for od in valid {
        let image = map_ocd_to_canonical(od.lhs(), od.rhs());
        groups.entry(image).or_default().push(od);
    }

    let mut missed = Vec::new();
    let mut found_by_both = Vec::new();
    let mut found_only_by_set = Vec::new();
    for (image, mut members) in groups {
        members.sort_by_key(ListOd::sort_key);
        let reached = members
            .iter()
            .find(|od| reachable.contains(&normalized_sides(od)));
        match reached {
            Some(od) => found_by_both.push(od.clone()),
            None => {
                let covered_by_set = image.iter().all(|d| is_derivable(d, &set_output));
                let od = members[0].clone();
                if covered_by_set {
                    found_only_by_set.push(od.clone());
                }
                missed.push(MissedOcd {
                    od,
                    canonical: image,
                    covered_by_set,
                });
            }
        }
    }
    Ok(DiffReport {
        missed,
        found_by_both,
        found_only_by_set,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AttributeSet, Value, ValueType};
    use crate::samples;

    fn lists(table: &Table, lhs: &[&str], rhs: &[&str]) -> (AttributeList, AttributeList) {
        (table.list(lhs).unwrap(), table.list(rhs).unwrap())
    }

    #[test]
    fn seeds_are_one_per_unordered_pair() {
        assert_eq!(seed_candidates(2).len(), 1);
        assert_eq!(seed_candidates(3).len(), 3);
        assert_eq!(seed_candidates(4).len(), 6);
        for seed in seed_candidates(4) {
            assert!(seed.lhs().as_slice()[0] < seed.rhs().as_slice()[0]);
            assert_eq!(seed.level(), 2);
        }
    }

    #[test]
    fn expansion_appends_each_fresh_attribute_to_each_side() {
        let seed = &seed_candidates(3)[0]; // ⟨0⟩ ~ ⟨1⟩
        let grown = expand(seed, 3);
        let shapes: Vec<(Vec<usize>, Vec<usize>)> = grown
            .iter()
            .map(|c| (c.lhs().iter().collect(), c.rhs().iter().collect()))
            .collect();
        assert_eq!(shapes, vec![(vec![0, 2], vec![1]), (vec![0], vec![1, 2])]);
    }

    #[test]
    fn expansion_of_an_exhausted_candidate_is_empty() {
        let full = ListCandidate {
            lhs: AttributeList::from(vec![0, 2]),
            rhs: AttributeList::from(vec![1]),
        };
        assert!(expand(&full, 3).is_empty());
    }

    #[test]
    fn no_reachable_candidate_repeats_an_attribute() {
        // On identical ascending columns everything is compatible, so the
        // traversal reaches its entire space; none of it may repeat an
        // attribute, and the shared-prefix statement in particular is
        // absent even though it holds.
        let table = ascending_identical(3);
        let found = discover(&table, 6).unwrap();
        for od in &found {
            let mut seen = HashSet::new();
            assert!(od.lhs().iter().chain(od.rhs().iter()).all(|a| seen.insert(a)));
        }
        let shared_prefix = ListOd::order_compatible(
            AttributeList::from(vec![0, 1]),
            AttributeList::from(vec![0, 2]),
        );
        assert!(order_compatible(&table, shared_prefix.lhs(), shared_prefix.rhs()));
        assert!(!found.contains(&shared_prefix));
    }

    #[test]
    fn all_seeds_swap_so_the_traversal_halts_empty() {
        for table in [samples::prefix(), samples::bug7()] {
            let run = discover_with_stats(&table, 4).unwrap();
            assert!(run.dependencies.is_empty());
            assert_eq!(run.stats.candidates_satisfied, 0);
            // Nothing was grown past the seeds.
            let seeds = seed_candidates(table.arity()).len();
            assert_eq!(run.stats.candidates_generated, seeds);
            assert_eq!(run.stats.candidates_checked, seeds);
        }
    }

    #[test]
    fn satisfied_candidates_pass_the_pairwise_check() {
        let taxes = samples::taxes();
        let found = discover(&taxes, 4).unwrap();
        assert!(!found.is_empty());
        for od in &found {
            assert!(order_compatible(&taxes, od.lhs(), od.rhs()), "spurious {od}");
        }
        let (salary, tax) = lists(&taxes, &["salary"], &["tax"]);
        assert!(found.contains(&ListOd::order_compatible(salary, tax)));
    }

    #[test]
    fn depth_guard_rejects_runaway_requests() {
        let taxes = samples::taxes();
        let err = discover(&taxes, taxes.arity() * 2 + 1).unwrap_err();
        assert_eq!(
            err,
            ListDiscoveryError::LevelGuard {
                requested: 19,
                limit: 18
            }
        );
    }

    fn ascending_identical(arity: usize) -> Table {
        let columns = (0..arity)
            .map(|i| (format!("c{i}"), ValueType::Integer))
            .collect();
        let rows = (0..4)
            .map(|r| vec![Value::Integer(r as i64); arity])
            .collect();
        Table::new("identical", columns, rows).unwrap()
    }

    #[test]
    fn explored_space_counts_duplicates_but_checks_each_once() {
        // With every candidate satisfied the traversal walks its whole
        // space: the generated multiset outgrows the deduplicated
        // frontier as soon as candidates acquire multiple parents.
        let run3 = discover_with_stats(&ascending_identical(3), 6).unwrap();
        assert_eq!(run3.stats.candidates_generated, 9);
        assert_eq!(run3.stats.candidates_checked, 9);
        let run4 = discover_with_stats(&ascending_identical(4), 8).unwrap();
        assert_eq!(run4.stats.candidates_generated, 78);
        assert_eq!(run4.stats.candidates_checked, 66);
        assert_eq!(run4.stats.candidates_satisfied, 66);
    }

    #[test]
    fn diff_reports_the_shared_prefix_statements_only_the_set_form_reaches() {
        let prefix = samples::prefix();
        let report =
            diff_against_complete(&prefix, &EnumerationBounds::new(2, false)).unwrap();
        // Repeats are forced on regardless of the flag.
        assert!(report.bounds.allow_repeats);
        assert!(report.found_by_both.is_empty());
        assert_eq!(report.missed.len(), 3);
        assert_eq!(report.found_only_by_set.len(), 3);
        for entry in &report.missed {
            assert!(entry.covered_by_set);
            assert_eq!(entry.canonical.len(), 1);
        }
        // The group keyed by {0}: 1 ~ 2 is represented by ⟨0,1⟩ ~ ⟨0,2⟩.
        let target: DependencySet = [crate::deps::CanonicalDependency::compatible(
            prefix.set(&["A"]).unwrap(),
            1,
            2,
        )
        .unwrap()]
        .into_iter()
        .collect();
        let entry = report
            .missed
            .iter()
            .find(|m| m.canonical == target)
            .expect("the shared-prefix group is missed");
        let (lhs, rhs) = lists(&prefix, &["A", "B"], &["A", "C"]);
        assert_eq!(normalized_sides(&entry.od), (lhs, rhs));
    }

    #[test]
    fn diff_flags_the_repeated_prefix_compatibility_on_the_tax_table() {
        let taxes = samples::taxes();
        let report =
            diff_against_complete(&taxes, &EnumerationBounds::new(2, true).with_max_attrs(9)).unwrap();
        let (bin_side, salary_side) = lists(&taxes, &["year", "bin"], &["year", "salary"]);
        let entry = report
            .missed
            .iter()
            .find(|m| normalized_sides(&m.od) == (bin_side.clone(), salary_side.clone()))
            .expect("the year-prefixed pair is missed");
        assert!(entry.covered_by_set);
        // Its canonical image is the single in-context compatibility.
        let expected: DependencySet = [crate::deps::CanonicalDependency::compatible(
            taxes.set(&["year"]).unwrap(),
            taxes.attribute("bin").unwrap(),
            taxes.attribute("salary").unwrap(),
        )
        .unwrap()]
        .into_iter()
        .collect();
        assert_eq!(entry.canonical, expected);
        // Plain compatibilities the list shape can spell are found by both.
        assert!(!report.found_by_both.is_empty());
        for od in &report.found_by_both {
            assert!(order_compatible(&taxes, od.lhs(), od.rhs()));
        }
    }

    #[test]
    fn diff_is_empty_when_every_group_has_a_repeat_free_member() {
        // Two identical ascending columns: every valid statement,
        // repeated attributes or not, has the single canonical image
        // {}: 0 ~ 1, and the reachable seed ⟨0⟩ ~ ⟨1⟩ represents it.
        let table = ascending_identical(2);
        let report = diff_against_complete(&table, &EnumerationBounds::new(2, true)).unwrap();
        assert!(report.missed.is_empty());
        assert!(report.found_only_by_set.is_empty());
        assert_eq!(report.found_by_both.len(), 1);
    }

    #[test]
    fn groups_needing_a_shared_prefix_are_missed_even_when_their_core_is_found() {
        // On three identical ascending columns the traversal finds the
        // global ⟨1⟩ ~ ⟨2⟩, which logically implies {0}: 1 ~ 2 — but the
        // diff is about reachability of each statement's own group, and
        // no list-shaped candidate has the image {{0}: 1 ~ 2}. Every such
        // prefixed-context group is reported missed, with the set-based
        // output covering it.
        let table = ascending_identical(3);
        let report = diff_against_complete(&table, &EnumerationBounds::new(2, true)).unwrap();
        let prefixed: DependencySet = [crate::deps::CanonicalDependency::compatible(
            AttributeSet::from_iter([0]),
            1,
            2,
        )
        .unwrap()]
        .into_iter()
        .collect();
        let entry = report
            .missed
            .iter()
            .find(|m| m.canonical == prefixed)
            .expect("the prefixed-context group is missed");
        assert!(entry.covered_by_set);
        // Its core really was found; the miss is about the group itself.
        let core = ListOd::order_compatible(
            AttributeList::from(vec![1]),
            AttributeList::from(vec![2]),
        );
        assert!(report.found_by_both.contains(&core));
    }

    #[test]
    fn missed_statements_never_intersect_the_traversal_output() {
        let taxes = samples::taxes();
        let report =
            diff_against_complete(&taxes, &EnumerationBounds::new(2, true).with_max_attrs(9)).unwrap();
        let found: HashSet<(AttributeList, AttributeList)> = discover(&taxes, 4)
            .unwrap()
            .iter()
            .map(normalized_sides)
            .collect();
        for entry in &report.missed {
            assert!(!found.contains(&normalized_sides(&entry.od)));
        }
    }
}
