//! Row partitions under attribute-set agreement, and single-attribute
//! refinement.
//!
//! `partition(table, X)` groups rows into equivalence classes that agree on
//! every attribute of X; the empty set yields one class holding all rows.
//! `refine(p, table, A)` splits each class of `p` by the values of one more
//! attribute, producing exactly `partition(table, X ∪ {A})` without
//! re-scanning the whole table. Refinement only ever splits classes, never
//! merges them, so class counts are monotone along the subset lattice.
//!
//! Classes are kept in a canonical order (rows ascending within a class,
//! classes ascending by their first row), which makes partitions directly
//! comparable and every traversal deterministic.

use std::collections::HashMap;

use crate::model::{AttributeSet, Table, Value};

/// A nonempty set of row ids that agree on the partition's context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClass(Vec<usize>);

impl EquivalenceClass {
    fn new(mut rows: Vec<usize>) -> Self {
        debug_assert!(!rows.is_empty(), "equivalence classes are nonempty");
        rows.sort_unstable();
        EquivalenceClass(rows)
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, row_id: usize) -> bool {
        self.0.binary_search(&row_id).is_ok()
    }
}

/// The partition of a table's rows by agreement on a context set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    over: AttributeSet,
    classes: Vec<EquivalenceClass>,
}

impl Partition {
    pub fn over(&self) -> &AttributeSet {
        &self.over
    }

    pub fn classes(&self) -> &[EquivalenceClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// True when every class of `self` sits inside some class of
    /// `coarser`. Refinement never merges, so this holds along any chain
    /// of [`refine`] calls.
    pub fn is_refinement_of(&self, coarser: &Partition) -> bool {
        self.classes.iter().all(|fine| {
            fine.rows().first().is_some_and(|&first| {
                coarser
                    .classes
                    .iter()
                    .any(|coarse| coarse.contains(first) && fine.rows().iter().all(|&r| coarse.contains(r)))
            })
        })
    }

    fn from_groups(over: AttributeSet, groups: Vec<Vec<usize>>) -> Partition {
        let mut classes: Vec<EquivalenceClass> = groups
            .into_iter()
            .filter(|rows| !rows.is_empty())
            .map(EquivalenceClass::new)
            .collect();
        classes.sort_by_key(|class| class.rows()[0]);
        Partition { over, classes }
    }
}

/// Groups the table's rows into classes agreeing on every attribute of
/// `over`. An empty table has no classes; an empty context puts all rows
/// into one class.
pub fn partition(table: &Table, over: &AttributeSet) -> Partition {
    let mut groups: HashMap<Vec<&Value>, Vec<usize>> = HashMap::new();
    let mut order: Vec<Vec<&Value>> = Vec::new();
    for row in table.rows() {
        let key: Vec<&Value> = over.iter().map(|a| row.value(a)).collect();
        groups
            .entry(key.clone())
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(row.row_id());
    }
    let grouped = order
        .into_iter()
        .map(|key| groups.remove(&key).unwrap_or_default())
        .collect();
    Partition::from_groups(over.clone(), grouped)
}

/// Splits each class of `p` by the values of one more attribute; the result
/// equals `partition(table, p.over() ∪ {attribute})`. The attribute must
/// not already belong to the context.
pub fn refine(p: &Partition, table: &Table, attribute: usize) -> Partition {
    assert!(
        !p.over().contains(attribute),
        "refine: attribute {attribute} is already in the context {}",
        p.over()
    );
    let mut grouped: Vec<Vec<usize>> = Vec::with_capacity(p.class_count());
    for class in p.classes() {
        let mut sub: HashMap<&Value, Vec<usize>> = HashMap::new();
        let mut order: Vec<&Value> = Vec::new();
        for &row_id in class.rows() {
            let v = table.value(row_id, attribute);
            sub.entry(v)
                .or_insert_with(|| {
                    order.push(v);
                    Vec::new()
                })
                .push(row_id);
        }
        for key in order {
            if let Some(rows) = sub.remove(key) {
                grouped.push(rows);
            }
        }
    }
    Partition::from_groups(p.over().with(attribute), grouped)
}
