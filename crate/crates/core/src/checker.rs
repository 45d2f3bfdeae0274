//! Dependency checking and violation witnesses.
//!
//! List-form statements are checked straight off their definition, by
//! exhaustive tuple-pair comparison; canonical statements are checked
//! class-by-class on the partition of their context. The two routes agree
//! (canonical statements are definable either way), and the tests hold
//! them to that.
//!
//! A violated ordering statement always leaves one of two footprints:
//!
//! - a split: two rows agree on the left set but differ on a right
//!   attribute (the functional half fails);
//! - a swap: one row strictly precedes another on the left list while the
//!   other strictly precedes it on the right list (the compatibility half
//!   fails).
//!
//! [`decompose_check`] evaluates the two halves separately, and the
//! statement holds exactly when both do. [`find_splits`] and [`find_swaps`]
//! return every witnessing pair, deterministically ordered.

use crate::deps::{Body, CanonicalDependency, ListOd, OdKind};
use crate::model::{
    compare_values, leq_lex, strict_less_lex, AttributeList, AttributeSet, Table, Tuple,
};
use crate::partition::{partition, Partition};

/// Does sorting by `lhs` also sort by `rhs`? Checks every ordered tuple
/// pair: whenever `t` precedes-or-ties `s` on the left, it must on the
/// right. Holds vacuously on tables with fewer than two rows.
pub fn satisfies_od(table: &Table, lhs: &AttributeList, rhs: &AttributeList) -> bool {
    table
        .rows()
        .iter()
        .all(|t| table.rows().iter().all(|s| !leq_lex(t, s, lhs) || leq_lex(t, s, rhs)))
}

/// Do the two lists order the rows identically?
pub fn order_equivalent(table: &Table, lhs: &AttributeList, rhs: &AttributeList) -> bool {
    satisfies_od(table, lhs, rhs) && satisfies_od(table, rhs, lhs)
}

/// Do the two lists admit one common ordering? Defined as order
/// equivalence of the two concatenations lhs·rhs and rhs·lhs. An empty
/// list is compatible with anything.
pub fn order_compatible(table: &Table, lhs: &AttributeList, rhs: &AttributeList) -> bool {
    order_equivalent(table, &lhs.concat(rhs), &rhs.concat(lhs))
}

/// Checks a list-form statement of any kind.
pub fn check(table: &Table, od: &ListOd) -> bool {
    match od.kind() {
        OdKind::Orders => satisfies_od(table, od.lhs(), od.rhs()),
        OdKind::OrderEquivalent => order_equivalent(table, od.lhs(), od.rhs()),
        OdKind::OrderCompatible => order_compatible(table, od.lhs(), od.rhs()),
    }
}

/// Splits ⟨lhs⟩ ↦ ⟨rhs⟩ into its two halves and checks each:
/// the functional half ⟨lhs⟩ ↦ ⟨lhs·rhs⟩ and the compatibility half
/// lhs ~ rhs. The original statement holds exactly when both do.
pub fn decompose_check(table: &Table, lhs: &AttributeList, rhs: &AttributeList) -> (bool, bool) {
    (
        satisfies_od(table, lhs, &lhs.concat(rhs)),
        order_compatible(table, lhs, rhs),
    )
}

/// A concrete two-row violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// The rows agree on every attribute of `agrees_on` yet differ at
    /// `differs_at`. Rows are reported (smaller id, larger id).
    Split {
        rows: (usize, usize),
        agrees_on: AttributeSet,
        differs_at: usize,
    },
    /// The first row strictly precedes the second on `left` while the
    /// second strictly precedes the first on `right`; the pair is oriented
    /// by left-list precedence, so the first id may exceed the second.
    Swap {
        rows: (usize, usize),
        left: AttributeList,
        right: AttributeList,
    },
}

impl Witness {
    pub fn rows(&self) -> (usize, usize) {
        match self {
            Witness::Split { rows, .. } | Witness::Swap { rows, .. } => *rows,
        }
    }
}

/// A witness list capped for presentation: `total` always counts every
/// witness found, even when `witnesses` was truncated to `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    witnesses: Vec<Witness>,
    total: usize,
    limit: Option<usize>,
}

impl WitnessReport {
    pub fn capped(mut all: Vec<Witness>, limit: Option<usize>) -> Self {
        let total = all.len();
        if let Some(limit) = limit {
            all.truncate(limit);
        }
        WitnessReport {
            witnesses: all,
            total,
            limit,
        }
    }

    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn limit(&self) -> Option<usize> {
        self.limit
    }

    pub fn truncated(&self) -> bool {
        self.witnesses.len() < self.total
    }
}

fn agree_on_set(t: &Tuple, s: &Tuple, set: &AttributeSet) -> bool {
    set.iter().all(|a| {
        compare_values(t.value(a), s.value(a))
            .map(|o| o.is_eq())
            .unwrap_or(false)
    })
}

/// Every row pair that witnesses a failure of the functional half of
/// ⟨lhs⟩ ↦ ⟨rhs⟩: the pair agrees on the left set yet differs on some
/// right attribute (`differs_at` is the first such attribute in `rhs`
/// order). Empty exactly when rows agreeing on lhs agree on rhs. Pairs are
/// reported (smaller id, larger id), ascending.
pub fn find_splits(table: &Table, lhs: &AttributeList, rhs: &AttributeList) -> Vec<Witness> {
    let left_set = lhs.to_set();
    let mut witnesses = Vec::new();
    let rows = table.rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (t, s) = (&rows[i], &rows[j]);
            if !agree_on_set(t, s, &left_set) {
                continue;
            }
            let differs_at = rhs.iter().find(|&a| {
                compare_values(t.value(a), s.value(a))
                    .map(|o| o.is_ne())
                    .unwrap_or(true)
            });
            if let Some(attribute) = differs_at {
                witnesses.push(Witness::Split {
                    rows: (i, j),
                    agrees_on: left_set.clone(),
                    differs_at: attribute,
                });
            }
        }
    }
    witnesses
}

/// Every row pair that witnesses a failure of the compatibility half: the
/// first row strictly precedes the second on `lhs` while the second
/// strictly precedes the first on `rhs`. Empty exactly when lhs ~ rhs
/// holds. Sorted by (first id, second id).
pub fn find_swaps(table: &Table, lhs: &AttributeList, rhs: &AttributeList) -> Vec<Witness> {
    let mut witnesses = Vec::new();
    let rows = table.rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (t, s) = (&rows[i], &rows[j]);
            let pair = if strict_less_lex(t, s, lhs) && strict_less_lex(s, t, rhs) {
                Some((i, j))
            } else if strict_less_lex(s, t, lhs) && strict_less_lex(t, s, rhs) {
                Some((j, i))
            } else {
                None
            };
            if let Some(rows) = pair {
                witnesses.push(Witness::Swap {
                    rows,
                    left: lhs.clone(),
                    right: rhs.clone(),
                });
            }
        }
    }
    witnesses.sort_by_key(|w| w.rows());
    witnesses
}

/// Is the attribute single-valued within every class of the partition?
pub(crate) fn constant_within(table: &Table, classes: &Partition, attribute: usize) -> bool {
    classes.classes().iter().all(|class| {
        let rows = class.rows();
        let first = table.value(rows[0], attribute);
        rows[1..].iter().all(|&r| table.value(r, attribute) == first)
    })
}

/// Is there no class pair ordered strictly one way by `a` and strictly the
/// other way by `b`?
pub(crate) fn swap_free_within(table: &Table, classes: &Partition, a: usize, b: usize) -> bool {
    classes.classes().iter().all(|class| {
        let rows = class.rows();
        for (i, &r) in rows.iter().enumerate() {
            for &s in &rows[i + 1..] {
                let on_a = compare_values(table.value(r, a), table.value(s, a))
                    .expect("one column carries one type");
                let on_b = compare_values(table.value(r, b), table.value(s, b))
                    .expect("one column carries one type");
                if (on_a.is_lt() && on_b.is_gt()) || (on_a.is_gt() && on_b.is_lt()) {
                    return false;
                }
            }
        }
        true
    })
}

/// Checks a canonical statement on the partition of its context: constants
/// class-by-class single-valuedness, compatibilities class-by-class swap
/// freedom.
pub fn holds_canonical(table: &Table, dependency: &CanonicalDependency) -> bool {
    let classes = partition(table, dependency.context());
    match dependency.body() {
        Body::Constant(a) => constant_within(table, &classes, a),
        Body::Compatible(a, b) => swap_free_within(table, &classes, a, b),
    }
}
