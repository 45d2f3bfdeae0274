//! Machine-readable command output.
//!
//! Every command can emit one [`Report`]: a `stable` section that is
//! byte-identical across runs with the same inputs and flags (sorted
//! content, no clocks), and a `volatile` section holding timing. Tests
//! and pipelines should compare the stable section only.

use serde::Serialize;

use odprof_core::checker::{Witness, WitnessReport};
use odprof_core::deps::{Body, CanonicalDependency, ListOd, OdKind};
use odprof_core::model::Table;

#[derive(Debug, Serialize)]
pub struct Report {
    pub stable: Stable,
    pub volatile: Volatile,
}

#[derive(Debug, Serialize)]
pub struct Stable {
    /// Which engine produced the content: `checker`, `mapper`, `set`,
    /// `list`, `oracle`, or `diff`.
    pub engine: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableMeta>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub dependencies: Vec<DependencyEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<WitnessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<DiffSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<StatsSection>,
}

#[derive(Debug, Serialize)]
pub struct Volatile {
    pub elapsed_ms: u128,
}

#[derive(Debug, Serialize)]
pub struct TableMeta {
    pub name: String,
    pub rows: usize,
    pub columns: Vec<ColumnMeta>,
}

#[derive(Debug, Serialize)]
pub struct ColumnMeta {
    pub name: String,
    pub value_type: String,
}

impl TableMeta {
    pub fn of(table: &Table) -> Self {
        TableMeta {
            name: table.name().to_string(),
            rows: table.row_count(),
            columns: table
                .columns()
                .iter()
                .map(|(name, ty)| ColumnMeta {
                    name: name.clone(),
                    value_type: ty.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DependencyEntry {
    Orders {
        lhs: Vec<String>,
        rhs: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        holds: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        trivial: Option<bool>,
    },
    OrderEquivalent {
        lhs: Vec<String>,
        rhs: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        holds: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        trivial: Option<bool>,
    },
    OrderCompatible {
        lhs: Vec<String>,
        rhs: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        holds: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        trivial: Option<bool>,
    },
    Constant {
        context: Vec<String>,
        attribute: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        holds: Option<bool>,
    },
    Compatible {
        context: Vec<String>,
        left: String,
        right: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        holds: Option<bool>,
    },
}

impl DependencyEntry {
    pub fn from_list_od(
        od: &ListOd,
        name: &impl Fn(usize) -> String,
        holds: Option<bool>,
        trivial: Option<bool>,
    ) -> Self {
        let lhs = od.lhs().iter().map(name).collect();
        let rhs = od.rhs().iter().map(name).collect();
        match od.kind() {
            OdKind::Orders => DependencyEntry::Orders {
                lhs,
                rhs,
                holds,
                trivial,
            },
            OdKind::OrderEquivalent => DependencyEntry::OrderEquivalent {
                lhs,
                rhs,
                holds,
                trivial,
            },
            OdKind::OrderCompatible => DependencyEntry::OrderCompatible {
                lhs,
                rhs,
                holds,
                trivial,
            },
        }
    }

    pub fn from_canonical(
        d: &CanonicalDependency,
        name: &impl Fn(usize) -> String,
        holds: Option<bool>,
    ) -> Self {
        let context = d.context().iter().map(name).collect();
        match d.body() {
            Body::Constant(a) => DependencyEntry::Constant {
                context,
                attribute: name(a),
                holds,
            },
            Body::Compatible(a, b) => DependencyEntry::Compatible {
                context,
                left: name(a),
                right: name(b),
                holds,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessSection {
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
    pub witnesses: Vec<WitnessEntry>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessEntry {
    Split {
        rows: (usize, usize),
        agrees_on: Vec<String>,
        differs_at: String,
    },
    Swap {
        rows: (usize, usize),
        left: Vec<String>,
        right: Vec<String>,
    },
}

impl WitnessSection {
    pub fn of(report: &WitnessReport, name: &impl Fn(usize) -> String) -> Self {
        let witnesses = report
            .witnesses()
            .iter()
            .map(|w| match w {
                Witness::Split {
                    rows,
                    agrees_on,
                    differs_at,
                } => WitnessEntry::Split {
                    rows: *rows,
                    agrees_on: agrees_on.iter().map(name).collect(),
                    differs_at: name(*differs_at),
                },
                Witness::Swap { rows, left, right } => WitnessEntry::Swap {
                    rows: *rows,
                    left: left.iter().map(name).collect(),
                    right: right.iter().map(name).collect(),
                },
            })
            .collect();
        WitnessSection {
            total: report.total(),
            limit: report.limit(),
            witnesses,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct DiffSection {
    pub bounds: BoundsMeta,
    pub missed: Vec<MissedEntry>,
    pub found_by_both: Vec<String>,
    pub found_only_by_set: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct BoundsMeta {
    pub max_list_len: usize,
    pub allow_repeats: bool,
    pub max_attrs: usize,
}

#[derive(Debug, Serialize)]
pub struct MissedEntry {
    pub od: String,
    pub canonical: Vec<String>,
    pub covered_by_set: bool,
}

#[derive(Debug, Default, Serialize)]
pub struct StatsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contexts_visited: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contexts_skipped: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_generated: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_checked: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_satisfied: Option<usize>,
}
