//! Acceptance gate for the whole workspace: nine externally checkable
//! criteria covering the checker, the witness finder, the canonical form,
//! the two discovery engines, and the differential comparison between
//! them. Each test exercises the real pipeline (CSV fixture -> loader ->
//! core) and prints one verdict line; a failed assertion keeps the line
//! from printing and fails the build.

use std::path::{Path, PathBuf};
use std::time::Instant;

use itertools::Itertools;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseResult, TestRunner};

use odprof_cli::loader::{load_csv, LoadOptions};
use odprof_core::checker::{
    check, decompose_check, find_splits, find_swaps, holds_canonical, order_compatible,
    satisfies_od, Witness,
};
use odprof_core::deps::{map_od_to_canonical, CanonicalDependency, DependencySet, ListOd};
use odprof_core::discovery_list;
use odprof_core::discovery_set::{
    self, explain_minimality, is_derivable, DiscoveryConfig, ExplainError, MinimalityPolicy,
};
use odprof_core::model::{leq_lex, AttributeList, AttributeSet, Table, Value, ValueType};
use odprof_core::oracle::{enumerate_canonical_candidates, EnumerationBounds};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn load(name: &str) -> Table {
    load_csv(&fixture(name), &LoadOptions::default()).expect("fixture loads")
}

fn list(table: &Table, names: &[&str]) -> AttributeList {
    table.list(names).expect("known attribute names")
}

fn constant(table: &Table, context: &[&str], attribute: &str) -> CanonicalDependency {
    CanonicalDependency::constant(
        table.set(context).unwrap(),
        table.attribute(attribute).unwrap(),
    )
    .unwrap()
}

fn compatible(table: &Table, context: &[&str], a: &str, b: &str) -> CanonicalDependency {
    CanonicalDependency::compatible(
        table.set(context).unwrap(),
        table.attribute(a).unwrap(),
        table.attribute(b).unwrap(),
    )
    .unwrap()
}

#[test]
fn criterion_1_salary_orderings_on_the_tax_table() {
    let started = Instant::now();
    let taxes = load("taxes.csv");
    let orders = |lhs: &[&str], rhs: &[&str]| {
        check(
            &taxes,
            &ListOd::orders(list(&taxes, lhs), list(&taxes, rhs)),
        )
    };
    assert!(orders(&["salary"], &["tax"]));
    assert!(orders(&["salary"], &["percentage"]));
    assert!(orders(&["salary"], &["group", "subgroup"]));
    assert!(orders(&["year", "salary"], &["year", "bin"]));
    assert!(!orders(&["salary"], &["subgroup", "group"]));
    assert!(started.elapsed().as_secs() < 1);
    println!("criterion 1: salary orderings verified, including the list-order-sensitive pair ... pass");
}

#[test]
fn criterion_2_witnesses_name_the_offending_rows() {
    let taxes = load("taxes.csv");
    let splits = find_splits(&taxes, &list(&taxes, &["position"]), &list(&taxes, &["salary"]));
    let mut split_rows: Vec<(usize, usize)> = splits.iter().map(Witness::rows).collect();
    split_rows.sort_unstable();
    assert_eq!(split_rows, vec![(0, 3), (1, 4), (2, 5)]);
    for witness in &splits {
        match witness {
            Witness::Split { differs_at, .. } => {
                assert_eq!(*differs_at, taxes.attribute("salary").unwrap())
            }
            Witness::Swap { .. } => panic!("an equality violation is never a swap"),
        }
    }

    let swaps = find_swaps(
        &taxes,
        &list(&taxes, &["salary"]),
        &list(&taxes, &["subgroup"]),
    );
    assert!(swaps.iter().map(Witness::rows).contains(&(0, 1)));
    println!("criterion 2: splits (0,3),(1,4),(2,5) and the (0,1) swap located ... pass");
}

#[test]
fn criterion_3_context_scoped_statements_on_the_tax_table() {
    let taxes = load("taxes.csv");
    assert!(holds_canonical(&taxes, &constant(&taxes, &["position"], "bin")));
    assert!(holds_canonical(
        &taxes,
        &compatible(&taxes, &["year"], "bin", "salary")
    ));
    assert!(!holds_canonical(
        &taxes,
        &compatible(&taxes, &["year"], "bin", "subgroup")
    ));
    assert!(!holds_canonical(
        &taxes,
        &constant(&taxes, &["position"], "salary")
    ));
    println!("criterion 3: context-scoped constants and compatibilities verified ... pass");
}

#[test]
fn criterion_4_compatibility_appears_only_under_the_shared_prefix() {
    let prefix = load("prefix.csv");
    let compat = |lhs: &[&str], rhs: &[&str]| {
        order_compatible(&prefix, &list(&prefix, lhs), &list(&prefix, rhs))
    };
    assert!(compat(&["A", "B"], &["A", "C"]));
    assert!(!compat(&["B"], &["C"]));
    assert!(!compat(&["A", "B"], &["C"]));
    assert!(!compat(&["B"], &["A", "C"]));
    println!("criterion 4: AB ~ AC holds while every prefix-dropping variant fails ... pass");
}

#[test]
fn criterion_5_diff_reports_what_the_list_traversal_cannot_reach() {
    let started = Instant::now();

    let prefix = load("prefix.csv");
    let bounds = EnumerationBounds::new(2, true).with_max_attrs(prefix.arity());
    let report = discovery_list::diff_against_complete(&prefix, &bounds).unwrap();
    let ab_ac = report
        .missed
        .iter()
        .find(|entry| {
            entry.od.lhs() == &list(&prefix, &["A", "B"])
                && entry.od.rhs() == &list(&prefix, &["A", "C"])
        })
        .expect("the shared-prefix pair is missed");
    let image: DependencySet = [compatible(&prefix, &["A"], "B", "C")].into_iter().collect();
    assert_eq!(ab_ac.canonical, image);
    assert!(ab_ac.covered_by_set);
    assert!(report.found_by_both.is_empty());

    let taxes = load("taxes.csv");
    let bounds = EnumerationBounds::new(2, true).with_max_attrs(taxes.arity());
    let report = discovery_list::diff_against_complete(&taxes, &bounds).unwrap();
    let year_bin = list(&taxes, &["year", "bin"]);
    let year_salary = list(&taxes, &["year", "salary"]);
    assert!(report.missed.iter().any(|entry| {
        let (l, r) = (entry.od.lhs(), entry.od.rhs());
        (l == &year_bin && r == &year_salary) || (l == &year_salary && r == &year_bin)
    }));

    assert!(started.elapsed().as_secs() < 5);
    println!("criterion 5: repeat-free traversal provably misses the shared-prefix pairs ... pass");
}

#[test]
fn criterion_6_discovery_emits_the_minimal_cover_and_nothing_else() {
    let table = load("bug7.csv");
    let found = discovery_set::discover(
        &table,
        &DiscoveryConfig::default(),
        &MinimalityPolicy::default(),
    );
    let expected: DependencySet = vec![
        constant(&table, &["A"], "D"),
        constant(&table, &["B", "C"], "A"),
        constant(&table, &["B", "C"], "D"),
        compatible(&table, &["B"], "A", "C"),
        compatible(&table, &["B"], "A", "D"),
        compatible(&table, &["B"], "C", "D"),
        compatible(&table, &["C"], "A", "D"),
        compatible(&table, &["D"], "A", "C"),
        compatible(&table, &["C", "D"], "A", "B"),
    ]
    .into_iter()
    .collect();
    assert_eq!(found, expected);

    // The near-miss: C is NOT constant within {A,B} groups, so the
    // statement must be absent and inexplicable rather than pruned.
    let near_miss = constant(&table, &["A", "B"], "C");
    assert!(!holds_canonical(&table, &near_miss));
    assert!(!is_derivable(&near_miss, &found));
    assert_eq!(
        explain_minimality(&near_miss, &found, &MinimalityPolicy::default()),
        Err(ExplainError::UnknownDependency)
    );
    let splits = find_splits(&table, &list(&table, &["A", "B"]), &list(&table, &["C"]));
    assert!(splits.iter().map(Witness::rows).contains(&(1, 2)));

    // Cross-check the cover against brute force: a candidate follows from
    // the nine statements exactly when the table satisfies it.
    for candidate in enumerate_canonical_candidates(table.arity(), table.arity()) {
        assert_eq!(
            is_derivable(&candidate, &found),
            holds_canonical(&table, &candidate),
            "cover and table disagree on {candidate:?}"
        );
    }
    println!("criterion 6: exactly nine statements; the {{A,B}} constant on C is refuted by rows 1,2 ... pass");
}

#[test]
fn criterion_7_list_statement_maps_to_exactly_six_canonical_statements() {
    let lhs = AttributeList::from(vec![0, 1]);
    let rhs = AttributeList::from(vec![2, 3]);
    let image = map_od_to_canonical(&lhs, &rhs);
    let dep = |context: &[usize], body: (&[usize], usize)| {
        let context: AttributeSet = context.iter().copied().collect();
        match body {
            (pair, b) if pair.len() == 1 => {
                CanonicalDependency::compatible(context, pair[0], b).unwrap()
            }
            (_, b) => CanonicalDependency::constant(context, b).unwrap(),
        }
    };
    let expected: DependencySet = vec![
        dep(&[], (&[0], 2)),
        dep(&[0], (&[1], 2)),
        dep(&[2], (&[0], 3)),
        dep(&[0, 2], (&[1], 3)),
        dep(&[0, 1], (&[], 2)),
        dep(&[0, 1], (&[], 3)),
    ]
    .into_iter()
    .collect();
    assert_eq!(image, expected);
    println!("criterion 7: AB -> CD maps to its six-statement canonical image ... pass");
}

// ---------------------------------------------------------------------
// Criterion 8: randomized laws, two hundred cases each.

fn int_table(arity: usize, rows: Vec<Vec<i64>>) -> Table {
    let columns = (0..arity)
        .map(|i| (format!("c{i}"), ValueType::Integer))
        .collect();
    let cells = rows
        .into_iter()
        .map(|row| row.into_iter().map(Value::Integer).collect())
        .collect();
    Table::new("random", columns, cells).expect("generated tables are rectangular and typed")
}

fn small_table(max_arity: usize) -> impl Strategy<Value = Table> {
    (1usize..=max_arity).prop_flat_map(|arity| {
        prop::collection::vec(prop::collection::vec(0i64..4, arity), 0..=10)
            .prop_map(move |rows| int_table(arity, rows))
    })
}

fn attr_list(arity: usize) -> impl Strategy<Value = AttributeList> {
    prop::collection::vec(0..arity, 0..=3).prop_map(AttributeList::from)
}

fn table_and_two_lists() -> impl Strategy<Value = (Table, AttributeList, AttributeList)> {
    small_table(5).prop_flat_map(|table| {
        let arity = table.arity();
        (Just(table), attr_list(arity), attr_list(arity))
    })
}

fn table_and_three_lists(
) -> impl Strategy<Value = (Table, AttributeList, AttributeList, AttributeList)> {
    small_table(5).prop_flat_map(|table| {
        let arity = table.arity();
        (
            Just(table),
            attr_list(arity),
            attr_list(arity),
            attr_list(arity),
        )
    })
}

/// A table plus a context of at most three attributes and two further
/// attributes outside it, for statements scoped to that context.
fn table_and_scoped_attributes() -> impl Strategy<Value = (Table, Vec<usize>, usize, usize)> {
    small_table(5).prop_flat_map(|table| {
        let arity = table.arity();
        let members = prop::collection::vec(prop::bool::ANY, arity);
        (Just(table), members, 0..arity, 0..arity).prop_map(|(table, members, a, b)| {
            let context: Vec<usize> = members
                .iter()
                .enumerate()
                .filter(|&(attr, &m)| m && attr != a && attr != b)
                .map(|(attr, _)| attr)
                .take(3)
                .collect();
            (table, context, a, b)
        })
    })
}

fn run_law<S: Strategy>(
    label: &str,
    strategy: S,
    law: impl Fn(S::Value) -> TestCaseResult,
) {
    let mut runner = TestRunner::new(Config {
        cases: 200,
        failure_persistence: None,
        ..Config::default()
    });
    if let Err(error) = runner.run(&strategy, law) {
        panic!("law {label:?} failed: {error}");
    }
}

#[test]
fn criterion_8_randomized_laws_hold_across_two_hundred_cases_each() {
    let started = Instant::now();

    run_law(
        "an ordering holds exactly when its equality and direction parts both hold",
        table_and_two_lists(),
        |(table, lhs, rhs)| {
            let od = check(&table, &ListOd::orders(lhs.clone(), rhs.clone()));
            let (equality_part, direction_part) = decompose_check(&table, &lhs, &rhs);
            prop_assert_eq!(od, equality_part && direction_part);
            Ok(())
        },
    );

    run_law(
        "an ordering forces the corresponding functional dependency",
        table_and_two_lists(),
        |(table, lhs, rhs)| {
            if check(&table, &ListOd::orders(lhs.clone(), rhs.clone())) {
                let left = lhs.to_set();
                let rows = table.rows();
                for (i, t) in rows.iter().enumerate() {
                    for s in &rows[i + 1..] {
                        let agree_left = left.iter().all(|a| t.value(a) == s.value(a));
                        let agree_right =
                            rhs.iter().all(|a| t.value(a) == s.value(a));
                        prop_assert!(!agree_left || agree_right);
                    }
                }
            }
            Ok(())
        },
    );

    run_law(
        "a list statement holds exactly when every statement in its canonical image holds",
        table_and_two_lists(),
        |(table, lhs, rhs)| {
            let direct = check(&table, &ListOd::orders(lhs.clone(), rhs.clone()));
            let image = map_od_to_canonical(&lhs, &rhs);
            let via_image = image.iter().all(|d| holds_canonical(&table, d));
            prop_assert_eq!(direct, via_image);
            Ok(())
        },
    );

    run_law(
        "context-scoped checks are invariant under attribute order",
        table_and_scoped_attributes(),
        |(table, context, a, b)| {
            let context_set: AttributeSet = context.iter().copied().collect();
            let constant = CanonicalDependency::constant(context_set.clone(), a)
                .expect("a was excluded from the context");
            let expected = holds_canonical(&table, &constant);
            for order in context.iter().copied().permutations(context.len()) {
                let prefix = AttributeList::from(order);
                let appended = prefix.concat(&AttributeList::from(vec![a]));
                prop_assert_eq!(satisfies_od(&table, &prefix, &appended), expected);
            }
            if a != b {
                let pair = CanonicalDependency::compatible(context_set, a, b)
                    .expect("both attributes were excluded from the context");
                let expected = holds_canonical(&table, &pair);
                for order in context.iter().copied().permutations(context.len()) {
                    let prefix = AttributeList::from(order);
                    let left = prefix.concat(&AttributeList::from(vec![a]));
                    let right = prefix.concat(&AttributeList::from(vec![b]));
                    prop_assert_eq!(order_compatible(&table, &left, &right), expected);
                }
            }
            Ok(())
        },
    );

    run_law(
        "lexicographic comparison is total, reflexive, and transitive",
        table_and_two_lists(),
        |(table, lhs, _)| {
            let rows = table.rows();
            for t in rows {
                prop_assert!(leq_lex(t, t, &lhs));
                for s in rows {
                    prop_assert!(leq_lex(t, s, &lhs) || leq_lex(s, t, &lhs));
                    for u in rows {
                        if leq_lex(t, s, &lhs) && leq_lex(s, u, &lhs) {
                            prop_assert!(leq_lex(t, u, &lhs));
                        }
                    }
                }
            }
            Ok(())
        },
    );

    run_law(
        "compatibility survives prefixing both sides with the same list",
        table_and_three_lists(),
        |(table, prefix, lhs, rhs)| {
            if order_compatible(&table, &lhs, &rhs) {
                prop_assert!(order_compatible(
                    &table,
                    &prefix.concat(&lhs),
                    &prefix.concat(&rhs)
                ));
            }
            Ok(())
        },
    );

    run_law(
        "everything valid is derivable from the discovered cover, and nothing more",
        small_table(4),
        |table| {
            let cover = discovery_set::discover(
                &table,
                &DiscoveryConfig::default(),
                &MinimalityPolicy::default(),
            );
            for candidate in enumerate_canonical_candidates(table.arity(), table.arity()) {
                prop_assert_eq!(
                    holds_canonical(&table, &candidate),
                    is_derivable(&candidate, &cover)
                );
            }
            Ok(())
        },
    );

    assert!(started.elapsed().as_secs() < 60);
    println!("criterion 8: seven randomized laws x 200 cases ... pass");
}

#[test]
fn criterion_9_candidate_growth_outpaces_the_context_lattice() {
    let identical_ascending = |arity: usize| {
        int_table(arity, (0..4).map(|v| vec![v; arity]).collect())
    };
    let frozen_generated = [(3usize, 9usize), (4, 78), (5, 670)];
    let mut previous_ratio = 0.0;
    let mut summary = Vec::new();
    for (arity, generated) in frozen_generated {
        let table = identical_ascending(arity);

        let run = discovery_list::discover_with_stats(&table, arity).unwrap();
        assert_eq!(run.stats.candidates_generated, generated);

        let lattice = discovery_set::discover_with_stats(
            &table,
            &DiscoveryConfig::default(),
            &MinimalityPolicy::default(),
        );
        let contexts = 1usize << arity;
        assert_eq!(lattice.stats.contexts_visited, arity + 1);
        assert_eq!(
            lattice.stats.contexts_visited + lattice.stats.contexts_skipped,
            contexts
        );

        let ratio = generated as f64 / contexts as f64;
        assert!(ratio > previous_ratio);
        previous_ratio = ratio;
        summary.push(format!("{arity} attrs: {generated} candidates vs {contexts} contexts"));
    }
    println!(
        "criterion 9: list candidates outgrow the pruned lattice ({}) ... pass",
        summary.join("; ")
    );
}
