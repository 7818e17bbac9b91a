//! The J-operator theorems at desk scale: the no-forbidden-cuts rules, the
//! equivalence of J-operators with slash-operators, and the interval shape
//! of J-regions.

mod common;

use common::sample_graphs;
use zha::nucleus::{
    all_interval_partitions, derived_rule_suite, detect_forbidden_cuts, enumerate_j_operators,
    enumerate_j_operators_with_guard, j_regions,
};
use zha::optable::check_j123;
use zha::{all_slashings, Slashing, Zha};

fn hosts_for_tests() -> Vec<Zha> {
    sample_graphs(3, 3, 30, 31)
        .iter()
        .map(Zha::from_2cg)
        .collect()
}

#[test]
fn no_y_cuts_and_no_lambda_cuts_rules() {
    // P* = Q* forces (P v R)* = (Q v R)* and (P & R)* = (Q & R)*
    for host in hosts_for_tests() {
        let ops = enumerate_j_operators_with_guard(&host, 16).unwrap();
        for t in &ops {
            for p in host.elements() {
                for q in host.elements() {
                    if t.apply(p) != t.apply(q) {
                        continue;
                    }
                    for r in host.elements() {
                        assert_eq!(t.apply(p.join(&r)), t.apply(q.join(&r)));
                        assert_eq!(t.apply(p.meet(&r)), t.apply(q.meet(&r)));
                    }
                }
            }
        }
    }
}

#[test]
fn j_operators_are_exactly_slash_operators() {
    // exhaustive over every lattice shape with columns up to 3
    let mut hosts_seen = 0;
    for l in 0..=3usize {
        for r in 0..=3usize {
            for host in zha::cube::hosts_in_box(l, r) {
                hosts_seen += 1;
                let enumerated = enumerate_j_operators_with_guard(&host, 16).unwrap();
                let from_slashings = all_slashings(&host)
                    .iter()
                    .map(Slashing::to_table)
                    .collect();
                assert_eq!(
                    enumerated, from_slashings,
                    "host {}x{} with {} elements",
                    host.l(),
                    host.r(),
                    host.len()
                );
            }
        }
    }
    assert_eq!(hosts_seen, 337);
}

#[test]
fn j_regions_are_intervals_with_operator_value_as_top() {
    for host in hosts_for_tests().into_iter().take(12) {
        for t in enumerate_j_operators_with_guard(&host, 16).unwrap() {
            // the constructor re-validates the interval property
            let regions = j_regions(&t).unwrap();
            for block in regions.blocks() {
                let top = block.iter().fold(block[0], |acc, e| acc.join(e));
                for &m in block {
                    assert_eq!(t.apply(m), top);
                }
            }
            assert!(derived_rule_suite(&t).all_hold());
        }
    }
}

#[test]
fn forbidden_cuts_match_j3_failures() {
    // over every interval partition of a few hosts: a partition has a Y-cut
    // or a λ-cut exactly when its top-of-block operator breaks J3, and a
    // clean partition is a slashing partition
    let mut total = 0usize;
    let mut with_cuts = 0usize;
    for host in [Zha::grid(2, 2), Zha::grid(3, 2), Zha::grid(2, 3)] {
        let slash_ops: std::collections::BTreeSet<_> = all_slashings(&host)
            .iter()
            .map(Slashing::to_table)
            .collect();
        for partition in all_interval_partitions(&host) {
            total += 1;
            let t = partition.top_operator();
            let verdict = check_j123(&t);
            assert!(verdict.j1_ok && verdict.j2_ok);
            let cuts = detect_forbidden_cuts(&partition);
            if cuts.is_empty() {
                assert!(verdict.j3_ok, "clean partition must satisfy the axioms");
                assert!(slash_ops.contains(&t), "clean partition must be a slashing");
            } else {
                with_cuts += 1;
                assert!(!verdict.j3_ok, "{:?} has {} cuts but passes J3", t, cuts.len());
            }
        }
    }
    assert!(total > 6000, "partition battery too small: {total}");
    assert!(with_cuts > total / 2);
}

#[test]
fn enumeration_counts_on_grids() {
    assert_eq!(enumerate_j_operators(&Zha::grid(1, 1)).unwrap().len(), 4);
    assert_eq!(enumerate_j_operators(&Zha::grid(2, 2)).unwrap().len(), 16);
    assert_eq!(enumerate_j_operators(&Zha::grid(3, 1)).unwrap().len(), 16);
}
