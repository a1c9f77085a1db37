//! Catalog-wide structural invariants.

use std::sync::Arc;

use umf_core::caps::Caps;
use umf_core::flow::{
    coset_flow, is_ambit, is_free, is_minimal, left_translation_flow, minimal_subflows, orbits,
    universal_minimal,
};
use umf_core::group::catalog::{builtin, builtin_names, symmetric};
use umf_core::group::iso::find_group_isomorphism;
use umf_core::group::product::{direct_product, semidirect_product, trivial_action};
use umf_core::group::wreath::{iterated_wreath, wreath_order};
use umf_core::group::{normal_subgroups, quotient, subgroups, Subgroup};

#[test]
fn every_catalog_translation_flow_is_minimal_free_and_an_ambit() {
    let caps = Caps::default();
    for name in builtin_names() {
        let g = Arc::new(builtin(name, &caps).unwrap());
        let m = universal_minimal(&g);
        assert!(is_minimal(&m), "{name}: translation must be minimal");
        assert!(is_free(&m), "{name}: translation must be free");
        assert!(is_ambit(&m), "{name}: translation must be an ambit");
    }
}

#[test]
fn semidirect_with_trivial_action_matches_the_direct_product() {
    // All catalog pairs with |H|·|K| ≤ 64.
    let caps = Caps::default();
    let factors: Vec<_> = builtin_names()
        .into_iter()
        .map(|n| builtin(n, &caps).unwrap())
        .collect();
    let mut pairs = 0;
    for h in &factors {
        for k in &factors {
            if h.order() * k.order() > 64 {
                continue;
            }
            pairs += 1;
            let sd = semidirect_product(h, k, &trivial_action(h, k), "trivial-sd").unwrap();
            let direct = direct_product(h, k);
            assert!(
                find_group_isomorphism(&sd.group, &direct).is_some(),
                "H={} K={}",
                h.name(),
                k.name()
            );
        }
    }
    assert!(pairs > 100, "expected a substantial pair sweep, got {pairs}");
}

#[test]
fn wreath_orders_match_the_closed_form() {
    let caps = Caps::default();
    for (n, d) in [(2, 1), (2, 2), (2, 3), (3, 1)] {
        let w = iterated_wreath(n, d, &caps).unwrap();
        assert_eq!(w.group.order() as u128, wreath_order(n, d).unwrap());
    }
}

#[test]
fn wreath_quotient_by_level_one_kernel_is_symmetric() {
    let caps = Caps::default();
    for (n, d) in [(2, 2), (2, 3), (3, 1)] {
        let w = iterated_wreath(n, d, &caps).unwrap();
        let g = w.group.clone();
        let kernel = Subgroup::new(&g, w.kernel_elements.iter().copied()).unwrap();
        let cs = quotient(&g, &kernel).unwrap();
        let q = cs.quotient_group().expect("level-1 kernel is normal");
        assert!(find_group_isomorphism(q, &symmetric(n, &caps).unwrap()).is_some());
    }
}

#[test]
fn minimal_subflows_partition_every_coset_flow() {
    let caps = Caps::default();
    for name in ["C12", "D4", "S3", "Q8"] {
        let g = Arc::new(builtin(name, &caps).unwrap());
        for k in subgroups(&g, &caps).unwrap() {
            let f = coset_flow(&g, &k).unwrap();
            let subflows = minimal_subflows(&f);
            let total: usize = subflows.iter().map(|s| s.size()).sum();
            assert_eq!(total, f.size());
            assert!(subflows.iter().all(is_minimal));
        }
    }
}

#[test]
fn orbit_indices_are_assigned_by_minimal_point() {
    let caps = Caps::default();
    let g = Arc::new(builtin("S3", &caps).unwrap());
    let f = left_translation_flow(&g);
    for k in normal_subgroups(&g, &caps).unwrap() {
        let restricted = umf_core::flow::restrict(&f, &k).unwrap();
        let p = orbits(&restricted);
        let firsts: Vec<usize> = p.members.iter().map(|m| m[0]).collect();
        let mut sorted = firsts.clone();
        sorted.sort_unstable();
        assert_eq!(firsts, sorted);
    }
}
