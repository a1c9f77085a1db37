use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::caps::Caps;
use crate::flow::{is_ambit, orbits};
use crate::group::catalog::{builtin, cyclic, dihedral, symmetric};
use crate::group::iso::find_group_isomorphism;
use crate::group::product::{direct_product, inversion_action, trivial_action};
use crate::group::wreath::iterated_wreath;
use crate::group::Subgroup;

fn s3() -> Arc<Group> {
    Arc::new(symmetric(3, &Caps::default()).unwrap())
}

fn min_index_section(group: &Arc<Group>, elements: &[usize]) -> CrossSection {
    let k = Subgroup::new(group, elements.iter().copied()).unwrap();
    let cs = Arc::new(quotient(group, &k).unwrap());
    cross_section(&cs, &SectionPolicy::MinIndex).unwrap()
}

// ----- cocycles -----

#[test]
fn cocycle_over_first_factor_of_klein_four_is_constant_in_the_coset() {
    // G = C2 × C2 with pairs (a, b) at index 2a + b; K is the first factor
    // {(0,0), (1,0)} = {0, 2}. With the section s((0,b)) = (0,b), direct
    // evaluation of s(g·c)⁻¹ · g · s(c) gives ρ((a,b), c) = (a, 0) for
    // every coset: frozen here for all 8 (g, c) pairs.
    let g = Arc::new(direct_product(&cyclic(2), &cyclic(2)));
    let section = min_index_section(&g, &[0, 2]);
    assert_eq!(section.table(), &[0, 1]);
    let rho = cocycle_from_section(&section).unwrap();
    for elt in g.elements() {
        let a = elt / 2;
        for c in 0..2 {
            assert_eq!(rho.value(elt, c), 2 * a);
        }
    }
}

#[test]
fn s3_over_a3_satisfies_the_identity_on_all_72_triples() {
    let g = s3();
    let section = min_index_section(&g, &[0, 3, 4]);
    let rho = cocycle_from_section(&section).unwrap();
    let report = check_cocycle_identity(&rho);
    assert!(report.all_pass());
    let identity_check = report
        .checks
        .iter()
        .find(|c| c.name == "cocycle_identity")
        .unwrap();
    assert_eq!(identity_check.cases, 72);
}

#[test]
fn homomorphic_sections_give_conjugation_cocycles() {
    // Split extension: the cocycle value at (g, c) is the conjugate of
    // s(gK)⁻¹·g by s(c)⁻¹, so it depends on g only through s(gK)⁻¹·g.
    let h = cyclic(2);
    let k = cyclic(3);
    let sd = crate::group::product::semidirect_product(&h, &k, &inversion_action(&h, &k), "C3byC2")
        .unwrap();
    let g = Arc::new(sd.group.clone());
    let section = min_index_section(&g, &(0..3).collect::<Vec<_>>());
    let rho = cocycle_from_section(&section).unwrap();
    for elt in g.elements() {
        let k_g = g.op(g.inv(section.value(rho.cosets().coset_of(elt))), elt);
        for c in 0..rho.coset_count() {
            let s_c = section.value(c);
            let expected = g.op(g.op(g.inv(s_c), k_g), s_c);
            assert_eq!(rho.value(elt, c), expected);
        }
    }
}

#[test]
fn corrupted_cocycle_fails_with_a_concrete_witness() {
    let g = s3();
    let section = min_index_section(&g, &[0, 3, 4]);
    let rho = cocycle_from_section(&section).unwrap();
    let mut table = rho.raw_table().to_vec();
    // Swap the value at (g=1, coset=0) to a different subgroup element.
    let m = rho.coset_count();
    table[m] = if table[m] == 0 { 3 } else { 0 };
    let corrupted = Cocycle::from_table_unchecked(rho.cosets(), table);
    let report = check_cocycle_identity(&corrupted);
    assert!(!report.all_pass());
    let failed = report.failures().next().unwrap();
    assert!(failed.witness.is_some());
}

#[test]
fn trivial_subgroup_cocycle_is_identically_identity() {
    let g = s3();
    let section = min_index_section(&g, &[0]);
    let rho = cocycle_from_section(&section).unwrap();
    for elt in g.elements() {
        for c in 0..rho.coset_count() {
            assert_eq!(rho.value(elt, c), 0);
        }
    }
    assert!(check_cocycle_identity(&rho).all_pass());
}

#[test]
fn cocycle_needs_a_normal_subgroup() {
    let g = s3();
    let flip = Subgroup::new(&g, [0, 1]).unwrap();
    let cs = Arc::new(quotient(&g, &flip).unwrap());
    let section = cross_section(&cs, &SectionPolicy::MinIndex).unwrap();
    assert_eq!(
        cocycle_from_section(&section).unwrap_err(),
        ExtensionError::NotNormal
    );
}

// ----- twisted product flows -----

#[test]
fn trivial_subgroup_twist_is_left_translation() {
    let g = s3();
    let section = min_index_section(&g, &[0]);
    let rho = cocycle_from_section(&section).unwrap();
    let flow = twisted_product_flow(&rho).unwrap();
    assert_eq!(flow.size(), 6);
    let verdict =
        find_isomorphism(&flow, &crate::flow::left_translation_flow(&g), &Caps::default())
            .unwrap();
    assert!(verdict.is_isomorphic());
}

#[test]
fn full_subgroup_twist_recovers_the_group() {
    let g = s3();
    let section = min_index_section(&g, &(0..6).collect::<Vec<_>>());
    let rho = cocycle_from_section(&section).unwrap();
    // One coset; the normalized section forces ρ(g, K) = g.
    for elt in g.elements() {
        assert_eq!(rho.value(elt, 0), elt);
    }
    let flow = twisted_product_flow(&rho).unwrap();
    assert_eq!(flow.size(), 6);
    let verdict =
        find_isomorphism(&flow, &crate::flow::left_translation_flow(&g), &Caps::default())
            .unwrap();
    assert!(verdict.is_isomorphic());
}

#[test]
fn s3_twisted_flow_is_minimal_and_free() {
    let g = s3();
    let section = min_index_section(&g, &[0, 3, 4]);
    let rho = cocycle_from_section(&section).unwrap();
    let flow = twisted_product_flow(&rho).unwrap();
    assert_eq!(flow.size(), 6);
    assert!(crate::flow::is_minimal(&flow));
    assert!(crate::flow::is_free(&flow));
    assert!(is_ambit(&flow));
}

// ----- phi -----

#[test]
fn phi_is_an_isomorphism_for_s3_over_a3() {
    let g = s3();
    let section = min_index_section(&g, &[0, 3, 4]);
    let rho = cocycle_from_section(&section).unwrap();
    let flow = twisted_product_flow(&rho).unwrap();
    let phi = phi_map(&section, &flow).unwrap();
    assert!(phi.checked);
    assert_eq!(phi.map[0], 0);
}

#[test]
fn phi_is_an_isomorphism_for_c4_over_its_half() {
    let g = Arc::new(cyclic(4));
    let section = min_index_section(&g, &[0, 2]);
    let rho = cocycle_from_section(&section).unwrap();
    let flow = twisted_product_flow(&rho).unwrap();
    let phi = phi_map(&section, &flow).unwrap();
    assert!(phi.is_bijective());
}

#[test]
fn phi_from_a_mismatched_section_is_rejected() {
    // Build the twisted flow from the min-index section but hand phi_map a
    // different section of the same quotient: the product map it builds is
    // still a bijection, but it cannot be equivariant for this twist.
    let g = s3();
    let a3 = Subgroup::new(&g, [0, 3, 4]).unwrap();
    let cs = Arc::new(quotient(&g, &a3).unwrap());
    let min_index = cross_section(&cs, &SectionPolicy::MinIndex).unwrap();
    let other = cross_section(&cs, &SectionPolicy::Explicit(vec![0, 2])).unwrap();
    assert_ne!(min_index.table(), other.table());

    let rho = cocycle_from_section(&min_index).unwrap();
    let twisted = twisted_product_flow(&rho).unwrap();
    assert!(matches!(
        phi_map(&other, &twisted).unwrap_err(),
        ExtensionError::NotEquivariant { .. }
    ));
}

#[test]
fn phi_for_trivial_subgroup_is_the_canonical_identification() {
    let g = s3();
    let section = min_index_section(&g, &[0]);
    let rho = cocycle_from_section(&section).unwrap();
    let flow = twisted_product_flow(&rho).unwrap();
    let phi = phi_map(&section, &flow).unwrap();
    // Cosets of {e} are singletons indexed by their own element.
    assert_eq!(phi.map, (0..6).collect::<Vec<_>>());
}

// ----- the SIN pipeline -----

#[test]
fn verify_extension_rejects_non_normal_subgroups() {
    let g = s3();
    let flip = Subgroup::new(&g, [0, 1]).unwrap();
    assert_eq!(
        verify_extension_theorem(&g, &flip, &SectionPolicy::MinIndex, &Caps::default())
            .unwrap_err(),
        ExtensionError::NotNormal
    );
}

#[test]
fn verify_extension_passes_for_every_normal_subgroup_of_s3() {
    let g = s3();
    let caps = Caps::default();
    for k in crate::group::normal_subgroups(&g, &caps).unwrap() {
        let w = verify_extension_theorem(&g, &k, &SectionPolicy::MinIndex, &caps).unwrap();
        assert!(w.passed(), "failed for |K| = {}", k.order());
        assert!(w.oracle_confirmation.is_some());
        assert_eq!(w.twisted_flow.size(), 6);
    }
}

#[test]
fn verify_extension_passes_for_the_non_split_quaternion_center() {
    let g = Arc::new(builtin("Q8", &Caps::default()).unwrap());
    let center = Subgroup::new(&g, [0, 4]).unwrap();
    let w =
        verify_extension_theorem(&g, &center, &SectionPolicy::MinIndex, &Caps::default()).unwrap();
    assert!(w.passed());
}

#[test]
fn verify_extension_passes_for_the_wreath_square_over_its_kernel() {
    let caps = Caps::default();
    let w2 = iterated_wreath(2, 2, &caps).unwrap();
    let g = w2.group.clone();
    let kernel = Subgroup::new(&g, w2.kernel_elements.iter().copied()).unwrap();
    let witness = verify_extension_theorem(&g, &kernel, &SectionPolicy::MinIndex, &caps).unwrap();
    assert!(witness.passed());
    assert_eq!(witness.twisted_flow.size(), 8);
}

#[test]
fn verify_extension_accepts_seeded_random_sections() {
    let g = Arc::new(cyclic(12));
    let caps = Caps::default();
    for k in crate::group::normal_subgroups(&g, &caps).unwrap() {
        let w =
            verify_extension_theorem(&g, &k, &SectionPolicy::SeededRandom(7), &caps).unwrap();
        assert!(w.passed());
        assert!(w
            .checks
            .checks
            .iter()
            .any(|c| c.name == "section_independence_cocycle_relation" && c.pass));
    }
}

#[test]
fn subgroup_from_another_group_is_a_mismatch() {
    let g = s3();
    let other = Arc::new(cyclic(6));
    let k = Subgroup::new(&other, [0, 3]).unwrap();
    assert_eq!(
        verify_extension_theorem(&g, &k, &SectionPolicy::MinIndex, &Caps::default()).unwrap_err(),
        ExtensionError::GroupMismatch
    );
}

// ----- the by-compact pipeline -----

#[test]
fn by_compact_pipeline_passes_for_s3_over_a3() {
    let g = s3();
    let section = min_index_section(&g, &[0, 3, 4]);
    let w = extension_by_compact_flow(&section, &Caps::default()).unwrap();
    assert!(w.passed());
    assert_eq!(w.twisted_flow.size(), 6);
    assert_eq!(w.kind, PipelineKind::ByCompact);
}

#[test]
fn carry_cocycle_of_c6_over_its_even_part() {
    let g = Arc::new(cyclic(6));
    let section = min_index_section(&g, &[0, 2, 4]);
    let w = extension_by_compact_flow(&section, &Caps::default()).unwrap();
    assert!(w.passed());
    // ρ(g, c) records the even part left over after the section absorbs
    // the parity: frozen closed form for both cosets.
    for g_elt in 0..6 {
        assert_eq!(w.cocycle.value(g_elt, 0), g_elt - g_elt % 2);
        assert_eq!(
            w.cocycle.value(g_elt, 1),
            ((g_elt + 1) - (g_elt + 1) % 2) % 6
        );
    }
}

#[test]
fn by_compact_with_full_subgroup_is_translation_in_disguise() {
    let g = s3();
    let section = min_index_section(&g, &(0..6).collect::<Vec<_>>());
    let w = extension_by_compact_flow(&section, &Caps::default()).unwrap();
    assert!(w.passed());
    assert_eq!(w.twisted_flow.size(), 6);
}

#[test]
fn evaluation_surjectivity_examples() {
    let g = s3();
    let section = min_index_section(&g, &[0, 3, 4]);
    let rho = cocycle_from_section(&section).unwrap();
    for c in 0..2 {
        let (onto, image) = evaluation_surjectivity(&rho, c);
        assert!(onto);
        assert_eq!(image, vec![0, 3, 4]);
    }

    let trivial = min_index_section(&g, &[0]);
    let rho_triv = cocycle_from_section(&trivial).unwrap();
    let (onto, image) = evaluation_surjectivity(&rho_triv, 0);
    assert!(onto);
    assert_eq!(image, vec![0]);

    let c4 = Arc::new(cyclic(4));
    let half = min_index_section(&c4, &[0, 2]);
    let rho_half = cocycle_from_section(&half).unwrap();
    for c in 0..2 {
        assert!(evaluation_surjectivity(&rho_half, c).0);
    }
}

// ----- the semidirect pipeline -----

#[test]
fn semidirect_flow_for_s3_as_c2_on_c3() {
    let h = cyclic(2);
    let k = cyclic(3);
    let w = semidirect_flow(&h, &k, &inversion_action(&h, &k), &Caps::default()).unwrap();
    assert!(w.passed(), "failures: {:?}", w.checks.failures().collect::<Vec<_>>());
    assert_eq!(w.twisted_flow.size(), 6);
    assert!(find_group_isomorphism(&w.group, &symmetric(3, &Caps::default()).unwrap()).is_some());
}

#[test]
fn semidirect_flow_for_d4_as_c2_on_c4() {
    let h = cyclic(2);
    let k = cyclic(4);
    let w = semidirect_flow(&h, &k, &inversion_action(&h, &k), &Caps::default()).unwrap();
    assert!(w.passed());
    assert_eq!(w.twisted_flow.size(), 8);
    assert!(find_group_isomorphism(&w.group, &dihedral(4)).is_some());
}

#[test]
fn semidirect_flow_with_trivial_action_collapses_to_the_direct_product() {
    let h = cyclic(2);
    let k = cyclic(3);
    let w = semidirect_flow(&h, &k, &trivial_action(&h, &k), &Caps::default()).unwrap();
    assert!(w.passed());
    // With trivial θ the two φ forms are literally the same map.
    let sd_phi = &w.phi.map;
    let section_phi: Vec<usize> = (0..6)
        .map(|p| w.group.op(w.section.value(p / 3), [0, 1, 2][p % 3]))
        .collect();
    assert_eq!(*sd_phi, section_phi);
}

// ----- instance-level agreement -----

#[test]
fn both_pipelines_agree_on_s3_instances() {
    let g = s3();
    let caps = Caps::default();
    for k in crate::group::normal_subgroups(&g, &caps).unwrap() {
        let instance = verify_instance(&g, &k, &SectionPolicy::MinIndex, &caps).unwrap();
        assert!(instance.passed());
        let names: Vec<&str> = instance
            .cross_checks
            .checks
            .iter()
            .map(|c| c.name.as_str())
            .collect();
        assert!(names.contains(&"sin_by_compact_isomorphic"));
        assert!(names.contains(&"lemma_orbit_space_isomorphic"));
    }
}

#[test]
fn degenerate_subgroups_pass_end_to_end() {
    let caps = Caps::default();
    for name in ["C1", "C7", "S4", "Q8", "W2_2"] {
        let g = Arc::new(builtin(name, &caps).unwrap());
        for k in [Subgroup::trivial(&g), Subgroup::full(&g)] {
            let instance = verify_instance(&g, &k, &SectionPolicy::MinIndex, &caps).unwrap();
            assert!(instance.passed(), "{name} degenerate case failed");
        }
    }
}

#[test]
fn twisted_flow_points_follow_the_documented_encoding() {
    // Point = coset · |K| + rank: the base (identity coset, identity) is 0
    // and the K-fiber of the identity coset is an initial segment.
    let g = s3();
    let section = min_index_section(&g, &[0, 3, 4]);
    let rho = cocycle_from_section(&section).unwrap();
    let flow = twisted_product_flow(&rho).unwrap();
    assert_eq!(flow.base_point(), Some(0));
    // Acting by the subgroup element with rank 1 (lex rank 3 in S3) from
    // the base stays in the fiber of the identity coset: ρ(k, K) = k.
    let image = flow.act(3, 0);
    assert_eq!(image / 3, 0);
    assert_eq!(image % 3, 1);
    let p = orbits(&flow);
    assert_eq!(p.count(), 1);
}
