//! Serialization round-trips: everything written must parse back and pass
//! full re-validation (the constructor checks are re-run on the way in).

use std::sync::Arc;

use umf_cli::formats::{FlowJson, GroupJson, GroupRefJson, MorphismJson, SubgroupJson};
use umf_core::caps::Caps;
use umf_core::flow::{coset_flow, left_translation_flow, Flow};
use umf_core::group::catalog::{builtin, builtin_names};
use umf_core::group::{normal_subgroups, Subgroup};

#[test]
fn every_catalog_group_survives_a_json_round_trip_and_revalidation() {
    let caps = Caps::default();
    for name in builtin_names() {
        let g = builtin(name, &caps).unwrap();
        let json = serde_json::to_string(&GroupJson::from_group(&g)).unwrap();
        let parsed: GroupJson = serde_json::from_str(&json).unwrap();
        // to_group re-runs the full validator: Latin square, identity,
        // inverses, associativity.
        let (back, relabeled) = parsed.to_group().unwrap();
        assert!(!relabeled, "{name}: identity must already sit at 0");
        assert_eq!(back.order(), g.order());
        for a in g.elements() {
            assert_eq!(back.row(a), g.row(a), "{name}: table changed in transit");
        }
        assert_eq!(back.labels(), g.labels());
    }
}

#[test]
fn flows_round_trip_with_inline_and_named_groups() {
    let caps = Caps::default();
    let g = Arc::new(builtin("D4", &caps).unwrap());
    let k = normal_subgroups(&g, &caps).unwrap()[1].clone();
    let flow = coset_flow(&g, &k).unwrap();

    let inline = serde_json::to_string(&FlowJson::from_flow(&flow, true)).unwrap();
    let parsed: FlowJson = serde_json::from_str(&inline).unwrap();
    let GroupRefJson::Inline(group_json) = &parsed.group else {
        panic!("expected an inline group");
    };
    let (group, _) = group_json.to_group().unwrap();
    let back = Flow::make(&Arc::new(group), &parsed.action, parsed.base_point).unwrap();
    assert_eq!(back.size(), flow.size());
    for a in g.elements() {
        assert_eq!(back.action_row(a), flow.action_row(a));
    }

    let named = serde_json::to_string(&FlowJson::from_flow(&flow, false)).unwrap();
    let parsed: FlowJson = serde_json::from_str(&named).unwrap();
    match parsed.group {
        GroupRefJson::Name(n) => assert_eq!(n, "D4"),
        GroupRefJson::Inline(_) => panic!("expected a named group"),
    }
}

#[test]
fn translation_flows_revalidate_after_round_trips() {
    let caps = Caps::default();
    for name in ["C12", "S4", "Q8", "W2_2"] {
        let g = Arc::new(builtin(name, &caps).unwrap());
        let flow = left_translation_flow(&g);
        let json = serde_json::to_string(&FlowJson::from_flow(&flow, true)).unwrap();
        let parsed: FlowJson = serde_json::from_str(&json).unwrap();
        let GroupRefJson::Inline(gj) = &parsed.group else {
            panic!()
        };
        let (group, _) = gj.to_group().unwrap();
        // Flow::make re-checks the identity row, the action law, and the
        // base point's orbit.
        Flow::make(&Arc::new(group), &parsed.action, parsed.base_point).unwrap();
    }
}

#[test]
fn subgroup_and_morphism_schemas_round_trip() {
    let caps = Caps::default();
    let g = Arc::new(builtin("S3", &caps).unwrap());
    let k = Subgroup::new(&g, [0, 3, 4]).unwrap();
    let json = serde_json::to_string(&SubgroupJson {
        group: g.name().to_string(),
        elements: k.elements().to_vec(),
    })
    .unwrap();
    let parsed: SubgroupJson = serde_json::from_str(&json).unwrap();
    assert_eq!(parsed.group, "S3");
    let back = Subgroup::new(&g, parsed.elements.iter().copied()).unwrap();
    assert_eq!(back.elements(), k.elements());

    let m = MorphismJson {
        map: vec![0, 2, 1],
        checked: true,
    };
    let parsed: MorphismJson =
        serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(parsed.map, vec![0, 2, 1]);
    assert!(parsed.checked);
}
