//! Property tests: the validators must be total and the laws they accept
//! must actually hold on whatever they accepted.

use std::sync::Arc;

use proptest::prelude::*;

use umf_core::caps::Caps;
use umf_core::extension::{cocycle_from_section, twisted_product_flow};
use umf_core::group::catalog::builtin;
use umf_core::group::{cross_section, make_group, normal_subgroups, quotient, SectionPolicy};

fn small_table() -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec(proptest::collection::vec(0..n, n), n)
    })
}

proptest! {
    /// Arbitrary tables never panic the validator, and anything accepted
    /// really is a group: a re-check of all four axioms must agree.
    #[test]
    fn make_group_is_total_and_sound(table in small_table()) {
        if let Ok(g) = make_group(&table, "fuzz") {
            let n = g.order();
            prop_assert_eq!(n, table.len());
            for a in 0..n {
                prop_assert_eq!(g.op(0, a), a);
                prop_assert_eq!(g.op(a, 0), a);
                prop_assert_eq!(g.op(a, g.inv(a)), 0);
                for b in 0..n {
                    for c in 0..n {
                        prop_assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
                    }
                }
            }
        }
    }

    /// Every seed yields a valid normalized section, and the twisted flow
    /// built from it passes validation (the flow constructor re-derives the
    /// action axioms from the cocycle identity).
    #[test]
    fn any_seed_gives_a_lawful_section_and_twisted_flow(
        seed in any::<u64>(),
        pick in 0usize..4,
    ) {
        let caps = Caps::default();
        let name = ["C12", "D4", "S3", "Q8"][pick];
        let g = Arc::new(builtin(name, &caps).unwrap());
        for k in normal_subgroups(&g, &caps).unwrap() {
            let cs = Arc::new(quotient(&g, &k).unwrap());
            let s = cross_section(&cs, &SectionPolicy::SeededRandom(seed)).unwrap();
            prop_assert_eq!(s.value(0), 0);
            for c in 0..cs.count() {
                prop_assert_eq!(cs.coset_of(s.value(c)), c);
            }
            let rho = cocycle_from_section(&s).unwrap();
            let flow = twisted_product_flow(&rho).unwrap();
            prop_assert_eq!(flow.size(), g.order());
        }
    }
}
