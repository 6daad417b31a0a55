mod common;

use common::{graph, nth_morphism};
use dsketch_core::category::{mediator_pool, verify_pullback, verify_pushout};
use dsketch_core::graph::{compose, find_isomorphism};
use dsketch_core::{pullback, pushout};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pushouts_are_universal_and_symmetric(
        c in graph(2, 2), b in graph(3, 3), a in graph(3, 3), i in 0usize..64, j in 0usize..64,
    ) {
        let (Some(m), Some(r)) = (nth_morphism(&c, &b, i), nth_morphism(&c, &a, j)) else {
            return Ok(());
        };
        let po = pushout(&m, &r).unwrap();
        prop_assert_eq!(compose(&m, &po.left).unwrap(), compose(&r, &po.right).unwrap());
        prop_assert!(verify_pushout(&m, &r, &po, &mediator_pool()));
        let swapped = pushout(&r, &m).unwrap();
        prop_assert!(find_isomorphism(&po.object, &swapped.object).is_some());
    }

    #[test]
    fn pullbacks_are_universal_and_jointly_monic(
        b in graph(3, 3), a in graph(3, 3), c in graph(2, 3), i in 0usize..64, j in 0usize..64,
    ) {
        let (Some(m), Some(r)) = (nth_morphism(&b, &c, i), nth_morphism(&a, &c, j)) else {
            return Ok(());
        };
        let pb = pullback(&m, &r).unwrap();
        prop_assert_eq!(compose(&pb.left, &m).unwrap(), compose(&pb.right, &r).unwrap());
        prop_assert!(verify_pullback(&m, &r, &pb, &mediator_pool()));
        let d = &pb.object;
        for x in 0..d.node_count() {
            for y in 0..d.node_count() {
                if x != y {
                    prop_assert!(pb.left.node_image(x) != pb.left.node_image(y)
                        || pb.right.node_image(x) != pb.right.node_image(y));
                }
            }
        }
        for x in 0..d.edge_count() {
            for y in 0..d.edge_count() {
                if x != y {
                    prop_assert!(pb.left.edge_image(x) != pb.left.edge_image(y)
                        || pb.right.edge_image(x) != pb.right.edge_image(y));
                }
            }
        }
    }
}
