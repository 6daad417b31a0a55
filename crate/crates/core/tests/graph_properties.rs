mod common;

use common::{brute_force_count, graph, nth_morphism};
use dsketch_core::graph::{compose, enumerate_extensions, enumerate_morphisms};
use dsketch_core::GraphMorphism;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_brute_force(a in graph(3, 3), g in graph(4, 5)) {
        let listed = enumerate_morphisms(&a, &g);
        prop_assert_eq!(listed.len(), brute_force_count(&a, &g));
        let mut sorted = listed.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(&sorted, &listed);
        prop_assert_eq!(enumerate_morphisms(&a, &g), listed);
    }

    #[test]
    fn composition_is_associative_and_unital(
        a in graph(3, 3), b in graph(3, 4), c in graph(3, 4), d in graph(3, 4),
        i in 0usize..64, j in 0usize..64, k in 0usize..64,
    ) {
        let (Some(f), Some(g), Some(h)) = (nth_morphism(&a, &b, i), nth_morphism(&b, &c, j), nth_morphism(&c, &d, k)) else {
            return Ok(());
        };
        let left = compose(&compose(&f, &g).unwrap(), &h).unwrap();
        let right = compose(&f, &compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(compose(&GraphMorphism::identity(a.clone()), &f).unwrap(), f.clone());
        prop_assert_eq!(compose(&f, &GraphMorphism::identity(b.clone())).unwrap(), f);
    }

    #[test]
    fn extensions_are_exactly_the_factorizations(
        k in graph(2, 2), m in graph(3, 4), g in graph(4, 5), i in 0usize..64, j in 0usize..64,
    ) {
        let (Some(a), Some(t)) = (nth_morphism(&k, &m, i), nth_morphism(&k, &g, j)) else {
            return Ok(());
        };
        let ext = enumerate_extensions(&a, &t).unwrap();
        let expected: Vec<_> = enumerate_morphisms(&m, &g)
            .into_iter()
            .filter(|r| compose(&a, r).unwrap() == t)
            .collect();
        prop_assert_eq!(ext, expected);
    }

    #[test]
    fn isomorphisms_invert(g in graph(4, 5), i in 0usize..64) {
        let autos: Vec<_> = enumerate_morphisms(&g, &g).into_iter().filter(|m| m.is_isomorphism()).collect();
        let f = &autos[i % autos.len()];
        let inv = f.invert().unwrap();
        prop_assert_eq!(compose(f, &inv).unwrap(), GraphMorphism::identity(g.clone()));
        prop_assert_eq!(compose(&inv, f).unwrap(), GraphMorphism::identity(g.clone()));
    }
}
