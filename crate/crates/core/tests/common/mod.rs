#![allow(dead_code)]

use std::sync::Arc;

use dsketch_core::ct;
use dsketch_core::graph::enumerate_morphisms;
use dsketch_core::{Graph, GraphMorphism, RawGraph, Sketch};
use proptest::prelude::*;

/// Graphs with up to `max_nodes` nodes `n0..` and up to `max_edges` edges.
pub fn graph(max_nodes: usize, max_edges: usize) -> impl Strategy<Value = Arc<Graph>> {
    (1..=max_nodes).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_edges).prop_map(move |edges| {
            let mut raw = RawGraph::new();
            for i in 0..n {
                raw = raw.node(format!("n{i}"));
            }
            for (k, (s, t)) in edges.into_iter().enumerate() {
                raw = raw.edge(format!("x{k}"), format!("n{s}"), format!("n{t}"));
            }
            Arc::new(raw.build().unwrap())
        })
    })
}

/// Picks the `pick`-th morphism `a -> b` (modulo their number), if any.
pub fn nth_morphism(a: &Arc<Graph>, b: &Arc<Graph>, pick: usize) -> Option<GraphMorphism> {
    let all = enumerate_morphisms(a, b);
    if all.is_empty() {
        None
    } else {
        Some(all[pick % all.len()].clone())
    }
}

/// A sketch over `g` whose statements are a selection from all
/// footprint statements, chosen by the bit mask.
pub fn sketch_over(g: &Arc<Graph>, mask: u64) -> Sketch {
    let all = ct::footprint().all_statements(g);
    let chosen = all.into_iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, s)| s);
    Sketch::new(g.clone(), chosen).unwrap()
}

/// Brute-force morphism count: every node map times every edge map,
/// filtered by the homomorphism law.
pub fn brute_force_count(a: &Graph, g: &Graph) -> usize {
    let (na, ea, ng, eg) = (a.node_count(), a.edge_count(), g.node_count(), g.edge_count());
    let mut count = 0;
    for nm in 0..ng.pow(na as u32) {
        let node = |i: usize| (nm / ng.pow(i as u32)) % ng;
        if eg == 0 {
            count += usize::from(ea == 0);
            continue;
        }
        for em in 0..eg.pow(ea as u32) {
            let edge = |i: usize| (em / eg.pow(i as u32)) % eg;
            if (0..ea).all(|e| g.src(edge(e)) == node(a.src(e)) && g.tgt(edge(e)) == node(a.tgt(e))) {
                count += 1;
            }
        }
    }
    count
}
