//! Pushouts, pullbacks and the initial object in the category of finite
//! graphs, plus finite verifiers for their universal properties.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::graph::{compose, enumerate_extensions, enumerate_morphisms, Graph, GraphMorphism, RawGraph};
use crate::{Error, Result};

/// Tag prefixed to names coming from the codomain of the first span leg.
pub const LEFT_TAG: &str = "L:";
/// Tag prefixed to names coming from the codomain of the second span leg.
pub const RIGHT_TAG: &str = "R:";

/// A pushout `B -left-> D <-right- A` of a span `B <-m- C -r-> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PushoutResult {
    pub object: Arc<Graph>,
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

/// A pullback `B <-left- D -right-> A` of a cospan `B -m-> C <-r- A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackResult {
    pub object: Arc<Graph>,
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

pub fn initial_graph() -> Graph {
    Graph::empty()
}

/// The unique morphism from the empty graph into `g`.
pub fn initial_morphism(g: Arc<Graph>) -> GraphMorphism {
    GraphMorphism::from_indices(Arc::new(Graph::empty()), g, Vec::new(), Vec::new())
        .expect("empty maps are always a morphism")
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Quotients `left_size + right_size` elements by `pairs`; returns for each
/// element the name of its class, the class name being the least of the
/// tagged member names.
fn classes(tagged: &[String], uf: &mut UnionFind) -> Vec<String> {
    let mut least: BTreeMap<usize, &String> = BTreeMap::new();
    for (i, name) in tagged.iter().enumerate() {
        let root = uf.find(i);
        least
            .entry(root)
            .and_modify(|cur| {
                if name < *cur {
                    *cur = name;
                }
            })
            .or_insert(name);
    }
    (0..tagged.len()).map(|i| least[&uf.find(i)].clone()).collect()
}

/// The pushout of `B <-m- C -r-> A`: the disjoint union of `B` and `A`
/// quotiented by `m(x) ~ r(x)`.
///
/// Elements of `D` are named after the least member of their class, with
/// `B`-names tagged `L:` and `A`-names tagged `R:`.
pub fn pushout(m: &GraphMorphism, r: &GraphMorphism) -> Result<PushoutResult> {
    if **m.dom() != **r.dom() {
        return Err(Error::Mismatch("span legs have different domains"));
    }
    let (b, a, c) = (m.cod(), r.cod(), m.dom());
    let nb = b.node_count();
    let eb = b.edge_count();

    let node_tags: Vec<String> = b
        .nodes()
        .map(|n| format!("{LEFT_TAG}{n}"))
        .chain(a.nodes().map(|n| format!("{RIGHT_TAG}{n}")))
        .collect();
    let mut uf = UnionFind::new(node_tags.len());
    for x in 0..c.node_count() {
        uf.union(m.node_image(x), nb + r.node_image(x));
    }
    let node_class = classes(&node_tags, &mut uf);

    let edge_tags: Vec<String> = b
        .edges()
        .map(|(e, _, _)| format!("{LEFT_TAG}{e}"))
        .chain(a.edges().map(|(e, _, _)| format!("{RIGHT_TAG}{e}")))
        .collect();
    let mut uf = UnionFind::new(edge_tags.len());
    for x in 0..c.edge_count() {
        uf.union(m.edge_image(x), eb + r.edge_image(x));
    }
    let edge_class = classes(&edge_tags, &mut uf);

    let mut raw = RawGraph::new();
    let distinct_nodes: BTreeSet<&String> = node_class.iter().collect();
    raw.nodes = distinct_nodes.into_iter().cloned().collect();
    let mut seen = BTreeSet::new();
    for (i, class) in edge_class.iter().enumerate() {
        if !seen.insert(class) {
            continue;
        }
        let (s, t) = if i < eb {
            (b.src(i), b.tgt(i))
        } else {
            (nb + a.src(i - eb), nb + a.tgt(i - eb))
        };
        raw.edges.push((class.clone(), node_class[s].clone(), node_class[t].clone()));
    }
    let object = Arc::new(raw.build()?);

    let left = GraphMorphism::new(
        b.clone(),
        object.clone(),
        b.nodes().zip(&node_class[..nb]).map(|(x, y)| (x, y.as_str())),
        b.edges().zip(&edge_class[..eb]).map(|((x, _, _), y)| (x, y.as_str())),
    )?;
    let right = GraphMorphism::new(
        a.clone(),
        object.clone(),
        a.nodes().zip(&node_class[nb..]).map(|(x, y)| (x, y.as_str())),
        a.edges().zip(&edge_class[eb..]).map(|((x, _, _), y)| (x, y.as_str())),
    )?;
    Ok(PushoutResult { object, left, right })
}

impl PushoutResult {
    /// The mediating morphism `D -> X` for a cocone `f: B -> X`, `g: A -> X`.
    /// `None` when `f` and `g` disagree on identified elements.
    pub fn mediate(&self, f: &GraphMorphism, g: &GraphMorphism) -> Option<GraphMorphism> {
        if **f.dom() != **self.left.dom() || **g.dom() != **self.right.dom() || **f.cod() != **g.cod()
        {
            return None;
        }
        let d = &self.object;
        let mut nodes: Vec<Option<usize>> = alloc::vec![None; d.node_count()];
        let mut edges: Vec<Option<usize>> = alloc::vec![None; d.edge_count()];
        let legs = [(&self.left, f), (&self.right, g)];
        for (leg, target) in legs {
            for i in 0..leg.dom().node_count() {
                let slot = &mut nodes[leg.node_image(i)];
                match slot {
                    Some(v) if *v != target.node_image(i) => return None,
                    _ => *slot = Some(target.node_image(i)),
                }
            }
            for i in 0..leg.dom().edge_count() {
                let slot = &mut edges[leg.edge_image(i)];
                match slot {
                    Some(v) if *v != target.edge_image(i) => return None,
                    _ => *slot = Some(target.edge_image(i)),
                }
            }
        }
        let nodes = nodes.into_iter().collect::<Option<Vec<_>>>()?;
        let edges = edges.into_iter().collect::<Option<Vec<_>>>()?;
        GraphMorphism::from_indices(d.clone(), f.cod().clone(), nodes, edges).ok()
    }
}

/// The pullback of `B -m-> C <-r- A`: pairs `(b, a)` with `m(b) = r(a)`,
/// componentwise on nodes and edges, named `b|a`.
pub fn pullback(m: &GraphMorphism, r: &GraphMorphism) -> Result<PullbackResult> {
    if **m.cod() != **r.cod() {
        return Err(Error::Mismatch("cospan legs have different codomains"));
    }
    let (b, a) = (m.dom(), r.dom());
    let pair = |x: &str, y: &str| format!("{x}|{y}");
    let mut raw = RawGraph::new();
    let mut node_pairs = Vec::new();
    for i in 0..b.node_count() {
        for j in 0..a.node_count() {
            if m.node_image(i) == r.node_image(j) {
                raw.nodes.push(pair(b.node_name(i), a.node_name(j)));
                node_pairs.push((i, j));
            }
        }
    }
    let mut edge_pairs = Vec::new();
    for i in 0..b.edge_count() {
        for j in 0..a.edge_count() {
            if m.edge_image(i) == r.edge_image(j) {
                raw.edges.push((
                    pair(b.edge_name(i), a.edge_name(j)),
                    pair(b.node_name(b.src(i)), a.node_name(a.src(j))),
                    pair(b.node_name(b.tgt(i)), a.node_name(a.tgt(j))),
                ));
                edge_pairs.push((i, j));
            }
        }
    }
    let object = Arc::new(raw.build().map_err(|e| Error::NameClash(format!("{e}")))?);
    let project = |first: bool, target: &Arc<Graph>| -> Result<GraphMorphism> {
        let pick = |p: &(usize, usize)| if first { p.0 } else { p.1 };
        let nodes: Vec<(String, &str)> = node_pairs
            .iter()
            .map(|p| (pair(b.node_name(p.0), a.node_name(p.1)), target.node_name(pick(p))))
            .collect();
        let edges: Vec<(String, &str)> = edge_pairs
            .iter()
            .map(|p| (pair(b.edge_name(p.0), a.edge_name(p.1)), target.edge_name(pick(p))))
            .collect();
        GraphMorphism::new(object.clone(), target.clone(), nodes, edges)
    };
    let left = project(true, b)?;
    let right = project(false, a)?;
    Ok(PullbackResult { object, left, right })
}

impl PullbackResult {
    /// The mediating morphism `X -> D` for a cone `f: X -> B`, `g: X -> A`.
    /// `None` when the cone does not commute over the cospan.
    pub fn mediate(&self, f: &GraphMorphism, g: &GraphMorphism) -> Option<GraphMorphism> {
        if **f.cod() != **self.left.cod() || **g.cod() != **self.right.cod() || **f.dom() != **g.dom()
        {
            return None;
        }
        let d = &self.object;
        let x = f.dom();
        let nodes = (0..x.node_count())
            .map(|i| {
                let name = format!(
                    "{}|{}",
                    f.cod().node_name(f.node_image(i)),
                    g.cod().node_name(g.node_image(i))
                );
                d.node_index(&name)
            })
            .collect::<Option<Vec<_>>>()?;
        let edges = (0..x.edge_count())
            .map(|i| {
                let name = format!(
                    "{}|{}",
                    f.cod().edge_name(f.edge_image(i)),
                    g.cod().edge_name(g.edge_image(i))
                );
                d.edge_index(&name)
            })
            .collect::<Option<Vec<_>>>()?;
        GraphMorphism::from_indices(x.clone(), d.clone(), nodes, edges).ok()
    }
}

/// Small test objects for the universal-property verifiers: every graph
/// here has at most four nodes.
pub fn mediator_pool() -> Vec<Arc<Graph>> {
    let g = |nodes: &[&str], edges: &[(&str, &str, &str)]| {
        Arc::new(Graph::from_parts(nodes, edges).expect("pool graphs are valid"))
    };
    alloc::vec![
        g(&[], &[]),
        g(&["x"], &[]),
        g(&["x", "y"], &[]),
        g(&["x"], &[("l", "x", "x")]),
        g(&["x"], &[("l", "x", "x"), ("k", "x", "x")]),
        g(&["x", "y"], &[("p", "x", "y")]),
        g(&["x", "y"], &[("p", "x", "y"), ("q", "x", "y")]),
        g(&["x", "y"], &[("p", "x", "y"), ("l", "y", "y")]),
        g(&["x", "y", "z"], &[("p", "x", "y"), ("q", "y", "z"), ("s", "x", "z")]),
        g(
            &["x", "y"],
            &[("p", "x", "y"), ("q", "y", "x"), ("l", "x", "x"), ("k", "y", "y")],
        ),
        g(&["w", "x", "y", "z"], &[("p", "w", "x"), ("q", "y", "z")]),
    ]
}

/// Checks that `candidate` commutes over the span `m`, `r` and that every
/// cocone into a pool object factors uniquely through it.
pub fn verify_pushout(
    m: &GraphMorphism,
    r: &GraphMorphism,
    candidate: &PushoutResult,
    pool: &[Arc<Graph>],
) -> bool {
    let commutes = match (compose(m, &candidate.left), compose(r, &candidate.right)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    };
    if !commutes {
        return false;
    }
    for x in pool {
        // Cocones (f, g) with m;f = r;g, counted as extensions of m;f along r.
        let mut cocones = 0usize;
        for f in enumerate_morphisms(m.cod(), x) {
            let Ok(mf) = compose(m, &f) else { return false };
            match enumerate_extensions(r, &mf) {
                Ok(gs) => cocones += gs.len(),
                Err(_) => return false,
            }
        }
        let mediators = enumerate_morphisms(&candidate.object, x);
        if mediators.len() != cocones {
            return false;
        }
        let mut images = BTreeSet::new();
        for u in &mediators {
            let (Ok(f), Ok(g)) = (compose(&candidate.left, u), compose(&candidate.right, u)) else {
                return false;
            };
            if !images.insert((f, g)) {
                return false;
            }
        }
    }
    true
}

/// Checks that `candidate` commutes over the cospan `m`, `r` and that every
/// cone from a pool object factors uniquely through it.
pub fn verify_pullback(
    m: &GraphMorphism,
    r: &GraphMorphism,
    candidate: &PullbackResult,
    pool: &[Arc<Graph>],
) -> bool {
    let commutes = match (compose(&candidate.left, m), compose(&candidate.right, r)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    };
    if !commutes {
        return false;
    }
    for x in pool {
        let mut by_image: BTreeMap<GraphMorphism, usize> = BTreeMap::new();
        for g in enumerate_morphisms(x, r.dom()) {
            let Ok(gr) = compose(&g, r) else { return false };
            *by_image.entry(gr).or_default() += 1;
        }
        let mut cones = 0usize;
        for f in enumerate_morphisms(x, m.dom()) {
            let Ok(fm) = compose(&f, m) else { return false };
            cones += by_image.get(&fm).copied().unwrap_or(0);
        }
        let mediators = enumerate_morphisms(x, &candidate.object);
        if mediators.len() != cones {
            return false;
        }
        let mut images = BTreeSet::new();
        for u in &mediators {
            let (Ok(f), Ok(g)) = (compose(u, &candidate.left), compose(u, &candidate.right)) else {
                return false;
            };
            if !images.insert((f, g)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ct;
    use crate::graph::find_isomorphism;

    fn g(nodes: &[&str], edges: &[(&str, &str, &str)]) -> Arc<Graph> {
        Arc::new(Graph::from_parts(nodes, edges).unwrap())
    }

    #[test]
    fn initial_object() {
        let empty = Arc::new(initial_graph());
        assert_eq!(initial_morphism(empty.clone()), GraphMorphism::identity(empty.clone()));
        let gg = Arc::new(ct::graph_g());
        let bang = initial_morphism(gg.clone());
        assert_eq!(bang.cod(), &gg);
        assert_eq!(enumerate_morphisms(&empty, &gg), alloc::vec![bang]);
    }

    #[test]
    fn pushout_over_empty_is_coproduct() {
        let empty = Arc::new(Graph::empty());
        let b = g(&["x"], &[("l", "x", "x")]);
        let a = g(&["x", "y"], &[("p", "x", "y")]);
        let m = initial_morphism(b.clone());
        let r = initial_morphism(a.clone());
        let po = pushout(&m, &r).unwrap();
        let names: Vec<&str> = po.object.nodes().collect();
        assert_eq!(names, ["L:x", "R:x", "R:y"]);
        assert_eq!(po.object.edge_count(), 2);
        assert!(verify_pushout(&m, &r, &po, &mediator_pool()));
        assert_eq!(m.dom(), &empty);
    }

    #[test]
    fn pushout_along_identity() {
        let c = g(&["v1", "v2"], &[("e", "v1", "v2")]);
        let a = g(&["v1", "v2", "v3"], &[("e", "v1", "v2"), ("f", "v2", "v3")]);
        let id = GraphMorphism::identity(c.clone());
        let r = GraphMorphism::inclusion(c, a.clone()).unwrap();
        let po = pushout(&id, &r).unwrap();
        assert!(find_isomorphism(&po.object, &a).is_some());
        assert!(po.right.is_isomorphism());
        assert!(verify_pushout(&id, &r, &po, &mediator_pool()));
    }

    #[test]
    fn pushout_merging_parallel_edges() {
        let b = g(&["v1", "v3"], &[("e3", "v1", "v3"), ("e4", "v1", "v3")]);
        let a = g(&["v1", "v3"], &[("e", "v1", "v3")]);
        let id = GraphMorphism::identity(b.clone());
        let iota = GraphMorphism::from_edges(b.clone(), a, &[("e3", "e"), ("e4", "e")]).unwrap();
        let po = pushout(&id, &iota).unwrap();
        assert_eq!(po.object.edges().map(|e| e.0).collect::<Vec<_>>(), ["L:e3"]);
        assert!(verify_pushout(&id, &iota, &po, &mediator_pool()));
    }

    #[test]
    fn disjoint_union_is_not_a_pushout_of_a_nontrivial_span() {
        let c = g(&["v"], &[]);
        let b = g(&["v", "w"], &[("p", "v", "w")]);
        let m = GraphMorphism::inclusion(c.clone(), b.clone()).unwrap();
        let r = GraphMorphism::inclusion(c.clone(), b.clone()).unwrap();
        let coproduct = pushout(&initial_morphism(b.clone()), &initial_morphism(b.clone())).unwrap();
        assert!(!verify_pushout(&m, &r, &coproduct, &mediator_pool()));
        let real = pushout(&m, &r).unwrap();
        assert!(verify_pushout(&m, &r, &real, &mediator_pool()));
    }

    #[test]
    fn pushout_mediator() {
        let c = g(&["v"], &[]);
        let b = g(&["v", "w"], &[("p", "v", "w")]);
        let m = GraphMorphism::inclusion(c.clone(), b.clone()).unwrap();
        let po = pushout(&m, &m).unwrap();
        let x = g(&["x", "y"], &[("p", "x", "y")]);
        let f = GraphMorphism::from_edges(b.clone(), x.clone(), &[("p", "p")]).unwrap();
        let u = po.mediate(&f, &f).unwrap();
        assert_eq!(compose(&po.left, &u).unwrap(), f);
    }

    #[test]
    fn pushout_is_symmetric_up_to_iso() {
        let c = g(&["v"], &[]);
        let b = g(&["v", "w"], &[("p", "v", "w")]);
        let a = g(&["v"], &[("l", "v", "v")]);
        let m = GraphMorphism::inclusion(c.clone(), b).unwrap();
        let r = GraphMorphism::inclusion(c, a).unwrap();
        let one = pushout(&m, &r).unwrap();
        let two = pushout(&r, &m).unwrap();
        assert!(find_isomorphism(&one.object, &two.object).is_some());
    }

    #[test]
    fn pullback_along_identity() {
        let c = g(&["x", "y"], &[("p", "x", "y"), ("l", "y", "y")]);
        let b = g(&["v1", "v2"], &[("e", "v1", "v2")]);
        let m = GraphMorphism::from_edges(b.clone(), c.clone(), &[("e", "p")]).unwrap();
        let id = GraphMorphism::identity(c);
        let pb = pullback(&m, &id).unwrap();
        assert!(find_isomorphism(&pb.object, &b).is_some());
        assert!(verify_pullback(&m, &id, &pb, &mediator_pool()));
    }

    #[test]
    fn pullback_of_points() {
        let c = g(&["c"], &[]);
        let b = g(&["b"], &[]);
        let a = g(&["a"], &[]);
        let m = GraphMorphism::new(b, c.clone(), [("b", "c")], []).unwrap();
        let r = GraphMorphism::new(a, c, [("a", "c")], []).unwrap();
        let pb = pullback(&m, &r).unwrap();
        assert_eq!(pb.object.nodes().collect::<Vec<_>>(), ["b|a"]);
        assert!(verify_pullback(&m, &r, &pb, &mediator_pool()));
    }

    #[test]
    fn pullback_of_two_edge_inclusions() {
        let gg = Arc::new(ct::graph_g());
        let eg = g(&["1", "3"], &[("e", "1", "3")]);
        let fg = g(&["1", "3"], &[("f", "1", "3")]);
        let m = GraphMorphism::inclusion(eg, gg.clone()).unwrap();
        let r = GraphMorphism::inclusion(fg, gg).unwrap();
        let pb = pullback(&m, &r).unwrap();
        assert_eq!(pb.object.nodes().collect::<Vec<_>>(), ["1|1", "3|3"]);
        assert_eq!(pb.object.edge_count(), 0);
        assert!(verify_pullback(&m, &r, &pb, &mediator_pool()));
    }

    #[test]
    fn pullback_projections_are_jointly_monic() {
        let gg = Arc::new(ct::graph_g());
        let comp = Arc::new(ct::arity_comp());
        let all = enumerate_morphisms(&comp, &gg);
        let pb = pullback(&all[0], &all[1]).unwrap();
        let mut seen = BTreeSet::new();
        for i in 0..pb.object.node_count() {
            assert!(seen.insert((pb.left.node_image(i), pb.right.node_image(i))));
        }
        assert!(verify_pullback(&all[0], &all[1], &pb, &mediator_pool()));
    }
}
