//! The category-theory footprint and its standard fixtures.
//!
//! Predicates: `comp` (a commuting triangle `e1 ; e2 = e3`), `id` (a loop
//! that is an identity), `monic` (an edge that is a monomorphism) and
//! `final` (a final object). The sample sketch `G` has nodes `1..5`, edges
//! `a:1->2, b:2->3, c:3->4, d:4->5, e:1->3, f:1->3, g:3->5` and the
//! statements `comp(a,b,e)`, `comp(a,b,f)`, `comp(c,d,g)`, `monic(b)` and
//! `monic(g)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::category::initial_morphism;
use crate::condition::{implication, unguarded_exists, unguarded_forall, Condition, Node, Quantifier};
use crate::graph::{Graph, GraphMorphism, RawGraph};
use crate::sketch::{Footprint, PredicateSymbol, Sketch, Statement};
use crate::translation::translate_condition;
use crate::{Error, Result};

fn graph(nodes: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
    Graph::from_parts(nodes, edges).expect("fixture graph is valid")
}

fn arc(g: Graph) -> Arc<Graph> {
    Arc::new(g)
}

/// `v1 -e1-> v2 -e2-> v3` plus `e3: v1 -> v3`.
pub fn arity_comp() -> Graph {
    graph(&["v1", "v2", "v3"], &[("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v1", "v3")])
}

/// A single node with a loop `e`.
pub fn arity_id() -> Graph {
    graph(&["v"], &[("e", "v", "v")])
}

/// `v1 -e-> v2`.
pub fn arity_monic() -> Graph {
    graph(&["v1", "v2"], &[("e", "v1", "v2")])
}

/// A single node `v`.
pub fn arity_final() -> Graph {
    graph(&["v"], &[])
}

pub fn comp() -> PredicateSymbol {
    PredicateSymbol::new("comp", arity_comp())
}

pub fn id() -> PredicateSymbol {
    PredicateSymbol::new("id", arity_id())
}

pub fn monic() -> PredicateSymbol {
    PredicateSymbol::new("monic", arity_monic())
}

pub fn final_object() -> PredicateSymbol {
    PredicateSymbol::new("final", arity_final())
}

pub fn footprint() -> Footprint {
    [comp(), id(), monic(), final_object()]
        .into_iter()
        .try_fold(Footprint::new(), Footprint::with)
        .expect("predicate names are distinct")
}

/// `comp` binding `e1, e2, e3` to the given edges of `ctx`.
pub fn comp_stmt(ctx: &Arc<Graph>, e1: &str, e2: &str, e3: &str) -> Statement {
    Statement::bind(&comp(), ctx, &[], &[("e1", e1), ("e2", e2), ("e3", e3)])
        .expect("edges form a triangle")
}

pub fn monic_stmt(ctx: &Arc<Graph>, e: &str) -> Statement {
    Statement::bind(&monic(), ctx, &[], &[("e", e)]).expect("edge exists")
}

pub fn final_stmt(ctx: &Arc<Graph>, v: &str) -> Statement {
    Statement::bind(&final_object(), ctx, &[("v", v)], &[]).expect("node exists")
}

pub fn id_stmt(ctx: &Arc<Graph>, e: &str) -> Statement {
    Statement::bind(&id(), ctx, &[], &[("e", e)]).expect("edge is a loop")
}

pub fn graph_g() -> Graph {
    graph(
        &["1", "2", "3", "4", "5"],
        &[
            ("a", "1", "2"),
            ("b", "2", "3"),
            ("c", "3", "4"),
            ("d", "4", "5"),
            ("e", "1", "3"),
            ("f", "1", "3"),
            ("g", "3", "5"),
        ],
    )
}

/// The statements `psi1 .. psi5` of the sample sketch, by number.
pub fn psi(i: usize) -> Statement {
    let g = arc(graph_g());
    match i {
        1 => comp_stmt(&g, "a", "b", "e"),
        2 => comp_stmt(&g, "a", "b", "f"),
        3 => comp_stmt(&g, "c", "d", "g"),
        4 => monic_stmt(&g, "b"),
        5 => monic_stmt(&g, "g"),
        _ => panic!("no statement psi{i}"),
    }
}

pub fn sketch_g() -> Sketch {
    Sketch::new(graph_g(), (1..=5).map(psi)).expect("statements live in G")
}

/// `G` without the edge `f` and the statement on it.
pub fn sketch_g_without_f() -> Sketch {
    let g = arc(graph(
        &["1", "2", "3", "4", "5"],
        &[
            ("a", "1", "2"),
            ("b", "2", "3"),
            ("c", "3", "4"),
            ("d", "4", "5"),
            ("e", "1", "3"),
            ("g", "3", "5"),
        ],
    ));
    let stmts = [
        comp_stmt(&g, "a", "b", "e"),
        comp_stmt(&g, "c", "d", "g"),
        monic_stmt(&g, "b"),
        monic_stmt(&g, "g"),
    ];
    Sketch::new(g, stmts).expect("statements live in the context")
}

/// The repaired sketch: `e` and `f` merged into `ef`, and `c` marked monic.
pub fn sketch_h_repaired() -> Sketch {
    let h = arc(graph(
        &["1", "2", "3", "4", "5"],
        &[
            ("a", "1", "2"),
            ("b", "2", "3"),
            ("c", "3", "4"),
            ("d", "4", "5"),
            ("ef", "1", "3"),
            ("g", "3", "5"),
        ],
    ));
    let stmts = [
        comp_stmt(&h, "a", "b", "ef"),
        comp_stmt(&h, "c", "d", "g"),
        monic_stmt(&h, "b"),
        monic_stmt(&h, "g"),
        monic_stmt(&h, "c"),
    ];
    Sketch::new(h, stmts).expect("statements live in the context")
}

/// The quotient map `G -> H` that merges `e` and `f`.
pub fn merge_e_f() -> GraphMorphism {
    GraphMorphism::from_edges(
        arc(graph_g()),
        sketch_h_repaired().context().clone(),
        &[("a", "a"), ("b", "b"), ("c", "c"), ("d", "d"), ("e", "ef"), ("f", "ef"), ("g", "g")],
    )
    .expect("merge is a homomorphism")
}

/// `v1 -e1-> v2 -e2-> v3`, the context of composable pairs.
pub fn composable_pair() -> Graph {
    graph(&["v1", "v2", "v3"], &[("e1", "v1", "v2"), ("e2", "v2", "v3")])
}

/// `e1 -> a, e2 -> b`.
pub fn anchor_t1() -> GraphMorphism {
    GraphMorphism::from_edges(arc(composable_pair()), arc(graph_g()), &[("e1", "a"), ("e2", "b")])
        .expect("a, b are composable")
}

/// `e1 -> b, e2 -> c`.
pub fn anchor_t2() -> GraphMorphism {
    GraphMorphism::from_edges(arc(composable_pair()), arc(graph_g()), &[("e1", "b"), ("e2", "c")])
        .expect("b, c are composable")
}

/// A single node `v` with the loop `e`.
pub fn loop_graph() -> Arc<Graph> {
    arc(arity_id())
}

/// The unique morphism from `v1 -e-> v2` onto the loop.
pub fn loop_collapse() -> GraphMorphism {
    GraphMorphism::from_edges(arc(arity_monic()), loop_graph(), &[("e", "e")]).expect("collapse")
}

fn inclusion(sub: &Arc<Graph>, sup: &Arc<Graph>) -> GraphMorphism {
    GraphMorphism::inclusion(sub.clone(), sup.clone()).expect("fixture inclusion")
}

fn empty() -> Arc<Graph> {
    arc(Graph::empty())
}

fn closed_forall(ctx: &Arc<Graph>, body: Condition) -> Condition {
    unguarded_forall(initial_morphism(ctx.clone()), body)
}

/// Composition is defined for the pair `e1, e2`.
pub fn phi1() -> Condition {
    let pair = arc(composable_pair());
    let tri = arc(arity_comp());
    unguarded_exists(inclusion(&pair, &tri), Condition::stmt(comp_stmt(&tri, "e1", "e2", "e3")))
}

/// Composition is always defined.
pub fn phi2() -> Condition {
    let pair = arc(composable_pair());
    closed_forall(&pair, phi1())
}

/// The context `v1 -e1-> v2 -e2-> v3` with parallel `e3, e4: v1 -> v3`.
pub fn two_composites() -> Graph {
    graph(
        &["v1", "v2", "v3"],
        &[("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v1", "v3"), ("e4", "v1", "v3")],
    )
}

/// Composition is unique.
pub fn phi3() -> Condition {
    let two = arc(two_composites());
    let one = arc(graph(&["v1", "v2", "v3"], &[("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e", "v1", "v3")]));
    let merge = GraphMorphism::from_edges(
        two.clone(),
        one.clone(),
        &[("e1", "e1"), ("e2", "e2"), ("e3", "e"), ("e4", "e")],
    )
    .expect("merge");
    let guard = Condition::conjunction(
        two.clone(),
        [comp_stmt(&two, "e1", "e2", "e3"), comp_stmt(&two, "e1", "e2", "e4")],
    );
    closed_forall(&two, Condition::exists(guard, merge, Condition::truth(one)))
}

/// Every edge out of a final object is monic.
pub fn phi4() -> Condition {
    let v = arc(arity_final());
    let out = arc(graph(&["v", "v1"], &[("e", "v", "v1")]));
    let inner = unguarded_forall(inclusion(&v, &out), Condition::stmt(monic_stmt(&out, "e")));
    let body = implication(Condition::stmt(final_stmt(&v, "v")), inner).expect("same context");
    closed_forall(&v, body)
}

fn triangle_rule(premise: &[Statement], conclusion: Statement) -> Condition {
    let tri = arc(arity_comp());
    let lhs = Condition::conjunction(tri.clone(), premise.iter().cloned());
    let body = implication(lhs, Condition::stmt(conclusion)).expect("same context");
    closed_forall(&tri, body)
}

/// Monomorphisms are closed under composition.
pub fn phi5() -> Condition {
    let tri = arc(arity_comp());
    triangle_rule(
        &[comp_stmt(&tri, "e1", "e2", "e3"), monic_stmt(&tri, "e1"), monic_stmt(&tri, "e2")],
        monic_stmt(&tri, "e3"),
    )
}

/// If a composite is monic, so is its first factor.
pub fn phi6() -> Condition {
    let tri = arc(arity_comp());
    triangle_rule(&[comp_stmt(&tri, "e1", "e2", "e3"), monic_stmt(&tri, "e3")], monic_stmt(&tri, "e1"))
}

/// The universal property of a monomorphism `e: v1 -> v2`.
pub fn phi7() -> Condition {
    let m = arc(arity_monic());
    let two = arc(graph(
        &["v1", "v2", "v3"],
        &[("e", "v1", "v2"), ("e1", "v3", "v1"), ("e2", "v3", "v1"), ("e3", "v3", "v2")],
    ));
    let one = arc(graph(
        &["v1", "v2", "v3"],
        &[("e", "v1", "v2"), ("e3", "v3", "v2"), ("e4", "v3", "v1")],
    ));
    let merge = GraphMorphism::from_edges(
        two.clone(),
        one.clone(),
        &[("e", "e"), ("e1", "e4"), ("e2", "e4"), ("e3", "e3")],
    )
    .expect("merge");
    let guard = Condition::conjunction(
        two.clone(),
        [comp_stmt(&two, "e1", "e", "e3"), comp_stmt(&two, "e2", "e", "e3")],
    );
    unguarded_forall(inclusion(&m, &two), Condition::exists(guard, merge, Condition::truth(one)))
}

/// The universal property of a final object `v`.
pub fn phi8() -> Condition {
    let v = arc(arity_final());
    let two = arc(graph(&["v", "v1"], &[]));
    let arrow = arc(graph(&["v", "v1"], &[("e", "v1", "v")]));
    let parallel = arc(graph(&["v", "v1"], &[("e1", "v1", "v"), ("e2", "v1", "v")]));
    let exist = unguarded_forall(
        inclusion(&v, &two),
        unguarded_exists(inclusion(&two, &arrow), Condition::truth(arrow.clone())),
    );
    let merge = GraphMorphism::from_edges(parallel.clone(), arrow.clone(), &[("e1", "e"), ("e2", "e")])
        .expect("merge");
    let unique = unguarded_forall(
        inclusion(&v, &parallel),
        unguarded_exists(merge, Condition::truth(arrow)),
    );
    Condition::and(v, vec![exist, unique])
}

/// `phi1 .. phi8` in order.
pub fn all_phis() -> Vec<Condition> {
    vec![phi1(), phi2(), phi3(), phi4(), phi5(), phi6(), phi7(), phi8()]
}

/// Everything the running example needs, in one value.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub footprint: Footprint,
    pub g: Sketch,
    /// `phi1 .. phi8` at indices `0 .. 8`.
    pub phis: Vec<Condition>,
    pub t1: GraphMorphism,
    pub t2: GraphMorphism,
}

pub fn build_fixtures() -> Fixtures {
    Fixtures { footprint: footprint(), g: sketch_g(), phis: all_phis(), t1: anchor_t1(), t2: anchor_t2() }
}

/// Small sketches used as samples by exhaustive checks.
pub fn fixture_sketches() -> Vec<Sketch> {
    let edge = arc(arity_monic());
    let tri = arc(arity_comp());
    let lp = loop_graph();
    let two_loops = arc(graph(&["v"], &[("e", "v", "v"), ("l", "v", "v")]));
    vec![
        Sketch::bare(empty()),
        Sketch::new(edge.clone(), [monic_stmt(&edge, "e")]).expect("fixture"),
        Sketch::bare(edge),
        Sketch::new(tri.clone(), [comp_stmt(&tri, "e1", "e2", "e3"), monic_stmt(&tri, "e3")])
            .expect("fixture"),
        Sketch::new(lp.clone(), [id_stmt(&lp, "e"), monic_stmt(&lp, "e"), comp_stmt(&lp, "e", "e", "e")])
            .expect("fixture"),
        Sketch::new(two_loops.clone(), [comp_stmt(&two_loops, "e", "l", "e"), comp_stmt(&two_loops, "l", "e", "e")])
            .expect("fixture"),
        Sketch::new(arc(arity_final()), [final_stmt(&arc(arity_final()), "v")]).expect("fixture"),
        sketch_g(),
        sketch_g_without_f(),
        sketch_h_repaired(),
    ]
}

/// Which (co)limit a cone context describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Limit,
    Colimit,
}

struct Cones {
    base: Arc<Graph>,
    pair: Arc<Graph>,
    one: Arc<Graph>,
    two: Arc<Graph>,
}

fn projection(side: Side, raw: RawGraph, name: String, apex: &str, x: &str) -> RawGraph {
    match side {
        Side::Limit => raw.edge(name, apex, x),
        Side::Colimit => raw.edge(name, x, apex),
    }
}

fn mediator(side: Side, raw: RawGraph, name: &str) -> RawGraph {
    match side {
        Side::Limit => raw.edge(name, "apex2", "apex"),
        Side::Colimit => raw.edge(name, "apex", "apex2"),
    }
}

fn build(raw: RawGraph) -> Result<Arc<Graph>> {
    raw.build().map(Arc::new).map_err(|e| match e {
        Error::InvalidGraph(vs) => Error::NameClash(format!("{}", vs[0])),
        other => other,
    })
}

fn cones(side: Side, shape: &Graph) -> Result<Cones> {
    let mut raw = shape.to_raw().node("apex");
    for x in shape.nodes() {
        raw = projection(side, raw, format!("p_{x}"), "apex", x);
    }
    let base = build(raw.clone())?;
    raw = raw.node("apex2");
    for x in shape.nodes() {
        raw = projection(side, raw, format!("q_{x}"), "apex2", x);
    }
    let pair = build(raw.clone())?;
    let one = build(mediator(side, raw.clone(), "m"))?;
    let two = build(mediator(side, mediator(side, raw, "m1"), "m2"))?;
    Ok(Cones { base, pair, one, two })
}

/// A conjunction of statements; `True` when there are none.
fn conj(ctx: &Arc<Graph>, statements: Vec<Statement>) -> Condition {
    if statements.is_empty() {
        Condition::truth(ctx.clone())
    } else {
        Condition::conjunction(ctx.clone(), statements)
    }
}

/// The cone triangles over every edge of the shape, for the cone whose
/// projections carry `prefix`.
fn cone_triangles(side: Side, shape: &Graph, ctx: &Arc<Graph>, prefix: &str) -> Vec<Statement> {
    shape
        .edges()
        .map(|(x, s, t)| {
            let (ps, pt) = (format!("{prefix}_{s}"), format!("{prefix}_{t}"));
            match side {
                Side::Limit => comp_stmt(ctx, &ps, x, &pt),
                Side::Colimit => comp_stmt(ctx, x, &pt, &ps),
            }
        })
        .collect()
}

fn mediator_triangles(side: Side, shape: &Graph, ctx: &Arc<Graph>, m: &str) -> Vec<Statement> {
    shape
        .nodes()
        .map(|x| {
            let (p, q) = (format!("p_{x}"), format!("q_{x}"));
            match side {
                Side::Limit => comp_stmt(ctx, m, &p, &q),
                Side::Colimit => comp_stmt(ctx, &p, m, &q),
            }
        })
        .collect()
}

fn universal(side: Side, shape: &Graph) -> Result<Condition> {
    let c = cones(side, shape)?;
    let mut both = cone_triangles(side, shape, &c.pair, "p");
    both.extend(cone_triangles(side, shape, &c.pair, "q"));
    let existence = unguarded_forall(
        inclusion(&c.base, &c.pair),
        Condition::exists(
            conj(&c.pair, both),
            inclusion(&c.pair, &c.one),
            conj(&c.one, mediator_triangles(side, shape, &c.one, "m")),
        ),
    );

    let mut guard = cone_triangles(side, shape, &c.two, "p");
    guard.extend(cone_triangles(side, shape, &c.two, "q"));
    guard.extend(mediator_triangles(side, shape, &c.two, "m1"));
    guard.extend(mediator_triangles(side, shape, &c.two, "m2"));
    let nodes: Vec<(&str, &str)> = c.two.nodes().map(|n| (n, n)).collect();
    let edges: Vec<(&str, &str)> = c
        .two
        .edges()
        .map(|(e, _, _)| (e, if e == "m1" || e == "m2" { "m" } else { e }))
        .collect();
    let merge = GraphMorphism::new(c.two.clone(), c.one.clone(), nodes, edges)?;
    let uniqueness = unguarded_forall(
        inclusion(&c.base, &c.two),
        Condition::exists(conj(&c.two, guard), merge, Condition::truth(c.one.clone())),
    );
    Ok(Condition::and(c.base, vec![existence, uniqueness]))
}

/// Existence and uniqueness of mediators for limits of the given shape,
/// over the context of the shape plus one cone.
pub fn limit_condition(shape: &Graph) -> Result<Condition> {
    universal(Side::Limit, shape)
}

/// The dual of [`limit_condition`] for cocones.
pub fn colimit_condition(shape: &Graph) -> Result<Condition> {
    universal(Side::Colimit, shape)
}

/// The renaming that turns the empty-shape limit condition into the
/// final-object condition.
pub fn limit_names_to_final(name: &str) -> String {
    match name {
        "apex" => "v",
        "apex2" => "v1",
        "m" => "e",
        "m1" => "e1",
        "m2" => "e2",
        other => other,
    }
    .to_string()
}

/// Replaces each statement whose predicate has a definition by the
/// definition translated along the statement's binding. Definitions are
/// not unfolded recursively.
pub fn unfold(cond: &Condition, defs: &BTreeMap<String, Condition>) -> Result<Condition> {
    let ctx = cond.context().clone();
    let node = match cond.node() {
        Node::Stmt(s) => match defs.get(s.predicate().name()) {
            Some(def) => {
                if **def.context() != **s.predicate().arity() {
                    return Err(Error::Mismatch("definition does not live over the predicate's arity"));
                }
                return translate_condition(s.binding(), def);
            }
            None => Node::Stmt(s.clone()),
        },
        Node::True => Node::True,
        Node::False => Node::False,
        Node::And(cs) => Node::And(cs.iter().map(|c| unfold(c, defs)).collect::<Result<_>>()?),
        Node::Or(cs) => Node::Or(cs.iter().map(|c| unfold(c, defs)).collect::<Result<_>>()?),
        Node::Not(c) => Node::Not(alloc::boxed::Box::new(unfold(c, defs)?)),
        Node::Exists(q) => Node::Exists(unfold_quantifier(q, defs)?),
        Node::Forall(q) => Node::Forall(unfold_quantifier(q, defs)?),
    };
    Ok(Condition::new(ctx, node))
}

fn unfold_quantifier(q: &Quantifier, defs: &BTreeMap<String, Condition>) -> Result<Quantifier> {
    Ok(Quantifier {
        guard: alloc::boxed::Box::new(unfold(&q.guard, defs)?),
        shift: q.shift.clone(),
        body: alloc::boxed::Box::new(unfold(&q.body, defs)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condition::{check_constraint, satisfies, well_formed, Constraint};

    fn global(g: &Sketch, c: Condition) -> bool {
        check_constraint(g, &Constraint::global(c, g.context().clone()).unwrap()).unwrap().holds
    }

    #[test]
    fn fixture_shapes() {
        let f = build_fixtures();
        assert_eq!(f.g.context().node_count(), 5);
        assert_eq!(f.g.context().edge_count(), 7);
        assert_eq!(f.g.statements().len(), 5);
        assert!(f.phis[1].context().is_empty());
        assert_eq!(**f.phis[7].context(), arity_final());
        for phi in &f.phis {
            assert!(well_formed(phi).is_empty(), "{phi}");
        }
        assert_eq!(f.footprint.predicates().count(), 4);
    }

    #[test]
    fn example_facts() {
        let g = sketch_g();
        assert!(satisfies(&anchor_t1(), &g, &phi1()).unwrap().holds);
        assert!(!satisfies(&anchor_t2(), &g, &phi1()).unwrap().holds);
        assert!(!global(&g, phi2()));
        assert!(!global(&g, phi3()));
        assert!(global(&g, phi5()));
        assert!(!global(&g, phi6()));
        assert!(global(&sketch_g_without_f(), phi3()));
    }

    #[test]
    fn empty_limit_is_final_object() {
        let lim = limit_condition(&Graph::empty()).unwrap();
        let renamed = lim.rename(&limit_names_to_final, &limit_names_to_final).unwrap();
        assert_eq!(renamed, phi8());
    }

    #[test]
    fn binary_product_shape() {
        let shape = graph(&["x", "y"], &[]);
        let lim = limit_condition(&shape).unwrap();
        assert!(well_formed(&lim).is_empty());
        assert_eq!(lim.context().edge_count(), 2);
        let Node::And(parts) = lim.node() else { panic!() };
        let mut mediator_counts = Vec::new();
        for p in parts {
            let Node::Forall(q) = p.node() else { panic!() };
            let Node::Exists(inner) = q.body.node() else { panic!() };
            mediator_counts.push((
                inner.guard.as_statements().unwrap().len(),
                inner.body.as_statements().unwrap().len(),
            ));
        }
        mediator_counts.sort();
        // existence: no cone triangles (no shape edges), two mediator
        // triangles; uniqueness: two triangles per mediator in the guard.
        assert_eq!(mediator_counts, [(0, 2), (4, 0)]);
    }

    #[test]
    fn empty_colimit_is_initial_object() {
        let colim = colimit_condition(&Graph::empty()).unwrap();
        let renamed = colim.rename(&limit_names_to_final, &limit_names_to_final).unwrap();
        // Reversing every edge of the final-object condition gives the
        // initial-object condition.
        let Node::And(parts) = renamed.node() else { panic!() };
        for p in parts {
            let Node::Forall(q) = p.node() else { panic!() };
            let Node::Exists(inner) = q.body.node() else { panic!() };
            for (_, s, t) in inner.shift.cod().edges() {
                assert_eq!((s, t), ("v", "v1"));
            }
        }
        let lp = loop_graph();
        let one = Sketch::bare(lp.clone());
        assert!(satisfies(&GraphMorphism::new(renamed.context().clone(), lp, [("v", "v")], core::iter::empty::<(&str, &str)>()).unwrap(), &one, &renamed).unwrap().holds);
    }

    #[test]
    fn limit_rejects_clashing_names() {
        let shape = graph(&["apex"], &[]);
        assert!(matches!(limit_condition(&shape), Err(Error::NameClash(_))));
    }

    #[test]
    fn limit_conditions_are_well_formed_on_small_shapes() {
        let shapes = [
            graph(&["x"], &[]),
            graph(&["x", "y"], &[("f", "x", "y")]),
            graph(&["x", "y"], &[("f", "x", "y"), ("g", "x", "y")]),
            graph(&["x"], &[("l", "x", "x")]),
            graph(&["w", "x", "y", "z"], &[("f", "w", "x"), ("g", "y", "z"), ("h", "x", "z"), ("k", "w", "y")]),
        ];
        for s in &shapes {
            assert!(well_formed(&limit_condition(s).unwrap()).is_empty());
            assert!(well_formed(&colimit_condition(s).unwrap()).is_empty());
        }
    }

    #[test]
    fn unfold_final_in_phi4() {
        let defs: BTreeMap<String, Condition> = [("final".to_string(), phi8())].into_iter().collect();
        let unfolded = unfold(&phi4(), &defs).unwrap();
        assert!(well_formed(&unfolded).is_empty());
        let Node::Forall(q) = unfolded.node() else { panic!() };
        let Node::Exists(imp) = q.body.node() else { panic!() };
        assert_eq!(*imp.guard, phi8());
    }

    #[test]
    fn unfold_monic_identity_binding() {
        let m = arc(arity_monic());
        let s = Statement::new(monic(), GraphMorphism::identity(m)).unwrap();
        let defs: BTreeMap<String, Condition> = [("monic".to_string(), phi7())].into_iter().collect();
        assert_eq!(unfold(&Condition::stmt(s), &defs).unwrap(), phi7());
    }

    #[test]
    fn unfold_monic_in_phi5_replaces_all_leaves() {
        let defs: BTreeMap<String, Condition> = [("monic".to_string(), phi7())].into_iter().collect();
        let unfolded = unfold(&phi5(), &defs).unwrap();
        assert!(well_formed(&unfolded).is_empty());
        assert_eq!(unfolded.context(), phi5().context());
        fn count_monic(c: &Condition) -> usize {
            match c.node() {
                Node::Stmt(s) => usize::from(s.predicate().name() == "monic"),
                Node::True | Node::False => 0,
                Node::And(cs) | Node::Or(cs) => cs.iter().map(count_monic).sum(),
                Node::Not(c) => count_monic(c),
                Node::Exists(q) | Node::Forall(q) => count_monic(&q.guard) + count_monic(&q.body),
            }
        }
        assert_eq!(count_monic(&phi5()), 3);
        assert_eq!(count_monic(&unfolded), 0);
    }

    #[test]
    fn unfold_rejects_wrong_context() {
        let defs: BTreeMap<String, Condition> = [("monic".to_string(), phi8())].into_iter().collect();
        assert!(unfold(&phi5(), &defs).is_err());
    }
}
