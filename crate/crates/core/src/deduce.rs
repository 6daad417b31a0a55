//! Rules, repair by pushout, and deduction steps on constraints.
//!
//! A rule `a: (L, Phi1) -> (R, Phi2 + a(Phi1))` fires at a match `t: L -> G`
//! when `G` satisfies `/\Phi1` at `t` and the negative application
//! condition `not exists(a, R : /\Phi2)` holds at `t`. Firing builds the
//! sketch pushout of `G <-t- L -a-> R`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::condition::{
    check_constraint, satisfies, unguarded_exists, Condition, Constraint, Node,
};
use crate::graph::{compose, enumerate_morphisms, for_each_extension, Graph, GraphMorphism, MorphismClass, RawGraph};
use crate::sketch::{sketch_pushout, translate_statement, Sketch, SketchMorphism, Statement};
use crate::{Error, Result};

/// A non-deleting transformation rule with its added statements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    lhs: Sketch,
    rhs: Sketch,
    morphism: GraphMorphism,
    added: BTreeSet<Statement>,
}

impl Rule {
    /// `a: (L, Phi1) -> (R, added + a(Phi1))`.
    pub fn new(lhs: Sketch, morphism: GraphMorphism, added: impl IntoIterator<Item = Statement>) -> Result<Self> {
        if **morphism.dom() != **lhs.context() {
            return Err(Error::Mismatch("rule morphism does not start at the left-hand side"));
        }
        let added: BTreeSet<Statement> = added.into_iter().collect();
        let mut all: Vec<Statement> = added.iter().cloned().collect();
        for s in lhs.statements() {
            all.push(translate_statement(&morphism, s)?);
        }
        let rhs = Sketch::new(morphism.cod().clone(), all)?;
        Ok(Self { lhs, rhs, morphism, added })
    }

    /// The rule of a sketch morphism; added statements are those of `R` not
    /// in the image of `L`.
    pub fn from_sketch_morphism(m: &SketchMorphism) -> Result<Self> {
        let image: BTreeSet<Statement> = m
            .dom()
            .statements()
            .iter()
            .map(|s| translate_statement(m.map(), s))
            .collect::<Result<_>>()?;
        let added = m.cod().statements().iter().filter(|s| !image.contains(*s)).cloned();
        Self::new(m.dom().clone(), m.map().clone(), added)
    }

    /// Reads a rule off a closed condition of the shape
    /// `forall(L : exists(/\Phi1, a, R : /\Phi2))`.
    pub fn from_condition(c: &Condition) -> Result<Self> {
        let shape = |msg: &str| Error::Shape(msg.to_string());
        if !c.context().is_empty() {
            return Err(shape("rule conditions are closed"));
        }
        let Node::Forall(outer) = c.node() else {
            return Err(shape("expected a universal quantifier at the root"));
        };
        if !outer.guard.is_trivially_true() {
            return Err(shape("the outer quantifier must be unguarded"));
        }
        let Node::Exists(inner) = outer.body.node() else {
            return Err(shape("expected an existential quantifier under the universal one"));
        };
        let premise = inner
            .guard
            .as_statements()
            .ok_or_else(|| shape("the guard must be a conjunction of statements"))?;
        let added = inner
            .body
            .as_statements()
            .ok_or_else(|| shape("the body must be a conjunction of statements"))?;
        let lhs = Sketch::new(outer.shift.cod().clone(), premise)?;
        Self::new(lhs, inner.shift.clone(), added)
    }

    pub fn lhs(&self) -> &Sketch {
        &self.lhs
    }

    pub fn rhs(&self) -> &Sketch {
        &self.rhs
    }

    pub fn morphism(&self) -> &GraphMorphism {
        &self.morphism
    }

    pub fn added(&self) -> &BTreeSet<Statement> {
        &self.added
    }

    pub fn sketch_morphism(&self) -> SketchMorphism {
        SketchMorphism::new(self.lhs.clone(), self.rhs.clone(), self.morphism.clone())
            .expect("rule morphism preserves statements by construction")
    }

    /// `/\Phi1` over `L`.
    pub fn premise(&self) -> Condition {
        Condition::conjunction(self.lhs.context().clone(), self.lhs.statements().iter().cloned())
    }

    /// `/\Phi2` over `R`.
    pub fn conclusion(&self) -> Condition {
        Condition::conjunction(self.rhs.context().clone(), self.added.iter().cloned())
    }

    /// `not exists(a, R : /\Phi2)` over `L`.
    pub fn nac(&self) -> Condition {
        Condition::not(unguarded_exists(self.morphism.clone(), self.conclusion()))
    }

    fn fires_at(&self, t: &GraphMorphism, g: &Sketch) -> Result<bool> {
        Ok(satisfies(t, g, &self.premise())?.holds && satisfies(t, g, &self.nac())?.holds)
    }
}

/// Every match of the rule in `g`, in canonical order.
pub fn find_matches(rule: &Rule, g: &Sketch) -> Result<Vec<GraphMorphism>> {
    let mut out = Vec::new();
    for t in enumerate_morphisms(rule.lhs.context(), g.context()) {
        if rule.fires_at(&t, g)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// The result of one rule application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Application {
    pub sketch: Sketch,
    /// `a*: G -> H`.
    pub along: GraphMorphism,
    /// `t*: R -> H`.
    pub tracked: GraphMorphism,
}

/// Fires `rule` at `matched` and returns the pushout sketch with its two
/// tracking morphisms.
///
/// Pushout elements are renamed back to their least name from `G`; new
/// elements keep their name from `R`, primed as often as needed to stay
/// fresh.
pub fn apply_rule(rule: &Rule, matched: &GraphMorphism, g: &Sketch) -> Result<Application> {
    if **matched.dom() != **rule.lhs.context() || **matched.cod() != **g.context() {
        return Err(Error::NotAMatch);
    }
    if !rule.fires_at(matched, g)? {
        return Err(Error::NotAMatch);
    }
    rewrite(rule, matched, g)
}

/// The pushout step of [`apply_rule`] without the application condition:
/// `matched` only has to be a sketch morphism from the left-hand side.
pub fn rewrite(rule: &Rule, matched: &GraphMorphism, g: &Sketch) -> Result<Application> {
    let m = SketchMorphism::new(rule.lhs.clone(), g.clone(), matched.clone())?;
    let po = sketch_pushout(&m, &rule.sketch_morphism())?;
    let iso = strip_tags(po.sketch.context())?;
    let statements = po
        .sketch
        .statements()
        .iter()
        .map(|s| translate_statement(&iso, s))
        .collect::<Result<Vec<_>>>()?;
    let sketch = Sketch::new(iso.cod().clone(), statements)?;
    let along = compose(po.left.map(), &iso)?.with_codomain(sketch.context().clone())?;
    let tracked = compose(po.right.map(), &iso)?.with_codomain(sketch.context().clone())?;
    Ok(Application { sketch, along, tracked })
}

fn fresh(base: &str, used: &mut BTreeSet<String>) -> String {
    let mut name = base.to_string();
    while used.contains(&name) {
        name.push('\'');
    }
    used.insert(name.clone());
    name
}

fn untag(names: Vec<&str>) -> BTreeMap<String, String> {
    let mut used: BTreeSet<String> = names
        .iter()
        .filter_map(|n| n.strip_prefix(crate::category::LEFT_TAG))
        .map(str::to_string)
        .collect();
    let mut out = BTreeMap::new();
    for n in names {
        let new = match n.strip_prefix(crate::category::LEFT_TAG) {
            Some(plain) => plain.to_string(),
            None => fresh(n.strip_prefix(crate::category::RIGHT_TAG).unwrap_or(n), &mut used),
        };
        out.insert(n.to_string(), new);
    }
    out
}

/// The isomorphism from a tagged pushout object onto its untagged copy.
fn strip_tags(d: &Arc<Graph>) -> Result<GraphMorphism> {
    let nodes = untag(d.nodes().collect());
    let edges = untag(d.edges().map(|(e, _, _)| e).collect());
    let raw = RawGraph {
        nodes: d.nodes().map(|n| nodes[n].clone()).collect(),
        edges: d.edges().map(|(e, s, t)| (edges[e].clone(), nodes[s].clone(), nodes[t].clone())).collect(),
    };
    let target = Arc::new(raw.build().map_err(|e| Error::Internal(format!("untagging failed: {e}")))?);
    GraphMorphism::new(d.clone(), target, nodes, edges)
}

/// One step of a repair run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepairStep {
    pub rule: usize,
    pub matched: GraphMorphism,
    pub result: Application,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Repair {
    pub sketch: Sketch,
    pub trace: Vec<RepairStep>,
    /// The step bound was reached while some rule still had a match.
    pub exhausted: bool,
}

/// Fires the first rule (in list order) that has a match, at its first
/// match, until no rule matches or `max_steps` applications were made.
pub fn repair_to_fixpoint(rules: &[Rule], g: &Sketch, max_steps: usize) -> Result<Repair> {
    let mut current = g.clone();
    let mut trace = Vec::new();
    loop {
        let mut next = None;
        for (i, rule) in rules.iter().enumerate() {
            if let Some(t) = find_matches(rule, &current)?.into_iter().next() {
                next = Some((i, t));
                break;
            }
        }
        let Some((i, t)) = next else {
            return Ok(Repair { sketch: current, trace, exhausted: false });
        };
        if trace.len() == max_steps {
            return Ok(Repair { sketch: current, trace, exhausted: true });
        }
        let result = apply_rule(&rules[i], &t, &current)?;
        current = result.sketch.clone();
        trace.push(RepairStep { rule: i, matched: t, result });
    }
}

/// Fails with [`Error::NotCertified`] unless `g` satisfies `k`.
pub fn certify(g: &Sketch, k: &Constraint) -> Result<()> {
    if check_constraint(g, k)?.holds {
        Ok(())
    } else {
        Err(Error::NotCertified(format!("{}", k.condition())))
    }
}

/// From `(forall(a, M : body), t)` and an extension `r` with `a ; r = t`,
/// deduce `(body, r)`.
pub fn universal_elim(k: &Constraint, r: &GraphMorphism) -> Result<Constraint> {
    let Node::Forall(q) = k.condition().node() else {
        return Err(Error::Shape("universal elimination needs a universal quantifier".to_string()));
    };
    if !q.guard.is_trivially_true() {
        return Err(Error::Shape("universal elimination needs an unguarded quantifier".to_string()));
    }
    if **r.dom() != **q.shift.cod() || compose(&q.shift, r)? != *k.anchor() {
        return Err(Error::Mismatch("morphism is not an extension of the anchor along the shift"));
    }
    Constraint::new((*q.body).clone(), r.clone())
}

/// From `(exists(guard, a, M : body), t)` and `(guard, t)`, both certified
/// on `g`, deduce `(exists(a, M : body), t)`.
pub fn modus_ponens(g: &Sketch, k: &Constraint, guard: &Constraint) -> Result<Constraint> {
    let Node::Exists(q) = k.condition().node() else {
        return Err(Error::Shape("modus ponens needs an existential quantifier".to_string()));
    };
    if guard.anchor() != k.anchor() {
        return Err(Error::Mismatch("constraints have different anchors"));
    }
    if *guard.condition() != *q.guard {
        return Err(Error::Shape("second constraint is not the guard of the first".to_string()));
    }
    certify(g, k)?;
    certify(g, guard)?;
    Constraint::new(unguarded_exists(q.shift.clone(), (*q.body).clone()), k.anchor().clone())
}

/// The outcome of Skolemization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skolemized {
    pub sketch: Sketch,
    /// `G -> H`; the identity when a witness already existed.
    pub along: GraphMorphism,
    /// `(/\Phi2, t*)` on `H`.
    pub constraint: Constraint,
}

/// Materializes the witness of `(exists(a, R : /\Phi2), t)`. An existing
/// witness is reused; otherwise the witness is added by a pushout.
pub fn skolemize(k: &Constraint, g: &Sketch) -> Result<Skolemized> {
    let Node::Exists(q) = k.condition().node() else {
        return Err(Error::Shape("Skolemization needs an existential quantifier".to_string()));
    };
    if !q.guard.is_trivially_true() {
        return Err(Error::Shape("Skolemization needs an unguarded quantifier".to_string()));
    }
    let added = q
        .body
        .as_statements()
        .ok_or_else(|| Error::Shape("the body must be a conjunction of statements".to_string()))?;
    if **k.anchor().cod() != **g.context() {
        return Err(Error::Mismatch("anchor does not end at the sketch context"));
    }
    let witness = for_each_extension(&q.shift, k.anchor(), MorphismClass::All, |r| {
        match satisfies(&r, g, &q.body) {
            Err(e) => ControlFlow::Break(Err(e)),
            Ok(v) if v.holds => ControlFlow::Break(Ok(r)),
            Ok(_) => ControlFlow::Continue(()),
        }
    })?
    .transpose()?;
    if let Some(r) = witness {
        return Ok(Skolemized {
            sketch: g.clone(),
            along: GraphMorphism::identity(g.context().clone()),
            constraint: Constraint::new((*q.body).clone(), r)?,
        });
    }
    let rule = Rule::new(Sketch::bare(q.shift.dom().clone()), q.shift.clone(), added)?;
    let app = apply_rule(&rule, k.anchor(), g)?;
    let constraint = Constraint::new((*q.body).clone(), app.tracked.clone())?;
    Ok(Skolemized { sketch: app.sketch, along: app.along, constraint })
}

/// `(/\{c_i}, t)` from constraints `(c_i, t)`.
pub fn conj_intro(anchor: &GraphMorphism, ks: &[Constraint]) -> Result<Constraint> {
    if ks.iter().any(|k| k.anchor() != anchor) {
        return Err(Error::Mismatch("constraints have different anchors"));
    }
    let ctx = anchor.dom().clone();
    Constraint::new(Condition::and(ctx, ks.iter().map(|k| k.condition().clone()).collect()), anchor.clone())
}

/// One constraint per conjunct of `(/\C, t)`.
pub fn conj_elim(k: &Constraint) -> Result<Vec<Constraint>> {
    let Node::And(cs) = k.condition().node() else {
        return Err(Error::Shape("conjunction elimination needs a conjunction".to_string()));
    };
    cs.iter().map(|c| Constraint::new(c.clone(), k.anchor().clone())).collect()
}

/// `(def, c ; alpha)` for a declared statement `(P, alpha)` of `g` and a
/// condition `def` over `K` with `c: K -> ar(P)`. The result is not checked.
pub fn statement_to_constraint(
    g: &Sketch,
    s: &Statement,
    def: &Condition,
    c: &GraphMorphism,
) -> Result<Constraint> {
    if !g.contains(s) {
        return Err(Error::StatementNotInSketch);
    }
    if **def.context() != **c.dom() || **c.cod() != **s.predicate().arity() {
        return Err(Error::Mismatch("definition, morphism and arity do not fit together"));
    }
    Constraint::new(def.clone(), compose(c, s.binding())?)
}

/// `(cond, t ; phi)` for a sketch morphism `phi: G -> H`.
pub fn cstr_translate(phi: &SketchMorphism, k: &Constraint) -> Result<Constraint> {
    if **k.anchor().cod() != **phi.dom().context() {
        return Err(Error::Mismatch("constraint is not anchored in the morphism's domain"));
    }
    Constraint::new(k.condition().clone(), compose(k.anchor(), phi.map())?)
}

/// A sketch together with constraints it satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstrainedSketch {
    sketch: Sketch,
    constraints: BTreeSet<Constraint>,
    checked: bool,
}

impl ConstrainedSketch {
    /// Checks every constraint against the sketch.
    pub fn new(sketch: Sketch, constraints: impl IntoIterator<Item = Constraint>) -> Result<Self> {
        let mut out = Self { sketch, constraints: BTreeSet::new(), checked: true };
        for k in constraints {
            out.insert(k)?;
        }
        Ok(out)
    }

    /// Stores the constraints as hypotheses without checking them.
    pub fn unchecked(sketch: Sketch, constraints: impl IntoIterator<Item = Constraint>) -> Self {
        Self { sketch, constraints: constraints.into_iter().collect(), checked: false }
    }

    /// Whether every stored constraint was checked on insertion.
    pub fn is_checked(&self) -> bool {
        self.checked
    }

    pub fn sketch(&self) -> &Sketch {
        &self.sketch
    }

    pub fn constraints(&self) -> &BTreeSet<Constraint> {
        &self.constraints
    }

    /// Adds a constraint after checking it.
    pub fn insert(&mut self, k: Constraint) -> Result<()> {
        if **k.anchor().cod() != **self.sketch.context() {
            return Err(Error::Mismatch("constraint is not anchored in the sketch context"));
        }
        certify(&self.sketch, &k)?;
        self.constraints.insert(k);
        Ok(())
    }

    /// The stored constraints the sketch does not satisfy.
    pub fn recheck(&self) -> Result<Vec<Constraint>> {
        let mut failed = Vec::new();
        for k in &self.constraints {
            if !check_constraint(&self.sketch, k)?.holds {
                failed.push(k.clone());
            }
        }
        Ok(failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::initial_morphism;
    use crate::ct;
    use crate::graph::{enumerate_extensions, find_isomorphism};

    fn phi3_rule() -> Rule {
        Rule::from_condition(&ct::phi3()).unwrap()
    }

    fn phi6_rule() -> Rule {
        Rule::from_condition(&ct::phi6()).unwrap()
    }

    #[test]
    fn phi3_rule_matches_the_parallel_pair_twice() {
        let ms = find_matches(&phi3_rule(), &ct::sketch_g()).unwrap();
        let pairs: Vec<_> = ms.iter().map(|m| (m.edge("e3").unwrap(), m.edge("e4").unwrap())).collect();
        assert_eq!(pairs, [("e", "f"), ("f", "e")]);
    }

    #[test]
    fn phi6_rule_matches_once() {
        let ms = find_matches(&phi6_rule(), &ct::sketch_g()).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].edge_pairs().collect::<Vec<_>>(), [("e1", "c"), ("e2", "d"), ("e3", "g")]);
    }

    #[test]
    fn empty_rule_has_initial_match() {
        let lhs = Sketch::bare(Arc::new(Graph::empty()));
        let r = Arc::new(Graph::from_parts(&["x"], &[]).unwrap());
        let rule = Rule::new(lhs, initial_morphism(r.clone()), [ct::final_stmt(&r, "x")]).unwrap();
        assert_eq!(find_matches(&rule, &ct::sketch_g()).unwrap().len(), 1);
    }

    #[test]
    fn apply_phi6_adds_monic_c() {
        let g = ct::sketch_g();
        let rule = phi6_rule();
        let t = find_matches(&rule, &g).unwrap().remove(0);
        let app = apply_rule(&rule, &t, &g).unwrap();
        assert_eq!(**app.sketch.context(), **g.context());
        assert_eq!(app.sketch.statements().len(), 6);
        assert!(app.along.is_isomorphism());
        let monic_c = ct::monic_stmt(app.sketch.context(), "c");
        assert!(app.sketch.contains(&monic_c));
        // The application's postconditions.
        assert!(check_constraint(&app.sketch, &Constraint::new(rule.conclusion(), app.tracked.clone()).unwrap()).unwrap().holds);
        let back = compose(&t, &app.along).unwrap();
        assert!(check_constraint(&app.sketch, &Constraint::new(rule.premise(), back).unwrap()).unwrap().holds);
    }

    #[test]
    fn apply_phi3_merges_e_and_f() {
        let g = ct::sketch_g();
        let rule = phi3_rule();
        let t = find_matches(&rule, &g).unwrap().remove(0);
        let app = apply_rule(&rule, &t, &g).unwrap();
        assert_eq!(app.sketch.context().edge_count(), 6);
        assert_eq!(app.sketch.statements().len(), 4);
        assert_eq!(app.along.edge("e"), app.along.edge("f"));
        assert!(apply_rule(&rule, &t, &app.sketch).is_err());
    }

    #[test]
    fn no_op_rule_keeps_g() {
        let g = ct::sketch_g();
        let l = Arc::new(ct::arity_monic());
        let rule = Rule::new(Sketch::bare(l.clone()), GraphMorphism::identity(l), []).unwrap();
        // The NAC `not exists(id : True)` never holds, so the no-op rule never
        // fires; its pushout is still G itself.
        assert!(find_matches(&rule, &g).unwrap().is_empty());
        let t = GraphMorphism::from_edges(rule.lhs().context().clone(), g.context().clone(), &[("e", "b")]).unwrap();
        assert_eq!(apply_rule(&rule, &t, &g), Err(Error::NotAMatch));
        let app = rewrite(&rule, &t, &g).unwrap();
        assert_eq!(app.sketch, g);
        assert!(app.along.is_isomorphism());
    }

    #[test]
    fn repair_reaches_h_in_two_steps() {
        let g = ct::sketch_g();
        let out = repair_to_fixpoint(&[phi3_rule(), phi6_rule()], &g, 10).unwrap();
        assert!(!out.exhausted);
        assert_eq!(out.trace.len(), 2);
        let h = ct::sketch_h_repaired();
        let iso = find_isomorphism(out.sketch.context(), h.context()).unwrap();
        let moved: BTreeSet<Statement> =
            out.sketch.statements().iter().map(|s| translate_statement(&iso, s).unwrap()).collect();
        assert_eq!(&moved, h.statements());
    }

    #[test]
    fn composition_rule_does_not_terminate_quickly() {
        let rule = Rule::from_condition(&ct::phi2()).unwrap();
        let out = repair_to_fixpoint(&[rule], &ct::sketch_g(), 5).unwrap();
        assert!(out.exhausted);
        assert_eq!(out.trace.len(), 5);
    }

    #[test]
    fn no_rules_no_steps() {
        let g = ct::sketch_g();
        let out = repair_to_fixpoint(&[], &g, 3).unwrap();
        assert_eq!(out.sketch, g);
        assert!(out.trace.is_empty());
    }

    #[test]
    fn universal_elim_at_counterexample() {
        let g = ct::sketch_g();
        let k = Constraint::global(ct::phi6(), g.context().clone()).unwrap();
        let t = find_matches(&phi6_rule(), &g).unwrap().remove(0);
        let local = universal_elim(&k, &t).unwrap();
        assert!(!check_constraint(&g, &local).unwrap().holds);
        let wrong = ct::anchor_t1();
        assert!(universal_elim(&k, &wrong).is_err());
    }

    #[test]
    fn universal_elim_phi2_on_g_without_f() {
        let g = ct::sketch_g_without_f();
        let k = Constraint::global(ct::phi2(), g.context().clone()).unwrap();
        let t1 = GraphMorphism::from_edges(ct::anchor_t1().dom().clone(), g.context().clone(), &[("e1", "a"), ("e2", "b")]).unwrap();
        let local = universal_elim(&k, &t1).unwrap();
        assert!(check_constraint(&g, &local).unwrap().holds);
    }

    #[test]
    fn modus_ponens_cases() {
        let g = ct::sketch_g();
        let k = Constraint::new(ct::phi1(), ct::anchor_t1()).unwrap();
        let Node::Exists(q) = ct::phi1().node().clone() else { panic!() };
        let guard = Constraint::new((*q.guard).clone(), ct::anchor_t1()).unwrap();
        let out = modus_ponens(&g, &k, &guard).unwrap();
        let v = check_constraint(&g, &out).unwrap();
        assert!(v.holds);
        assert_eq!(v.evidence.unwrap().extension().unwrap().edge("e3"), Some("e"));

        let k2 = Constraint::new(ct::phi1(), ct::anchor_t2()).unwrap();
        let guard2 = Constraint::new((*q.guard).clone(), ct::anchor_t2()).unwrap();
        assert!(matches!(modus_ponens(&g, &k2, &guard2), Err(Error::NotCertified(_))));
    }

    #[test]
    fn skolemize_reuses_existing_witness() {
        let g = ct::sketch_g();
        let k = Constraint::new(ct::phi1(), ct::anchor_t1()).unwrap();
        let out = skolemize(&k, &g).unwrap();
        assert_eq!(out.sketch, g);
        assert!(check_constraint(&out.sketch, &out.constraint).unwrap().holds);
    }

    #[test]
    fn skolemize_adds_missing_composite() {
        let g = ct::sketch_g();
        let k = Constraint::new(ct::phi1(), ct::anchor_t2()).unwrap();
        let out = skolemize(&k, &g).unwrap();
        assert_eq!(out.sketch.context().edge_count(), 8);
        assert!(check_constraint(&out.sketch, &out.constraint).unwrap().holds);
        let moved = cstr_translate(
            &SketchMorphism::new(g.clone(), out.sketch.clone(), out.along.clone()).unwrap(),
            &k,
        )
        .unwrap();
        assert!(check_constraint(&out.sketch, &moved).unwrap().holds);
    }

    #[test]
    fn skolemize_merges_parallel_composites() {
        let g = ct::sketch_g();
        let Node::Forall(outer) = ct::phi3().node().clone() else { panic!() };
        let Node::Exists(inner) = outer.body.node().clone() else { panic!() };
        let t = find_matches(&phi3_rule(), &g).unwrap().remove(0);
        let k = Constraint::new(unguarded_exists(inner.shift.clone(), (*inner.body).clone()), t).unwrap();
        let out = skolemize(&k, &g).unwrap();
        assert_eq!(out.sketch.context().edge_count(), 6);
        assert!(out.constraint.condition().is_trivially_true());
    }

    #[test]
    fn degenerate_skolemization_only_adds_statements() {
        let g = ct::sketch_g();
        let edge = Arc::new(ct::arity_monic());
        let t = GraphMorphism::from_edges(edge.clone(), g.context().clone(), &[("e", "c")]).unwrap();
        let body = Condition::stmt(ct::monic_stmt(&edge, "e"));
        let k = Constraint::new(unguarded_exists(GraphMorphism::identity(edge), body), t.clone()).unwrap();
        let out = skolemize(&k, &g).unwrap();
        assert_eq!(**out.sketch.context(), **g.context());
        assert_eq!(out.sketch.statements().len(), 6);
        assert_eq!(*out.constraint.anchor(), compose(&t, &out.along).unwrap());
    }

    #[test]
    fn conjunction_rules() {
        let g = ct::sketch_g();
        let anchor = initial_morphism(g.context().clone());
        let intro = conj_intro(&anchor, &[]).unwrap();
        assert!(check_constraint(&g, &intro).unwrap().holds);

        let ctx = g.context().clone();
        let both = Constraint::new(
            Condition::conjunction(ctx.clone(), [ct::psi(4), ct::psi(5)]),
            GraphMorphism::identity(ctx),
        )
        .unwrap();
        let parts = conj_elim(&both).unwrap();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert!(check_constraint(&g, p).unwrap().holds);
        }
        let again = conj_intro(both.anchor(), &parts).unwrap();
        assert_eq!(again, both);
    }

    #[test]
    fn statement_to_constraint_monic_definition() {
        let g = ct::sketch_g();
        for i in [4, 5] {
            let s = ct::psi(i);
            let id = GraphMorphism::identity(s.predicate().arity().clone());
            let k = statement_to_constraint(&g, &s, &ct::phi7(), &id).unwrap();
            assert!(check_constraint(&g, &k).unwrap().holds);
        }
        let outside = ct::monic_stmt(g.context(), "a");
        let id = GraphMorphism::identity(outside.predicate().arity().clone());
        assert_eq!(statement_to_constraint(&g, &outside, &ct::phi7(), &id), Err(Error::StatementNotInSketch));
    }

    #[test]
    fn cstr_translate_along_repair() {
        let g = ct::sketch_g();
        let t = find_matches(&phi3_rule(), &g).unwrap().remove(0);
        let app = apply_rule(&phi3_rule(), &t, &g).unwrap();
        let phi = SketchMorphism::new(g.clone(), app.sketch.clone(), app.along.clone()).unwrap();
        let k = Constraint::new(ct::phi1(), ct::anchor_t1()).unwrap();
        let moved = cstr_translate(&phi, &k).unwrap();
        assert!(check_constraint(&app.sketch, &moved).unwrap().holds);
        let id = SketchMorphism::identity(g);
        assert_eq!(cstr_translate(&id, &k).unwrap(), k);
    }

    #[test]
    fn constrained_sketch_rejects_failing_constraint() {
        let g = ct::sketch_g();
        let good = Constraint::new(ct::phi1(), ct::anchor_t1()).unwrap();
        let bad = Constraint::new(ct::phi1(), ct::anchor_t2()).unwrap();
        assert!(ConstrainedSketch::new(g.clone(), [good.clone()]).is_ok());
        assert!(ConstrainedSketch::new(g.clone(), [bad.clone()]).is_err());
        let hyp = ConstrainedSketch::unchecked(g, [good, bad.clone()]);
        assert!(!hyp.is_checked());
        assert_eq!(hyp.recheck().unwrap(), [bad]);
    }

    #[test]
    fn extensions_of_rule_morphism_are_tracked() {
        let g = ct::sketch_g();
        let rule = phi6_rule();
        let t = find_matches(&rule, &g).unwrap().remove(0);
        let app = apply_rule(&rule, &t, &g).unwrap();
        let ext = enumerate_extensions(rule.morphism(), &compose(&t, &app.along).unwrap()).unwrap();
        assert!(ext.contains(&app.tracked));
    }
}
