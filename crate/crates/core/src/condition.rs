//! First-order sketch conditions and their satisfaction.
//!
//! Every condition lives over a context graph `K`. Quantifiers move along a
//! shift morphism `a: K -> M`: the guard is a condition over `K`, the body a
//! condition over `M`. A morphism `t: K -> G` satisfies a condition relative
//! to a sketch `G` over `G`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::category::initial_morphism;
use crate::graph::{compose, for_each_extension, Graph, GraphMorphism, MorphismClass};
use crate::sketch::{translate_statement, Sketch, SketchMorphism, Statement};
use crate::{Error, Result};

/// A condition together with the context it lives over.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Condition {
    context: Arc<Graph>,
    node: Node,
}

/// The shape of a condition.
///
/// `And` and `Or` hold finite sets: children are kept sorted and
/// deduplicated by the constructors of [`Condition`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Stmt(Statement),
    True,
    False,
    And(Vec<Condition>),
    Or(Vec<Condition>),
    Not(Box<Condition>),
    Exists(Quantifier),
    Forall(Quantifier),
}

/// Guarded quantification along `shift: K -> M`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quantifier {
    pub guard: Box<Condition>,
    pub shift: GraphMorphism,
    pub body: Box<Condition>,
}

fn normalize(children: Vec<Condition>) -> Vec<Condition> {
    let mut children = children;
    children.sort();
    children.dedup();
    children
}

impl Condition {
    /// Assembles a condition without checking context discipline; see
    /// [`well_formed`].
    pub fn new(context: Arc<Graph>, node: Node) -> Self {
        let node = match node {
            Node::And(cs) => Node::And(normalize(cs)),
            Node::Or(cs) => Node::Or(normalize(cs)),
            other => other,
        };
        Self { context, node }
    }

    pub fn stmt(s: Statement) -> Self {
        Self { context: s.context().clone(), node: Node::Stmt(s) }
    }

    pub fn truth(context: Arc<Graph>) -> Self {
        Self { context, node: Node::True }
    }

    pub fn falsity(context: Arc<Graph>) -> Self {
        Self { context, node: Node::False }
    }

    pub fn and(context: Arc<Graph>, children: Vec<Condition>) -> Self {
        Self::new(context, Node::And(children))
    }

    pub fn or(context: Arc<Graph>, children: Vec<Condition>) -> Self {
        Self::new(context, Node::Or(children))
    }

    pub fn not(child: Condition) -> Self {
        Self { context: child.context.clone(), node: Node::Not(Box::new(child)) }
    }

    pub fn exists(guard: Condition, shift: GraphMorphism, body: Condition) -> Self {
        Self {
            context: shift.dom().clone(),
            node: Node::Exists(Quantifier { guard: Box::new(guard), shift, body: Box::new(body) }),
        }
    }

    pub fn forall(guard: Condition, shift: GraphMorphism, body: Condition) -> Self {
        Self {
            context: shift.dom().clone(),
            node: Node::Forall(Quantifier { guard: Box::new(guard), shift, body: Box::new(body) }),
        }
    }

    /// The conjunction of the given statements, all over `context`.
    pub fn conjunction(context: Arc<Graph>, statements: impl IntoIterator<Item = Statement>) -> Self {
        Self::and(context, statements.into_iter().map(Condition::stmt).collect())
    }

    pub fn context(&self) -> &Arc<Graph> {
        &self.context
    }

    pub fn node(&self) -> &Node {
        &self.node
    }

    /// Whether the condition is `True` or an empty conjunction.
    pub fn is_trivially_true(&self) -> bool {
        match &self.node {
            Node::True => true,
            Node::And(cs) => cs.is_empty(),
            _ => false,
        }
    }

    /// The statements of a conjunction of statements (a single statement or
    /// `True` count as such), or `None` for any other shape.
    pub fn as_statements(&self) -> Option<Vec<Statement>> {
        match &self.node {
            Node::True => Some(Vec::new()),
            Node::Stmt(s) => Some(alloc::vec![s.clone()]),
            Node::And(cs) => cs
                .iter()
                .map(|c| match &c.node {
                    Node::Stmt(s) => Some(s.clone()),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }

    /// Renames node and edge names in every context of the tree, rebuilding
    /// all morphisms accordingly.
    pub fn rename(&self, node: &dyn Fn(&str) -> String, edge: &dyn Fn(&str) -> String) -> Result<Condition> {
        let mut cache = BTreeMap::new();
        self.rename_with(node, edge, &mut cache)
    }

    fn rename_with(
        &self,
        node: &dyn Fn(&str) -> String,
        edge: &dyn Fn(&str) -> String,
        cache: &mut BTreeMap<Arc<Graph>, GraphMorphism>,
    ) -> Result<Condition> {
        let iso = renaming(&self.context, node, edge, cache)?;
        let context = iso.cod().clone();
        let out = match &self.node {
            Node::Stmt(s) => Node::Stmt(translate_statement(&iso, s)?),
            Node::True => Node::True,
            Node::False => Node::False,
            Node::And(cs) => Node::And(
                cs.iter().map(|c| c.rename_with(node, edge, cache)).collect::<Result<_>>()?,
            ),
            Node::Or(cs) => Node::Or(
                cs.iter().map(|c| c.rename_with(node, edge, cache)).collect::<Result<_>>()?,
            ),
            Node::Not(c) => Node::Not(Box::new(c.rename_with(node, edge, cache)?)),
            Node::Exists(q) => Node::Exists(q.rename_with(node, edge, cache)?),
            Node::Forall(q) => Node::Forall(q.rename_with(node, edge, cache)?),
        };
        Ok(Condition::new(context, out))
    }
}

fn renaming(
    g: &Arc<Graph>,
    node: &dyn Fn(&str) -> String,
    edge: &dyn Fn(&str) -> String,
    cache: &mut BTreeMap<Arc<Graph>, GraphMorphism>,
) -> Result<GraphMorphism> {
    if let Some(iso) = cache.get(g) {
        return Ok(iso.clone());
    }
    let iso = crate::graph::rename(g, node, edge)?;
    cache.insert(g.clone(), iso.clone());
    Ok(iso)
}

impl Quantifier {
    fn rename_with(
        &self,
        node: &dyn Fn(&str) -> String,
        edge: &dyn Fn(&str) -> String,
        cache: &mut BTreeMap<Arc<Graph>, GraphMorphism>,
    ) -> Result<Quantifier> {
        let from = renaming(self.shift.dom(), node, edge, cache)?;
        let to = renaming(self.shift.cod(), node, edge, cache)?;
        let shift = compose(&compose(&from.invert()?, &self.shift)?, &to)?;
        Ok(Quantifier {
            guard: Box::new(self.guard.rename_with(node, edge, cache)?),
            shift,
            body: Box::new(self.body.rename_with(node, edge, cache)?),
        })
    }
}

/// `lhs -> rhs`, encoded as quantification along the identity.
pub fn implication(lhs: Condition, rhs: Condition) -> Result<Condition> {
    if lhs.context != rhs.context {
        return Err(Error::Mismatch("implication sides live over different contexts"));
    }
    let id = GraphMorphism::identity(lhs.context.clone());
    Ok(Condition::exists(lhs, id, rhs))
}

pub fn unguarded_exists(shift: GraphMorphism, body: Condition) -> Condition {
    let guard = Condition::truth(shift.dom().clone());
    Condition::exists(guard, shift, body)
}

pub fn unguarded_forall(shift: GraphMorphism, body: Condition) -> Condition {
    let guard = Condition::truth(shift.dom().clone());
    Condition::forall(guard, shift, body)
}

/// Context-discipline violations, one message per offending position.
pub fn well_formed(c: &Condition) -> Vec<String> {
    let mut out = Vec::new();
    check_node(c, &c.context, "root", &mut out);
    out
}

fn check_node(c: &Condition, expected: &Arc<Graph>, path: &str, out: &mut Vec<String>) {
    if *c.context != **expected {
        out.push(format!("{path}: context differs from the enclosing one"));
    }
    match &c.node {
        Node::Stmt(s) => {
            if **s.context() != *c.context {
                out.push(format!("{path}: statement bound into a different context"));
            }
        }
        Node::True | Node::False => {}
        Node::And(cs) | Node::Or(cs) => {
            let kind = if matches!(c.node, Node::And(_)) { "and" } else { "or" };
            for (i, child) in cs.iter().enumerate() {
                check_node(child, &c.context, &format!("{path}.{kind}[{i}]"), out);
            }
        }
        Node::Not(child) => check_node(child, &c.context, &format!("{path}.not"), out),
        Node::Exists(q) | Node::Forall(q) => {
            let kind = if matches!(c.node, Node::Exists(_)) { "exists" } else { "forall" };
            if **q.shift.dom() != *c.context {
                out.push(format!("{path}.{kind}: shift does not start at the context"));
            }
            check_node(&q.guard, &c.context, &format!("{path}.{kind}.guard"), out);
            check_node(&q.body, q.shift.cod(), &format!("{path}.{kind}.body"), out);
        }
    }
}

/// A condition anchored in a context by `anchor: K -> G`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    condition: Condition,
    anchor: GraphMorphism,
}

impl Constraint {
    pub fn new(condition: Condition, anchor: GraphMorphism) -> Result<Self> {
        if **anchor.dom() != *condition.context {
            return Err(Error::Mismatch("anchor does not start at the condition's context"));
        }
        Ok(Self { condition, anchor })
    }

    /// The global constraint `(condition, !_G)` for a closed condition.
    pub fn global(condition: Condition, g: Arc<Graph>) -> Result<Self> {
        Self::new(condition, initial_morphism(g))
    }

    pub fn condition(&self) -> &Condition {
        &self.condition
    }

    pub fn anchor(&self) -> &GraphMorphism {
        &self.anchor
    }
}

/// Why a condition holds or fails, following the quantifier structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The first extension satisfying an existential body.
    Witness { extension: GraphMorphism, inner: Option<Box<Evidence>> },
    /// The first extension violating a universal body.
    Counterexample { extension: GraphMorphism, inner: Option<Box<Evidence>> },
    /// The first child deciding a conjunction (failing) or disjunction
    /// (holding).
    Branch { index: usize, inner: Option<Box<Evidence>> },
}

impl Evidence {
    /// The extension recorded at the top of the tree, if any.
    pub fn extension(&self) -> Option<&GraphMorphism> {
        match self {
            Evidence::Witness { extension, .. } | Evidence::Counterexample { extension, .. } => {
                Some(extension)
            }
            Evidence::Branch { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub evidence: Option<Evidence>,
}

impl Verdict {
    fn plain(holds: bool) -> Self {
        Self { holds, evidence: None }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EvalOptions {
    /// Quantify over injective extensions only.
    pub mono_extensions: bool,
    /// Upper bound on evaluation steps; `None` is unbounded.
    pub fuel: Option<u64>,
}

/// Evaluates conditions against one sketch.
pub struct Evaluator<'a> {
    sketch: &'a Sketch,
    options: EvalOptions,
    steps: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(sketch: &'a Sketch, options: EvalOptions) -> Self {
        Self { sketch, options, steps: 0 }
    }

    /// Number of condition nodes visited so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Checks well-formedness and endpoints, then evaluates.
    pub fn check(&mut self, t: &GraphMorphism, c: &Condition) -> Result<Verdict> {
        let problems = well_formed(c);
        if !problems.is_empty() {
            return Err(Error::IllFormed(problems));
        }
        if **t.cod() != **self.sketch.context() {
            return Err(Error::Mismatch("anchor does not end at the sketch context"));
        }
        self.eval(t, c)
    }

    fn class(&self) -> MorphismClass {
        if self.options.mono_extensions {
            MorphismClass::Mono
        } else {
            MorphismClass::All
        }
    }

    fn eval(&mut self, t: &GraphMorphism, c: &Condition) -> Result<Verdict> {
        if **t.dom() != *c.context {
            return Err(Error::Mismatch("morphism does not start at the condition's context"));
        }
        self.steps += 1;
        if self.options.fuel.is_some_and(|f| self.steps > f) {
            return Err(Error::FuelExhausted);
        }
        Ok(match &c.node {
            Node::Stmt(s) => Verdict::plain(self.sketch.contains(&translate_statement(t, s)?)),
            Node::True => Verdict::plain(true),
            Node::False => Verdict::plain(false),
            Node::And(cs) => {
                for (index, child) in cs.iter().enumerate() {
                    let v = self.eval(t, child)?;
                    if !v.holds {
                        return Ok(Verdict {
                            holds: false,
                            evidence: Some(Evidence::Branch { index, inner: v.evidence.map(Box::new) }),
                        });
                    }
                }
                Verdict::plain(true)
            }
            Node::Or(cs) => {
                for (index, child) in cs.iter().enumerate() {
                    let v = self.eval(t, child)?;
                    if v.holds {
                        return Ok(Verdict {
                            holds: true,
                            evidence: Some(Evidence::Branch { index, inner: v.evidence.map(Box::new) }),
                        });
                    }
                }
                Verdict::plain(false)
            }
            Node::Not(child) => {
                let v = self.eval(t, child)?;
                Verdict { holds: !v.holds, evidence: v.evidence }
            }
            Node::Exists(q) => {
                if !self.eval(t, &q.guard)?.holds {
                    return Ok(Verdict::plain(true));
                }
                let class = self.class();
                let found = for_each_extension(&q.shift, t, class, |r| match self.eval(&r, &q.body) {
                    Err(e) => ControlFlow::Break(Err(e)),
                    Ok(v) if v.holds => ControlFlow::Break(Ok((r, v.evidence))),
                    Ok(_) => ControlFlow::Continue(()),
                })?;
                match found.transpose()? {
                    Some((extension, inner)) => Verdict {
                        holds: true,
                        evidence: Some(Evidence::Witness { extension, inner: inner.map(Box::new) }),
                    },
                    None => Verdict::plain(false),
                }
            }
            Node::Forall(q) => {
                if !self.eval(t, &q.guard)?.holds {
                    return Ok(Verdict::plain(true));
                }
                let class = self.class();
                let found = for_each_extension(&q.shift, t, class, |r| match self.eval(&r, &q.body) {
                    Err(e) => ControlFlow::Break(Err(e)),
                    Ok(v) if !v.holds => ControlFlow::Break(Ok((r, v.evidence))),
                    Ok(_) => ControlFlow::Continue(()),
                })?;
                match found.transpose()? {
                    Some((extension, inner)) => Verdict {
                        holds: false,
                        evidence: Some(Evidence::Counterexample {
                            extension,
                            inner: inner.map(Box::new),
                        }),
                    },
                    None => Verdict::plain(true),
                }
            }
        })
    }

    /// Every extension violating the body of a universal condition whose
    /// guard holds at `t`, in canonical order.
    pub fn counterexamples(&mut self, t: &GraphMorphism, c: &Condition) -> Result<Vec<GraphMorphism>> {
        let Node::Forall(q) = &c.node else {
            return Err(Error::Shape("counterexamples need a universal condition".to_string()));
        };
        if !self.check(t, &q.guard)?.holds {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let class = self.class();
        let err = for_each_extension(&q.shift, t, class, |r| match self.eval(&r, &q.body) {
            Err(e) => ControlFlow::Break(e),
            Ok(v) => {
                if !v.holds {
                    out.push(r);
                }
                ControlFlow::Continue(())
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }
}

/// `t |=_G c` with default options.
pub fn satisfies(t: &GraphMorphism, g: &Sketch, c: &Condition) -> Result<Verdict> {
    Evaluator::new(g, EvalOptions::default()).check(t, c)
}

/// Whether `g` satisfies the constraint `k`.
pub fn check_constraint(g: &Sketch, k: &Constraint) -> Result<Verdict> {
    satisfies(&k.anchor, g, &k.condition)
}

/// All counterexamples of a universal constraint on `g`.
pub fn counterexamples(g: &Sketch, k: &Constraint) -> Result<Vec<GraphMorphism>> {
    Evaluator::new(g, EvalOptions::default()).counterexamples(&k.anchor, &k.condition)
}

/// The positive universal constraint of `rule: L -> R`:
/// `forall(L : exists(/\S^L, a, R : /\S^R))` over the empty context.
pub fn uc(rule: &SketchMorphism) -> Condition {
    let (l, r) = (rule.dom(), rule.cod());
    let inner = Condition::exists(
        Condition::conjunction(l.context().clone(), l.statements().iter().cloned()),
        rule.map().clone(),
        Condition::conjunction(r.context().clone(), r.statements().iter().cloned()),
    );
    unguarded_forall(initial_morphism(l.context().clone()), inner)
}

/// The negative universal constraint of `rule: L -> R`:
/// `forall(L : (/\S^L -> not exists(a, R : /\S^R)))` over the empty context.
pub fn nuc(rule: &SketchMorphism) -> Condition {
    let (l, r) = (rule.dom(), rule.cod());
    let forbidden = unguarded_exists(
        rule.map().clone(),
        Condition::conjunction(r.context().clone(), r.statements().iter().cloned()),
    );
    let premise = Condition::conjunction(l.context().clone(), l.statements().iter().cloned());
    let body = Condition::exists(
        premise,
        GraphMorphism::identity(l.context().clone()),
        Condition::not(forbidden),
    );
    unguarded_forall(initial_morphism(l.context().clone()), body)
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.node {
            Node::Stmt(s) => write!(f, "{s}"),
            Node::True => write!(f, "true"),
            Node::False => write!(f, "false"),
            Node::And(cs) | Node::Or(cs) => {
                write!(f, "{}(", if matches!(self.node, Node::And(_)) { "and" } else { "or" })?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Node::Not(c) => write!(f, "not {c}"),
            Node::Exists(q) | Node::Forall(q) => {
                let kw = if matches!(self.node, Node::Exists(_)) { "exists" } else { "forall" };
                write!(f, "{kw} ")?;
                if !q.guard.is_trivially_true() || matches!(q.guard.node, Node::And(_)) {
                    write!(f, "[given {}] ", q.guard)?;
                }
                write!(f, "({}) . {}", q.shift, q.body)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ct;

    #[test]
    fn phi1_at_t1_has_witness_e() {
        let g = ct::sketch_g();
        let v = satisfies(&ct::anchor_t1(), &g, &ct::phi1()).unwrap();
        assert!(v.holds);
        let w = v.evidence.unwrap();
        assert_eq!(w.extension().unwrap().edge("e3"), Some("e"));
    }

    #[test]
    fn phi1_at_t2_fails() {
        let g = ct::sketch_g();
        assert!(!satisfies(&ct::anchor_t2(), &g, &ct::phi1()).unwrap().holds);
    }

    #[test]
    fn false_guard_makes_exists_hold() {
        let g = ct::sketch_g();
        let k = ct::anchor_t2().dom().clone();
        let c = Condition::exists(
            Condition::falsity(k.clone()),
            GraphMorphism::identity(k.clone()),
            Condition::falsity(k),
        );
        assert!(satisfies(&ct::anchor_t2(), &g, &c).unwrap().holds);
    }

    #[test]
    fn well_formed_flags_foreign_statement() {
        let k = Arc::new(Graph::from_parts(&["x"], &[]).unwrap());
        let c = Condition::new(k, Node::Stmt(ct::psi(4)));
        assert_eq!(well_formed(&c).len(), 1);
        assert!(well_formed(&ct::phi2()).is_empty());
        assert!(well_formed(&Condition::truth(Arc::new(Graph::empty()))).is_empty());
    }

    #[test]
    fn phi6_counterexample_is_c_d_g() {
        let g = ct::sketch_g();
        let k = Constraint::global(ct::phi6(), g.context().clone()).unwrap();
        let v = check_constraint(&g, &k).unwrap();
        assert!(!v.holds);
        let all = counterexamples(&g, &k).unwrap();
        assert_eq!(all.len(), 1);
        let pairs: Vec<_> = all[0].edge_pairs().collect();
        assert_eq!(pairs, [("e1", "c"), ("e2", "d"), ("e3", "g")]);
        assert_eq!(v.evidence.unwrap().extension(), Some(&all[0]));
    }

    #[test]
    fn implication_cases() {
        let g = ct::sketch_g();
        let b_edge = ct::monic().arity().clone();
        let t = GraphMorphism::from_edges(b_edge.clone(), g.context().clone(), &[("e", "b")]).unwrap();
        let monic_e = Statement::new(ct::monic(), GraphMorphism::identity(b_edge.clone())).unwrap();
        let imp = implication(Condition::truth(b_edge.clone()), Condition::stmt(monic_e.clone())).unwrap();
        assert!(satisfies(&t, &g, &imp).unwrap().holds);
        let vacuous = implication(Condition::falsity(b_edge.clone()), Condition::falsity(b_edge)).unwrap();
        assert!(satisfies(&t, &g, &vacuous).unwrap().holds);

        let tri = Arc::new(ct::arity_comp());
        let at_cdg = GraphMorphism::from_edges(
            tri.clone(),
            g.context().clone(),
            &[("e1", "c"), ("e2", "d"), ("e3", "g")],
        )
        .unwrap();
        let premise = Condition::conjunction(
            tri.clone(),
            [ct::comp_stmt(&tri, "e1", "e2", "e3"), ct::monic_stmt(&tri, "e3")],
        );
        let imp = implication(premise, Condition::stmt(ct::monic_stmt(&tri, "e1"))).unwrap();
        assert!(!satisfies(&at_cdg, &g, &imp).unwrap().holds);
    }

    #[test]
    fn unguarded_sugar_matches_true_guard() {
        let g = ct::sketch_g();
        let Node::Forall(q) = ct::phi2().node().clone() else { panic!() };
        let sugar = unguarded_forall(q.shift.clone(), (*q.body).clone());
        assert_eq!(sugar, ct::phi2());
        let t = initial_morphism(g.context().clone());
        let ex = unguarded_exists(q.shift.clone(), (*q.body).clone());
        let guarded = Condition::exists(Condition::truth(q.shift.dom().clone()), q.shift.clone(), (*q.body).clone());
        assert_eq!(satisfies(&t, &g, &ex).unwrap(), satisfies(&t, &g, &guarded).unwrap());
    }

    #[test]
    fn uc_of_identity_rule_holds_everywhere() {
        let g = ct::sketch_g();
        let empty = Sketch::bare(Arc::new(Graph::empty()));
        let rule = SketchMorphism::identity(empty);
        let k = Constraint::global(uc(&rule), g.context().clone()).unwrap();
        assert!(check_constraint(&g, &k).unwrap().holds);
    }

    #[test]
    fn nuc_of_monic_edge_fails_on_g() {
        let g = ct::sketch_g();
        let edge = ct::monic().arity().clone();
        let marked = Sketch::new(
            edge.clone(),
            [Statement::new(ct::monic(), GraphMorphism::identity(edge)).unwrap()],
        )
        .unwrap();
        let rule = SketchMorphism::identity(marked);
        let k = Constraint::global(nuc(&rule), g.context().clone()).unwrap();
        assert!(!check_constraint(&g, &k).unwrap().holds);
    }

    #[test]
    fn fuel_limit_is_reported() {
        let g = ct::sketch_g();
        let t = initial_morphism(g.context().clone());
        let mut ev = Evaluator::new(&g, EvalOptions { mono_extensions: false, fuel: Some(3) });
        assert_eq!(ev.check(&t, &ct::phi2()), Err(Error::FuelExhausted));
    }

    #[test]
    fn mono_option_restricts_extensions() {
        // exists a loop-free pair of distinct nodes: with mono only, a
        // single-node sketch has no witness.
        let one = Sketch::bare(Arc::new(Graph::from_parts(&["x"], &[]).unwrap()));
        let two = Arc::new(Graph::from_parts(&["p", "q"], &[]).unwrap());
        let c = unguarded_exists(initial_morphism(two.clone()), Condition::truth(two));
        let t = initial_morphism(one.context().clone());
        assert!(satisfies(&t, &one, &c).unwrap().holds);
        let opts = EvalOptions { mono_extensions: true, fuel: None };
        assert!(!Evaluator::new(&one, opts).check(&t, &c).unwrap().holds);
    }

    #[test]
    fn rename_round_trip() {
        let phi = ct::phi8();
        let there = phi.rename(&|n| format!("{n}x"), &|e| format!("{e}y")).unwrap();
        assert_ne!(there, phi);
        let back = there
            .rename(&|n| n.trim_end_matches('x').to_string(), &|e| e.trim_end_matches('y').to_string())
            .unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn statements_in_g_hold_at_their_bindings() {
        let g = ct::sketch_g();
        for s in g.statements() {
            let arity = s.predicate().arity().clone();
            let own = Statement::new(s.predicate().clone(), GraphMorphism::identity(arity)).unwrap();
            assert!(satisfies(s.binding(), &g, &Condition::stmt(own)).unwrap().holds);
        }
    }
}
