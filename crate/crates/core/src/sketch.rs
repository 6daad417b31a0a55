//! Footprints, statements, sketches and their morphisms.
//!
//! A statement `(P, α)` binds the arity graph of a predicate symbol `P` into
//! a context by the morphism `α`. Statements move along context morphisms by
//! post-composition. A context morphism is a sketch morphism when it maps
//! every statement of its source into the statements of its target.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::category::{pullback, pushout, verify_pullback, verify_pushout, PullbackResult, PushoutResult};
use crate::graph::{compose, enumerate_morphisms, Graph, GraphMorphism};
use crate::{Error, Result};

/// A predicate symbol together with its arity graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredicateSymbol {
    name: String,
    arity: Arc<Graph>,
}

impl PredicateSymbol {
    pub fn new(name: impl Into<String>, arity: impl Into<Arc<Graph>>) -> Self {
        Self { name: name.into(), arity: arity.into() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> &Arc<Graph> {
        &self.arity
    }
}

/// A finite set of predicate symbols with unique names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Footprint {
    predicates: BTreeMap<String, PredicateSymbol>,
}

impl Footprint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: PredicateSymbol) -> Result<()> {
        if self.predicates.contains_key(p.name()) {
            return Err(Error::Predicate(format!("`{}` declared twice", p.name())));
        }
        self.predicates.insert(p.name.clone(), p);
        Ok(())
    }

    pub fn with(mut self, p: PredicateSymbol) -> Result<Self> {
        self.insert(p)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&PredicateSymbol> {
        self.predicates.get(name)
    }

    pub fn predicates(&self) -> impl Iterator<Item = &PredicateSymbol> {
        self.predicates.values()
    }

    /// Every statement over `context`, i.e. the set `Stm(context)`.
    pub fn all_statements(&self, context: &Arc<Graph>) -> Vec<Statement> {
        self.predicates()
            .flat_map(|p| {
                enumerate_morphisms(p.arity(), context)
                    .into_iter()
                    .map(move |binding| Statement { predicate: p.clone(), binding })
            })
            .collect()
    }
}

/// An atomic constraint: a predicate bound into a context.
///
/// Ordered by predicate name, then by binding in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Statement {
    predicate: PredicateSymbol,
    binding: GraphMorphism,
}

impl Statement {
    pub fn new(predicate: PredicateSymbol, binding: GraphMorphism) -> Result<Self> {
        if **binding.dom() != **predicate.arity() {
            return Err(Error::Predicate(format!(
                "binding of `{}` does not start at its arity",
                predicate.name()
            )));
        }
        Ok(Self { predicate, binding })
    }

    /// Binds `predicate` into `context` by edge assignments (plus node
    /// assignments for nodes no edge forces).
    pub fn bind(
        predicate: &PredicateSymbol,
        context: &Arc<Graph>,
        nodes: &[(&str, &str)],
        edges: &[(&str, &str)],
    ) -> Result<Self> {
        let binding = GraphMorphism::new(
            predicate.arity().clone(),
            context.clone(),
            nodes.iter().copied(),
            edges.iter().copied(),
        )?;
        Self::new(predicate.clone(), binding)
    }

    pub fn predicate(&self) -> &PredicateSymbol {
        &self.predicate
    }

    pub fn binding(&self) -> &GraphMorphism {
        &self.binding
    }

    /// The context the statement lives in.
    pub fn context(&self) -> &Arc<Graph> {
        self.binding.cod()
    }

    /// `(P, α ; phi)`.
    pub fn translate(&self, phi: &GraphMorphism) -> Result<Statement> {
        translate_statement(phi, self)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.predicate.name)?;
        let mut first = true;
        for (a, b) in self.binding.unforced_nodes().chain(self.binding.edge_pairs()) {
            write!(f, "{}{a}->{b}", if first { "(" } else { ", " })?;
            first = false;
        }
        if !first {
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Moves a statement along a context morphism by post-composition.
pub fn translate_statement(phi: &GraphMorphism, s: &Statement) -> Result<Statement> {
    if **s.binding.cod() != **phi.dom() {
        return Err(Error::Mismatch("statement context is not the morphism's domain"));
    }
    Ok(Statement { predicate: s.predicate.clone(), binding: compose(&s.binding, phi)? })
}

/// A context together with a set of statements in it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sketch {
    context: Arc<Graph>,
    statements: BTreeSet<Statement>,
}

impl Sketch {
    pub fn new(context: impl Into<Arc<Graph>>, statements: impl IntoIterator<Item = Statement>) -> Result<Self> {
        let context = context.into();
        let mut set = BTreeSet::new();
        for s in statements {
            if **s.context() != *context {
                return Err(Error::Mismatch("statement bound into a different context"));
            }
            // Re-anchor so that every statement shares the sketch's context.
            let binding = s.binding.with_codomain(context.clone())?;
            set.insert(Statement { predicate: s.predicate, binding });
        }
        Ok(Self { context, statements: set })
    }

    /// A sketch without statements.
    pub fn bare(context: impl Into<Arc<Graph>>) -> Self {
        Self { context: context.into(), statements: BTreeSet::new() }
    }

    pub fn context(&self) -> &Arc<Graph> {
        &self.context
    }

    pub fn statements(&self) -> &BTreeSet<Statement> {
        &self.statements
    }

    pub fn contains(&self, s: &Statement) -> bool {
        self.statements.contains(s)
    }

    /// The same sketch with `extra` statements added.
    pub fn with_statements(&self, extra: impl IntoIterator<Item = Statement>) -> Result<Self> {
        Self::new(self.context.clone(), self.statements.iter().cloned().chain(extra))
    }

    /// The same sketch without the given statement.
    pub fn without(&self, s: &Statement) -> Self {
        let mut statements = self.statements.clone();
        statements.remove(s);
        Self { context: self.context.clone(), statements }
    }
}

/// Whether `phi` maps every statement of `k` to a statement of `g`.
pub fn is_sketch_morphism(phi: &GraphMorphism, k: &Sketch, g: &Sketch) -> Result<bool> {
    if **phi.dom() != *k.context || **phi.cod() != *g.context {
        return Err(Error::Mismatch("morphism endpoints are not the sketch contexts"));
    }
    for s in &k.statements {
        if !g.contains(&translate_statement(phi, s)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A statement-preserving context morphism between two sketches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SketchMorphism {
    dom: Sketch,
    cod: Sketch,
    map: GraphMorphism,
}

impl SketchMorphism {
    pub fn new(dom: Sketch, cod: Sketch, map: GraphMorphism) -> Result<Self> {
        if !is_sketch_morphism(&map, &dom, &cod)? {
            return Err(Error::NotSketchMorphism);
        }
        let map = GraphMorphism::from_indices(
            dom.context.clone(),
            cod.context.clone(),
            (0..map.dom().node_count()).map(|i| map.node_image(i)).collect(),
            (0..map.dom().edge_count()).map(|i| map.edge_image(i)).collect(),
        )?;
        Ok(Self { dom, cod, map })
    }

    pub fn identity(s: Sketch) -> Self {
        let map = GraphMorphism::identity(s.context.clone());
        Self { dom: s.clone(), cod: s, map }
    }

    pub fn dom(&self) -> &Sketch {
        &self.dom
    }

    pub fn cod(&self) -> &Sketch {
        &self.cod
    }

    pub fn map(&self) -> &GraphMorphism {
        &self.map
    }

    pub fn then(&self, next: &SketchMorphism) -> Result<SketchMorphism> {
        if self.cod != next.dom {
            return Err(Error::Mismatch("sketch morphisms are not composable"));
        }
        Ok(SketchMorphism {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            map: compose(&self.map, &next.map)?,
        })
    }
}

/// A pushout of sketches: `B -left-> D <-right- A`.
#[derive(Clone, Debug)]
pub struct SketchPushout {
    pub sketch: Sketch,
    pub left: SketchMorphism,
    pub right: SketchMorphism,
    pub context: PushoutResult,
}

/// The pushout of the sketch span `B <-m- C -r-> A`: the context pushout
/// with the images of both statement sets.
pub fn sketch_pushout(m: &SketchMorphism, r: &SketchMorphism) -> Result<SketchPushout> {
    if m.dom != r.dom {
        return Err(Error::Mismatch("span legs start at different sketches"));
    }
    let po = pushout(&m.map, &r.map)?;
    let mut statements = Vec::new();
    for s in r.cod.statements() {
        statements.push(translate_statement(&po.right, s)?);
    }
    for s in m.cod.statements() {
        statements.push(translate_statement(&po.left, s)?);
    }
    let sketch = Sketch::new(po.object.clone(), statements)?;
    let left = SketchMorphism::new(m.cod.clone(), sketch.clone(), po.left.clone())?;
    let right = SketchMorphism::new(r.cod.clone(), sketch.clone(), po.right.clone())?;
    Ok(SketchPushout { sketch, left, right, context: po })
}

/// A pullback of sketches: `B <-left- D -right-> A`.
#[derive(Clone, Debug)]
pub struct SketchPullback {
    pub sketch: Sketch,
    pub left: SketchMorphism,
    pub right: SketchMorphism,
    pub context: PullbackResult,
}

/// The pullback of the sketch cospan `B -m-> C <-r- A`: the context
/// pullback with every statement whose two projections are declared in
/// `B` and `A`.
pub fn sketch_pullback(m: &SketchMorphism, r: &SketchMorphism) -> Result<SketchPullback> {
    if m.cod != r.cod {
        return Err(Error::Mismatch("cospan legs end at different sketches"));
    }
    let pb = pullback(&m.map, &r.map)?;
    let preds_b: BTreeSet<&PredicateSymbol> =
        m.dom.statements().iter().map(|s| s.predicate()).collect();
    let preds: BTreeSet<&PredicateSymbol> = r
        .dom
        .statements()
        .iter()
        .map(|s| s.predicate())
        .filter(|p| preds_b.contains(p))
        .collect();
    let mut statements = Vec::new();
    for p in preds {
        for binding in enumerate_morphisms(p.arity(), &pb.object) {
            let s = Statement { predicate: p.clone(), binding };
            if m.dom.contains(&translate_statement(&pb.left, &s)?)
                && r.dom.contains(&translate_statement(&pb.right, &s)?)
            {
                statements.push(s);
            }
        }
    }
    let sketch = Sketch::new(pb.object.clone(), statements)?;
    let left = SketchMorphism::new(sketch.clone(), m.dom.clone(), pb.left.clone())?;
    let right = SketchMorphism::new(sketch.clone(), r.dom.clone(), pb.right.clone())?;
    Ok(SketchPullback { sketch, left, right, context: pb })
}

/// A sketch whose statements carry identifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSketch {
    context: Arc<Graph>,
    stm: BTreeMap<String, Statement>,
}

impl MultiSketch {
    pub fn new(context: impl Into<Arc<Graph>>, stm: BTreeMap<String, Statement>) -> Result<Self> {
        let context = context.into();
        let mut out = BTreeMap::new();
        for (id, s) in stm {
            let binding = s.binding.with_codomain(context.clone())?;
            out.insert(id, Statement { predicate: s.predicate, binding });
        }
        Ok(Self { context, stm: out })
    }

    pub fn context(&self) -> &Arc<Graph> {
        &self.context
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.stm.keys().map(String::as_str)
    }

    pub fn statement(&self, id: &str) -> Option<&Statement> {
        self.stm.get(id)
    }

    /// The plain sketch obtained by forgetting identifiers.
    pub fn underlying(&self) -> Sketch {
        Sketch { context: self.context.clone(), statements: self.stm.values().cloned().collect() }
    }
}

/// A context morphism plus an identifier map compatible with it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSketchMorphism {
    dom: MultiSketch,
    cod: MultiSketch,
    map: GraphMorphism,
    ids: BTreeMap<String, String>,
}

impl MultiSketchMorphism {
    pub fn new(
        dom: MultiSketch,
        cod: MultiSketch,
        map: GraphMorphism,
        ids: BTreeMap<String, String>,
    ) -> Result<Self> {
        if **map.dom() != *dom.context || **map.cod() != *cod.context {
            return Err(Error::Mismatch("morphism endpoints are not the sketch contexts"));
        }
        for (i, s) in &dom.stm {
            let j = ids.get(i).ok_or_else(|| Error::IncompatibleIdentifiers(i.clone()))?;
            let target = cod.stm.get(j).ok_or_else(|| Error::IncompatibleIdentifiers(i.clone()))?;
            if translate_statement(&map, s)? != *target {
                return Err(Error::IncompatibleIdentifiers(i.clone()));
            }
        }
        if ids.keys().any(|i| !dom.stm.contains_key(i)) {
            return Err(Error::Mismatch("identifier map has entries outside its domain"));
        }
        Ok(Self { dom, cod, map, ids })
    }

    pub fn dom(&self) -> &MultiSketch {
        &self.dom
    }

    pub fn cod(&self) -> &MultiSketch {
        &self.cod
    }

    pub fn map(&self) -> &GraphMorphism {
        &self.map
    }

    pub fn id_map(&self) -> &BTreeMap<String, String> {
        &self.ids
    }
}

/// A pushout or pullback of multi sketches with its two legs.
#[derive(Clone, Debug)]
pub struct MultiSquare<C> {
    pub sketch: MultiSketch,
    pub left: MultiSketchMorphism,
    pub right: MultiSketchMorphism,
    pub context: C,
}

/// Componentwise pushout: contexts in graphs, identifiers in sets.
pub fn multi_pushout(
    m: &MultiSketchMorphism,
    r: &MultiSketchMorphism,
) -> Result<MultiSquare<PushoutResult>> {
    if m.dom != r.dom {
        return Err(Error::Mismatch("span legs start at different multi sketches"));
    }
    let po = pushout(&m.map, &r.map)?;
    let b_ids: Vec<&String> = m.cod.stm.keys().collect();
    let a_ids: Vec<&String> = r.cod.stm.keys().collect();
    let tagged: Vec<String> = b_ids
        .iter()
        .map(|i| format!("L:{i}"))
        .chain(a_ids.iter().map(|i| format!("R:{i}")))
        .collect();
    let index = |side: &[&String], id: &String| side.iter().position(|x| *x == id);
    let mut parent: Vec<usize> = (0..tagged.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for c in m.dom.stm.keys() {
        let bi = index(&b_ids, &m.ids[c]).ok_or(Error::Internal("dangling identifier".into()))?;
        let ai = index(&a_ids, &r.ids[c]).ok_or(Error::Internal("dangling identifier".into()))?;
        let (x, y) = (root(&mut parent, bi), root(&mut parent, b_ids.len() + ai));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut class_name: BTreeMap<usize, String> = BTreeMap::new();
    for (i, t) in tagged.iter().enumerate() {
        let rt = root(&mut parent, i);
        let entry = class_name.entry(rt).or_insert_with(|| t.clone());
        if t < entry {
            *entry = t.clone();
        }
    }
    let name_of: Vec<String> =
        (0..tagged.len()).map(|i| class_name[&root(&mut parent, i)].clone()).collect();

    let mut stm: BTreeMap<String, Statement> = BTreeMap::new();
    let mut add = |name: &String, s: Statement| -> Result<()> {
        match stm.get(name) {
            Some(existing) if *existing != s => {
                Err(Error::Internal(format!("identifier class {name} carries two statements")))
            }
            _ => {
                stm.insert(name.clone(), s);
                Ok(())
            }
        }
    };
    for (k, id) in b_ids.iter().enumerate() {
        add(&name_of[k], translate_statement(&po.left, &m.cod.stm[*id])?)?;
    }
    for (k, id) in a_ids.iter().enumerate() {
        add(&name_of[b_ids.len() + k], translate_statement(&po.right, &r.cod.stm[*id])?)?;
    }
    let sketch = MultiSketch::new(po.object.clone(), stm)?;
    let left_ids = b_ids.iter().enumerate().map(|(k, i)| ((*i).clone(), name_of[k].clone())).collect();
    let right_ids = a_ids
        .iter()
        .enumerate()
        .map(|(k, i)| ((*i).clone(), name_of[b_ids.len() + k].clone()))
        .collect();
    let left = MultiSketchMorphism::new(m.cod.clone(), sketch.clone(), po.left.clone(), left_ids)?;
    let right = MultiSketchMorphism::new(r.cod.clone(), sketch.clone(), po.right.clone(), right_ids)?;
    Ok(MultiSquare { sketch, left, right, context: po })
}

/// Componentwise pullback; each identifier pair carries the unique
/// statement whose projections are the two paired statements.
pub fn multi_pullback(
    m: &MultiSketchMorphism,
    r: &MultiSketchMorphism,
) -> Result<MultiSquare<PullbackResult>> {
    if m.cod != r.cod {
        return Err(Error::Mismatch("cospan legs end at different multi sketches"));
    }
    let pb = pullback(&m.map, &r.map)?;
    let mut stm = BTreeMap::new();
    let mut left_ids = BTreeMap::new();
    let mut right_ids = BTreeMap::new();
    for (j, sb) in &m.dom.stm {
        for (i, sa) in &r.dom.stm {
            if m.ids[j] != r.ids[i] {
                continue;
            }
            let binding = pb.mediate(sb.binding(), sa.binding()).ok_or_else(|| {
                Error::Internal(format!("no mediating binding for identifier pair {j}|{i}"))
            })?;
            let id = format!("{j}|{i}");
            stm.insert(id.clone(), Statement::new(sb.predicate.clone(), binding)?);
            left_ids.insert(id.clone(), j.clone());
            right_ids.insert(id, i.clone());
        }
    }
    let sketch = MultiSketch::new(pb.object.clone(), stm)?;
    let left = MultiSketchMorphism::new(sketch.clone(), m.dom.clone(), pb.left.clone(), left_ids)?;
    let right = MultiSketchMorphism::new(sketch.clone(), r.dom.clone(), pb.right.clone(), right_ids)?;
    Ok(MultiSquare { sketch, left, right, context: pb })
}

/// All maps from a set of size `n` into a set of size `k`.
fn all_functions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..k).map(move |v| {
                    let mut g = f.clone();
                    g.push(v);
                    g
                })
            })
            .collect();
    }
    out
}

fn id_index(keys: &[&str], id: &str) -> usize {
    keys.iter().position(|k| *k == id).unwrap_or(usize::MAX)
}

/// Identifier maps as index vectors over the sorted identifier lists.
fn id_vector(mm: &MultiSketchMorphism) -> Vec<usize> {
    let cod: Vec<&str> = mm.cod.ids().collect();
    mm.dom.ids().map(|i| id_index(&cod, &mm.ids[i])).collect()
}

/// Context-level verification plus the universal property of the
/// identifier pushout against sets of size up to `max_set`.
pub fn verify_multi_pushout(
    m: &MultiSketchMorphism,
    r: &MultiSketchMorphism,
    result: &MultiSquare<PushoutResult>,
    pool: &[Arc<Graph>],
    max_set: usize,
) -> bool {
    if !verify_pushout(&m.map, &r.map, &result.context, pool) {
        return false;
    }
    let (mi, ri) = (id_vector(m), id_vector(r));
    let (li, rj) = (id_vector(&result.left), id_vector(&result.right));
    if mi.iter().zip(&ri).any(|(&b, &a)| li[b] != rj[a]) {
        return false;
    }
    let (nb, na, nd) = (m.cod.stm.len(), r.cod.stm.len(), result.sketch.stm.len());
    for x in 0..=max_set {
        let mut cocones = 0usize;
        for f in all_functions(nb, x) {
            for g in all_functions(na, x) {
                if mi.iter().zip(&ri).all(|(&b, &a)| f[b] == g[a]) {
                    cocones += 1;
                }
            }
        }
        let mut images = BTreeSet::new();
        for u in all_functions(nd, x) {
            let f: Vec<usize> = li.iter().map(|&d| u[d]).collect();
            let g: Vec<usize> = rj.iter().map(|&d| u[d]).collect();
            if !images.insert((f, g)) {
                return false;
            }
        }
        if images.len() != cocones {
            return false;
        }
    }
    true
}

/// Context-level verification plus the universal property of the
/// identifier pullback against sets of size up to `max_set`.
pub fn verify_multi_pullback(
    m: &MultiSketchMorphism,
    r: &MultiSketchMorphism,
    result: &MultiSquare<PullbackResult>,
    pool: &[Arc<Graph>],
    max_set: usize,
) -> bool {
    if !verify_pullback(&m.map, &r.map, &result.context, pool) {
        return false;
    }
    let (mi, ri) = (id_vector(m), id_vector(r));
    let (li, rj) = (id_vector(&result.left), id_vector(&result.right));
    if li.iter().zip(&rj).any(|(&b, &a)| mi[b] != ri[a]) {
        return false;
    }
    let (nb, na, nd) = (m.dom.stm.len(), r.dom.stm.len(), result.sketch.stm.len());
    for x in 0..=max_set {
        let mut cones = 0usize;
        for f in all_functions(x, nb) {
            for g in all_functions(x, na) {
                if f.iter().zip(&g).all(|(&b, &a)| mi[b] == ri[a]) {
                    cones += 1;
                }
            }
        }
        let mut images = BTreeSet::new();
        for u in all_functions(x, nd) {
            let f: Vec<usize> = u.iter().map(|&d| li[d]).collect();
            let g: Vec<usize> = u.iter().map(|&d| rj[d]).collect();
            if !images.insert((f, g)) {
                return false;
            }
        }
        if images.len() != cones {
            return false;
        }
    }
    true
}

impl fmt::Display for Sketch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.context)?;
        for s in &self.statements {
            write!(f, " {s};")?;
        }
        Ok(())
    }
}

/// Names of the statements as `P(e1->a, ...)` strings; handy for tests.
pub fn statement_labels(s: &Sketch) -> Vec<String> {
    s.statements().iter().map(|st| st.to_string()).collect()
}
