//! Resolution of parsed documents into core objects.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use dsketch_core::condition::{implication, Condition};
use dsketch_core::deduce::Rule;
use dsketch_core::graph::{GraphMorphism, RawGraph};
use dsketch_core::sketch::{Footprint, PredicateSymbol};
use dsketch_core::{Constraint, Graph, Sketch, SketchMorphism, Statement};

use crate::ast::*;
use crate::error::DslError;

type Res<T> = Result<T, DslError>;

/// A constraint declaration: its anchor is fixed by a morphism, or is the
/// initial morphism into whichever sketch it is checked on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSpec {
    pub condition: String,
    pub anchor: Option<GraphMorphism>,
    pub on: Option<String>,
}

/// Every declaration of a document, resolved.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub graphs: BTreeMap<String, Arc<Graph>>,
    pub footprints: BTreeMap<String, Footprint>,
    pub morphisms: BTreeMap<String, GraphMorphism>,
    pub sketches: BTreeMap<String, Sketch>,
    /// The footprint each sketch was declared over, if any.
    pub sketch_footprints: BTreeMap<String, String>,
    pub conditions: BTreeMap<String, Condition>,
    pub constraints: BTreeMap<String, ConstraintSpec>,
    pub rules: BTreeMap<String, Rule>,
    /// Declarations in source order.
    pub order: Vec<(Kind, String)>,
}

/// A parsed file together with its path, for diagnostics.
pub struct Source {
    pub path: String,
    pub doc: Document,
}

fn invalid(name: &Name, kind: Kind, message: impl ToString) -> DslError {
    DslError::Invalid { pos: name.pos, kind, name: name.text.clone(), message: message.to_string() }
}

fn unresolved(name: &Name, kind: Kind) -> DslError {
    DslError::Unresolved { pos: name.pos, kind, name: name.text.clone() }
}

impl Model {
    pub fn resolve(doc: &Document) -> Res<Model> {
        let decls: Vec<(Option<&str>, &Decl)> = doc.decls.iter().map(|d| (None, d)).collect();
        Self::resolve_decls(&decls)
    }

    pub fn resolve_sources(sources: &[Source]) -> Res<Model> {
        let decls: Vec<(Option<&str>, &Decl)> =
            sources.iter().flat_map(|s| s.doc.decls.iter().map(|d| (Some(s.path.as_str()), d))).collect();
        Self::resolve_decls(&decls)
    }

    fn resolve_decls(decls: &[(Option<&str>, &Decl)]) -> Res<Model> {
        let mut m = Model::default();
        let mut seen = BTreeSet::new();
        for (file, d) in decls {
            if !seen.insert((d.kind(), d.name().text.clone())) {
                let e = DslError::Duplicate { pos: d.name().pos, kind: d.kind(), name: d.name().text.clone() };
                return Err(locate(e, *file));
            }
            m.order.push((d.kind(), d.name().text.clone()));
        }
        // Kinds only refer to kinds resolved before them.
        for kind in [Kind::Graph, Kind::Footprint, Kind::Morphism, Kind::Sketch, Kind::Condition, Kind::Constraint, Kind::Rule] {
            for (file, d) in decls.iter().filter(|(_, d)| d.kind() == kind) {
                m.declare(d).map_err(|e| locate(e, *file))?;
            }
        }
        Ok(m)
    }

    fn declare(&mut self, d: &Decl) -> Res<()> {
        match d {
            Decl::Graph { name, body } => {
                let g = build_graph(None, body)?;
                self.graphs.insert(name.text.clone(), Arc::new(g));
            }
            Decl::Footprint { name, predicates } => {
                let mut fp = Footprint::new();
                for p in predicates {
                    let arity = match &p.arity {
                        GraphRef::Named(g) => self.graph(g)?,
                        GraphRef::Inline(body) => Arc::new(build_graph(None, body)?),
                    };
                    fp.insert(PredicateSymbol::new(p.name.text.clone(), arity))
                        .map_err(|e| invalid(&p.name, Kind::Predicate, e))?;
                }
                self.footprints.insert(name.text.clone(), fp);
            }
            Decl::Morphism { name, dom, cod, map } => {
                let (dom, cod) = (self.graph(dom)?, self.graph(cod)?);
                let m = resolve_map(&dom, &cod, map).map_err(|e| e.or_invalid(name, Kind::Morphism))?;
                self.morphisms.insert(name.text.clone(), m);
            }
            Decl::Sketch { name, footprint, graph, statements } => {
                if let Some(fp) = footprint {
                    if !self.footprints.contains_key(&fp.text) {
                        return Err(unresolved(fp, Kind::Footprint));
                    }
                    self.sketch_footprints.insert(name.text.clone(), fp.text.clone());
                }
                let ctx = self.graph(graph)?;
                let fp = footprint.as_ref().map(|f| f.text.as_str());
                let stmts = statements.iter().map(|s| self.statement(&ctx, s, fp)).collect::<Res<Vec<_>>>()?;
                let sketch = Sketch::new(ctx, stmts).map_err(|e| invalid(name, Kind::Sketch, e))?;
                self.sketches.insert(name.text.clone(), sketch);
            }
            Decl::Condition { name, context, expr } => {
                let ctx = self.graph(context)?;
                let c = self.condition(&ctx, expr).map_err(|e| e.or_invalid(name, Kind::Condition))?;
                self.conditions.insert(name.text.clone(), c);
            }
            Decl::Constraint { name, condition, anchor, on } => {
                let cond = self.conditions.get(&condition.text).ok_or_else(|| unresolved(condition, Kind::Condition))?;
                let anchor = match anchor {
                    AnchorSyntax::Initial => {
                        if !cond.context().is_empty() {
                            return Err(invalid(name, Kind::Constraint, "an initial anchor needs a closed condition"));
                        }
                        None
                    }
                    AnchorSyntax::Morphism(m) => {
                        let m = self.morphism(m)?;
                        if **m.dom() != **cond.context() {
                            return Err(invalid(name, Kind::Constraint, "anchor does not start at the condition's context"));
                        }
                        Some(m)
                    }
                };
                if let Some(s) = on {
                    let sketch = self.sketches.get(&s.text).ok_or_else(|| unresolved(s, Kind::Sketch))?;
                    if anchor.as_ref().is_some_and(|a| **a.cod() != **sketch.context()) {
                        return Err(invalid(name, Kind::Constraint, format!("anchor does not end at the context of `{s}`")));
                    }
                }
                let spec = ConstraintSpec { condition: condition.text.clone(), anchor, on: on.as_ref().map(|s| s.text.clone()) };
                self.constraints.insert(name.text.clone(), spec);
            }
            Decl::Rule { name, morphism, lhs, rhs } => {
                let l = self.sketches.get(&lhs.text).ok_or_else(|| unresolved(lhs, Kind::Sketch))?.clone();
                let r = self.sketches.get(&rhs.text).ok_or_else(|| unresolved(rhs, Kind::Sketch))?.clone();
                let map = match morphism {
                    MorphismSyntax::Named(m) => self.morphism(m)?,
                    MorphismSyntax::Inline(a) => {
                        resolve_map(l.context(), r.context(), a).map_err(|e| e.or_invalid(name, Kind::Rule))?
                    }
                };
                let sm = SketchMorphism::new(l, r, map).map_err(|e| invalid(name, Kind::Rule, e))?;
                let rule = Rule::from_sketch_morphism(&sm).map_err(|e| invalid(name, Kind::Rule, e))?;
                self.rules.insert(name.text.clone(), rule);
            }
        }
        Ok(())
    }

    fn graph(&self, name: &Name) -> Res<Arc<Graph>> {
        self.graphs.get(&name.text).cloned().ok_or_else(|| unresolved(name, Kind::Graph))
    }

    fn morphism(&self, name: &Name) -> Res<GraphMorphism> {
        self.morphisms.get(&name.text).cloned().ok_or_else(|| unresolved(name, Kind::Morphism))
    }

    /// The predicate of that name, from the given footprint or else from the
    /// only footprint that declares it.
    pub fn predicate(&self, name: &Name, footprint: Option<&str>) -> Res<PredicateSymbol> {
        if let Some(fp) = footprint {
            return self.footprints[fp].get(&name.text).cloned().ok_or_else(|| unresolved(name, Kind::Predicate));
        }
        let found: BTreeSet<&PredicateSymbol> = self.footprints.values().filter_map(|f| f.get(&name.text)).collect();
        match found.len() {
            0 => Err(unresolved(name, Kind::Predicate)),
            1 => Ok(found.into_iter().next().expect("one element").clone()),
            _ => Err(invalid(name, Kind::Predicate, "declared with different arities in several footprints")),
        }
    }

    pub fn statement(&self, ctx: &Arc<Graph>, s: &StmtSyntax, footprint: Option<&str>) -> Res<Statement> {
        let p = self.predicate(&s.predicate, footprint)?;
        let binding = resolve_map(p.arity(), ctx, &s.via).map_err(|e| e.or_invalid(&s.predicate, Kind::Predicate))?;
        Statement::new(p, binding).map_err(|e| invalid(&s.predicate, Kind::Predicate, e))
    }

    /// Resolves an expression over `ctx`.
    pub fn condition(&self, ctx: &Arc<Graph>, e: &Expr) -> Res<Condition> {
        Ok(match e {
            Expr::True => Condition::truth(ctx.clone()),
            Expr::False => Condition::falsity(ctx.clone()),
            Expr::Stmt(s) => Condition::stmt(self.statement(ctx, s, None)?),
            Expr::And(cs) => Condition::and(ctx.clone(), self.conditions_over(ctx, cs)?),
            Expr::Or(cs) => Condition::or(ctx.clone(), self.conditions_over(ctx, cs)?),
            Expr::Not(c) => Condition::not(self.condition(ctx, c)?),
            Expr::Implies(l, r) => {
                implication(self.condition(ctx, l)?, self.condition(ctx, r)?).expect("both sides live over the context")
            }
            Expr::Quant { kind, guard, shift, body } => {
                let guard = match guard {
                    Some(g) => self.condition(ctx, g)?,
                    None => Condition::truth(ctx.clone()),
                };
                let shift = match shift {
                    Shift::Named(m) => {
                        let a = self.morphism(m)?;
                        if **a.dom() != **ctx {
                            return Err(invalid(m, Kind::Morphism, "does not start at the current context"));
                        }
                        a
                    }
                    Shift::Extend(b) => {
                        let big = Arc::new(build_graph(Some(ctx), b)?);
                        GraphMorphism::inclusion(ctx.clone(), big).expect("extension contains the context")
                    }
                };
                let body = self.condition(shift.cod(), body)?;
                match kind {
                    QuantKind::Exists => Condition::exists(guard, shift, body),
                    QuantKind::Forall => Condition::forall(guard, shift, body),
                }
            }
        })
    }

    fn conditions_over(&self, ctx: &Arc<Graph>, cs: &[Expr]) -> Res<Vec<Condition>> {
        cs.iter().map(|c| self.condition(ctx, c)).collect()
    }

    /// The constraint `name` anchored into `sketch`.
    pub fn constraint_on(&self, name: &str, sketch: &Sketch) -> Result<Constraint, String> {
        let spec = self.constraints.get(name).ok_or_else(|| format!("unknown constraint `{name}`"))?;
        let cond = self.conditions[&spec.condition].clone();
        match &spec.anchor {
            None => Constraint::global(cond, sketch.context().clone()).map_err(|e| e.to_string()),
            Some(a) if **a.cod() == **sketch.context() => Constraint::new(cond, a.clone()).map_err(|e| e.to_string()),
            Some(_) => Err(format!("the anchor of `{name}` does not end at the sketch's context")),
        }
    }

    /// The name of the sketch a constraint is checked on: `on` if given, else
    /// the only sketch its anchor fits.
    pub fn default_sketch_for(&self, name: &str) -> Result<String, String> {
        let spec = self.constraints.get(name).ok_or_else(|| format!("unknown constraint `{name}`"))?;
        if let Some(s) = &spec.on {
            return Ok(s.clone());
        }
        let fits: Vec<&String> = self
            .sketches
            .iter()
            .filter(|(_, s)| spec.anchor.as_ref().is_none_or(|a| **a.cod() == **s.context()))
            .map(|(n, _)| n)
            .collect();
        match fits.as_slice() {
            [one] => Ok((*one).clone()),
            [] => Err(format!("no sketch fits constraint `{name}`")),
            _ => Err(format!("constraint `{name}` fits several sketches; choose one with --sketch")),
        }
    }
}

fn locate(e: DslError, file: Option<&str>) -> DslError {
    match file {
        Some(f) => e.in_file(f),
        None => e,
    }
}

/// Builds a graph from a body, on top of `base` if given.
fn build_graph(base: Option<&Arc<Graph>>, body: &GraphBody) -> Res<Graph> {
    let mut nodes: BTreeSet<&str> = base.map(|g| g.nodes().collect()).unwrap_or_default();
    let mut edges: BTreeSet<&str> = base.map(|g| g.edges().map(|(e, _, _)| e).collect()).unwrap_or_default();
    for v in &body.nodes {
        if !nodes.insert(&v.text) {
            return Err(DslError::Duplicate { pos: v.pos, kind: Kind::Node, name: v.text.clone() });
        }
    }
    for e in &body.edges {
        if !edges.insert(&e.name.text) {
            return Err(DslError::Duplicate { pos: e.name.pos, kind: Kind::Edge, name: e.name.text.clone() });
        }
        for end in [&e.src, &e.tgt] {
            if !nodes.contains(end.text.as_str()) {
                return Err(unresolved(end, Kind::Node));
            }
        }
    }
    let extra = RawGraph {
        nodes: body.nodes.iter().map(|n| n.text.clone()).collect(),
        edges: body.edges.iter().map(|e| (e.name.text.clone(), e.src.text.clone(), e.tgt.text.clone())).collect(),
    };
    let built = match base {
        Some(g) => g.extended(&extra),
        None => extra.build(),
    };
    Ok(built.expect("names were checked above"))
}

/// Failure while resolving assignments; positioned once the owning
/// declaration is known.
enum MapError {
    At(DslError),
    Core(String),
}

trait OrInvalid {
    fn or_invalid(self, name: &Name, kind: Kind) -> DslError;
}

impl OrInvalid for MapError {
    fn or_invalid(self, name: &Name, kind: Kind) -> DslError {
        match self {
            MapError::At(e) => e,
            MapError::Core(message) => invalid(name, kind, message),
        }
    }
}

impl OrInvalid for DslError {
    fn or_invalid(self, _: &Name, _: Kind) -> DslError {
        self
    }
}

impl From<DslError> for MapError {
    fn from(e: DslError) -> Self {
        MapError::At(e)
    }
}

/// Resolves assignments from `dom` into `cod`; unknown names are reported at
/// their token.
fn resolve_map(dom: &Arc<Graph>, cod: &Arc<Graph>, a: &Assignments) -> Result<GraphMorphism, MapError> {
    let mut nodes: Vec<(&str, &str)> = Vec::new();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    let check = |name: &Name, g: &Graph, kind: Kind| -> Result<(), MapError> {
        let known = match kind {
            Kind::Node => g.has_node(&name.text),
            _ => g.has_edge(&name.text),
        };
        if known {
            Ok(())
        } else {
            Err(MapError::At(unresolved(name, kind)))
        }
    };
    for (x, y) in &a.nodes {
        check(x, dom, Kind::Node)?;
        check(y, cod, Kind::Node)?;
        nodes.push((&x.text, &y.text));
    }
    for (x, y) in &a.edges {
        check(x, dom, Kind::Edge)?;
        check(y, cod, Kind::Edge)?;
        edges.push((&x.text, &y.text));
    }
    for (x, y) in &a.loose {
        if dom.has_edge(&x.text) {
            check(y, cod, Kind::Edge)?;
            edges.push((&x.text, &y.text));
        } else if dom.has_node(&x.text) {
            check(y, cod, Kind::Node)?;
            nodes.push((&x.text, &y.text));
        } else {
            return Err(MapError::At(unresolved(x, Kind::Node)));
        }
    }
    GraphMorphism::new(dom.clone(), cod.clone(), nodes, edges).map_err(|e| MapError::Core(e.to_string()))
}
