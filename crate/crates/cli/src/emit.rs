//! Declarations for core objects, so results can be written back as text.

use std::collections::BTreeSet;
use std::sync::Arc;

use dsketch_core::condition::{Condition, Node};
use dsketch_core::{Graph, GraphMorphism, Sketch, Statement};

use crate::ast::*;
use crate::model::Model;

/// Collects the declarations needed to write out core objects. Graphs are
/// declared once per structure; a graph already named in `known` is
/// referred to by that name and not declared again, so the output loads
/// alongside the files `known` came from.
#[derive(Default)]
pub struct Emitter<'a> {
    known: Option<&'a Model>,
    used: BTreeSet<(Kind, String)>,
    graphs: Vec<(Arc<Graph>, String)>,
    pub doc: Document,
}

fn edge_body(g: &Graph, skip: &dyn Fn(&str) -> bool) -> Vec<EdgeDecl> {
    g.edges()
        .filter(|(e, _, _)| !skip(e))
        .map(|(e, s, t)| EdgeDecl { name: Name::new(e), src: Name::new(s), tgt: Name::new(t) })
        .collect()
}

pub fn graph_body(g: &Graph) -> GraphBody {
    GraphBody { nodes: g.nodes().map(Name::new).collect(), edges: edge_body(g, &|_| false) }
}

/// The elements of `big` missing from `small`.
fn extension_body(small: &Graph, big: &Graph) -> GraphBody {
    GraphBody {
        nodes: big.nodes().filter(|v| !small.has_node(v)).map(Name::new).collect(),
        edges: edge_body(big, &|e| small.has_edge(e)),
    }
}

/// Assignments listing every edge and the nodes no edge forces. Sections
/// are used when the domain has a node and an edge of the same name.
pub fn assignments(m: &GraphMorphism) -> Assignments {
    let edges: Vec<(Name, Name)> = m.edge_pairs().map(|(a, b)| (Name::new(a), Name::new(b))).collect();
    let nodes: Vec<(Name, Name)> = m.unforced_nodes().map(|(a, b)| (Name::new(a), Name::new(b))).collect();
    let clash = m.dom().nodes().any(|v| m.dom().has_edge(v));
    if clash {
        Assignments { nodes, edges, loose: Vec::new() }
    } else {
        let mut loose = edges;
        loose.extend(nodes);
        Assignments { loose, ..Assignments::default() }
    }
}

pub fn statement(s: &Statement) -> StmtSyntax {
    StmtSyntax { predicate: Name::new(s.predicate().name()), via: assignments(s.binding()) }
}

impl<'a> Emitter<'a> {
    pub fn new(known: Option<&'a Model>) -> Self {
        Self { known, ..Self::default() }
    }

    pub fn into_document(self) -> Document {
        self.doc
    }

    fn fresh(&mut self, kind: Kind, hint: &str) -> String {
        let mut name = hint.to_string();
        let mut i = 1;
        while self.used.contains(&(kind, name.clone())) || self.is_known(kind, &name) {
            i += 1;
            name = format!("{hint}_{i}");
        }
        self.used.insert((kind, name.clone()));
        name
    }

    fn is_known(&self, kind: Kind, name: &str) -> bool {
        let Some(m) = self.known else { return false };
        match kind {
            Kind::Graph => m.graphs.contains_key(name),
            Kind::Footprint => m.footprints.contains_key(name),
            Kind::Morphism => m.morphisms.contains_key(name),
            Kind::Sketch => m.sketches.contains_key(name),
            Kind::Condition => m.conditions.contains_key(name),
            Kind::Constraint => m.constraints.contains_key(name),
            Kind::Rule => m.rules.contains_key(name),
            _ => false,
        }
    }

    /// Declares `g` unless an equal graph was declared or is known already.
    pub fn graph(&mut self, g: &Arc<Graph>, hint: &str) -> Name {
        if let Some((_, n)) = self.graphs.iter().find(|(h, _)| **h == **g) {
            return Name::new(n.clone());
        }
        if let Some(n) = self.known.and_then(|m| m.graphs.iter().find(|(_, h)| ***h == **g).map(|(n, _)| n.clone())) {
            self.graphs.push((g.clone(), n.clone()));
            return Name::new(n);
        }
        let name = self.fresh(Kind::Graph, hint);
        self.graphs.push((g.clone(), name.clone()));
        self.doc.decls.push(Decl::Graph { name: Name::new(name.clone()), body: graph_body(g) });
        Name::new(name)
    }

    pub fn morphism(&mut self, m: &GraphMorphism, hint: &str) -> Name {
        let dom = self.graph(m.dom(), &format!("{hint}_dom"));
        let cod = self.graph(m.cod(), &format!("{hint}_cod"));
        let name = Name::new(self.fresh(Kind::Morphism, hint));
        self.doc.decls.push(Decl::Morphism { name: name.clone(), dom, cod, map: assignments(m) });
        name
    }

    /// Declares the sketch and its context graph, which shares its name.
    pub fn sketch(&mut self, s: &Sketch, name: &str, footprint: Option<&str>) -> Name {
        let graph = self.graph(s.context(), name);
        let name = Name::new(self.fresh(Kind::Sketch, name));
        let statements = s.statements().iter().map(statement).collect();
        self.doc.decls.push(Decl::Sketch { name: name.clone(), footprint: footprint.map(Name::new), graph, statements });
        name
    }

    pub fn condition(&mut self, c: &Condition, name: &str) -> Name {
        let context = self.graph(c.context(), &format!("{name}_ctx"));
        let mut counter = 0;
        let expr = self.expr(c, name, &mut counter);
        let name = Name::new(self.fresh(Kind::Condition, name));
        self.doc.decls.push(Decl::Condition { name: name.clone(), context, expr });
        name
    }

    fn expr(&mut self, c: &Condition, hint: &str, counter: &mut usize) -> Expr {
        match c.node() {
            Node::Stmt(s) => Expr::Stmt(statement(s)),
            Node::True => Expr::True,
            Node::False => Expr::False,
            Node::And(cs) => Expr::And(cs.iter().map(|x| self.expr(x, hint, counter)).collect()),
            Node::Or(cs) => Expr::Or(cs.iter().map(|x| self.expr(x, hint, counter)).collect()),
            Node::Not(x) => Expr::Not(Box::new(self.expr(x, hint, counter))),
            Node::Exists(q) if q.shift.is_isomorphism() && q.shift.is_inclusion() => Expr::Implies(
                Box::new(self.expr(&q.guard, hint, counter)),
                Box::new(self.expr(&q.body, hint, counter)),
            ),
            Node::Exists(q) | Node::Forall(q) => {
                let kind = if matches!(c.node(), Node::Exists(_)) { QuantKind::Exists } else { QuantKind::Forall };
                let guard = (*q.guard.node() != Node::True).then(|| Box::new(self.expr(&q.guard, hint, counter)));
                let shift = if q.shift.is_inclusion() {
                    Shift::Extend(extension_body(q.shift.dom(), q.shift.cod()))
                } else {
                    *counter += 1;
                    Shift::Named(self.morphism(&q.shift, &format!("{hint}_m{counter}")))
                };
                let body = Box::new(self.expr(&q.body, hint, counter));
                Expr::Quant { kind, guard, shift, body }
            }
        }
    }
}
