//! Syntax trees of sketch documents. Names carry their source position,
//! which is ignored by equality so that reparsed documents compare equal.

use std::fmt;

use crate::lexer::Pos;

#[derive(Clone, Debug, Default)]
pub struct Name {
    pub text: String,
    pub pos: Pos,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Self { text: text.into(), pos: Pos::default() }
    }
}

impl PartialEq for Name {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for Name {}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: Name,
    pub src: Name,
    pub tgt: Name,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphBody {
    pub nodes: Vec<Name>,
    pub edges: Vec<EdgeDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphRef {
    Named(Name),
    Inline(GraphBody),
}

/// Element assignments `x -> y`. Entries outside a `nodes` or `edges`
/// section are resolved against the domain: edges first, then nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignments {
    pub nodes: Vec<(Name, Name)>,
    pub edges: Vec<(Name, Name)>,
    pub loose: Vec<(Name, Name)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub name: Name,
    pub arity: GraphRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StmtSyntax {
    pub predicate: Name,
    pub via: Assignments,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuantKind {
    Exists,
    Forall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shift {
    Named(Name),
    /// The inclusion into the current context extended by the given elements.
    Extend(GraphBody),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    True,
    False,
    Stmt(StmtSyntax),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Not(Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
    Quant { kind: QuantKind, guard: Option<Box<Expr>>, shift: Shift, body: Box<Expr> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnchorSyntax {
    Initial,
    Morphism(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismSyntax {
    Named(Name),
    /// Assignments between the contexts of the rule's two sketches.
    Inline(Assignments),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Graph { name: Name, body: GraphBody },
    Footprint { name: Name, predicates: Vec<Predicate> },
    Morphism { name: Name, dom: Name, cod: Name, map: Assignments },
    Sketch { name: Name, footprint: Option<Name>, graph: Name, statements: Vec<StmtSyntax> },
    Condition { name: Name, context: Name, expr: Expr },
    Constraint { name: Name, condition: Name, anchor: AnchorSyntax, on: Option<Name> },
    Rule { name: Name, morphism: MorphismSyntax, lhs: Name, rhs: Name },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Graph,
    Footprint,
    Morphism,
    Sketch,
    Condition,
    Constraint,
    Rule,
    Predicate,
    Node,
    Edge,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Graph => "graph",
            Kind::Footprint => "footprint",
            Kind::Morphism => "morphism",
            Kind::Sketch => "sketch",
            Kind::Condition => "condition",
            Kind::Constraint => "constraint",
            Kind::Rule => "rule",
            Kind::Predicate => "predicate",
            Kind::Node => "node",
            Kind::Edge => "edge",
        })
    }
}

impl Decl {
    pub fn name(&self) -> &Name {
        match self {
            Decl::Graph { name, .. }
            | Decl::Footprint { name, .. }
            | Decl::Morphism { name, .. }
            | Decl::Sketch { name, .. }
            | Decl::Condition { name, .. }
            | Decl::Constraint { name, .. }
            | Decl::Rule { name, .. } => name,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Decl::Graph { .. } => Kind::Graph,
            Decl::Footprint { .. } => Kind::Footprint,
            Decl::Morphism { .. } => Kind::Morphism,
            Decl::Sketch { .. } => Kind::Sketch,
            Decl::Condition { .. } => Kind::Condition,
            Decl::Constraint { .. } => Kind::Constraint,
            Decl::Rule { .. } => Kind::Rule,
        }
    }
}

/// Declarations in source order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub decls: Vec<Decl>,
}

impl Document {
    pub fn find(&self, kind: Kind, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.kind() == kind && d.name().text == name)
    }
}
