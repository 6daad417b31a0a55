//! Canonical text form of sketch documents.

use std::fmt::Write;

use crate::ast::*;
use crate::lexer::is_word_char;
use crate::parser::KEYWORDS;

const WIDTH: usize = 88;

/// A name as it must be written: bare when possible, quoted otherwise.
pub fn name_text(text: &str) -> String {
    let bare = !text.is_empty() && text.chars().all(is_word_char) && !KEYWORDS.contains(&text);
    if bare {
        text.to_string()
    } else {
        format!("{text:?}")
    }
}

fn n(name: &Name) -> String {
    name_text(&name.text)
}

pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for (i, d) in doc.decls.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&print_decl(d));
        out.push('\n');
    }
    out
}

pub fn print_decl(d: &Decl) -> String {
    match d {
        Decl::Graph { name, body } => {
            let line = format!("graph {} {}", n(name), graph_body(body));
            if line.len() <= WIDTH {
                return line;
            }
            let mut s = format!("graph {} {{\n", n(name));
            if !body.nodes.is_empty() {
                let _ = writeln!(s, "  nodes {};", body.nodes.iter().map(n).collect::<Vec<_>>().join(" "));
            }
            if !body.edges.is_empty() {
                let _ = writeln!(s, "  edges {};", edge_list(&body.edges));
            }
            s.push('}');
            s
        }
        Decl::Footprint { name, predicates } => {
            let mut s = format!("footprint {} {{\n", n(name));
            for p in predicates {
                let arity = match &p.arity {
                    GraphRef::Named(g) => n(g),
                    GraphRef::Inline(b) => graph_body(b),
                };
                let _ = writeln!(s, "  pred {} arity {};", n(&p.name), arity);
            }
            s.push('}');
            s
        }
        Decl::Morphism { name, dom, cod, map } => {
            format!("morphism {} : {} -> {} {}", n(name), n(dom), n(cod), assignments(map))
        }
        Decl::Sketch { name, footprint, graph, statements } => {
            let mut s = format!("sketch {}", n(name));
            if let Some(fp) = footprint {
                let _ = write!(s, " over {}", n(fp));
            }
            let _ = write!(s, " on {} {{", n(graph));
            if statements.is_empty() {
                s.push_str(" }");
                return s;
            }
            s.push('\n');
            for st in statements {
                let _ = writeln!(s, "  {};", statement(st));
            }
            s.push('}');
            s
        }
        Decl::Condition { name, context, expr } => {
            let head = format!("condition {} over {} =", n(name), n(context));
            let inline = expr_inline(expr);
            if head.len() + 1 + inline.len() <= WIDTH {
                format!("{head} {inline}")
            } else {
                format!("{head}\n{}", expr_block(expr, 1))
            }
        }
        Decl::Constraint { name, condition, anchor, on } => {
            let anchor = match anchor {
                AnchorSyntax::Initial => "initial".to_string(),
                AnchorSyntax::Morphism(m) => n(m),
            };
            let mut s = format!("constraint {} = ({}, {})", n(name), n(condition), anchor);
            if let Some(sk) = on {
                let _ = write!(s, " on {}", n(sk));
            }
            s
        }
        Decl::Rule { name, morphism, lhs, rhs } => {
            let m = match morphism {
                MorphismSyntax::Named(m) => n(m),
                MorphismSyntax::Inline(a) => assignments(a),
            };
            format!("rule {} = morphism {} from {} to {}", n(name), m, n(lhs), n(rhs))
        }
    }
}

pub fn graph_body(b: &GraphBody) -> String {
    let mut parts = Vec::new();
    if !b.nodes.is_empty() {
        parts.push(format!("nodes {};", b.nodes.iter().map(n).collect::<Vec<_>>().join(" ")));
    }
    if !b.edges.is_empty() {
        parts.push(format!("edges {};", edge_list(&b.edges)));
    }
    if parts.is_empty() {
        "{ }".to_string()
    } else {
        format!("{{ {} }}", parts.join(" "))
    }
}

fn edge_list(edges: &[EdgeDecl]) -> String {
    edges.iter().map(|e| format!("{}: {} -> {}", n(&e.name), n(&e.src), n(&e.tgt))).collect::<Vec<_>>().join(", ")
}

fn pairs(ps: &[(Name, Name)]) -> String {
    ps.iter().map(|(x, y)| format!("{} -> {}", n(x), n(y))).collect::<Vec<_>>().join(", ")
}

pub fn assignments(a: &Assignments) -> String {
    let mut parts = Vec::new();
    if !a.loose.is_empty() {
        parts.push(pairs(&a.loose));
    }
    if !a.nodes.is_empty() {
        parts.push(format!("nodes {}", pairs(&a.nodes)));
    }
    if !a.edges.is_empty() {
        parts.push(format!("edges {}", pairs(&a.edges)));
    }
    if parts.is_empty() {
        "{ }".to_string()
    } else {
        format!("{{ {} }}", parts.join("; "))
    }
}

pub fn statement(s: &StmtSyntax) -> String {
    format!("stmt {} via {}", n(&s.predicate), assignments(&s.via))
}

fn quant_head(kind: QuantKind, shift: &Shift) -> (&'static str, String) {
    let kw = match kind {
        QuantKind::Exists => "exists",
        QuantKind::Forall => "forall",
    };
    let shift = match shift {
        Shift::Named(m) => n(m),
        Shift::Extend(b) => format!("extend {}", graph_body(b)),
    };
    (kw, shift)
}

pub fn expr_inline(e: &Expr) -> String {
    match e {
        Expr::True => "true".to_string(),
        Expr::False => "false".to_string(),
        Expr::Stmt(s) => statement(s),
        Expr::And(cs) => format!("and({})", cs.iter().map(expr_inline).collect::<Vec<_>>().join(", ")),
        Expr::Or(cs) => format!("or({})", cs.iter().map(expr_inline).collect::<Vec<_>>().join(", ")),
        Expr::Not(c) => format!("not {}", expr_inline(c)),
        Expr::Implies(l, r) => format!("implies({}, {})", expr_inline(l), expr_inline(r)),
        Expr::Quant { kind, guard, shift, body } => {
            let (kw, shift) = quant_head(*kind, shift);
            match guard {
                Some(g) => format!("{kw} given {} {shift} . {}", expr_inline(g), expr_inline(body)),
                None => format!("{kw} {shift} . {}", expr_inline(body)),
            }
        }
    }
}

/// Multi-line layout at the given indentation depth; short subterms stay
/// on one line.
pub fn expr_block(e: &Expr, depth: usize) -> String {
    let pad = "  ".repeat(depth);
    let inline = expr_inline(e);
    if pad.len() + inline.len() <= WIDTH {
        return format!("{pad}{inline}");
    }
    match e {
        Expr::And(cs) | Expr::Or(cs) => {
            let kw = if matches!(e, Expr::And(_)) { "and" } else { "or" };
            let inner: Vec<String> = cs.iter().map(|c| expr_block(c, depth + 1)).collect();
            format!("{pad}{kw}(\n{}\n{pad})", inner.join(",\n"))
        }
        Expr::Implies(l, r) => {
            format!("{pad}implies(\n{},\n{}\n{pad})", expr_block(l, depth + 1), expr_block(r, depth + 1))
        }
        Expr::Not(c) => format!("{pad}not\n{}", expr_block(c, depth + 1)),
        Expr::Quant { kind, guard, shift, body } => {
            let (kw, shift) = quant_head(*kind, shift);
            let head = match guard {
                Some(g) => {
                    let gi = expr_inline(g);
                    if pad.len() + kw.len() + gi.len() + shift.len() + 10 <= WIDTH {
                        format!("{pad}{kw} given {gi} {shift} .")
                    } else {
                        format!("{pad}{kw} given\n{}\n{pad}  {shift} .", expr_block(g, depth + 2))
                    }
                }
                None => format!("{pad}{kw} {shift} ."),
            };
            format!("{head}\n{}", expr_block(body, depth + 1))
        }
        Expr::True | Expr::False | Expr::Stmt(_) => format!("{pad}{inline}"),
    }
}
