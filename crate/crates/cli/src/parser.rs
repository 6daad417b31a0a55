//! Recursive-descent parser for sketch documents.

use std::collections::BTreeSet;

use crate::ast::*;
use crate::error::DslError;
use crate::lexer::{tokenize, Tok, Token};

pub const KEYWORDS: &[&str] = &[
    "graph", "footprint", "morphism", "sketch", "condition", "constraint", "rule", "nodes", "edges", "pred",
    "arity", "over", "on", "stmt", "via", "true", "false", "and", "or", "not", "implies", "exists", "forall",
    "given", "extend", "initial", "from", "to",
];

pub fn parse(src: &str) -> Result<Document, DslError> {
    Parser::new(src)?.document()
}

/// Parses a single condition expression.
pub fn parse_expr(src: &str) -> Result<Expr, DslError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.expect(&Tok::Eof)?;
    Ok(e)
}

pub(crate) struct Parser {
    tokens: Vec<Token>,
    at: usize,
    /// Tokens that would have been accepted at the current position.
    expected: BTreeSet<String>,
}

type PResult<T> = Result<T, DslError>;

impl Parser {
    pub(crate) fn new(src: &str) -> PResult<Self> {
        let tokens = tokenize(src).map_err(|e| DslError::Lex { pos: e.pos, message: e.message })?;
        Ok(Parser { tokens, at: 0, expected: BTreeSet::new() })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        self.expected.clear();
        t
    }

    pub(crate) fn at_eof(&mut self) -> bool {
        self.check(&Tok::Eof)
    }

    fn check(&mut self, tok: &Tok) -> bool {
        if self.peek().tok == *tok {
            return true;
        }
        self.expected.insert(describe_expected(tok));
        false
    }

    pub(crate) fn eat(&mut self, tok: &Tok) -> bool {
        let hit = self.check(tok);
        if hit {
            self.advance();
        }
        hit
    }

    pub(crate) fn expect(&mut self, tok: &Tok) -> PResult<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    pub(crate) fn check_keyword(&mut self, kw: &str) -> bool {
        if matches!(&self.peek().tok, Tok::Word { text, quoted: false } if text == kw) {
            return true;
        }
        self.expected.insert(format!("`{kw}`"));
        false
    }

    pub(crate) fn eat_keyword(&mut self, kw: &str) -> bool {
        let hit = self.check_keyword(kw);
        if hit {
            self.advance();
        }
        hit
    }

    pub(crate) fn keyword(&mut self, kw: &str) -> PResult<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.error())
        }
    }

    fn check_name(&mut self) -> bool {
        let ok = match &self.peek().tok {
            Tok::Word { quoted: true, .. } => true,
            Tok::Word { text, quoted: false } => !KEYWORDS.contains(&text.as_str()),
            _ => false,
        };
        if !ok {
            self.expected.insert("a name".to_string());
        }
        ok
    }

    pub(crate) fn name(&mut self) -> PResult<Name> {
        if !self.check_name() {
            return Err(self.error());
        }
        let t = self.advance();
        let Tok::Word { text, .. } = t.tok else { unreachable!("checked above") };
        Ok(Name { text, pos: t.pos })
    }

    pub(crate) fn error(&self) -> DslError {
        let t = self.peek();
        DslError::Syntax { pos: t.pos, found: t.tok.describe(), expected: self.expected.iter().cloned().collect() }
    }

    fn document(mut self) -> PResult<Document> {
        let mut decls = Vec::new();
        loop {
            while self.eat(&Tok::Semi) {}
            if self.at_eof() {
                return Ok(Document { decls });
            }
            decls.push(self.decl()?);
        }
    }

    fn decl(&mut self) -> PResult<Decl> {
        if self.eat_keyword("graph") {
            let name = self.name()?;
            let body = self.graph_body()?;
            Ok(Decl::Graph { name, body })
        } else if self.eat_keyword("footprint") {
            self.footprint()
        } else if self.eat_keyword("morphism") {
            let name = self.name()?;
            self.expect(&Tok::Colon)?;
            let dom = self.name()?;
            self.expect(&Tok::Arrow)?;
            let cod = self.name()?;
            let map = self.assignments()?;
            Ok(Decl::Morphism { name, dom, cod, map })
        } else if self.eat_keyword("sketch") {
            self.sketch()
        } else if self.eat_keyword("condition") {
            let name = self.name()?;
            self.keyword("over")?;
            let context = self.name()?;
            self.expect(&Tok::Eq)?;
            let expr = self.expr()?;
            Ok(Decl::Condition { name, context, expr })
        } else if self.eat_keyword("constraint") {
            self.constraint()
        } else if self.eat_keyword("rule") {
            self.rule()
        } else {
            Err(self.error())
        }
    }

    pub(crate) fn graph_body(&mut self) -> PResult<GraphBody> {
        self.expect(&Tok::LBrace)?;
        let mut body = GraphBody::default();
        loop {
            if self.eat_keyword("nodes") {
                while self.check_name() {
                    body.nodes.push(self.name()?);
                    self.eat(&Tok::Comma);
                }
            } else if self.eat_keyword("edges") {
                while self.check_name() {
                    let name = self.name()?;
                    self.expect(&Tok::Colon)?;
                    let src = self.name()?;
                    self.expect(&Tok::Arrow)?;
                    let tgt = self.name()?;
                    body.edges.push(EdgeDecl { name, src, tgt });
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
            } else {
                self.expect(&Tok::RBrace)?;
                return Ok(body);
            }
            self.eat(&Tok::Semi);
        }
    }

    pub(crate) fn assignments(&mut self) -> PResult<Assignments> {
        self.expect(&Tok::LBrace)?;
        let mut map = Assignments::default();
        loop {
            let section = if self.eat_keyword("nodes") {
                &mut map.nodes
            } else if self.eat_keyword("edges") {
                &mut map.edges
            } else if self.check_name() {
                &mut map.loose
            } else {
                self.expect(&Tok::RBrace)?;
                return Ok(map);
            };
            while self.check_name() {
                let x = self.name()?;
                self.expect(&Tok::Arrow)?;
                let y = self.name()?;
                section.push((x, y));
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.eat(&Tok::Semi);
        }
    }

    fn footprint(&mut self) -> PResult<Decl> {
        let name = self.name()?;
        self.expect(&Tok::LBrace)?;
        let mut predicates = Vec::new();
        while self.eat_keyword("pred") {
            let pname = self.name()?;
            self.keyword("arity")?;
            let arity = if self.check(&Tok::LBrace) {
                GraphRef::Inline(self.graph_body()?)
            } else {
                GraphRef::Named(self.name()?)
            };
            predicates.push(Predicate { name: pname, arity });
            self.eat(&Tok::Semi);
        }
        self.expect(&Tok::RBrace)?;
        Ok(Decl::Footprint { name, predicates })
    }

    fn sketch(&mut self) -> PResult<Decl> {
        let name = self.name()?;
        let footprint = if self.eat_keyword("over") { Some(self.name()?) } else { None };
        self.keyword("on")?;
        let graph = self.name()?;
        self.expect(&Tok::LBrace)?;
        let mut statements = Vec::new();
        while self.check_keyword("stmt") {
            statements.push(self.statement()?);
            self.eat(&Tok::Semi);
        }
        self.expect(&Tok::RBrace)?;
        Ok(Decl::Sketch { name, footprint, graph, statements })
    }

    pub(crate) fn statement(&mut self) -> PResult<StmtSyntax> {
        self.keyword("stmt")?;
        let predicate = self.name()?;
        self.keyword("via")?;
        let via = self.assignments()?;
        Ok(StmtSyntax { predicate, via })
    }

    fn constraint(&mut self) -> PResult<Decl> {
        let name = self.name()?;
        self.expect(&Tok::Eq)?;
        self.expect(&Tok::LParen)?;
        let condition = self.name()?;
        self.expect(&Tok::Comma)?;
        let anchor = if self.eat_keyword("initial") { AnchorSyntax::Initial } else { AnchorSyntax::Morphism(self.name()?) };
        self.expect(&Tok::RParen)?;
        let on = if self.eat_keyword("on") { Some(self.name()?) } else { None };
        Ok(Decl::Constraint { name, condition, anchor, on })
    }

    fn rule(&mut self) -> PResult<Decl> {
        let name = self.name()?;
        self.expect(&Tok::Eq)?;
        self.keyword("morphism")?;
        let morphism = if self.check(&Tok::LBrace) {
            MorphismSyntax::Inline(self.assignments()?)
        } else {
            MorphismSyntax::Named(self.name()?)
        };
        self.keyword("from")?;
        let lhs = self.name()?;
        self.keyword("to")?;
        let rhs = self.name()?;
        Ok(Decl::Rule { name, morphism, lhs, rhs })
    }

    pub(crate) fn expr(&mut self) -> PResult<Expr> {
        if self.eat_keyword("true") {
            Ok(Expr::True)
        } else if self.eat_keyword("false") {
            Ok(Expr::False)
        } else if self.check_keyword("stmt") {
            Ok(Expr::Stmt(self.statement()?))
        } else if self.eat_keyword("and") {
            Ok(Expr::And(self.expr_list()?))
        } else if self.eat_keyword("or") {
            Ok(Expr::Or(self.expr_list()?))
        } else if self.eat_keyword("not") {
            Ok(Expr::Not(Box::new(self.expr()?)))
        } else if self.eat_keyword("implies") {
            self.expect(&Tok::LParen)?;
            let l = self.expr()?;
            self.expect(&Tok::Comma)?;
            let r = self.expr()?;
            self.expect(&Tok::RParen)?;
            Ok(Expr::Implies(Box::new(l), Box::new(r)))
        } else if self.eat_keyword("exists") {
            self.quantifier(QuantKind::Exists)
        } else if self.eat_keyword("forall") {
            self.quantifier(QuantKind::Forall)
        } else {
            Err(self.error())
        }
    }

    fn expr_list(&mut self) -> PResult<Vec<Expr>> {
        self.expect(&Tok::LParen)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if self.eat(&Tok::RParen) {
                return Ok(out);
            }
            self.expect(&Tok::Comma)?;
        }
    }

    fn quantifier(&mut self, kind: QuantKind) -> PResult<Expr> {
        let guard = if self.eat_keyword("given") { Some(Box::new(self.expr()?)) } else { None };
        let shift = if self.eat_keyword("extend") { Shift::Extend(self.graph_body()?) } else { Shift::Named(self.name()?) };
        self.expect(&Tok::Dot)?;
        let body = Box::new(self.expr()?);
        Ok(Expr::Quant { kind, guard, shift, body })
    }
}

fn describe_expected(tok: &Tok) -> String {
    match tok {
        Tok::Eof => "end of input".to_string(),
        t => t.describe(),
    }
}
