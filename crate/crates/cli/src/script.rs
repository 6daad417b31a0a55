//! Deduction scripts: a sequence of proof steps over one working sketch.
//!
//! ```text
//! on G                              # working sketch; the store starts empty
//! assume k = phi6_G                 # a document constraint, checked on G
//! elim k1 = k along r               # universal elimination at extension r
//! mp k2 = k1 given k3               # modus ponens with the guard k3
//! skolem k4 = k2                    # materialize a witness; may extend G
//! intro k5 = k1, k2                 # conjunction introduction
//! split k6 = k5                     # conjunction elimination: k6_1, k6_2, ..
//! instance k7 = stmt monic via { e -> b } def phi7 along c
//! push along phi to H               # move the store along a sketch morphism
//! ```

use std::fmt;

use dsketch_core::deduce::{
    conj_elim, conj_intro, cstr_translate, modus_ponens, skolemize, statement_to_constraint, universal_elim,
};
use dsketch_core::{check_constraint, Constraint, Sketch, SketchMorphism};

use crate::ast::{Name, StmtSyntax};
use crate::error::DslError;
use crate::lexer::{Pos, Tok};
use crate::model::Model;
use crate::parser::Parser;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    On(Name),
    Assume { name: Name, constraint: Name },
    Elim { name: Name, from: Name, along: Name },
    ModusPonens { name: Name, from: Name, guard: Name },
    Skolem { name: Name, from: Name },
    Intro { name: Name, parts: Vec<Name> },
    Split { name: Name, from: Name },
    Instance { name: Name, stmt: StmtSyntax, def: Name, along: Name },
    Push { along: Name, to: Name },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ScriptError {}

impl From<DslError> for ScriptError {
    fn from(e: DslError) -> Self {
        ScriptError { pos: e.pos(), message: e.root().to_string() }
    }
}

pub fn parse_script(src: &str) -> Result<Vec<Step>, DslError> {
    let mut p = Parser::new(src)?;
    let mut steps = Vec::new();
    loop {
        while p.eat(&Tok::Semi) {}
        if p.at_eof() {
            return Ok(steps);
        }
        steps.push(step(&mut p)?);
    }
}

fn defines(p: &mut Parser) -> Result<Name, DslError> {
    let name = p.name()?;
    p.expect(&Tok::Eq)?;
    Ok(name)
}

fn step(p: &mut Parser) -> Result<Step, DslError> {
    if p.eat_keyword("on") {
        Ok(Step::On(p.name()?))
    } else if p.eat_keyword("assume") {
        let name = defines(p)?;
        Ok(Step::Assume { name, constraint: p.name()? })
    } else if p.eat_keyword("elim") {
        let name = defines(p)?;
        let from = p.name()?;
        p.keyword("along")?;
        Ok(Step::Elim { name, from, along: p.name()? })
    } else if p.eat_keyword("mp") {
        let name = defines(p)?;
        let from = p.name()?;
        p.keyword("given")?;
        Ok(Step::ModusPonens { name, from, guard: p.name()? })
    } else if p.eat_keyword("skolem") {
        let name = defines(p)?;
        Ok(Step::Skolem { name, from: p.name()? })
    } else if p.eat_keyword("intro") {
        let name = defines(p)?;
        let mut parts = vec![p.name()?];
        while p.eat(&Tok::Comma) {
            parts.push(p.name()?);
        }
        Ok(Step::Intro { name, parts })
    } else if p.eat_keyword("split") {
        let name = defines(p)?;
        Ok(Step::Split { name, from: p.name()? })
    } else if p.eat_keyword("instance") {
        let name = defines(p)?;
        let stmt = p.statement()?;
        p.keyword("def")?;
        let def = p.name()?;
        p.keyword("along")?;
        Ok(Step::Instance { name, stmt, def, along: p.name()? })
    } else if p.eat_keyword("push") {
        p.keyword("along")?;
        let along = p.name()?;
        p.keyword("to")?;
        Ok(Step::Push { along, to: p.name()? })
    } else {
        Err(p.error())
    }
}

/// A stored constraint and whether the working sketch satisfies it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub constraint: Constraint,
    pub certified: bool,
    /// Produced by a deduction step rather than assumed.
    pub derived: bool,
    /// Every premise of the step was certified when it ran.
    pub premises_certified: bool,
}

#[derive(Clone, Debug)]
pub struct Store {
    pub sketch_name: String,
    pub sketch: Sketch,
    pub entries: Vec<Entry>,
}

impl Store {
    pub fn get(&self, name: &Name) -> Result<&Entry, ScriptError> {
        self.entries
            .iter()
            .find(|e| e.name == name.text)
            .ok_or_else(|| err(name, format!("no constraint `{name}` in the store")))
    }

    fn add(&mut self, name: &Name, constraint: Constraint, premises: Option<bool>) -> Result<(), ScriptError> {
        if self.entries.iter().any(|e| e.name == name.text) {
            return Err(err(name, format!("`{name}` is already in the store")));
        }
        let certified = check_constraint(&self.sketch, &constraint).map_err(|e| err(name, e))?.holds;
        let (derived, premises_certified) = (premises.is_some(), premises.unwrap_or(true));
        self.entries.push(Entry { name: name.text.clone(), constraint, certified, derived, premises_certified });
        Ok(())
    }

    /// Derived constraints whose premises were all certified but which are
    /// not certified themselves.
    pub fn unsound(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.derived && e.premises_certified && !e.certified)
    }

    fn certified(&self, names: &[&Name]) -> Result<bool, ScriptError> {
        names.iter().try_fold(true, |acc, n| Ok(acc && self.get(n)?.certified))
    }
}

fn err(at: &Name, message: impl ToString) -> ScriptError {
    ScriptError { pos: at.pos, message: message.to_string() }
}

fn core<T>(at: &Name, r: dsketch_core::Result<T>) -> Result<T, ScriptError> {
    r.map_err(|e| err(at, e))
}

pub fn run(model: &Model, steps: &[Step]) -> Result<Store, ScriptError> {
    let Some(Step::On(first)) = steps.first() else {
        return Err(ScriptError { pos: Pos::default(), message: "a script starts with `on SKETCH`".into() });
    };
    let sketch = model.sketches.get(&first.text).ok_or_else(|| err(first, format!("unknown sketch `{first}`")))?;
    let mut store = Store { sketch_name: first.text.clone(), sketch: sketch.clone(), entries: Vec::new() };
    for s in &steps[1..] {
        apply(model, &mut store, s)?;
    }
    Ok(store)
}

fn morphism<'m>(model: &'m Model, name: &Name) -> Result<&'m dsketch_core::GraphMorphism, ScriptError> {
    model.morphisms.get(&name.text).ok_or_else(|| err(name, format!("unknown morphism `{name}`")))
}

fn apply(model: &Model, store: &mut Store, step: &Step) -> Result<(), ScriptError> {
    match step {
        Step::On(name) => Err(err(name, "`on` may only start a script")),
        Step::Assume { name, constraint } => {
            let k = model.constraint_on(&constraint.text, &store.sketch).map_err(|e| err(constraint, e))?;
            store.add(name, k, None)
        }
        Step::Elim { name, from, along } => {
            let k = core(name, universal_elim(&store.get(from)?.constraint, morphism(model, along)?))?;
            let premises = store.certified(&[from])?;
            store.add(name, k, Some(premises))
        }
        Step::ModusPonens { name, from, guard } => {
            let (k, g) = (store.get(from)?.constraint.clone(), store.get(guard)?.constraint.clone());
            let derived = core(name, modus_ponens(&store.sketch, &k, &g))?;
            let premises = store.certified(&[from, guard])?;
            store.add(name, derived, Some(premises))
        }
        Step::Skolem { name, from } => {
            let sk = core(name, skolemize(&store.get(from)?.constraint, &store.sketch))?;
            let premises = store.certified(&[from])?;
            let phi = core(name, SketchMorphism::new(store.sketch.clone(), sk.sketch.clone(), sk.along.clone()))?;
            move_store(store, &phi, name)?;
            store.add(name, sk.constraint, Some(premises))
        }
        Step::Intro { name, parts } => {
            let ks = parts.iter().map(|p| store.get(p).map(|e| e.constraint.clone())).collect::<Result<Vec<_>, _>>()?;
            let anchor = ks[0].anchor().clone();
            let k = core(name, conj_intro(&anchor, &ks))?;
            let premises = store.certified(&parts.iter().collect::<Vec<_>>())?;
            store.add(name, k, Some(premises))
        }
        Step::Split { name, from } => {
            let parts = core(name, conj_elim(&store.get(from)?.constraint))?;
            let premises = store.certified(&[from])?;
            for (i, k) in parts.into_iter().enumerate() {
                let part = Name { text: format!("{}_{}", name.text, i + 1), pos: name.pos };
                store.add(&part, k, Some(premises))?;
            }
            Ok(())
        }
        Step::Instance { name, stmt, def, along } => {
            let s = model.statement(store.sketch.context(), stmt, None)?;
            let d = model.conditions.get(&def.text).ok_or_else(|| err(def, format!("unknown condition `{def}`")))?;
            let c = morphism(model, along)?;
            let k = core(name, statement_to_constraint(&store.sketch, &s, d, c))?;
            let premises = definition_respected(&store.sketch, s.predicate(), d, c).map_err(|e| err(name, e))?;
            store.add(name, k, Some(premises))
        }
        Step::Push { along, to } => {
            let target = model.sketches.get(&to.text).ok_or_else(|| err(to, format!("unknown sketch `{to}`")))?;
            let phi = core(along, SketchMorphism::new(store.sketch.clone(), target.clone(), morphism(model, along)?.clone()))?;
            move_store(store, &phi, along)?;
            store.sketch_name = to.text.clone();
            Ok(())
        }
    }
}

/// The premise of statement instantiation: the definition holds at every
/// declared statement of the predicate.
pub fn definition_respected(
    g: &Sketch,
    p: &dsketch_core::PredicateSymbol,
    def: &dsketch_core::Condition,
    c: &dsketch_core::GraphMorphism,
) -> dsketch_core::Result<bool> {
    for s in g.statements().iter().filter(|s| s.predicate() == p) {
        if !check_constraint(g, &statement_to_constraint(g, s, def, c)?)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Translates every stored constraint along `phi` and rechecks it on the
/// new working sketch.
fn move_store(store: &mut Store, phi: &SketchMorphism, at: &Name) -> Result<(), ScriptError> {
    store.sketch = phi.cod().clone();
    for e in &mut store.entries {
        e.constraint = core(at, cstr_translate(phi, &e.constraint))?;
        e.certified = core(at, check_constraint(&store.sketch, &e.constraint))?.holds;
    }
    Ok(())
}
