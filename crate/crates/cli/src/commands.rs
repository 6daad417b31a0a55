//! The subcommands of `dsketch`, run against in-memory inputs so they can
//! be tested without a process.

use std::path::{Path, PathBuf};

use dsketch_core::condition::{counterexamples, Node};
use dsketch_core::deduce::{repair_to_fixpoint, Rule};
use dsketch_core::sketch::{sketch_pullback, sketch_pushout};
use dsketch_core::translation::translate_condition;
use dsketch_core::{check_constraint, Sketch};

use crate::ast::{Decl, Name};
use crate::emit::{self, Emitter};
use crate::model::{Model, Source};
use crate::printer::print;
use crate::report::CheckReport;
use crate::script;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

/// What a command printed and how it ended.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { code: EXIT_OK, stdout, stderr: String::new() }
    }

    pub fn input_error(message: impl std::fmt::Display) -> Self {
        Self { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

/// Reads and parses every file.
pub fn read_sources(paths: &[PathBuf]) -> Result<Vec<Source>, String> {
    paths
        .iter()
        .map(|p| {
            let path = p.display().to_string();
            let text = std::fs::read_to_string(p).map_err(|e| format!("{path}: {e}"))?;
            let doc = crate::parser::parse(&text).map_err(|e| e.in_file(&path).to_string())?;
            Ok(Source { path, doc })
        })
        .collect()
}

pub fn load(paths: &[PathBuf]) -> Result<(Vec<Source>, Model), String> {
    let sources = read_sources(paths)?;
    let model = Model::resolve_sources(&sources).map_err(|e| e.to_string())?;
    Ok((sources, model))
}

macro_rules! load_or_exit {
    ($paths:expr) => {
        match load($paths) {
            Ok(loaded) => loaded,
            Err(e) => return Outcome::input_error(e),
        }
    };
}

/// `fmt`: every file in canonical form, one after the other.
pub fn fmt(paths: &[PathBuf]) -> Outcome {
    match read_sources(paths) {
        Ok(sources) => Outcome::ok(sources.iter().map(|s| print(&s.doc)).collect::<Vec<_>>().join("\n")),
        Err(e) => Outcome::input_error(e),
    }
}

pub struct CheckArgs<'a> {
    pub files: &'a [PathBuf],
    pub constraints: &'a [String],
    pub all: bool,
    pub sketch: Option<&'a str>,
    pub json: bool,
}

pub fn check(args: &CheckArgs<'_>) -> Outcome {
    let (_, model) = load_or_exit!(args.files);
    let names: Vec<String> = if args.all {
        model.constraints.keys().cloned().collect()
    } else if args.constraints.is_empty() {
        return Outcome::input_error("name constraints with --constraint or pass --all");
    } else {
        args.constraints.to_vec()
    };
    let mut reports = Vec::new();
    for name in &names {
        match check_one(&model, name, args.sketch) {
            Ok(r) => reports.push(r),
            Err(e) => return Outcome::input_error(e),
        }
    }
    let code = if reports.iter().all(|r| r.verdict.holds) { EXIT_OK } else { EXIT_VIOLATED };
    let stdout = if args.json {
        let arr: Vec<_> = reports.iter().map(CheckReport::to_json).collect();
        serde_json::to_string_pretty(&arr).expect("json values serialize") + "\n"
    } else {
        reports.iter().map(CheckReport::to_text).collect()
    };
    Outcome { code, stdout, stderr: String::new() }
}

pub fn check_one(model: &Model, name: &str, sketch: Option<&str>) -> Result<CheckReport, String> {
    let sketch_name = match sketch {
        Some(s) => s.to_string(),
        None => model.default_sketch_for(name)?,
    };
    let g = model.sketches.get(&sketch_name).ok_or_else(|| format!("unknown sketch `{sketch_name}`"))?;
    let k = model.constraint_on(name, g)?;
    let verdict = check_constraint(g, &k).map_err(|e| e.to_string())?;
    let all = if !verdict.holds && matches!(k.condition().node(), Node::Forall(_)) {
        counterexamples(g, &k).map_err(|e| e.to_string())?
    } else {
        Vec::new()
    };
    Ok(CheckReport { constraint: name.to_string(), sketch: sketch_name, anchor: k.anchor().clone(), verdict, counterexamples: all })
}

fn only_sketch(model: &Model, given: Option<&str>) -> Result<String, String> {
    if let Some(s) = given {
        return if model.sketches.contains_key(s) { Ok(s.to_string()) } else { Err(format!("unknown sketch `{s}`")) };
    }
    match model.sketches.keys().collect::<Vec<_>>().as_slice() {
        [one] => Ok((*one).clone()),
        _ => Err("several sketches are declared; choose one with --sketch".to_string()),
    }
}

fn footprint_of(model: &Model, sketch: &str) -> Option<String> {
    model.sketch_footprints.get(sketch).cloned()
}

pub struct RepairArgs<'a> {
    pub files: &'a [PathBuf],
    pub sketch: Option<&'a str>,
    pub rules: &'a [String],
    pub max_steps: usize,
    pub out: Option<&'a Path>,
    pub name: Option<&'a str>,
}

pub fn repair(args: &RepairArgs<'_>) -> Outcome {
    let (_, model) = load_or_exit!(args.files);
    let sketch_name = match only_sketch(&model, args.sketch) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    let mut rules: Vec<Rule> = Vec::new();
    for r in args.rules {
        match model.rules.get(r) {
            Some(rule) => rules.push(rule.clone()),
            None => return Outcome::input_error(format!("unknown rule `{r}`")),
        }
    }
    let g = &model.sketches[&sketch_name];
    let run = match repair_to_fixpoint(&rules, g, args.max_steps) {
        Ok(run) => run,
        Err(e) => return Outcome::input_error(e),
    };
    let mut trace = String::new();
    for (i, step) in run.trace.iter().enumerate() {
        trace.push_str(&format!("# step {}: rule {} at {}\n", i + 1, args.rules[step.rule], step.matched));
    }
    let code = if run.exhausted {
        trace.push_str(&format!("# stopped after {} steps with rules still applicable\n", run.trace.len()));
        EXIT_EXHAUSTED
    } else {
        trace.push_str(&format!("# fixpoint after {} steps\n", run.trace.len()));
        EXIT_OK
    };
    let out_name = args.name.map(str::to_string).unwrap_or_else(|| format!("{sketch_name}_repaired"));
    let mut e = Emitter::new(None);
    e.sketch(&run.sketch, &out_name, footprint_of(&model, &sketch_name).as_deref());
    let text = print(&e.into_document());
    let mut stdout = trace;
    match args.out {
        Some(path) => {
            if let Err(err) = std::fs::write(path, &text) {
                return Outcome::input_error(format!("{}: {err}", path.display()));
            }
        }
        None => stdout.push_str(&text),
    }
    Outcome { code, stdout, stderr: String::new() }
}

pub fn translate(files: &[PathBuf], condition: &str, along: &str, name: Option<&str>) -> Outcome {
    let (_, model) = load_or_exit!(files);
    let Some(c) = model.conditions.get(condition) else {
        return Outcome::input_error(format!("unknown condition `{condition}`"));
    };
    let Some(m) = model.morphisms.get(along) else {
        return Outcome::input_error(format!("unknown morphism `{along}`"));
    };
    match translate_condition(m, c) {
        Ok(moved) => {
            let mut e = Emitter::new(Some(&model));
            e.condition(&moved, name.unwrap_or(&format!("{condition}_along_{along}")));
            Outcome::ok(print(&e.into_document()))
        }
        Err(err) => Outcome::input_error(err),
    }
}

pub fn deduce(files: &[PathBuf], script_path: &Path) -> Outcome {
    let (_, model) = load_or_exit!(files);
    let text = match std::fs::read_to_string(script_path) {
        Ok(t) => t,
        Err(e) => return Outcome::input_error(format!("{}: {e}", script_path.display())),
    };
    let path = script_path.display().to_string();
    let steps = match script::parse_script(&text) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e.in_file(&path)),
    };
    let store = match script::run(&model, &steps) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(format!("{path}:{e}")),
    };
    let code = if store.entries.iter().all(|e| e.certified) { EXIT_OK } else { EXIT_VIOLATED };
    Outcome { code, stdout: dump_store(&model, &store), stderr: String::new() }
}

/// The store as a document: the working sketch, then one condition and
/// constraint per entry, each preceded by its status.
pub fn dump_store(model: &Model, store: &script::Store) -> String {
    let mut e = Emitter::new(Some(model));
    let sketch = e.sketch(&store.sketch, &store.sketch_name, footprint_of(model, &store.sketch_name).as_deref());
    let mut notes = Vec::new();
    for entry in &store.entries {
        let cond = e.condition(entry.constraint.condition(), &format!("{}_condition", entry.name));
        let anchor = if entry.constraint.anchor().dom().is_empty() {
            crate::ast::AnchorSyntax::Initial
        } else {
            crate::ast::AnchorSyntax::Morphism(e.morphism(entry.constraint.anchor(), &format!("{}_anchor", entry.name)))
        };
        e.doc.decls.push(Decl::Constraint {
            name: Name::new(entry.name.clone()),
            condition: cond,
            anchor,
            on: Some(sketch.clone()),
        });
        let status = match (entry.certified, entry.derived) {
            (true, true) => "derived, certified",
            (true, false) => "assumed, certified",
            (false, true) => "derived, NOT certified",
            (false, false) => "assumed, NOT certified",
        };
        notes.push((entry.name.clone(), status));
    }
    let mut out = String::new();
    for (name, status) in &notes {
        out.push_str(&format!("# {name}: {status}\n"));
    }
    out.push_str(&print(&e.into_document()));
    out
}

fn two_rules<'m>(model: &'m Model, names: &[String]) -> Result<(&'m Rule, &'m Rule), String> {
    let [a, b] = names else {
        return Err("expected exactly two rule names".to_string());
    };
    let get = |n: &String| model.rules.get(n).ok_or_else(|| format!("unknown rule `{n}`"));
    Ok((get(a)?, get(b)?))
}

fn emit_result(model: &Model, sketch: &Sketch, name: &str, footprint: Option<String>) -> String {
    let mut e = Emitter::new(Some(model));
    e.sketch(sketch, name, footprint.as_deref());
    print(&e.into_document())
}

/// Footprint shared by the named sketches, if they agree on one.
fn common_footprint(model: &Model, sketches: &[&Sketch]) -> Option<String> {
    let names: Vec<Option<String>> = sketches
        .iter()
        .map(|s| model.sketches.iter().find(|(_, t)| t == s).and_then(|(n, _)| footprint_of(model, n)))
        .collect();
    names.first().cloned().flatten().filter(|f| names.iter().all(|n| n.as_deref() == Some(f.as_str())))
}

pub fn pushout(files: &[PathBuf], span: &[String], name: &str) -> Outcome {
    let (_, model) = load_or_exit!(files);
    let (m, r) = match two_rules(&model, span) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    match sketch_pushout(&m.sketch_morphism(), &r.sketch_morphism()) {
        Ok(po) => {
            let fp = common_footprint(&model, &[m.rhs(), r.rhs()]);
            Outcome::ok(emit_result(&model, &po.sketch, name, fp))
        }
        Err(e) => Outcome::input_error(e),
    }
}

pub fn pullback(files: &[PathBuf], cospan: &[String], name: &str) -> Outcome {
    let (_, model) = load_or_exit!(files);
    let (m, r) = match two_rules(&model, cospan) {
        Ok(p) => p,
        Err(e) => return Outcome::input_error(e),
    };
    match sketch_pullback(&m.sketch_morphism(), &r.sketch_morphism()) {
        Ok(pb) => {
            let fp = common_footprint(&model, &[m.lhs(), r.lhs()]);
            Outcome::ok(emit_result(&model, &pb.sketch, name, fp))
        }
        Err(e) => Outcome::input_error(e),
    }
}

/// Statement-level summary used by tests and the `show` output of a
/// sketch: one line per statement.
pub fn statement_lines(s: &Sketch) -> Vec<String> {
    s.statements().iter().map(|st| crate::printer::statement(&emit::statement(st))).collect()
}

