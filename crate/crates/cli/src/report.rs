//! Verdict reports, as text tables and as JSON.

use dsketch_core::condition::Evidence;
use dsketch_core::{GraphMorphism, Verdict};
use serde_json::{json, Map, Value};

/// `{"nodes": {..}, "edges": {..}}` with every assignment spelled out.
pub fn morphism_json(m: &GraphMorphism) -> Value {
    let nodes: Map<String, Value> = m.node_pairs().map(|(a, b)| (a.to_string(), Value::from(b))).collect();
    let edges: Map<String, Value> = m.edge_pairs().map(|(a, b)| (a.to_string(), Value::from(b))).collect();
    json!({ "nodes": nodes, "edges": edges })
}

/// One `x -> y` line per edge, then per node no edge forces.
pub fn morphism_table(m: &GraphMorphism, indent: &str) -> String {
    let mut out = String::new();
    for (a, b) in m.edge_pairs() {
        out.push_str(&format!("{indent}{a} -> {b}\n"));
    }
    for (a, b) in m.unforced_nodes() {
        out.push_str(&format!("{indent}{a} -> {b}\n"));
    }
    out
}

/// The first extension of the wanted kind along the evidence tree.
fn find(e: &Evidence, witness: bool) -> Option<&GraphMorphism> {
    match e {
        Evidence::Witness { extension, .. } if witness => Some(extension),
        Evidence::Counterexample { extension, .. } if !witness => Some(extension),
        Evidence::Branch { inner: Some(inner), .. } => find(inner, witness),
        _ => None,
    }
}

pub fn witness(v: &Verdict) -> Option<&GraphMorphism> {
    v.evidence.as_ref().filter(|_| v.holds).and_then(|e| find(e, true))
}

pub fn counterexample(v: &Verdict) -> Option<&GraphMorphism> {
    v.evidence.as_ref().filter(|_| !v.holds).and_then(|e| find(e, false))
}

/// The outcome of checking one named constraint.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub constraint: String,
    pub sketch: String,
    pub anchor: GraphMorphism,
    pub verdict: Verdict,
    /// Every counterexample of a failing universal constraint.
    pub counterexamples: Vec<GraphMorphism>,
}

impl CheckReport {
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("constraint".into(), Value::from(self.constraint.clone()));
        obj.insert("sketch".into(), Value::from(self.sketch.clone()));
        obj.insert("holds".into(), Value::from(self.verdict.holds));
        obj.insert("anchor".into(), morphism_json(&self.anchor));
        if let Some(w) = witness(&self.verdict) {
            obj.insert("witness".into(), morphism_json(w));
        }
        if let Some(c) = counterexample(&self.verdict) {
            obj.insert("counterexample".into(), morphism_json(c));
        }
        Value::Object(obj)
    }

    pub fn to_text(&self) -> String {
        let status = if self.verdict.holds { "holds" } else { "fails" };
        let mut out = format!("{} on {}: {status}\n", self.constraint, self.sketch);
        if let Some(w) = witness(&self.verdict) {
            out.push_str("  witness:\n");
            out.push_str(&morphism_table(w, "    "));
        }
        if self.counterexamples.is_empty() {
            if let Some(c) = counterexample(&self.verdict) {
                out.push_str("  counterexample:\n");
                out.push_str(&morphism_table(c, "    "));
            }
        }
        for (i, c) in self.counterexamples.iter().enumerate() {
            out.push_str(&format!("  counterexample {}:\n", i + 1));
            out.push_str(&morphism_table(c, "    "));
        }
        out
    }
}
