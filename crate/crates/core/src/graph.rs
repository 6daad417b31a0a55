//! Finite directed multigraphs, graph morphisms and morphism enumeration.
//!
//! Graphs are immutable values. Node and edge names live in separate
//! namespaces and are kept in lexicographic order, so an index into a graph
//! is also a rank in the canonical name order. Morphisms store their maps as
//! index vectors; comparing two morphisms with the same codomain therefore
//! compares their assignments lexicographically by name.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::ControlFlow;

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Edge {
    name: String,
    src: usize,
    tgt: usize,
}

/// A finite directed multigraph with named nodes and edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Graph {
    nodes: Vec<String>,
    edges: Vec<Edge>,
}

/// An unchecked graph description, as written by a user.
///
/// [`validate_graph`] reports everything that prevents it from being a
/// [`Graph`]; [`RawGraph::build`] turns it into one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawGraph {
    pub nodes: Vec<String>,
    /// `(name, source, target)` triples.
    pub edges: Vec<(String, String, String)>,
}

/// A reason why a [`RawGraph`] is not a graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    DuplicateNode(String),
    DuplicateEdge(String),
    DanglingSource { edge: String, node: String },
    DanglingTarget { edge: String, node: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateNode(n) => write!(f, "node `{n}` declared twice"),
            Violation::DuplicateEdge(e) => write!(f, "edge `{e}` declared twice"),
            Violation::DanglingSource { edge, node } => {
                write!(f, "source `{node}` of edge `{edge}` is not a node")
            }
            Violation::DanglingTarget { edge, node } => {
                write!(f, "target `{node}` of edge `{edge}` is not a node")
            }
        }
    }
}

impl RawGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(mut self, name: impl Into<String>) -> Self {
        self.nodes.push(name.into());
        self
    }

    pub fn edge(
        mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Self {
        self.edges.push((name.into(), src.into(), tgt.into()));
        self
    }

    pub fn build(&self) -> Result<Graph> {
        let violations = validate_graph(self);
        if !violations.is_empty() {
            return Err(Error::InvalidGraph(violations));
        }
        let mut nodes = self.nodes.clone();
        nodes.sort();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|(e, s, t)| Edge {
                name: e.clone(),
                src: nodes.binary_search(s).unwrap_or_default(),
                tgt: nodes.binary_search(t).unwrap_or_default(),
            })
            .collect();
        edges.sort();
        Ok(Graph { nodes, edges })
    }
}

/// Lists every dangling endpoint and duplicate name of `raw`.
///
/// The result is empty exactly when `raw` describes a graph.
pub fn validate_graph(raw: &RawGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut seen = BTreeMap::new();
    for n in &raw.nodes {
        if seen.insert(n.as_str(), ()).is_some() {
            out.push(Violation::DuplicateNode(n.clone()));
        }
    }
    let mut seen_edges = BTreeMap::new();
    for (e, s, t) in &raw.edges {
        if seen_edges.insert(e.as_str(), ()).is_some() {
            out.push(Violation::DuplicateEdge(e.clone()));
        }
        if !seen.contains_key(s.as_str()) {
            out.push(Violation::DanglingSource { edge: e.clone(), node: s.clone() });
        }
        if !seen.contains_key(t.as_str()) {
            out.push(Violation::DanglingTarget { edge: e.clone(), node: t.clone() });
        }
    }
    out
}

impl Graph {
    /// The empty graph, initial in the category of graphs.
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a graph from node names and `(edge, source, target)` triples.
    pub fn from_parts(nodes: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self> {
        RawGraph {
            nodes: nodes.iter().map(|n| n.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(e, s, t)| (e.to_string(), s.to_string(), t.to_string()))
                .collect(),
        }
        .build()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty() && self.edges.is_empty()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_name(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn edge_name(&self, i: usize) -> &str {
        &self.edges[i].name
    }

    /// Index of the source node of edge `i`.
    pub fn src(&self, i: usize) -> usize {
        self.edges[i].src
    }

    /// Index of the target node of edge `i`.
    pub fn tgt(&self, i: usize) -> usize {
        self.edges[i].tgt
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.name.as_str().cmp(name)).ok()
    }

    pub fn has_node(&self, name: &str) -> bool {
        self.node_index(name).is_some()
    }

    pub fn has_edge(&self, name: &str) -> bool {
        self.edge_index(name).is_some()
    }

    /// Source and target names of the named edge.
    pub fn endpoints(&self, edge: &str) -> Option<(&str, &str)> {
        let e = &self.edges[self.edge_index(edge)?];
        Some((&self.nodes[e.src], &self.nodes[e.tgt]))
    }

    /// Node names in canonical order.
    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.nodes.iter().map(String::as_str)
    }

    /// `(name, source, target)` for each edge, in canonical order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (&str, &str, &str)> + '_ {
        self.edges
            .iter()
            .map(|e| (e.name.as_str(), self.nodes[e.src].as_str(), self.nodes[e.tgt].as_str()))
    }

    pub fn to_raw(&self) -> RawGraph {
        RawGraph {
            nodes: self.nodes.clone(),
            edges: self
                .edges()
                .map(|(e, s, t)| (e.to_string(), s.to_string(), t.to_string()))
                .collect(),
        }
    }

    /// The graph with the elements of `extra` added; `extra` may refer to
    /// nodes of `self`.
    pub fn extended(&self, extra: &RawGraph) -> Result<Graph> {
        let mut raw = self.to_raw();
        raw.nodes.extend(extra.nodes.iter().cloned());
        raw.edges.extend(extra.edges.iter().cloned());
        raw.build()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{ nodes")?;
        for n in &self.nodes {
            write!(f, " {n}")?;
        }
        write!(f, "; edges")?;
        for (i, (e, s, t)) in self.edges().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{e}: {s} -> {t}")?;
        }
        write!(f, " }}")
    }
}

/// A structure-preserving map between two graphs.
///
/// The derived order compares node maps first, then edge maps, which is the
/// canonical (lexicographic) order on morphisms between fixed graphs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GraphMorphism {
    node_map: Vec<usize>,
    edge_map: Vec<usize>,
    dom: Arc<Graph>,
    cod: Arc<Graph>,
}

impl GraphMorphism {
    /// Builds a morphism from index maps, checking ranges and the
    /// homomorphism law.
    pub fn from_indices(
        dom: Arc<Graph>,
        cod: Arc<Graph>,
        node_map: Vec<usize>,
        edge_map: Vec<usize>,
    ) -> Result<Self> {
        if node_map.len() != dom.node_count() || edge_map.len() != dom.edge_count() {
            return Err(Error::Mismatch("map sizes differ from the domain"));
        }
        if node_map.iter().any(|&v| v >= cod.node_count())
            || edge_map.iter().any(|&e| e >= cod.edge_count())
        {
            return Err(Error::Mismatch("image outside the codomain"));
        }
        for (i, &img) in edge_map.iter().enumerate() {
            if node_map[dom.src(i)] != cod.src(img) || node_map[dom.tgt(i)] != cod.tgt(img) {
                return Err(Error::NotHomomorphic(dom.edge_name(i).to_string()));
            }
        }
        Ok(Self { node_map, edge_map, dom, cod })
    }

    /// Builds a morphism from name assignments. Node assignments may be
    /// omitted when an edge assignment forces them.
    pub fn new<N, E, S, T>(dom: Arc<Graph>, cod: Arc<Graph>, nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = (S, T)>,
        E: IntoIterator<Item = (S, T)>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let mut node_map: Vec<Option<usize>> = vec![None; dom.node_count()];
        let mut edge_map: Vec<Option<usize>> = vec![None; dom.edge_count()];
        let set_node = |map: &mut Vec<Option<usize>>, i: usize, img: usize| -> Result<()> {
            match map[i] {
                Some(old) if old != img => {
                    Err(Error::ConflictingAssignment(dom.node_name(i).to_string()))
                }
                _ => {
                    map[i] = Some(img);
                    Ok(())
                }
            }
        };
        for (x, y) in nodes {
            let i = dom
                .node_index(x.as_ref())
                .ok_or_else(|| Error::UnknownNode(x.as_ref().to_string()))?;
            let j = cod
                .node_index(y.as_ref())
                .ok_or_else(|| Error::UnknownNode(y.as_ref().to_string()))?;
            set_node(&mut node_map, i, j)?;
        }
        for (x, y) in edges {
            let i = dom
                .edge_index(x.as_ref())
                .ok_or_else(|| Error::UnknownEdge(x.as_ref().to_string()))?;
            let j = cod
                .edge_index(y.as_ref())
                .ok_or_else(|| Error::UnknownEdge(y.as_ref().to_string()))?;
            if edge_map[i].is_some_and(|old| old != j) {
                return Err(Error::ConflictingAssignment(x.as_ref().to_string()));
            }
            edge_map[i] = Some(j);
            set_node(&mut node_map, dom.src(i), cod.src(j))
                .map_err(|_| Error::NotHomomorphic(x.as_ref().to_string()))?;
            set_node(&mut node_map, dom.tgt(i), cod.tgt(j))
                .map_err(|_| Error::NotHomomorphic(x.as_ref().to_string()))?;
        }
        let node_map = node_map
            .iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnassignedNode(dom.node_name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        let edge_map = edge_map
            .iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::UnassignedEdge(dom.edge_name(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(dom, cod, node_map, edge_map)
    }

    /// Shorthand for [`GraphMorphism::new`] with only edge assignments.
    pub fn from_edges(dom: Arc<Graph>, cod: Arc<Graph>, edges: &[(&str, &str)]) -> Result<Self> {
        Self::new(dom, cod, core::iter::empty::<(&str, &str)>(), edges.iter().copied())
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        Self {
            node_map: (0..g.node_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
            dom: g.clone(),
            cod: g,
        }
    }

    /// The inclusion of `sub` into `sup`, mapping every name to itself.
    pub fn inclusion(sub: Arc<Graph>, sup: Arc<Graph>) -> Result<Self> {
        let nodes: Vec<(&str, &str)> = sub.nodes().map(|n| (n, n)).collect();
        let edges: Vec<(&str, &str)> = sub.edges().map(|(e, _, _)| (e, e)).collect();
        Self::new(sub.clone(), sup.clone(), nodes, edges)
    }

    pub fn dom(&self) -> &Arc<Graph> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Graph> {
        &self.cod
    }

    /// Index of the image of node `i`.
    pub fn node_image(&self, i: usize) -> usize {
        self.node_map[i]
    }

    /// Index of the image of edge `i`.
    pub fn edge_image(&self, i: usize) -> usize {
        self.edge_map[i]
    }

    pub fn node(&self, name: &str) -> Option<&str> {
        let i = self.dom.node_index(name)?;
        Some(self.cod.node_name(self.node_map[i]))
    }

    pub fn edge(&self, name: &str) -> Option<&str> {
        let i = self.dom.edge_index(name)?;
        Some(self.cod.edge_name(self.edge_map[i]))
    }

    pub fn node_pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.node_map
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.dom.node_name(i), self.cod.node_name(j)))
    }

    pub fn edge_pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edge_map
            .iter()
            .enumerate()
            .map(|(i, &j)| (self.dom.edge_name(i), self.cod.edge_name(j)))
    }

    /// Nodes whose image is not forced by any incident edge.
    pub fn unforced_nodes(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        let mut forced = vec![false; self.dom.node_count()];
        for i in 0..self.dom.edge_count() {
            forced[self.dom.src(i)] = true;
            forced[self.dom.tgt(i)] = true;
        }
        self.node_pairs().enumerate().filter(move |(i, _)| !forced[*i]).map(|(_, p)| p)
    }

    /// Diagrammatic composition `self ; next`.
    pub fn then(&self, next: &GraphMorphism) -> Result<GraphMorphism> {
        compose(self, next)
    }

    /// Replaces the codomain by an equal graph value. Used to re-anchor
    /// morphisms after a graph was rebuilt.
    pub(crate) fn with_codomain(&self, cod: Arc<Graph>) -> Result<GraphMorphism> {
        if *cod != *self.cod {
            return Err(Error::Mismatch("replacement codomain differs"));
        }
        Ok(Self { cod, ..self.clone() })
    }

    pub fn is_monomorphism(&self) -> bool {
        is_injective(&self.node_map, self.cod.node_count())
            && is_injective(&self.edge_map, self.cod.edge_count())
    }

    pub fn is_epimorphism(&self) -> bool {
        is_surjective(&self.node_map, self.cod.node_count())
            && is_surjective(&self.edge_map, self.cod.edge_count())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_monomorphism() && self.is_epimorphism()
    }

    /// Whether every element is mapped to the element of the same name.
    pub fn is_inclusion(&self) -> bool {
        self.node_pairs().all(|(a, b)| a == b) && self.edge_pairs().all(|(a, b)| a == b)
    }

    pub fn invert(&self) -> Result<GraphMorphism> {
        if !self.is_isomorphism() {
            return Err(Error::NotInvertible);
        }
        let mut node_map = vec![0; self.node_map.len()];
        for (i, &j) in self.node_map.iter().enumerate() {
            node_map[j] = i;
        }
        let mut edge_map = vec![0; self.edge_map.len()];
        for (i, &j) in self.edge_map.iter().enumerate() {
            edge_map[j] = i;
        }
        Ok(GraphMorphism { node_map, edge_map, dom: self.cod.clone(), cod: self.dom.clone() })
    }
}

impl fmt::Display for GraphMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{ nodes")?;
        for (i, (a, b)) in self.node_pairs().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{a} -> {b}")?;
        }
        write!(f, "; edges")?;
        for (i, (a, b)) in self.edge_pairs().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{a} -> {b}")?;
        }
        write!(f, " }}")
    }
}

fn is_injective(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    map.iter().all(|&j| !core::mem::replace(&mut seen[j], true))
}

fn is_surjective(map: &[usize], size: usize) -> bool {
    let mut seen = vec![false; size];
    for &j in map {
        seen[j] = true;
    }
    seen.into_iter().all(|b| b)
}

/// The composite `f ; g`: first `f`, then `g`.
pub fn compose(f: &GraphMorphism, g: &GraphMorphism) -> Result<GraphMorphism> {
    if *f.cod != *g.dom {
        return Err(Error::Mismatch("codomain of the first morphism is not the domain of the second"));
    }
    Ok(GraphMorphism {
        node_map: f.node_map.iter().map(|&j| g.node_map[j]).collect(),
        edge_map: f.edge_map.iter().map(|&j| g.edge_map[j]).collect(),
        dom: f.dom.clone(),
        cod: g.cod.clone(),
    })
}

/// Renames the elements of `g`; returns the isomorphism from `g` onto the
/// renamed graph.
pub fn rename(
    g: &Arc<Graph>,
    node: &dyn Fn(&str) -> String,
    edge: &dyn Fn(&str) -> String,
) -> Result<GraphMorphism> {
    let raw = RawGraph {
        nodes: g.nodes().map(node).collect(),
        edges: g.edges().map(|(e, s, t)| (edge(e), node(s), node(t))).collect(),
    };
    let renamed = Arc::new(raw.build().map_err(|e| match e {
        Error::InvalidGraph(vs) => Error::NameClash(alloc::format!("{}", vs[0])),
        other => other,
    })?);
    let nodes: Vec<(String, String)> = g.nodes().map(|n| (n.to_string(), node(n))).collect();
    let edges: Vec<(String, String)> = g.edges().map(|(e, _, _)| (e.to_string(), edge(e))).collect();
    GraphMorphism::new(g.clone(), renamed, nodes, edges)
}

/// Which morphisms a search ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MorphismClass {
    #[default]
    All,
    /// Only injective morphisms.
    Mono,
}

struct Search<'a, F> {
    dom: &'a Graph,
    cod: &'a Graph,
    injective: bool,
    fixed_nodes: Vec<Option<usize>>,
    fixed_edges: Vec<Option<usize>>,
    /// Edges whose later endpoint (in assignment order) is the node.
    closing: Vec<Vec<usize>>,
    parallel: BTreeMap<(usize, usize), Vec<usize>>,
    node_img: Vec<usize>,
    edge_img: Vec<usize>,
    used_nodes: Vec<bool>,
    used_edges: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[usize], &[usize]) -> ControlFlow<()>> Search<'_, F> {
    fn node(&mut self, i: usize) -> ControlFlow<()> {
        if i == self.dom.node_count() {
            return self.edge(0);
        }
        let range = match self.fixed_nodes[i] {
            Some(c) => c..c + 1,
            None => 0..self.cod.node_count(),
        };
        for c in range {
            if self.injective && self.used_nodes[c] {
                continue;
            }
            self.node_img[i] = c;
            if !self.closing_edges_ok(i) {
                continue;
            }
            self.used_nodes[c] = true;
            let flow = self.node(i + 1);
            self.used_nodes[c] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn closing_edges_ok(&self, i: usize) -> bool {
        self.closing[i].iter().all(|&e| {
            let s = self.node_img[self.dom.src(e)];
            let t = self.node_img[self.dom.tgt(e)];
            match self.fixed_edges[e] {
                Some(f) => self.cod.src(f) == s && self.cod.tgt(f) == t,
                None => self.parallel.contains_key(&(s, t)),
            }
        })
    }

    fn edge(&mut self, j: usize) -> ControlFlow<()> {
        if j == self.dom.edge_count() {
            return (self.visit)(&self.node_img, &self.edge_img);
        }
        let key = (self.node_img[self.dom.src(j)], self.node_img[self.dom.tgt(j)]);
        let fixed;
        let candidates: &[usize] = match self.fixed_edges[j] {
            Some(f) => {
                fixed = [f];
                &fixed
            }
            None => match self.parallel.get(&key) {
                Some(list) => list,
                None => &[],
            },
        };
        // The candidate list is borrowed from `self`; copy to release it.
        let candidates: Vec<usize> = candidates.to_vec();
        for c in candidates {
            if self.injective && self.used_edges[c] {
                continue;
            }
            self.edge_img[j] = c;
            self.used_edges[c] = true;
            let flow = self.edge(j + 1);
            self.used_edges[c] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Runs the backtracking search for morphisms `dom -> cod` that agree with
/// the fixed assignments, calling `visit` in canonical order.
fn search(
    dom: &Graph,
    cod: &Graph,
    class: MorphismClass,
    fixed_nodes: Vec<Option<usize>>,
    fixed_edges: Vec<Option<usize>>,
    visit: impl FnMut(&[usize], &[usize]) -> ControlFlow<()>,
) {
    let mut closing = vec![Vec::new(); dom.node_count()];
    for e in 0..dom.edge_count() {
        closing[dom.src(e).max(dom.tgt(e))].push(e);
    }
    let mut parallel: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in 0..cod.edge_count() {
        parallel.entry((cod.src(e), cod.tgt(e))).or_default().push(e);
    }
    let mut s = Search {
        dom,
        cod,
        injective: class == MorphismClass::Mono,
        fixed_nodes,
        fixed_edges,
        closing,
        parallel,
        node_img: vec![0; dom.node_count()],
        edge_img: vec![0; dom.edge_count()],
        used_nodes: vec![false; cod.node_count()],
        used_edges: vec![false; cod.edge_count()],
        visit,
    };
    let _ = s.node(0);
}

/// Every morphism `a -> g`, each once, in canonical order.
pub fn enumerate_morphisms(a: &Arc<Graph>, g: &Arc<Graph>) -> Vec<GraphMorphism> {
    enumerate_morphisms_in(a, g, MorphismClass::All)
}

/// Every morphism `a -> g` of the given class, in canonical order.
pub fn enumerate_morphisms_in(
    a: &Arc<Graph>,
    g: &Arc<Graph>,
    class: MorphismClass,
) -> Vec<GraphMorphism> {
    let mut out = Vec::new();
    search(a, g, class, vec![None; a.node_count()], vec![None; a.edge_count()], |n, e| {
        out.push(GraphMorphism {
            node_map: n.to_vec(),
            edge_map: e.to_vec(),
            dom: a.clone(),
            cod: g.clone(),
        });
        ControlFlow::Continue(())
    });
    out
}

/// Visits, in canonical order, every `r: M -> G` with `a ; r = t` for
/// `a: K -> M` and `t: K -> G`, stopping early when `visit` breaks.
pub fn for_each_extension<B>(
    a: &GraphMorphism,
    t: &GraphMorphism,
    class: MorphismClass,
    mut visit: impl FnMut(GraphMorphism) -> ControlFlow<B>,
) -> Result<Option<B>> {
    if *a.dom != *t.dom {
        return Err(Error::Mismatch("shift and anchor have different domains"));
    }
    let m = &a.cod;
    let g = &t.cod;
    let mut fixed_nodes = vec![None; m.node_count()];
    for (k, &img) in a.node_map.iter().enumerate() {
        match fixed_nodes[img] {
            Some(prev) if prev != t.node_map[k] => return Ok(None),
            _ => fixed_nodes[img] = Some(t.node_map[k]),
        }
    }
    let mut fixed_edges = vec![None; m.edge_count()];
    for (k, &img) in a.edge_map.iter().enumerate() {
        match fixed_edges[img] {
            Some(prev) if prev != t.edge_map[k] => return Ok(None),
            _ => fixed_edges[img] = Some(t.edge_map[k]),
        }
    }
    let mut result = None;
    search(m, g, class, fixed_nodes, fixed_edges, |n, e| {
        let r = GraphMorphism {
            node_map: n.to_vec(),
            edge_map: e.to_vec(),
            dom: m.clone(),
            cod: g.clone(),
        };
        match visit(r) {
            ControlFlow::Continue(()) => ControlFlow::Continue(()),
            ControlFlow::Break(b) => {
                result = Some(b);
                ControlFlow::Break(())
            }
        }
    });
    Ok(result)
}

/// Every `r` with `a ; r = t`, in canonical order.
pub fn enumerate_extensions(a: &GraphMorphism, t: &GraphMorphism) -> Result<Vec<GraphMorphism>> {
    enumerate_extensions_in(a, t, MorphismClass::All)
}

pub fn enumerate_extensions_in(
    a: &GraphMorphism,
    t: &GraphMorphism,
    class: MorphismClass,
) -> Result<Vec<GraphMorphism>> {
    let mut out = Vec::new();
    for_each_extension::<()>(a, t, class, |r| {
        out.push(r);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Some isomorphism `a -> b`, the least in canonical order, if one exists.
pub fn find_isomorphism(a: &Arc<Graph>, b: &Arc<Graph>) -> Option<GraphMorphism> {
    if a.node_count() != b.node_count() || a.edge_count() != b.edge_count() {
        return None;
    }
    let mut found = None;
    search(
        a,
        b,
        MorphismClass::Mono,
        vec![None; a.node_count()],
        vec![None; a.edge_count()],
        |n, e| {
            found = Some(GraphMorphism {
                node_map: n.to_vec(),
                edge_map: e.to_vec(),
                dom: a.clone(),
                cod: b.clone(),
            });
            ControlFlow::Break(())
        },
    );
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ct;

    fn g(nodes: &[&str], edges: &[(&str, &str, &str)]) -> Arc<Graph> {
        Arc::new(Graph::from_parts(nodes, edges).unwrap())
    }

    /// All node maps times all edge maps, filtered by the homomorphism law.
    fn brute_force_count(a: &Graph, b: &Graph) -> usize {
        let (n, e) = (a.node_count(), a.edge_count());
        let (m, k) = (b.node_count(), b.edge_count());
        let mut count = 0;
        let node_maps = m.pow(n as u32);
        let edge_maps = k.pow(e as u32);
        for nm in 0..node_maps {
            let nmap: Vec<usize> = (0..n).map(|i| (nm / m.pow(i as u32)) % m.max(1)).collect();
            for em in 0..edge_maps {
                let emap: Vec<usize> = (0..e).map(|i| (em / k.pow(i as u32)) % k.max(1)).collect();
                let ok = (0..e).all(|i| {
                    nmap[a.src(i)] == b.src(emap[i]) && nmap[a.tgt(i)] == b.tgt(emap[i])
                });
                if ok {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn validate_reports_dangling_and_duplicates() {
        assert!(validate_graph(&RawGraph::new()).is_empty());
        let raw = RawGraph::new().node("1").edge("x", "1", "9");
        assert_eq!(
            validate_graph(&raw),
            vec![Violation::DanglingTarget { edge: "x".into(), node: "9".into() }]
        );
        let raw = RawGraph::new().node("1").node("1").edge("x", "1", "1").edge("x", "1", "1");
        assert_eq!(validate_graph(&raw).len(), 2);
        assert!(validate_graph(&ct::graph_g().to_raw()).is_empty());
    }

    #[test]
    fn node_and_edge_names_are_separate_namespaces() {
        let gr = Graph::from_parts(&["x"], &[("x", "x", "x")]).unwrap();
        assert!(gr.has_node("x") && gr.has_edge("x"));
    }

    #[test]
    fn identity_and_composition() {
        let gg = Arc::new(ct::graph_g());
        let id = GraphMorphism::identity(gg.clone());
        assert_eq!(id.node("3"), Some("3"));
        assert!(id.is_isomorphism());
        assert_eq!(id.invert().unwrap(), id);
        let t1 = ct::anchor_t1();
        assert_eq!(compose(&t1, &id).unwrap(), t1);
        let idk = GraphMorphism::identity(t1.dom().clone());
        assert_eq!(compose(&idk, &t1).unwrap(), t1);
        assert!(compose(&t1, &idk).is_err());
        let empty = Arc::new(Graph::empty());
        let e = GraphMorphism::identity(empty.clone());
        assert_eq!(enumerate_morphisms(&empty, &empty), vec![e]);
    }

    #[test]
    fn pointwise_composition_of_identification() {
        // iota identifies e3, e4; r then sends the merged edge to f.
        let two = g(&["v1", "v3"], &[("e3", "v1", "v3"), ("e4", "v1", "v3")]);
        let one = g(&["v1", "v3"], &[("e", "v1", "v3")]);
        let iota = GraphMorphism::from_edges(two.clone(), one.clone(), &[("e3", "e"), ("e4", "e")])
            .unwrap();
        let gg = Arc::new(ct::graph_g());
        let r = GraphMorphism::from_edges(one, gg, &[("e", "f")]).unwrap();
        let c = compose(&iota, &r).unwrap();
        let table: Vec<(&str, &str)> = c.node_pairs().chain(c.edge_pairs()).collect();
        assert_eq!(table, vec![("v1", "1"), ("v3", "3"), ("e3", "f"), ("e4", "f")]);
        assert!(!iota.is_monomorphism());
        assert!(!iota.is_isomorphism());
        assert_eq!(iota.invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn renaming_bijection_has_inverse() {
        let a = g(&["v1", "v2"], &[("e", "v1", "v2")]);
        let b = g(&["v", "v1"], &[("e", "v", "v1")]);
        let m = GraphMorphism::new(a.clone(), b.clone(), [("v1", "v"), ("v2", "v1")], [("e", "e")])
            .unwrap();
        assert!(m.is_isomorphism());
        let inv = m.invert().unwrap();
        assert_eq!(compose(&m, &inv).unwrap(), GraphMorphism::identity(a));
        assert_eq!(compose(&inv, &m).unwrap(), GraphMorphism::identity(b));
    }

    #[test]
    fn morphism_construction_errors() {
        let a = g(&["v1", "v2", "w"], &[("e", "v1", "v2")]);
        let gg = Arc::new(ct::graph_g());
        assert_eq!(
            GraphMorphism::from_edges(a.clone(), gg.clone(), &[("e", "a")]),
            Err(Error::UnassignedNode("w".into()))
        );
        assert!(matches!(
            GraphMorphism::new(a, gg, [("v1", "2"), ("w", "1")], [("e", "a")]),
            Err(Error::NotHomomorphic(_))
        ));
    }

    #[test]
    fn enumeration_counts() {
        let gg = Arc::new(ct::graph_g());
        let node = g(&["v"], &[]);
        assert_eq!(enumerate_morphisms(&node, &gg).len(), 5);
        let monic = Arc::new(ct::arity_monic());
        assert_eq!(enumerate_morphisms(&monic, &gg).len(), 7);
        let comp = Arc::new(ct::arity_comp());
        assert_eq!(enumerate_morphisms(&comp, &gg).len(), brute_force_count(&comp, &gg));
        // a,b,e / a,b,f / c,d,g
        assert_eq!(enumerate_morphisms(&comp, &gg).len(), 3);
    }

    #[test]
    fn enumeration_is_sorted_and_deterministic() {
        let gg = Arc::new(ct::graph_g());
        let path = g(&["x", "y", "z"], &[("p", "x", "y"), ("q", "y", "z")]);
        let first = enumerate_morphisms(&path, &gg);
        assert_eq!(first, enumerate_morphisms(&path, &gg));
        let mut sorted = first.clone();
        sorted.sort();
        assert_eq!(first, sorted);
    }

    #[test]
    fn extensions_of_phi1_anchor() {
        let t1 = ct::anchor_t1();
        let k = t1.dom().clone();
        let m = Arc::new(ct::arity_comp());
        let a = GraphMorphism::inclusion(k.clone(), m).unwrap();
        let exts = enumerate_extensions(&a, &t1).unwrap();
        let images: Vec<&str> = exts.iter().map(|r| r.edge("e3").unwrap()).collect();
        assert_eq!(images, vec!["e", "f"]);
        let id = GraphMorphism::identity(k);
        assert_eq!(enumerate_extensions(&id, &t1).unwrap(), vec![t1.clone()]);
    }

    #[test]
    fn extensions_fail_for_split_identification() {
        let two = g(&["v1", "v3"], &[("e3", "v1", "v3"), ("e4", "v1", "v3")]);
        let one = g(&["v1", "v3"], &[("e", "v1", "v3")]);
        let iota = GraphMorphism::from_edges(two.clone(), one, &[("e3", "e"), ("e4", "e")]).unwrap();
        let gg = Arc::new(ct::graph_g());
        let t = GraphMorphism::from_edges(two, gg, &[("e3", "e"), ("e4", "f")]).unwrap();
        assert!(enumerate_extensions(&iota, &t).unwrap().is_empty());
    }

    #[test]
    fn isomorphism_search() {
        let a = g(&["p", "q"], &[("x", "p", "q"), ("y", "q", "q")]);
        let b = g(&["1", "2"], &[("l", "1", "1"), ("m", "2", "1")]);
        let iso = find_isomorphism(&a, &b).unwrap();
        assert!(iso.is_isomorphism());
        let c = g(&["1", "2"], &[("l", "1", "1"), ("m", "1", "2")]);
        assert!(find_isomorphism(&a, &c).is_none());
    }

    #[test]
    fn brute_force_agrees_on_small_graphs() {
        let pool = [
            g(&[], &[]),
            g(&["a"], &[]),
            g(&["a"], &[("l", "a", "a")]),
            g(&["a", "b"], &[("x", "a", "b"), ("y", "a", "b")]),
            g(&["a", "b", "c"], &[("x", "a", "b"), ("y", "b", "c"), ("z", "c", "a")]),
            g(&["a", "b"], &[("x", "a", "b"), ("y", "b", "a"), ("l", "b", "b")]),
        ];
        for a in &pool {
            for b in &pool {
                assert_eq!(enumerate_morphisms(a, b).len(), brute_force_count(a, b));
            }
        }
    }
}
