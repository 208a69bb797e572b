//! Finite directed graphs, their subgraph lattice, paths, and the
//! hereditary/saturated vertex-set machinery used by quotient graphs.
//!
//! Identifiers are opaque strings. A [`Graph`] keeps its vertices and edges
//! sorted by identifier, so every index-based iteration is lexicographic.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Largest vertex count accepted by the subset enumerators unless overridden.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph `{name}`: {}", join_violations(.violations))]
    Invalid {
        name: String,
        violations: Vec<Violation>,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex set {set} is not contained in graph `{graph}`")]
    NotSubset { set: String, graph: String },
    #[error("vertex set {set} is not hereditary in `{graph}`")]
    NotHereditary { set: String, graph: String },
    #[error("vertex set {set} is not saturated in `{graph}`")]
    NotSaturated { set: String, graph: String },
    #[error("`{sub}` is not a subgraph of `{host}`")]
    NotSubgraph { sub: String, host: String },
    #[error("edges {0} do not form a path")]
    NotComposable(String),
    #[error("graph `{graph}` has {count} vertices, above the enumeration bound {bound}")]
    BoundExceeded {
        graph: String,
        count: usize,
        bound: usize,
    },
    #[error("graph `{0}` contains a cycle")]
    Cyclic(String),
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

/// A single broken graph invariant, as reported by [`validate_graph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    DuplicateVertex { id: String },
    DuplicateEdge { id: String },
    SharedIdentifier { id: String },
    InvalidIdentifier { id: String },
    DanglingSource { edge: String, vertex: String },
    DanglingRange { edge: String, vertex: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateVertex { id } => write!(f, "duplicate vertex `{id}`"),
            Violation::DuplicateEdge { id } => write!(f, "duplicate edge `{id}`"),
            Violation::SharedIdentifier { id } => {
                write!(f, "`{id}` names both a vertex and an edge")
            }
            Violation::InvalidIdentifier { id } => write!(f, "invalid identifier `{id}`"),
            Violation::DanglingSource { edge, vertex } => {
                write!(
                    f,
                    "edge `{edge}` has source `{vertex}` outside the vertex set"
                )
            }
            Violation::DanglingRange { edge, vertex } => {
                write!(
                    f,
                    "edge `{edge}` has range `{vertex}` outside the vertex set"
                )
            }
        }
    }
}

/// Identifiers are nonempty runs of alphanumerics and underscores. This keeps
/// them unambiguous inside path literals (`a.b`), id lists (`a,b`) and the
/// element syntax.
pub fn is_valid_identifier(id: &str) -> bool {
    !id.is_empty() && id.chars().all(|c| c.is_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeDecl {
    pub id: String,
    pub src: String,
    pub rng: String,
}

/// Raw graph declarations, before any invariant has been checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDecl>,
}

impl GraphDecl {
    pub fn new(name: impl Into<String>) -> Self {
        GraphDecl {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn vertex(mut self, id: impl Into<String>) -> Self {
        self.vertices.push(id.into());
        self
    }

    pub fn edge(
        mut self,
        id: impl Into<String>,
        src: impl Into<String>,
        rng: impl Into<String>,
    ) -> Self {
        self.edges.push(EdgeDecl {
            id: id.into(),
            src: src.into(),
            rng: rng.into(),
        });
        self
    }

    pub fn build(self) -> Result<Graph, GraphError> {
        Graph::from_decl(&self)
    }
}

/// Outcome of [`validate_graph`]: every violated invariant, in declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub violations: Vec<Violation>,
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the graph invariants on raw declarations.
pub fn validate_graph(decl: &GraphDecl) -> Validation {
    let mut violations = Vec::new();
    let mut vertices = BTreeSet::new();
    for v in &decl.vertices {
        if !is_valid_identifier(v) {
            violations.push(Violation::InvalidIdentifier { id: v.clone() });
        }
        if !vertices.insert(v.as_str()) {
            violations.push(Violation::DuplicateVertex { id: v.clone() });
        }
    }
    let mut edges = BTreeSet::new();
    for e in &decl.edges {
        if !is_valid_identifier(&e.id) {
            violations.push(Violation::InvalidIdentifier { id: e.id.clone() });
        }
        if !edges.insert(e.id.as_str()) {
            violations.push(Violation::DuplicateEdge { id: e.id.clone() });
        }
        if vertices.contains(e.id.as_str()) {
            violations.push(Violation::SharedIdentifier { id: e.id.clone() });
        }
        if !vertices.contains(e.src.as_str()) {
            violations.push(Violation::DanglingSource {
                edge: e.id.clone(),
                vertex: e.src.clone(),
            });
        }
        if !vertices.contains(e.rng.as_str()) {
            violations.push(Violation::DanglingRange {
                edge: e.id.clone(),
                vertex: e.rng.clone(),
            });
        }
    }
    Validation { violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub rng: usize,
}

/// A validated finite directed graph `(E⁰, E¹, s, r)`.
///
/// Vertex and edge indices refer to the lexicographically sorted identifier
/// lists; they are only meaningful for the graph that produced them.
#[derive(Debug, Clone)]
pub struct Graph {
    name: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_pos: HashMap<String, usize>,
    edge_pos: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.same_shape(other)
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn from_decl(decl: &GraphDecl) -> Result<Graph, GraphError> {
        let validation = validate_graph(decl);
        if !validation.is_ok() {
            return Err(GraphError::Invalid {
                name: decl.name.clone(),
                violations: validation.violations,
            });
        }
        let mut vertices = decl.vertices.clone();
        vertices.sort();
        let vertex_pos: HashMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut edges: Vec<Edge> = decl
            .edges
            .iter()
            .map(|e| Edge {
                id: e.id.clone(),
                src: vertex_pos[&e.src],
                rng: vertex_pos[&e.rng],
            })
            .collect();
        edges.sort_by(|a, b| a.id.cmp(&b.id));
        let edge_pos = edges
            .iter()
            .enumerate()
            .map(|(i, e)| (e.id.clone(), i))
            .collect();
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
            inc[e.rng].push(i);
        }
        Ok(Graph {
            name: decl.name.clone(),
            vertices,
            edges,
            vertex_pos,
            edge_pos,
            out,
            inc,
        })
    }

    pub fn to_decl(&self) -> GraphDecl {
        GraphDecl {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDecl {
                    id: e.id.clone(),
                    src: self.vertices[e.src].clone(),
                    rng: self.vertices[e.rng].clone(),
                })
                .collect(),
        }
    }

    pub fn empty(name: impl Into<String>) -> Graph {
        GraphDecl::new(name).build().expect("empty graph is valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Graph {
        Graph {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Structural equality: same vertices, edges, sources and ranges. The
    /// graph name is ignored.
    pub fn same_shape(&self, other: &Graph) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.vertices.iter().map(String::as_str)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, index: usize) -> &str {
        &self.vertices[index]
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertex_pos.get(id).copied()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edge_pos.get(id).copied()
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertex_pos.contains_key(id)
    }

    pub fn has_edge(&self, id: &str) -> bool {
        self.edge_pos.contains_key(id)
    }

    /// Edges emitted by a vertex, in identifier order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Edges received by a vertex, in identifier order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn src(&self, e: usize) -> usize {
        self.edges[e].src
    }

    pub fn rng(&self, e: usize) -> usize {
        self.edges[e].rng
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.out[v].is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn edge_ids(&self) -> BTreeSet<String> {
        self.edges.iter().map(|e| e.id.clone()).collect()
    }

    /// The subgraph with the given vertices and edges, or an error when an
    /// identifier is unknown or an edge endpoint is missing from `vertices`.
    pub fn subgraph(
        &self,
        name: impl Into<String>,
        vertices: &VertexSet,
        edges: &BTreeSet<String>,
    ) -> Result<Graph, GraphError> {
        let mut decl = GraphDecl::new(name);
        for v in vertices.iter() {
            if !self.has_vertex(v) {
                return Err(GraphError::UnknownVertex(v.to_string()));
            }
            decl.vertices.push(v.to_string());
        }
        for id in edges {
            let e = self
                .edge_index(id)
                .ok_or_else(|| GraphError::UnknownEdge(id.clone()))?;
            decl.edges.push(EdgeDecl {
                id: id.clone(),
                src: self.vertex(self.src(e)).to_string(),
                rng: self.vertex(self.rng(e)).to_string(),
            });
        }
        decl.build()
    }

    /// True when the graph has a directed cycle (loops included).
    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle survives the peeling of in-degree zero vertices.
        let mut indegree: Vec<usize> = self.inc.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| indegree[v] == 0)
            .collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &e in &self.out[v] {
                let r = self.rng(e);
                indegree[r] -= 1;
                if indegree[r] == 0 {
                    ready.push(r);
                }
            }
        }
        seen != self.vertex_count()
    }

    /// Longest finite shortest-path distance between two vertices.
    pub fn diameter(&self) -> usize {
        let n = self.vertex_count();
        let mut best = 0;
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.out[v] {
                    let r = self.rng(e);
                    if dist[r] == usize::MAX {
                        dist[r] = dist[v] + 1;
                        best = best.max(dist[r]);
                        queue.push_back(r);
                    }
                }
            }
        }
        best
    }

    fn set_of_mask(&self, mask: u64) -> VertexSet {
        (0..self.vertex_count())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| self.vertices[i].as_str())
            .collect()
    }

    fn check_subset(&self, h: &VertexSet) -> Result<(), GraphError> {
        if h.iter().all(|v| self.has_vertex(v)) {
            Ok(())
        } else {
            Err(GraphError::NotSubset {
                set: h.to_string(),
                graph: self.name.clone(),
            })
        }
    }

    fn hereditary_mask(&self, mask: u64) -> bool {
        self.edges
            .iter()
            .all(|e| mask & (1 << e.src) == 0 || mask & (1 << e.rng) != 0)
    }

    fn saturated_mask(&self, mask: u64) -> bool {
        (0..self.vertex_count()).all(|v| {
            if mask & (1 << v) != 0 {
                return true;
            }
            let emitted = &self.out[v];
            // |s⁻¹(v)| is always finite here.
            let nonempty = !emitted.is_empty();
            let into_h = emitted.iter().all(|&e| mask & (1 << self.rng(e)) != 0);
            !(nonempty && into_h)
        })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<&str> = self.edges.iter().map(|e| e.id.as_str()).collect();
        write!(
            f,
            "{} ({}, {{{}}})",
            self.name,
            self.vertex_set(),
            edges.join(",")
        )
    }
}

/// A set of vertex identifiers, ordered lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<String>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.0.contains(v)
    }

    pub fn insert(&mut self, v: impl Into<String>) -> bool {
        self.0.insert(v.into())
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl<S: Into<String>> FromIterator<S> for VertexSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        VertexSet(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<&str> = self.iter().collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter())
    }
}

/// A path: either a vertex (length 0) or a nonempty sequence of composable
/// edges. Indices refer to the graph the path was built in.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    edges: Vec<usize>,
    source: usize,
    range: usize,
}

impl Path {
    pub fn vertex(v: usize) -> Path {
        Path {
            edges: Vec::new(),
            source: v,
            range: v,
        }
    }

    pub fn edge(g: &Graph, e: usize) -> Path {
        Path {
            edges: vec![e],
            source: g.src(e),
            range: g.rng(e),
        }
    }

    pub fn from_edges(g: &Graph, edges: &[usize]) -> Result<Path, GraphError> {
        let (&first, _) = edges
            .split_first()
            .ok_or_else(|| GraphError::NotComposable("<empty>".into()))?;
        for pair in edges.windows(2) {
            if g.rng(pair[0]) != g.src(pair[1]) {
                let ids: Vec<&str> = edges.iter().map(|&e| g.edge(e).id.as_str()).collect();
                return Err(GraphError::NotComposable(ids.join(".")));
            }
        }
        Ok(Path {
            edges: edges.to_vec(),
            source: g.src(first),
            range: g.rng(*edges.last().unwrap()),
        })
    }

    /// Parses `v` (a vertex) or `e1.e2...` (composable edges).
    pub fn parse(g: &Graph, text: &str) -> Result<Path, GraphError> {
        if let Some(v) = g.vertex_index(text) {
            return Ok(Path::vertex(v));
        }
        let edges = text
            .split('.')
            .map(|id| {
                g.edge_index(id)
                    .ok_or_else(|| GraphError::UnknownEdge(id.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_edges(g, &edges)
    }

    /// Number of edges; vertex paths have length 0.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn last_edge(&self) -> Option<usize> {
        self.edges.last().copied()
    }

    /// True when `self` is an initial segment of `other` (vertex paths are
    /// initial segments of every path starting at them).
    pub fn is_prefix_of(&self, other: &Path) -> bool {
        self.source == other.source && other.edges.starts_with(&self.edges)
    }

    /// The remainder of `self` after removing `prefix`, if it is one.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        let rest = &self.edges[prefix.edges.len()..];
        Some(Path {
            edges: rest.to_vec(),
            source: prefix.range,
            range: self.range,
        })
    }

    /// Concatenation `self·other`; `None` unless `self` ends where `other` starts.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.range != other.source {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path {
            edges,
            source: self.source,
            range: other.range,
        })
    }

    /// The path without its last edge. Vertex paths are returned unchanged.
    pub fn drop_last(&self, g: &Graph) -> Path {
        match self.edges.split_last() {
            None => self.clone(),
            Some((&last, rest)) => Path {
                edges: rest.to_vec(),
                source: self.source,
                range: g.src(last),
            },
        }
    }

    /// `self` followed by edge `e`, which must start at `self.range()`.
    pub fn push(&self, g: &Graph, e: usize) -> Path {
        debug_assert_eq!(g.src(e), self.range);
        let mut edges = self.edges.clone();
        edges.push(e);
        Path {
            edges,
            source: self.source,
            range: g.rng(e),
        }
    }

    /// Re-expresses the path in another graph containing the same identifiers.
    pub fn translate(&self, from: &Graph, to: &Graph) -> Option<Path> {
        if self.is_vertex() {
            return to.vertex_index(from.vertex(self.source)).map(Path::vertex);
        }
        let edges = self
            .edges
            .iter()
            .map(|&e| to.edge_index(&from.edge(e).id))
            .collect::<Option<Vec<_>>>()?;
        Path::from_edges(to, &edges).ok()
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> PathDisplay<'a> {
        PathDisplay {
            path: self,
            graph: g,
        }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a Graph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return f.write_str(self.graph.vertex(self.path.source));
        }
        for (i, &e) in self.path.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(&self.graph.edge(e).id)?;
        }
        Ok(())
    }
}

/// Vertices emitting no edges.
pub fn sinks(g: &Graph) -> VertexSet {
    (0..g.vertex_count())
        .filter(|&v| g.is_sink(v))
        .map(|v| g.vertex(v))
        .collect()
}

/// `f` is a subgraph of `e`: vertex and edge sets included, with matching
/// sources and ranges.
pub fn is_subgraph(f: &Graph, e: &Graph) -> bool {
    f.vertices().all(|v| e.has_vertex(v))
        && f.edges().iter().all(|edge| match e.edge_index(&edge.id) {
            None => false,
            Some(i) => {
                e.vertex(e.src(i)) == f.vertex(edge.src) && e.vertex(e.rng(i)) == f.vertex(edge.rng)
            }
        })
}

fn require_subgraphs(host: &Graph, f1: &Graph, f2: &Graph) -> Result<(), GraphError> {
    for f in [f1, f2] {
        if !is_subgraph(f, host) {
            return Err(GraphError::NotSubgraph {
                sub: f.name().to_string(),
                host: host.name().to_string(),
            });
        }
    }
    Ok(())
}

/// Componentwise union of two subgraphs of `host`.
pub fn union(host: &Graph, f1: &Graph, f2: &Graph) -> Result<Graph, GraphError> {
    require_subgraphs(host, f1, f2)?;
    let vertices = f1.vertex_set().union(&f2.vertex_set());
    let edges = f1.edge_ids().union(&f2.edge_ids()).cloned().collect();
    host.subgraph(
        format!("{}_cup_{}", f1.name(), f2.name()),
        &vertices,
        &edges,
    )
}

/// Componentwise intersection of two subgraphs of `host`.
pub fn intersection(host: &Graph, f1: &Graph, f2: &Graph) -> Result<Graph, GraphError> {
    require_subgraphs(host, f1, f2)?;
    let vertices = f1.vertex_set().intersection(&f2.vertex_set());
    let edges = f1
        .edge_ids()
        .intersection(&f2.edge_ids())
        .cloned()
        .collect();
    host.subgraph(
        format!("{}_cap_{}", f1.name(), f2.name()),
        &vertices,
        &edges,
    )
}

/// No edge starts in `h` and ends outside it.
pub fn is_hereditary(g: &Graph, h: &VertexSet) -> Result<bool, GraphError> {
    g.check_subset(h)?;
    Ok(g.edges()
        .iter()
        .all(|e| !h.contains(g.vertex(e.src)) || h.contains(g.vertex(e.rng))))
}

/// No vertex outside `h` emits a nonempty, finite set of edges that all
/// land in `h`.
pub fn is_saturated(g: &Graph, h: &VertexSet) -> Result<bool, GraphError> {
    g.check_subset(h)?;
    Ok((0..g.vertex_count()).all(|v| {
        if h.contains(g.vertex(v)) {
            return true;
        }
        let emitted = g.out_edges(v);
        let finite = true;
        let nonempty = !emitted.is_empty();
        let into_h = emitted.iter().all(|&e| h.contains(g.vertex(g.rng(e))));
        !(nonempty && finite && into_h)
    }))
}

/// Smallest hereditary and saturated superset of `h`.
pub fn hereditary_saturated_closure(g: &Graph, h: &VertexSet) -> Result<VertexSet, GraphError> {
    g.check_subset(h)?;
    let mut inside: Vec<bool> = (0..g.vertex_count())
        .map(|v| h.contains(g.vertex(v)))
        .collect();
    loop {
        let mut grew = false;
        // Hereditary step: follow edges forward.
        for e in g.edges() {
            if inside[e.src] && !inside[e.rng] {
                inside[e.rng] = true;
                grew = true;
            }
        }
        // Saturation step: absorb vertices emitting only into the set.
        for v in 0..g.vertex_count() {
            let emitted = g.out_edges(v);
            if !inside[v] && !emitted.is_empty() && emitted.iter().all(|&e| inside[g.rng(e)]) {
                inside[v] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    Ok((0..g.vertex_count())
        .filter(|&v| inside[v])
        .map(|v| g.vertex(v))
        .collect())
}

/// All hereditary saturated vertex subsets, ordered by size and then
/// lexicographically.
pub fn all_saturated_hereditary(g: &Graph) -> Result<Vec<VertexSet>, GraphError> {
    all_saturated_hereditary_bounded(g, DEFAULT_ENUMERATION_BOUND)
}

pub fn all_saturated_hereditary_bounded(
    g: &Graph,
    bound: usize,
) -> Result<Vec<VertexSet>, GraphError> {
    let n = g.vertex_count();
    if n > bound || n >= 64 {
        return Err(GraphError::BoundExceeded {
            graph: g.name().to_string(),
            count: n,
            bound: bound.min(63),
        });
    }
    let mut found: Vec<VertexSet> = (0..(1u64 << n))
        .filter(|&mask| g.hereditary_mask(mask) && g.saturated_mask(mask))
        .map(|mask| g.set_of_mask(mask))
        .collect();
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

/// The quotient graph `E/H`: drop the vertices of `h` and every edge ranging
/// in `h`. Requires `h` hereditary so that sources stay inside.
pub fn quotient_graph(g: &Graph, h: &VertexSet) -> Result<Graph, GraphError> {
    if !is_hereditary(g, h)? {
        return Err(GraphError::NotHereditary {
            set: h.to_string(),
            graph: g.name().to_string(),
        });
    }
    let vertices = g.vertex_set().difference(h);
    let edges = g
        .edges()
        .iter()
        .filter(|e| !h.contains(g.vertex(e.rng)))
        .map(|e| e.id.clone())
        .collect();
    g.subgraph(format!("{}/{}", g.name(), h), &vertices, &edges)
}

/// Every path of length at most `max_len`, vertices first, then by length and
/// edge identifiers.
pub fn paths_up_to(g: &Graph, max_len: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (0..g.vertex_count()).map(Path::vertex).collect();
    let mut frontier: Vec<Path> = (0..g.edge_count()).map(|e| Path::edge(g, e)).collect();
    let mut len = 1;
    while len <= max_len && !frontier.is_empty() {
        frontier.sort();
        let mut next = Vec::new();
        if len < max_len {
            for p in &frontier {
                for &e in g.out_edges(p.range()) {
                    next.push(p.push(g, e));
                }
            }
        }
        all.append(&mut frontier);
        frontier = next;
        len += 1;
    }
    all
}

/// Paths of length at most `max_len` ending at vertex `v`.
pub fn paths_ending_at(g: &Graph, v: usize, max_len: usize) -> Vec<Path> {
    let mut all = vec![Path::vertex(v)];
    let mut frontier = all.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in g.in_edges(p.source()) {
                let mut edges = vec![e];
                edges.extend_from_slice(p.edges());
                next.push(Path {
                    edges,
                    source: g.src(e),
                    range: v,
                });
            }
        }
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    fn podles() -> Graph {
        GraphDecl::new("P")
            .vertex("w")
            .vertex("u1")
            .vertex("u2")
            .edge("l", "w", "w")
            .edge("a", "w", "u1")
            .edge("b", "w", "u2")
            .build()
            .unwrap()
    }

    fn loop_graph() -> Graph {
        GraphDecl::new("Z")
            .vertex("z")
            .edge("m", "z", "z")
            .build()
            .unwrap()
    }

    fn chain() -> Graph {
        GraphDecl::new("X")
            .vertex("x")
            .vertex("y")
            .edge("e", "x", "y")
            .build()
            .unwrap()
    }

    fn set(items: &[&str]) -> VertexSet {
        items.iter().copied().collect()
    }

    fn sub(host: &Graph, vs: &[&str], es: &[&str]) -> Graph {
        host.subgraph("F", &set(vs), &es.iter().map(|s| s.to_string()).collect())
            .unwrap()
    }

    #[test]
    fn validation_cases() {
        assert!(validate_graph(&podles().to_decl()).is_ok());
        assert!(validate_graph(&GraphDecl::new("empty")).is_ok());
        let dangling = GraphDecl::new("bad").vertex("x").edge("e", "x", "y");
        assert_eq!(
            validate_graph(&dangling).violations,
            vec![Violation::DanglingRange {
                edge: "e".into(),
                vertex: "y".into()
            }]
        );
        let dup = GraphDecl::new("dup")
            .vertex("x")
            .vertex("x")
            .edge("x", "x", "x");
        let v = validate_graph(&dup).violations;
        assert!(v.contains(&Violation::DuplicateVertex { id: "x".into() }));
        assert!(v.contains(&Violation::SharedIdentifier { id: "x".into() }));
        assert!(matches!(dangling.build(), Err(GraphError::Invalid { .. })));
    }

    #[test]
    fn sink_sets() {
        assert_eq!(sinks(&podles()), set(&["u1", "u2"]));
        assert!(sinks(&loop_graph()).is_empty());
        let lone = GraphDecl::new("V").vertex("v").build().unwrap();
        assert_eq!(sinks(&lone), set(&["v"]));
    }

    #[test]
    fn subgraph_relation() {
        let p = podles();
        assert!(is_subgraph(&sub(&p, &["w", "u1"], &["l", "a"]), &p));
        assert!(is_subgraph(&p, &p));
        assert!(p
            .subgraph("F", &set(&["w"]), &["a".to_string()].into())
            .is_err());
        let other = GraphDecl::new("Q")
            .vertex("w")
            .vertex("u1")
            .edge("a", "u1", "w")
            .build()
            .unwrap();
        assert!(!is_subgraph(&other, &p));
    }

    #[test]
    fn union_and_intersection_of_podles_pieces() {
        let p = podles();
        let f1 = sub(&p, &["w", "u1"], &["l", "a"]);
        let f2 = sub(&p, &["w", "u2"], &["l", "b"]);
        assert!(union(&p, &f1, &f2).unwrap().same_shape(&p));
        let meet = intersection(&p, &f1, &f2).unwrap();
        assert!(meet.same_shape(&sub(&p, &["w"], &["l"])));
        assert!(union(&p, &f1, &f1).unwrap().same_shape(&f1));
        assert!(intersection(&p, &f1, &f1).unwrap().same_shape(&f1));

        let g1 = sub(&p, &["w", "u1"], &["a"]);
        let g2 = sub(&p, &["w", "u2"], &["b"]);
        assert!(intersection(&p, &g1, &g2)
            .unwrap()
            .same_shape(&sub(&p, &["w"], &[])));
        assert!(matches!(
            union(&p, &f1, &chain()),
            Err(GraphError::NotSubgraph { .. })
        ));
    }

    #[test]
    fn hereditary_and_saturated() {
        let p = podles();
        assert!(is_hereditary(&p, &set(&["u1"])).unwrap());
        assert!(!is_hereditary(&p, &set(&["w"])).unwrap());
        assert!(is_hereditary(&p, &set(&["u1", "u2"])).unwrap());
        assert!(is_saturated(&p, &set(&["u1", "u2"])).unwrap());
        assert!(is_saturated(&p, &set(&[])).unwrap());
        assert!(is_hereditary(&p, &set(&["q"])).is_err());

        let x = GraphDecl::new("X")
            .vertex("x")
            .vertex("y")
            .edge("e", "x", "y")
            .edge("f", "y", "y")
            .build()
            .unwrap();
        assert!(!is_saturated(&x, &set(&["y"])).unwrap());
    }

    #[test]
    fn closure_examples() {
        let p = podles();
        assert_eq!(
            hereditary_saturated_closure(&p, &set(&["u1"])).unwrap(),
            set(&["u1"])
        );
        assert_eq!(
            hereditary_saturated_closure(&p, &set(&[])).unwrap(),
            set(&[])
        );
        assert_eq!(
            hereditary_saturated_closure(&chain(), &set(&["y"])).unwrap(),
            set(&["x", "y"])
        );
        assert_eq!(
            hereditary_saturated_closure(&p, &set(&["w"])).unwrap(),
            p.vertex_set()
        );
    }

    #[test]
    fn saturated_hereditary_enumeration() {
        assert_eq!(
            all_saturated_hereditary(&podles()).unwrap(),
            vec![
                set(&[]),
                set(&["u1"]),
                set(&["u2"]),
                set(&["u1", "u2"]),
                set(&["u1", "u2", "w"]),
            ]
        );
        assert_eq!(
            all_saturated_hereditary(&loop_graph()).unwrap(),
            vec![set(&[]), set(&["z"])]
        );
        let lone = GraphDecl::new("V").vertex("v").build().unwrap();
        assert_eq!(
            all_saturated_hereditary(&lone).unwrap(),
            vec![set(&[]), set(&["v"])]
        );
        assert!(matches!(
            all_saturated_hereditary_bounded(&podles(), 2),
            Err(GraphError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn quotients() {
        let p = podles();
        assert!(quotient_graph(&p, &set(&["u2"])).unwrap().same_shape(&sub(
            &p,
            &["w", "u1"],
            &["l", "a"]
        )));
        assert!(quotient_graph(&p, &set(&[])).unwrap().same_shape(&p));
        assert!(quotient_graph(&p, &set(&["u1", "u2"]))
            .unwrap()
            .same_shape(&sub(&p, &["w"], &["l"])));
        assert!(matches!(
            quotient_graph(&p, &set(&["w"])),
            Err(GraphError::NotHereditary { .. })
        ));
    }

    #[test]
    fn path_enumeration() {
        let z = loop_graph();
        let paths = paths_up_to(&z, 2);
        let shown: Vec<String> = paths.iter().map(|p| p.display(&z).to_string()).collect();
        assert_eq!(shown, vec!["z", "m", "m.m"]);
        assert_eq!(paths_up_to(&podles(), 0).len(), 3);
        assert_eq!(paths_up_to(&podles(), 1).len(), 6);
        let into_u1 = paths_ending_at(&podles(), podles().vertex_index("u1").unwrap(), 2);
        let p = podles();
        let shown: Vec<String> = into_u1.iter().map(|q| q.display(&p).to_string()).collect();
        assert_eq!(shown, vec!["u1", "a", "l.a"]);
    }

    #[test]
    fn path_algebra_of_prefixes() {
        let p = podles();
        let la = Path::parse(&p, "l.a").unwrap();
        let l = Path::parse(&p, "l").unwrap();
        let w = Path::parse(&p, "w").unwrap();
        assert!(w.is_prefix_of(&la));
        assert!(l.is_prefix_of(&la));
        assert_eq!(la.strip_prefix(&l).unwrap(), Path::parse(&p, "a").unwrap());
        assert_eq!(la.strip_prefix(&la).unwrap().range(), la.range());
        assert_eq!(l.concat(&Path::parse(&p, "a").unwrap()).unwrap(), la);
        assert_eq!(la.drop_last(&p), l);
        assert!(Path::parse(&p, "a.l").is_err());
        assert_eq!(p.diameter(), 1);
        assert!(p.has_cycle());
        assert!(!chain().has_cycle());
    }
}
