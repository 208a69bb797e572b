//! Reference implementations used as test oracles. They work on plain
//! identifier sets and deliberately share no logic with the library beyond
//! building `Graph` values.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use graphalg::graph::{Graph, GraphDecl};
use rand::Rng;

pub type Piece = (BTreeSet<String>, BTreeSet<String>);

/// Raw description of a graph: vertex ids and `edge id -> (src, rng)`.
pub struct RawGraph {
    pub vertices: BTreeSet<String>,
    pub edges: BTreeMap<String, (String, String)>,
}

impl RawGraph {
    pub fn of(g: &Graph) -> RawGraph {
        RawGraph {
            vertices: g.vertices().map(str::to_string).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        (g.vertex(e.src).to_string(), g.vertex(e.rng).to_string()),
                    )
                })
                .collect(),
        }
    }

    fn emitted<'a>(
        &'a self,
        v: &'a str,
        edges: &'a BTreeSet<String>,
    ) -> impl Iterator<Item = &'a String> + 'a {
        edges.iter().filter(move |e| self.edges[*e].0 == v)
    }

    /// Every subgraph: a vertex subset plus any subset of the edges with both
    /// endpoints inside it.
    pub fn subgraphs(&self) -> Vec<Piece> {
        let vs: Vec<&String> = self.vertices.iter().collect();
        let mut out = Vec::new();
        for vmask in 0u32..(1 << vs.len()) {
            let chosen: BTreeSet<String> = (0..vs.len())
                .filter(|i| vmask >> i & 1 == 1)
                .map(|i| vs[i].clone())
                .collect();
            let allowed: Vec<&String> = self
                .edges
                .iter()
                .filter(|(_, (s, r))| chosen.contains(s) && chosen.contains(r))
                .map(|(id, _)| id)
                .collect();
            for emask in 0u32..(1 << allowed.len()) {
                let edges = (0..allowed.len())
                    .filter(|i| emask >> i & 1 == 1)
                    .map(|i| allowed[i].clone())
                    .collect();
                out.push((chosen.clone(), edges));
            }
        }
        out
    }

    fn is_sink_in(&self, v: &str, edges: &BTreeSet<String>) -> bool {
        self.emitted(v, edges).next().is_none()
    }

    /// Definition check written directly from the three conditions.
    pub fn admissible(&self, f1: &Piece, f2: &Piece) -> bool {
        let all_edges: BTreeSet<String> = self.edges.keys().cloned().collect();
        let union_v: BTreeSet<String> = f1.0.union(&f2.0).cloned().collect();
        let union_e: BTreeSet<String> = f1.1.union(&f2.1).cloned().collect();
        if union_v != self.vertices || union_e != all_edges {
            return false;
        }
        let meet_v: BTreeSet<String> = f1.0.intersection(&f2.0).cloned().collect();
        let meet_e: BTreeSet<String> = f1.1.intersection(&f2.1).cloned().collect();
        for v in &meet_v {
            if self.is_sink_in(v, &meet_e)
                && !(self.is_sink_in(v, &f1.1) && self.is_sink_in(v, &f2.1))
            {
                return false;
            }
        }
        for f in [f1, f2] {
            let into_meet: BTreeSet<String> =
                f.1.iter()
                    .filter(|e| meet_v.contains(&self.edges[*e].1))
                    .cloned()
                    .collect();
            if into_meet != meet_e {
                return false;
            }
        }
        true
    }

    /// All admissible unordered pairs, each as (smaller, larger).
    pub fn admissible_pairs(&self) -> BTreeSet<(Piece, Piece)> {
        let subs = self.subgraphs();
        let mut out = BTreeSet::new();
        for (i, f1) in subs.iter().enumerate() {
            for f2 in &subs[i..] {
                if self.admissible(f1, f2) {
                    let (a, b) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
                    out.insert((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    pub fn hereditary(&self, h: &BTreeSet<String>) -> bool {
        self.edges
            .values()
            .all(|(s, r)| !h.contains(s) || h.contains(r))
    }

    pub fn saturated(&self, h: &BTreeSet<String>) -> bool {
        let all: BTreeSet<String> = self.edges.keys().cloned().collect();
        self.vertices.iter().filter(|v| !h.contains(*v)).all(|v| {
            let ranges: Vec<&String> = self.emitted(v, &all).map(|e| &self.edges[e].1).collect();
            ranges.is_empty() || !ranges.iter().all(|r| h.contains(*r))
        })
    }

    /// The unique smallest hereditary saturated superset of `h`, found by
    /// scanning every vertex subset.
    pub fn closure(&self, h: &BTreeSet<String>) -> BTreeSet<String> {
        let vs: Vec<&String> = self.vertices.iter().collect();
        let mut candidates = Vec::new();
        for mask in 0u32..(1 << vs.len()) {
            let s: BTreeSet<String> = (0..vs.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| vs[i].clone())
                .collect();
            if h.is_subset(&s) && self.hereditary(&s) && self.saturated(&s) {
                candidates.push(s);
            }
        }
        let smallest = candidates.iter().min_by_key(|s| s.len()).unwrap().clone();
        assert!(
            candidates.iter().all(|s| smallest.is_subset(s)),
            "closure not unique"
        );
        smallest
    }

    /// Number of paths (including the trivial one) ending at each vertex of
    /// an acyclic graph, by dynamic programming over a topological order.
    pub fn paths_into(&self) -> BTreeMap<String, usize> {
        let mut count: BTreeMap<String, usize> = BTreeMap::new();
        let mut remaining: BTreeSet<String> = self.vertices.clone();
        while !remaining.is_empty() {
            let ready = remaining
                .iter()
                .find(|v| {
                    self.edges
                        .values()
                        .all(|(s, r)| r != *v || !remaining.contains(s))
                })
                .expect("acyclic")
                .clone();
            let incoming: usize = self
                .edges
                .values()
                .filter(|(_, r)| *r == ready)
                .map(|(s, _)| count[s])
                .sum();
            count.insert(ready.clone(), 1 + incoming);
            remaining.remove(&ready);
        }
        count
    }

    /// `Σ_sinks (#paths ending there)²`.
    pub fn acyclic_dimension(&self) -> usize {
        let all: BTreeSet<String> = self.edges.keys().cloned().collect();
        let counts = self.paths_into();
        self.vertices
            .iter()
            .filter(|v| self.is_sink_in(v, &all))
            .map(|v| counts[v] * counts[v])
            .sum()
    }
}

pub fn build(name: &str, n: usize, edges: &[(usize, usize)]) -> Graph {
    let mut decl = GraphDecl::new(name);
    for v in 0..n {
        decl = decl.vertex(format!("v{v}"));
    }
    for (i, &(s, r)) in edges.iter().enumerate() {
        decl = decl.edge(format!("e{i}"), format!("v{s}"), format!("v{r}"));
    }
    decl.build().expect("generated graphs are valid")
}

/// A random graph with `|V| + |E| <= total` and at least one vertex; loops
/// and parallel edges allowed.
pub fn random_small_graph<R: Rng>(rng: &mut R, total: usize) -> Graph {
    let n = rng.gen_range(1..=total.clamp(1, 5));
    let m = rng.gen_range(0..=total - n);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    build("random", n, &edges)
}

/// A random acyclic graph on at most `max_vertices` vertices: edges only go
/// from lower to higher index.
pub fn random_acyclic_graph<R: Rng>(rng: &mut R, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let mut edges = Vec::new();
    for s in 0..n {
        for r in s + 1..n {
            let copies = if rng.gen_bool(0.4) {
                rng.gen_range(1..=2)
            } else {
                0
            };
            edges.extend(std::iter::repeat_n((s, r), copies));
        }
    }
    build("acyclic", n, &edges)
}

/// A random graph with up to `max_vertices` vertices and `max_edges` edges.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(0..=max_edges);
    let edges: Vec<(usize, usize)> = (0..m)
        .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    build("random", n, &edges)
}
