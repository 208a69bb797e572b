//! Example graphs from noncommutative topology with their designated
//! decompositions.
//!
//! Naming is fixed: loop vertices `v0, v1, …` carry loops `loop_i`; sphere
//! graphs have chain edges `chain_i_j` and sinks `sp`, `sm` fed by `to_sp_i`
//! and `to_sm_i`; lens graphs join the apex `v0` to `v_i` by `down_i`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::decomposition::Decomposition;
use crate::graph::{Graph, GraphDecl, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("unknown corpus key `{0}`")]
    UnknownKey(String),
    #[error("sphere graphs need n >= 1, got {0}")]
    SphereRange(usize),
    #[error("lens graphs need l >= 2 and 1 <= k <= l-1, got l={l}, k={k}")]
    LensRange { l: usize, k: usize },
}

#[derive(Debug, Clone)]
pub struct NamedExample {
    pub key: String,
    pub graph: Graph,
    pub decomposition: Decomposition,
    pub description: String,
}

fn piece(host: &Graph, name: &str, vertices: &[String]) -> Graph {
    // the full subgraph on `vertices`: every host edge between them
    let vs: VertexSet = vertices.iter().cloned().collect();
    let edges: BTreeSet<String> = host
        .edges()
        .iter()
        .filter(|e| vs.contains(host.vertex(e.src)) && vs.contains(host.vertex(e.rng)))
        .map(|e| e.id.clone())
        .collect();
    host.subgraph(name, &vs, &edges)
        .expect("corpus pieces are subgraphs")
}

fn example(
    key: String,
    graph: Graph,
    f1: &[String],
    f2: &[String],
    description: String,
) -> NamedExample {
    let d1 = piece(&graph, "F1", f1);
    let d2 = piece(&graph, "F2", f2);
    let decomposition = Decomposition::new(graph.clone(), d1, d2).expect("pieces share the host");
    NamedExample {
        key,
        graph,
        decomposition,
        description,
    }
}

fn names(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The Podleś sphere graph: `w` with a loop `l`, and edges `a: w → u1`,
/// `b: w → u2`, split along the two sinks.
pub fn podles() -> NamedExample {
    let graph = GraphDecl::new("podles")
        .vertex("w")
        .vertex("u1")
        .vertex("u2")
        .edge("l", "w", "w")
        .edge("a", "w", "u1")
        .edge("b", "w", "u2")
        .build()
        .expect("valid");
    example(
        "podles".into(),
        graph,
        &names(&["w", "u1"]),
        &names(&["w", "u2"]),
        "generic Podleś quantum sphere glued from two quantum discs over the circle".into(),
    )
}

/// Even quantum sphere graph: `n` loop vertices in a chain, each emitting one
/// edge to each of two sinks. The pieces drop one sink each; they meet in the
/// odd-sphere chain.
pub fn sphere_even(n: usize) -> Result<NamedExample, CorpusError> {
    if n == 0 {
        return Err(CorpusError::SphereRange(n));
    }
    let mut decl = GraphDecl::new(format!("sphere_{n}"));
    let mut chain = Vec::new();
    for i in 1..=n {
        decl = decl.vertex(format!("v{i}"));
        chain.push(format!("v{i}"));
    }
    decl = decl.vertex("sp").vertex("sm");
    for i in 1..=n {
        let v = format!("v{i}");
        decl = decl.edge(format!("loop_{i}"), &v, &v);
        if i < n {
            decl = decl.edge(format!("chain_{i}_{}", i + 1), &v, format!("v{}", i + 1));
        }
        decl = decl
            .edge(format!("to_sp_{i}"), &v, "sp")
            .edge(format!("to_sm_{i}"), &v, "sm");
    }
    let graph = decl.build().expect("valid");
    let mut f1 = chain.clone();
    f1.push("sp".into());
    let mut f2 = chain;
    f2.push("sm".into());
    Ok(example(
        format!("sphere-{n}"),
        graph,
        &f1,
        &f2,
        format!(
            "even quantum sphere of dimension {}, glued from two quantum balls",
            2 * n
        ),
    ))
}

/// Quantum lens space graph: apex `v0` and bottom vertices `v1 … vl`, all
/// with loops, and an edge from the apex to each bottom vertex. `F1` keeps the
/// first `k` bottom vertices, `F2` the rest.
pub fn lens(l: usize, k: usize) -> Result<NamedExample, CorpusError> {
    if l < 2 || k < 1 || k >= l {
        return Err(CorpusError::LensRange { l, k });
    }
    let mut decl = GraphDecl::new(format!("lens_{l}"))
        .vertex("v0")
        .edge("loop_0", "v0", "v0");
    for i in 1..=l {
        let v = format!("v{i}");
        decl =
            decl.vertex(&v)
                .edge(format!("loop_{i}"), &v, &v)
                .edge(format!("down_{i}"), "v0", &v);
    }
    let graph = decl.build().expect("valid");
    let bottom = |range: std::ops::RangeInclusive<usize>| {
        std::iter::once("v0".to_string())
            .chain(range.map(|i| format!("v{i}")))
            .collect::<Vec<_>>()
    };
    Ok(example(
        format!("lens-{l}-{k}"),
        graph,
        &bottom(1..=k),
        &bottom(k + 1..=l),
        format!(
            "quantum lens space L({l}) split into lens pieces with {k} and {} bottom vertices",
            l - k
        ),
    ))
}

/// Every corpus example the test suites sweep: Podleś, spheres `n = 1..=3`,
/// and lens graphs `2 <= l <= 5` with all `k`.
pub fn list() -> Vec<NamedExample> {
    let mut out = vec![podles()];
    for n in 1..=3 {
        out.push(sphere_even(n).expect("in range"));
    }
    for l in 2..=5 {
        for k in 1..l {
            out.push(lens(l, k).expect("in range"));
        }
    }
    out
}

/// Looks up `podles`, `sphere-N` or `lens-L-K`, for any valid parameters.
pub fn by_key(key: &str) -> Result<NamedExample, CorpusError> {
    let unknown = || CorpusError::UnknownKey(key.to_string());
    if key == "podles" {
        return Ok(podles());
    }
    let parts: Vec<&str> = key.split('-').collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    match parts.as_slice() {
        ["sphere", n] => sphere_even(num(n)?),
        ["lens", l, k] => lens(num(l)?, num(k)?),
        _ => Err(unknown()),
    }
}
