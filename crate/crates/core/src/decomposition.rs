//! Admissible decompositions `{F₁, F₂}` of a graph and the executable forms of
//! the two structural lemmas: the intersection is a quotient of each piece,
//! and each piece is a quotient of the host by a saturated hereditary set.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::format::GraphFile;
use crate::graph::{
    all_saturated_hereditary_bounded, intersection, is_hereditary, is_saturated, quotient_graph,
    Graph, GraphError, VertexSet, DEFAULT_ENUMERATION_BOUND,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("decomposition is not admissible: {0}")]
    NotAdmissible(Box<AdmissibilityReport>),
    #[error("expected exactly two subgraph declarations, found {0}")]
    SubgraphCount(usize),
}

/// A host graph with two subgraphs and their intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    host: Graph,
    f1: Graph,
    f2: Graph,
    intersection: Graph,
}

/// Sorted vertex and edge identifiers of a subgraph; the canonical order on
/// pieces of an unordered pair.
pub type PieceKey = (Vec<String>, Vec<String>);

fn piece_key(f: &Graph) -> PieceKey {
    (
        f.vertices().map(str::to_string).collect(),
        f.edges().iter().map(|e| e.id.clone()).collect(),
    )
}

impl Decomposition {
    pub fn new(host: Graph, f1: Graph, f2: Graph) -> Result<Self, DecompositionError> {
        let meet = intersection(&host, &f1, &f2)?;
        let meet = meet.renamed(format!("{}_cap_{}", f1.name(), f2.name()));
        Ok(Decomposition {
            host,
            f1,
            f2,
            intersection: meet,
        })
    }

    /// Builds a decomposition from a parsed file with exactly two `subgraph`
    /// lines.
    pub fn from_file(file: &GraphFile) -> Result<Self, DecompositionError> {
        if file.subgraphs.len() != 2 {
            return Err(DecompositionError::SubgraphCount(file.subgraphs.len()));
        }
        let host = file.graph.clone().build()?;
        let mut pieces = Vec::with_capacity(2);
        for sub in &file.subgraphs {
            let vertices: VertexSet = sub.vertices.iter().cloned().collect();
            let edges: BTreeSet<String> = sub.edges.iter().cloned().collect();
            pieces.push(host.subgraph(sub.name.clone(), &vertices, &edges)?);
        }
        let f2 = pieces.pop().unwrap();
        let f1 = pieces.pop().unwrap();
        Decomposition::new(host, f1, f2)
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn f1(&self) -> &Graph {
        &self.f1
    }

    pub fn f2(&self) -> &Graph {
        &self.f2
    }

    pub fn piece(&self, i: usize) -> &Graph {
        match i {
            1 => &self.f1,
            2 => &self.f2,
            _ => panic!("pieces are numbered 1 and 2, got {i}"),
        }
    }

    pub fn intersection(&self) -> &Graph {
        &self.intersection
    }

    pub fn swapped(&self) -> Decomposition {
        Decomposition::new(self.host.clone(), self.f2.clone(), self.f1.clone())
            .expect("pieces already validated")
    }

    /// Unordered-pair key: the two piece keys in ascending order.
    pub fn key(&self) -> (PieceKey, PieceKey) {
        let (a, b) = (piece_key(&self.f1), piece_key(&self.f2));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// The same unordered pair with the smaller piece first.
    pub fn canonical(&self) -> Decomposition {
        if piece_key(&self.f1) <= piece_key(&self.f2) {
            self.clone()
        } else {
            self.swapped()
        }
    }

    /// `E⁰ ∖ F_i⁰`, which equals `F_j⁰ ∖ F_i⁰` when the pieces cover E.
    pub fn complement(&self, i: usize) -> VertexSet {
        self.host
            .vertex_set()
            .difference(&self.piece(i).vertex_set())
    }

    /// `F_i⁰ ∖ (F₁⁰ ∩ F₂⁰)`.
    pub fn private_vertices(&self, i: usize) -> VertexSet {
        self.piece(i)
            .vertex_set()
            .difference(&self.intersection.vertex_set())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Which piece (1 or 2) the witness refers to, when relevant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub piece: Option<u8>,
}

impl ConditionOutcome {
    fn pass() -> Self {
        ConditionOutcome {
            holds: true,
            ..Default::default()
        }
    }

    fn fail(witness: impl Into<String>, piece: Option<u8>) -> Self {
        ConditionOutcome {
            holds: false,
            witness: Some(witness.into()),
            piece,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    /// `E = F₁ ∪ F₂`.
    pub cond_union: ConditionOutcome,
    /// Sinks of `F₁ ∩ F₂` stay sinks in both pieces.
    pub cond_sinks: ConditionOutcome,
    /// `F₁¹ ∩ F₂¹ = r⁻¹_{F_i}(F₁⁰ ∩ F₂⁰)` for i = 1, 2.
    pub cond_edges: ConditionOutcome,
    pub admissible: bool,
}

impl std::fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |c: &ConditionOutcome| match (&c.witness, c.piece) {
            _ if c.holds => "holds".to_string(),
            (Some(w), Some(p)) => format!("fails at `{w}` in F{p}"),
            (Some(w), None) => format!("fails at `{w}`"),
            (None, _) => "fails".to_string(),
        };
        write!(
            f,
            "union {}, sinks {}, edges {}",
            show(&self.cond_union),
            show(&self.cond_sinks),
            show(&self.cond_edges)
        )
    }
}

pub fn check_admissible(d: &Decomposition) -> AdmissibilityReport {
    let (host, meet) = (&d.host, &d.intersection);

    let missing_vertex = host
        .vertices()
        .find(|v| !d.f1.has_vertex(v) && !d.f2.has_vertex(v));
    let missing_edge = host
        .edges()
        .iter()
        .find(|e| !d.f1.has_edge(&e.id) && !d.f2.has_edge(&e.id));
    let cond_union = match (missing_vertex, missing_edge) {
        (Some(v), _) => ConditionOutcome::fail(v, None),
        (None, Some(e)) => ConditionOutcome::fail(e.id.clone(), None),
        (None, None) => ConditionOutcome::pass(),
    };

    let mut cond_sinks = ConditionOutcome::pass();
    'sinks: for v in 0..meet.vertex_count() {
        if !meet.is_sink(v) {
            continue;
        }
        let id = meet.vertex(v);
        for i in 1..=2u8 {
            let piece = d.piece(i as usize);
            let pv = piece
                .vertex_index(id)
                .expect("intersection vertex lies in each piece");
            if !piece.is_sink(pv) {
                cond_sinks = ConditionOutcome::fail(id, Some(i));
                break 'sinks;
            }
        }
    }

    let shared = meet.edge_ids();
    let mut cond_edges = ConditionOutcome::pass();
    'edges: for i in 1..=2u8 {
        let piece = d.piece(i as usize);
        let ranging_in_meet: BTreeSet<String> = piece
            .edges()
            .iter()
            .filter(|e| meet.has_vertex(piece.vertex(e.rng)))
            .map(|e| e.id.clone())
            .collect();
        if let Some(bad) = ranging_in_meet.symmetric_difference(&shared).next() {
            cond_edges = ConditionOutcome::fail(bad.clone(), Some(i));
            break 'edges;
        }
    }

    let admissible = cond_union.holds && cond_sinks.holds && cond_edges.holds;
    AdmissibilityReport {
        cond_union,
        cond_sinks,
        cond_edges,
        admissible,
    }
}

fn require_admissible(d: &Decomposition) -> Result<(), DecompositionError> {
    let report = check_admissible(d);
    if report.admissible {
        Ok(())
    } else {
        Err(DecompositionError::NotAdmissible(Box::new(report)))
    }
}

/// Every admissible unordered pair `{F₁, F₂}` of subgraphs of `e`, with the
/// smaller piece (by sorted identifiers) first and the list sorted.
///
/// Candidates are `F₁ = E/B`, `F₂ = E/A` for disjoint saturated hereditary
/// `A`, `B`; each candidate is still run through [`check_admissible`].
pub fn enumerate_admissible(e: &Graph) -> Result<Vec<Decomposition>, DecompositionError> {
    enumerate_admissible_bounded(e, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_admissible_bounded(
    e: &Graph,
    bound: usize,
) -> Result<Vec<Decomposition>, DecompositionError> {
    let sets = all_saturated_hereditary_bounded(e, bound)?;
    let quotients = sets
        .iter()
        .map(|h| quotient_graph(e, h))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for (a, f2) in sets.iter().zip(&quotients) {
        for (b, f1) in sets.iter().zip(&quotients) {
            if !a.is_disjoint(b) {
                continue;
            }
            let d = Decomposition::new(e.clone(), f1.renamed("F1"), f2.renamed("F2"))?;
            if check_admissible(&d).admissible && seen.insert(d.key()) {
                found.push(canonical_named(&d));
            }
        }
    }
    found.sort_by_key(Decomposition::key);
    Ok(found)
}

fn canonical_named(d: &Decomposition) -> Decomposition {
    let c = d.canonical();
    Decomposition::new(c.host.clone(), c.f1.renamed("F1"), c.f2.renamed("F2"))
        .expect("pieces already validated")
}

/// `F₁ ∩ F₂ = F_i / (F_i⁰ ∖ (F₁⁰ ∩ F₂⁰))` for i = 1, 2.
pub fn verify_lemma_intersection(d: &Decomposition) -> Result<bool, DecompositionError> {
    require_admissible(d)?;
    for i in 1..=2 {
        let piece = d.piece(i);
        let private = d.private_vertices(i);
        if !is_hereditary(piece, &private)? {
            return Ok(false);
        }
        if !quotient_graph(piece, &private)?.same_shape(&d.intersection) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For i = 1, 2: `E⁰ ∖ F_i⁰` is hereditary and saturated in E,
/// `F_i⁰ ∖ (F₁⁰ ∩ F₂⁰)` is hereditary and saturated in `F_i`, and
/// `E / (E⁰ ∖ F_i⁰) = F_i`.
pub fn verify_lemma_complement(d: &Decomposition) -> Result<bool, DecompositionError> {
    require_admissible(d)?;
    for i in 1..=2 {
        let piece = d.piece(i);
        let outside = d.complement(i);
        if !is_hereditary(&d.host, &outside)? || !is_saturated(&d.host, &outside)? {
            return Ok(false);
        }
        let private = d.private_vertices(i);
        if !is_hereditary(piece, &private)? || !is_saturated(piece, &private)? {
            return Ok(false);
        }
        if !quotient_graph(&d.host, &outside)?.same_shape(piece) {
            return Ok(false);
        }
    }
    Ok(true)
}
