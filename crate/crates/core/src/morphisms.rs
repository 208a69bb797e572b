//! Homomorphisms between Leavitt path algebras, given by generator images.
//!
//! The main instances are the quotient maps `L(E) → L(E/H)` for saturated
//! hereditary `H`, sending `P_v ↦ 0` for `v ∈ H`, `S_f ↦ 0` for `r(f) ∈ H`,
//! and every other generator to itself.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    is_hereditary, is_saturated, is_subgraph, paths_ending_at, quotient_graph, Graph, GraphError,
    Path, VertexSet,
};
use crate::leavitt::{
    generator_element, monomials_up_to, normal_form, parse_element, relations, AlgebraError,
    Element, Generator, Monomial, MonomialPool, SpecialEdges,
};
use crate::linalg::Eliminator;

/// Random elements drawn by the sampled well-definedness check.
pub const RELATION_SAMPLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
    #[error("image of `{generator}` is not an element over `{target}`")]
    ImageHost { generator: String, target: String },
    #[error("element over `{found}` passed to a map out of `{expected}`")]
    SourceMismatch { expected: String, found: String },
    #[error("cannot compose: `{first}` lands in `{first_target}`, `{second}` starts at `{second_source}`")]
    Composition {
        first: String,
        first_target: String,
        second: String,
        second_source: String,
    },
}

/// A homomorphism `L(source) → L(target)` stored by its generator images.
#[derive(Debug, Clone)]
pub struct AlgebraHom {
    name: String,
    source: Arc<Graph>,
    target: Arc<Graph>,
    target_special: SpecialEdges,
    vertex_image: Vec<Element>,
    edge_image: Vec<Element>,
}

/// Serialized form: generator identifiers mapped to element literals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomLiteral {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
}

impl AlgebraHom {
    pub fn from_images(
        name: impl Into<String>,
        source: &Arc<Graph>,
        target_special: &SpecialEdges,
        vertex_images: &BTreeMap<String, Element>,
        edge_images: &BTreeMap<String, Element>,
    ) -> Result<AlgebraHom, HomError> {
        let target = Arc::clone(target_special.host());
        let pick = |id: &str, images: &BTreeMap<String, Element>| -> Result<Element, HomError> {
            let x = images
                .get(id)
                .ok_or_else(|| HomError::MissingImage(id.to_string()))?;
            if !x.host().same_shape(&target) {
                return Err(HomError::ImageHost {
                    generator: id.to_string(),
                    target: target.name().to_string(),
                });
            }
            // rebind so every image shares the target's allocation
            Ok(x.translate(&target).expect("same shape"))
        };
        let vertex_image = source
            .vertices()
            .map(|v| pick(v, vertex_images))
            .collect::<Result<_, _>>()?;
        let edge_image = source
            .edges()
            .iter()
            .map(|e| pick(&e.id, edge_images))
            .collect::<Result<_, _>>()?;
        Ok(AlgebraHom {
            name: name.into(),
            source: Arc::clone(source),
            target,
            target_special: target_special.clone(),
            vertex_image,
            edge_image,
        })
    }

    pub fn identity(sp: &SpecialEdges) -> AlgebraHom {
        let g = sp.host();
        AlgebraHom {
            name: format!("id_{}", g.name()),
            source: Arc::clone(g),
            target: Arc::clone(g),
            target_special: sp.clone(),
            vertex_image: (0..g.vertex_count())
                .map(|v| generator_element(g, Generator::Vertex(v)))
                .collect(),
            edge_image: (0..g.edge_count())
                .map(|e| generator_element(g, Generator::Edge(e)))
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn target_special(&self) -> &SpecialEdges {
        &self.target_special
    }

    pub fn vertex_image(&self, v: usize) -> &Element {
        &self.vertex_image[v]
    }

    pub fn edge_image(&self, e: usize) -> &Element {
        &self.edge_image[e]
    }

    pub fn with_name(mut self, name: impl Into<String>) -> AlgebraHom {
        self.name = name.into();
        self
    }

    /// Replaces one edge image (used to build corrupted maps in tests and
    /// negative controls).
    pub fn with_edge_image(mut self, edge: &str, image: Element) -> Result<AlgebraHom, HomError> {
        let e = self
            .source
            .edge_index(edge)
            .ok_or_else(|| GraphError::UnknownEdge(edge.to_string()))?;
        self.edge_image[e] = image.translate(&self.target).ok_or(HomError::ImageHost {
            generator: edge.to_string(),
            target: self.target.name().to_string(),
        })?;
        Ok(self)
    }

    /// The same generator assignment viewed into a graph of the same shape,
    /// normalizing with `special` there.
    pub fn retarget(self, special: &SpecialEdges) -> Result<AlgebraHom, HomError> {
        let target = Arc::clone(special.host());
        let rebind = |x: &Element| {
            x.translate(&target).ok_or_else(|| HomError::ImageHost {
                generator: self.name.clone(),
                target: target.name().to_string(),
            })
        };
        let vertex_image = self
            .vertex_image
            .iter()
            .map(rebind)
            .collect::<Result<_, _>>()?;
        let edge_image = self
            .edge_image
            .iter()
            .map(rebind)
            .collect::<Result<_, _>>()?;
        Ok(AlgebraHom {
            name: self.name.clone(),
            source: self.source.clone(),
            target,
            target_special: special.clone(),
            vertex_image,
            edge_image,
        })
    }

    pub fn generator_image(&self, g: Generator) -> Element {
        match g {
            Generator::Vertex(v) => self.vertex_image[v].clone(),
            Generator::Edge(e) => self.edge_image[e].clone(),
            Generator::EdgeStar(e) => self.edge_image[e].adjoint(),
        }
    }

    fn path_image(&self, p: &Path) -> Result<Element, HomError> {
        if p.is_vertex() {
            return Ok(self.vertex_image[p.source()].clone());
        }
        let mut edges = p.edges().iter();
        let mut out = self.edge_image[*edges.next().unwrap()].clone();
        for &e in edges {
            if out.is_empty() {
                break;
            }
            out = out.mul(&self.edge_image[e])?;
        }
        Ok(out)
    }

    /// Image of `S_α S_β*` as `φ(S_α) φ(S_β)*`, not normalized.
    pub fn apply_monomial_raw(&self, m: &Monomial) -> Result<Element, HomError> {
        let left = self.path_image(m.alpha())?;
        if left.is_empty() {
            return Ok(left);
        }
        let right = self.path_image(m.beta())?.adjoint();
        Ok(left.mul(&right)?)
    }

    /// Linear extension over the stored terms of `x`, not normalized.
    pub fn apply_raw(&self, x: &Element) -> Result<Element, HomError> {
        if !x.host().same_shape(&self.source) {
            return Err(HomError::SourceMismatch {
                expected: self.source.name().to_string(),
                found: x.host().name().to_string(),
            });
        }
        let mut out = Element::zero(&self.target);
        for (m, c) in x.terms() {
            out = out.add(&self.apply_monomial_raw(m)?.scale(c))?;
        }
        Ok(out)
    }

    /// `φ(x)` in normal form over the target.
    pub fn apply(&self, x: &Element) -> Result<Element, HomError> {
        Ok(normal_form(&self.apply_raw(x)?, &self.target_special)?)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraHom) -> Result<AlgebraHom, HomError> {
        if !first.target.same_shape(&self.source) {
            return Err(HomError::Composition {
                first: first.name.clone(),
                first_target: first.target.name().to_string(),
                second: self.name.clone(),
                second_source: self.source.name().to_string(),
            });
        }
        let image = |x: &Element| -> Result<Element, HomError> {
            self.apply(&x.translate(&self.source).expect("same shape"))
        };
        Ok(AlgebraHom {
            name: format!("{}∘{}", self.name, first.name),
            source: Arc::clone(&first.source),
            target: Arc::clone(&self.target),
            target_special: self.target_special.clone(),
            vertex_image: first
                .vertex_image
                .iter()
                .map(image)
                .collect::<Result<_, _>>()?,
            edge_image: first
                .edge_image
                .iter()
                .map(image)
                .collect::<Result<_, _>>()?,
        })
    }

    /// First generator on which the two maps differ in the target algebra,
    /// or `None` when they agree on all generators.
    pub fn first_difference(&self, other: &AlgebraHom) -> Result<Option<String>, HomError> {
        if !self.source.same_shape(&other.source) || !self.target.same_shape(&other.target) {
            return Ok(Some("<different source or target>".to_string()));
        }
        for v in 0..self.source.vertex_count() {
            let diff = self.vertex_image[v]
                .sub(&other.vertex_image[v].translate(&self.target).unwrap())?;
            if !normal_form(&diff, &self.target_special)?.is_empty() {
                return Ok(Some(self.source.vertex(v).to_string()));
            }
        }
        for e in 0..self.source.edge_count() {
            let diff =
                self.edge_image[e].sub(&other.edge_image[e].translate(&self.target).unwrap())?;
            if !normal_form(&diff, &self.target_special)?.is_empty() {
                return Ok(Some(self.source.edge(e).id.clone()));
            }
        }
        Ok(None)
    }

    pub fn to_literal(&self) -> HomLiteral {
        HomLiteral {
            vertices: self
                .source
                .vertices()
                .zip(&self.vertex_image)
                .map(|(v, x)| (v.to_string(), x.to_string()))
                .collect(),
            edges: self
                .source
                .edges()
                .iter()
                .zip(&self.edge_image)
                .map(|(e, x)| (e.id.clone(), x.to_string()))
                .collect(),
        }
    }

    pub fn from_literal(
        name: impl Into<String>,
        source: &Arc<Graph>,
        target_special: &SpecialEdges,
        literal: &HomLiteral,
    ) -> Result<AlgebraHom, HomError> {
        let target = target_special.host();
        let parse = |m: &BTreeMap<String, String>| -> Result<BTreeMap<String, Element>, HomError> {
            m.iter()
                .map(|(k, v)| {
                    Ok((
                        k.clone(),
                        parse_element(target, v).map_err(AlgebraError::from)?,
                    ))
                })
                .collect()
        };
        AlgebraHom::from_images(
            name,
            source,
            target_special,
            &parse(&literal.vertices)?,
            &parse(&literal.edges)?,
        )
    }
}

/// Generator assignment of the quotient map by `h`, requiring only that `h`
/// be hereditary. Without saturation this is generally not a homomorphism;
/// [`hom_respects_relations`] detects that.
pub fn candidate_quotient_hom(e: &Arc<Graph>, h: &VertexSet) -> Result<AlgebraHom, HomError> {
    let target = Arc::new(quotient_graph(e, h)?);
    let special = SpecialEdges::least(&target);
    quotient_assignment(e, h, &special)
}

fn quotient_assignment(
    e: &Arc<Graph>,
    h: &VertexSet,
    special: &SpecialEdges,
) -> Result<AlgebraHom, HomError> {
    let target = special.host();
    let mut vertex_images = BTreeMap::new();
    for v in e.vertices() {
        let image = if h.contains(v) {
            Element::zero(target)
        } else {
            Element::projection(target, v)?
        };
        vertex_images.insert(v.to_string(), image);
    }
    let mut edge_images = BTreeMap::new();
    for edge in e.edges() {
        let image = if h.contains(e.vertex(edge.rng)) {
            Element::zero(target)
        } else {
            Element::edge(target, &edge.id)?
        };
        edge_images.insert(edge.id.clone(), image);
    }
    AlgebraHom::from_images(format!("q_{}", h), e, special, &vertex_images, &edge_images)
}

fn require_saturated_hereditary(e: &Graph, h: &VertexSet) -> Result<(), HomError> {
    if !is_hereditary(e, h)? {
        return Err(GraphError::NotHereditary {
            set: h.to_string(),
            graph: e.name().to_string(),
        }
        .into());
    }
    if !is_saturated(e, h)? {
        return Err(GraphError::NotSaturated {
            set: h.to_string(),
            graph: e.name().to_string(),
        }
        .into());
    }
    Ok(())
}

/// The quotient map `L(E) → L(E/H)` for saturated hereditary `h`.
pub fn quotient_hom(e: &Arc<Graph>, h: &VertexSet) -> Result<AlgebraHom, HomError> {
    require_saturated_hereditary(e, h)?;
    candidate_quotient_hom(e, h)
}

/// The quotient map landing in a given graph of the same shape as `E/H`,
/// normalizing with `special` there.
pub fn quotient_hom_onto(
    e: &Arc<Graph>,
    h: &VertexSet,
    special: &SpecialEdges,
) -> Result<AlgebraHom, HomError> {
    require_saturated_hereditary(e, h)?;
    let expected = quotient_graph(e, h)?;
    if !expected.same_shape(special.host()) {
        return Err(HomError::ImageHost {
            generator: format!("quotient by {h}"),
            target: special.host().name().to_string(),
        });
    }
    quotient_assignment(e, h, special)
}

pub fn apply_hom(hom: &AlgebraHom, x: &Element) -> Result<Element, HomError> {
    hom.apply(x)
}

/// Outcome of a check with the first offending item, if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        CheckOutcome {
            holds: false,
            witness: Some(witness.into()),
        }
    }
}

/// Well-definedness of a generator assignment: every defining relation of the
/// source maps to zero, and on random source elements with paths of length at
/// most `max_len`, mapping before or after normalizing gives the same result.
pub fn hom_respects_relations(
    hom: &AlgebraHom,
    max_len: usize,
    seed: u64,
) -> Result<CheckOutcome, HomError> {
    let target = Arc::clone(&hom.target);
    for rel in relations(&hom.source) {
        let value = rel.evaluate(&target, |g| hom.generator_image(g))?;
        if !normal_form(&value, &hom.target_special)?.is_empty() {
            return Ok(CheckOutcome::fail(format!(
                "{} maps to {}",
                rel.label,
                normal_form(&value, &hom.target_special)?
            )));
        }
    }
    let source_special = SpecialEdges::least(&hom.source);
    let pool = MonomialPool::new(&hom.source, max_len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RELATION_SAMPLES {
        let x = pool.random_element(&mut rng, 4);
        let before = hom.apply(&normal_form(&x, &source_special)?)?;
        let after = hom.apply(&x)?;
        if before != after {
            return Ok(CheckOutcome::fail(format!("sample {x}")));
        }
    }
    Ok(CheckOutcome::pass())
}

/// Monomials `S_x S_y*` with `r(x) = r(y) ∈ h` and `|x|, |y| ≤ max_len`.
#[derive(Debug, Clone)]
pub struct IdealSpan {
    pub host: Arc<Graph>,
    pub h: VertexSet,
    pub length_bound: usize,
    pub monomials: Vec<Monomial>,
}

pub fn ideal_spanning_monomials(
    e: &Arc<Graph>,
    h: &VertexSet,
    max_len: usize,
) -> Result<IdealSpan, HomError> {
    if !is_hereditary(e, h)? {
        return Err(GraphError::NotHereditary {
            set: h.to_string(),
            graph: e.name().to_string(),
        }
        .into());
    }
    let mut monomials = Vec::new();
    for v in h.iter() {
        let v = e.vertex_index(v).expect("subset checked");
        let paths = paths_ending_at(e, v, max_len);
        for x in &paths {
            for y in &paths {
                monomials.push(Monomial::new(e, x.clone(), y.clone())?);
            }
        }
    }
    monomials.sort();
    Ok(IdealSpan {
        host: Arc::clone(e),
        h: h.clone(),
        length_bound: max_len,
        monomials,
    })
}

/// Kernel membership for the quotient map by saturated hereditary `h`.
pub fn ideal_membership(e: &Arc<Graph>, h: &VertexSet, x: &Element) -> Result<bool, HomError> {
    let q = quotient_hom(e, h)?;
    Ok(q.apply(x)?.is_empty())
}

/// The same monomial viewed over a graph containing `sub`.
pub fn lift_monomial(sub: &Graph, host: &Graph, m: &Monomial) -> Result<Monomial, HomError> {
    if !is_subgraph(sub, host) {
        return Err(GraphError::NotSubgraph {
            sub: sub.name().to_string(),
            host: host.name().to_string(),
        }
        .into());
    }
    Ok(m.translate(sub, host)
        .expect("subgraph paths are host paths"))
}

/// Term-wise lift of an element along a subgraph inclusion. This is a linear
/// map, not a homomorphism.
pub fn lift_element(x: &Element, host: &Arc<Graph>) -> Result<Element, HomError> {
    if !is_subgraph(x.host(), host) {
        return Err(GraphError::NotSubgraph {
            sub: x.host().name().to_string(),
            host: host.name().to_string(),
        }
        .into());
    }
    Ok(x.translate(host).expect("subgraph paths are host paths"))
}

/// Generator images are homogeneous of the generator's degree (0 for
/// vertices, 1 for edges), and every monomial with paths of length at most
/// `max_len` maps to zero or to a homogeneous element of its own degree.
pub fn is_graded_hom(hom: &AlgebraHom, max_len: usize) -> Result<CheckOutcome, HomError> {
    let fits = |x: &Element, degree: i64| x.degrees().iter().all(|&d| d == degree);
    for v in 0..hom.source.vertex_count() {
        if !fits(&hom.vertex_image[v], 0) {
            return Ok(CheckOutcome::fail(hom.source.vertex(v)));
        }
    }
    for e in 0..hom.source.edge_count() {
        if !fits(&hom.edge_image[e], 1) {
            return Ok(CheckOutcome::fail(hom.source.edge(e).id.clone()));
        }
    }
    for m in monomials_up_to(&hom.source, max_len) {
        let image = hom.apply(&Element::monomial(&hom.source, m.clone()))?;
        if !fits(&image, m.degree()) {
            return Ok(CheckOutcome::fail(m.display(&hom.source).to_string()));
        }
    }
    Ok(CheckOutcome::pass())
}

/// Bounded kernel-versus-ideal comparison for the quotient map by `h`:
/// every combination of monomials (paths of length at most `max_len`) killed
/// by the map lies in the span of the ideal's spanning monomials with length
/// cap `max_len + diameter`, and every spanning monomial up to `max_len` is
/// killed.
pub fn kernel_matches_ideal(
    e: &Arc<Graph>,
    h: &VertexSet,
    max_len: usize,
) -> Result<CheckOutcome, HomError> {
    let q = quotient_hom(e, h)?;
    let special = SpecialEdges::least(e);

    for m in &ideal_spanning_monomials(e, h, max_len)?.monomials {
        if !q.apply(&Element::monomial(e, m.clone()))?.is_empty() {
            return Ok(CheckOutcome::fail(format!(
                "{} survives the quotient",
                m.display(e)
            )));
        }
    }

    let domain = monomials_up_to(e, max_len);
    let mut images = Eliminator::new();
    for m in &domain {
        images.insert(q.apply(&Element::monomial(e, m.clone()))?.terms());
    }
    let mut ideal = Eliminator::new();
    let cap = max_len + e.diameter();
    for m in &ideal_spanning_monomials(e, h, cap)?.monomials {
        ideal.insert(normal_form(&Element::monomial(e, m.clone()), &special)?.terms());
    }
    for dependency in images.dependencies() {
        let mut x = Element::zero(e);
        for (&label, c) in dependency {
            x.add_term(domain[label].clone(), c.clone());
        }
        let x = normal_form(&x, &special)?;
        if !ideal.contains(x.terms()) {
            return Ok(CheckOutcome::fail(format!(
                "kernel element {x} outside the ideal span"
            )));
        }
    }
    Ok(CheckOutcome::pass())
}
