//! Exact arithmetic in the Leavitt path algebra of a finite graph over ℚ.
//!
//! Elements are finite combinations of monomials `S_α S_β*` with `r(α) = r(β)`.
//! Products of monomials collapse with the path relations (`S_e* S_e = P_r(e)`,
//! `S_f* S_e = 0` for `e ≠ f`), so a product of two monomials is a monomial or
//! zero. The remaining relation, `P_v = Σ_{s(e)=v} S_e S_e*`, is oriented by a
//! choice of one special edge per non-sink: `S_α' S_e S_e* S_β'*` with `e`
//! special is rewritten to `S_α' S_β'* − Σ_{f≠e} S_α' S_f S_f* S_β'*`. Every
//! rewrite shortens the monomial it acts on, so normalization terminates.

mod literal;
mod sample;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{paths_ending_at, paths_up_to, Graph, GraphError, Path};

pub use literal::{parse_element, LiteralError};
pub use sample::MonomialPool;

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live over different graphs (`{left}` and `{right}`)")]
    HostMismatch { left: String, right: String },
    #[error("paths {alpha} and {beta} do not share their range")]
    RangeMismatch { alpha: String, beta: String },
    #[error("edge `{edge}` is not emitted by vertex `{vertex}`")]
    BadSpecialEdge { vertex: String, edge: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Literal(#[from] LiteralError),
}

pub(crate) fn same_host(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || a.same_shape(b)
}

fn check_hosts(a: &Arc<Graph>, b: &Arc<Graph>) -> Result<(), AlgebraError> {
    if same_host(a, b) {
        Ok(())
    } else {
        Err(AlgebraError::HostMismatch {
            left: a.name().to_string(),
            right: b.name().to_string(),
        })
    }
}

/// `S_α S_β*` for paths with a common range. `(v, v)` is the projection `P_v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    alpha: Path,
    beta: Path,
}

impl Monomial {
    pub fn new(g: &Graph, alpha: Path, beta: Path) -> Result<Monomial, AlgebraError> {
        if alpha.range() != beta.range() {
            return Err(AlgebraError::RangeMismatch {
                alpha: alpha.display(g).to_string(),
                beta: beta.display(g).to_string(),
            });
        }
        Ok(Monomial { alpha, beta })
    }

    pub fn projection(v: usize) -> Monomial {
        Monomial {
            alpha: Path::vertex(v),
            beta: Path::vertex(v),
        }
    }

    /// `S_μ`, i.e. `(μ, r(μ))`.
    pub fn path(p: Path) -> Monomial {
        let beta = Path::vertex(p.range());
        Monomial { alpha: p, beta }
    }

    /// `S_μ*`, i.e. `(r(μ), μ)`.
    pub fn path_star(p: Path) -> Monomial {
        Monomial::path(p).adjoint()
    }

    pub fn alpha(&self) -> &Path {
        &self.alpha
    }

    pub fn beta(&self) -> &Path {
        &self.beta
    }

    pub fn range(&self) -> usize {
        self.alpha.range()
    }

    /// Grading `|α| − |β|`.
    pub fn degree(&self) -> i64 {
        self.alpha.len() as i64 - self.beta.len() as i64
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial {
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// `(α, β)·(γ, δ)`: `(αγ', δ)` when `γ = βγ'`, `(α, δβ')` when `β = γβ'`,
    /// zero otherwise.
    pub fn product(&self, other: &Monomial) -> Option<Monomial> {
        if let Some(rest) = other.alpha.strip_prefix(&self.beta) {
            return Some(Monomial {
                alpha: self.alpha.concat(&rest)?,
                beta: other.beta.clone(),
            });
        }
        if let Some(rest) = self.beta.strip_prefix(&other.alpha) {
            return Some(Monomial {
                alpha: self.alpha.clone(),
                beta: other.beta.concat(&rest)?,
            });
        }
        None
    }

    /// The same pair of paths in another graph with the same identifiers.
    pub fn translate(&self, from: &Graph, to: &Graph) -> Option<Monomial> {
        Some(Monomial {
            alpha: self.alpha.translate(from, to)?,
            beta: self.beta.translate(from, to)?,
        })
    }

    pub fn display<'a>(&'a self, g: &'a Graph) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, g }
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    g: &'a Graph,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (alpha, beta) = (&self.m.alpha, &self.m.beta);
        match (alpha.is_vertex(), beta.is_vertex()) {
            (_, true) => write!(f, "S[{}]", alpha.display(self.g)),
            (true, false) => write!(f, "S*[{}]", beta.display(self.g)),
            (false, false) => write!(
                f,
                "S[{}] S*[{}]",
                alpha.display(self.g),
                beta.display(self.g)
            ),
        }
    }
}

/// A finite ℚ-combination of monomials over a fixed host graph. Zero
/// coefficients are never stored.
#[derive(Debug, Clone)]
pub struct Element {
    host: Arc<Graph>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Element {
    /// Term-by-term equality. Two elements equal in the algebra may differ
    /// here unless both are in normal form.
    fn eq(&self, other: &Self) -> bool {
        same_host(&self.host, &other.host) && self.terms == other.terms
    }
}

impl Eq for Element {}

#[allow(clippy::should_implement_trait)]
impl Element {
    pub fn zero(host: &Arc<Graph>) -> Element {
        Element {
            host: Arc::clone(host),
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(host: &Arc<Graph>, m: Monomial) -> Element {
        Element::term(host, m, Rational::one())
    }

    pub fn term(host: &Arc<Graph>, m: Monomial, c: Rational) -> Element {
        let mut x = Element::zero(host);
        x.add_term(m, c);
        x
    }

    /// `P_v` for the named vertex.
    pub fn projection(host: &Arc<Graph>, v: &str) -> Result<Element, AlgebraError> {
        let i = host
            .vertex_index(v)
            .ok_or_else(|| GraphError::UnknownVertex(v.to_string()))?;
        Ok(Element::monomial(host, Monomial::projection(i)))
    }

    /// `S_e` for the named edge.
    pub fn edge(host: &Arc<Graph>, e: &str) -> Result<Element, AlgebraError> {
        let i = host
            .edge_index(e)
            .ok_or_else(|| GraphError::UnknownEdge(e.to_string()))?;
        Ok(Element::monomial(host, Monomial::path(Path::edge(host, i))))
    }

    pub fn host(&self) -> &Arc<Graph> {
        &self.host
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No stored terms. For the algebraic zero test use [`is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        check_hosts(&self.host, &other.host)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.host);
        }
        Element {
            host: Arc::clone(&self.host),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Bilinear extension of the monomial product. The result is not
    /// normalized.
    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        check_hosts(&self.host, &other.host)?;
        let mut out = Element::zero(&self.host);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                if let Some(m) = m1.product(m2) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        Ok(out)
    }

    /// The involution `(S_α S_β*)* = S_β S_α*`, linear over ℚ.
    pub fn adjoint(&self) -> Element {
        Element {
            host: Arc::clone(&self.host),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.adjoint(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// All terms share one degree. The zero element is homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Terms of a single degree.
    pub fn graded_component(&self, degree: i64) -> Element {
        Element {
            host: Arc::clone(&self.host),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Re-expresses the element over another graph containing every
    /// identifier it uses (a lift along a subgraph inclusion, for instance).
    pub fn translate(&self, to: &Arc<Graph>) -> Option<Element> {
        let mut out = Element::zero(to);
        for (m, c) in &self.terms {
            out.add_term(m.translate(&self.host, to)?, c.clone());
        }
        Some(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude} * ")?;
            }
            write!(f, "{}", m.display(&self.host))?;
        }
        Ok(())
    }
}

/// The product of two monomials as an element (a single monomial or zero).
pub fn monomial_mul(host: &Arc<Graph>, m1: &Monomial, m2: &Monomial) -> Element {
    match m1.product(m2) {
        Some(m) => Element::monomial(host, m),
        None => Element::zero(host),
    }
}

/// One outgoing edge per non-sink vertex, used to orient the CK2 rewrite.
#[derive(Debug, Clone)]
pub struct SpecialEdges {
    host: Arc<Graph>,
    choice: Vec<Option<usize>>,
}

impl PartialEq for SpecialEdges {
    fn eq(&self, other: &Self) -> bool {
        same_host(&self.host, &other.host) && self.choice == other.choice
    }
}

impl Eq for SpecialEdges {}

impl SpecialEdges {
    /// The lexicographically least outgoing edge at every non-sink.
    pub fn least(host: &Arc<Graph>) -> SpecialEdges {
        SpecialEdges::preferring(host, |_| false)
    }

    /// The least outgoing edge satisfying `preferred`, falling back to the
    /// least outgoing edge.
    pub fn preferring(host: &Arc<Graph>, preferred: impl Fn(&str) -> bool) -> SpecialEdges {
        let choice = (0..host.vertex_count())
            .map(|v| {
                let out = host.out_edges(v);
                out.iter()
                    .copied()
                    .find(|&e| preferred(&host.edge(e).id))
                    .or_else(|| out.first().copied())
            })
            .collect();
        SpecialEdges {
            host: Arc::clone(host),
            choice,
        }
    }

    /// Replaces the special edge at `vertex`.
    pub fn with_choice(mut self, vertex: &str, edge: &str) -> Result<SpecialEdges, AlgebraError> {
        let v = self
            .host
            .vertex_index(vertex)
            .ok_or_else(|| GraphError::UnknownVertex(vertex.to_string()))?;
        let e = self
            .host
            .edge_index(edge)
            .ok_or_else(|| GraphError::UnknownEdge(edge.to_string()))?;
        if self.host.src(e) != v {
            return Err(AlgebraError::BadSpecialEdge {
                vertex: vertex.to_string(),
                edge: edge.to_string(),
            });
        }
        self.choice[v] = Some(e);
        Ok(self)
    }

    pub fn host(&self) -> &Arc<Graph> {
        &self.host
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.choice[v]
    }

    /// `(v, e)` identifier pairs for every non-sink.
    pub fn entries(&self) -> Vec<(String, String)> {
        self.choice
            .iter()
            .enumerate()
            .filter_map(|(v, e)| {
                e.map(|e| {
                    (
                        self.host.vertex(v).to_string(),
                        self.host.edge(e).id.clone(),
                    )
                })
            })
            .collect()
    }

    /// Both paths end in the same edge and it is special at its source.
    pub fn is_reducible(&self, m: &Monomial) -> bool {
        match (m.alpha.last_edge(), m.beta.last_edge()) {
            (Some(e), Some(f)) => e == f && self.choice[self.host.src(e)] == Some(e),
            _ => false,
        }
    }

    /// One CK2 rewrite of a reducible monomial: the contracted monomial and the
    /// sibling monomials entering with coefficient −1.
    fn rewrite(&self, m: &Monomial) -> (Monomial, Vec<Monomial>) {
        let g = &*self.host;
        let e = m
            .alpha
            .last_edge()
            .expect("reducible monomials end in an edge");
        let alpha = m.alpha.drop_last(g);
        let beta = m.beta.drop_last(g);
        let siblings = g
            .out_edges(g.src(e))
            .iter()
            .filter(|&&f| f != e)
            .map(|&f| Monomial {
                alpha: alpha.push(g, f),
                beta: beta.push(g, f),
            })
            .collect();
        (Monomial { alpha, beta }, siblings)
    }
}

/// Order in which redexes are contracted. All orders reach the same normal
/// form; the alternatives exist to test exactly that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RedexOrder {
    /// Fully reduce each term on its own, then sum.
    TermByTerm,
    /// Always rewrite the smallest reducible monomial of the running sum.
    SmallestFirst,
    /// Always rewrite the largest reducible monomial of the running sum.
    LargestFirst,
}

pub fn normal_form(x: &Element, sp: &SpecialEdges) -> Result<Element, AlgebraError> {
    normal_form_with(x, sp, RedexOrder::TermByTerm)
}

pub fn normal_form_with(
    x: &Element,
    sp: &SpecialEdges,
    order: RedexOrder,
) -> Result<Element, AlgebraError> {
    check_hosts(&x.host, &sp.host)?;
    match order {
        RedexOrder::TermByTerm => {
            let mut out = Element::zero(&x.host);
            for (m, c) in &x.terms {
                let mut current = m.clone();
                while sp.is_reducible(&current) {
                    let (contracted, siblings) = sp.rewrite(&current);
                    for s in siblings {
                        out.add_term(s, -c.clone());
                    }
                    current = contracted;
                }
                out.add_term(current, c.clone());
            }
            Ok(out)
        }
        RedexOrder::SmallestFirst | RedexOrder::LargestFirst => {
            let mut out = x.clone();
            loop {
                let redex = if order == RedexOrder::SmallestFirst {
                    out.terms.keys().find(|m| sp.is_reducible(m)).cloned()
                } else {
                    out.terms.keys().rev().find(|m| sp.is_reducible(m)).cloned()
                };
                let Some(m) = redex else { break };
                let c = out.terms.remove(&m).expect("redex is a stored term");
                let (contracted, siblings) = sp.rewrite(&m);
                out.add_term(contracted, c.clone());
                for s in siblings {
                    out.add_term(s, -c.clone());
                }
            }
            Ok(out)
        }
    }
}

/// Zero in the algebra: the normal form has no terms.
pub fn is_zero(x: &Element, sp: &SpecialEdges) -> Result<bool, AlgebraError> {
    Ok(normal_form(x, sp)?.is_empty())
}

/// `x = y` in the algebra.
pub fn equal_in_algebra(x: &Element, y: &Element, sp: &SpecialEdges) -> Result<bool, AlgebraError> {
    is_zero(&x.sub(y)?, sp)
}

/// Every monomial `(α, β)` with `|α|, |β| ≤ max_len` and `r(α) = r(β)`.
pub fn monomials_up_to(g: &Graph, max_len: usize) -> Vec<Monomial> {
    let mut by_range: Vec<Vec<Path>> = vec![Vec::new(); g.vertex_count()];
    for p in paths_up_to(g, max_len) {
        by_range[p.range()].push(p);
    }
    let mut out = Vec::new();
    for paths in &by_range {
        for alpha in paths {
            for beta in paths {
                out.push(Monomial {
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                });
            }
        }
    }
    out.sort();
    out
}

/// The irreducible monomials with both paths of length at most `max_len`.
pub fn basis_monomials_up_to(sp: &SpecialEdges, max_len: usize) -> Vec<Monomial> {
    monomials_up_to(sp.host(), max_len)
        .into_iter()
        .filter(|m| !sp.is_reducible(m))
        .collect()
}

/// `Σ_{sinks v} (#paths ending at v)²`, the dimension of the algebra of an
/// acyclic graph.
pub fn dimension_acyclic(g: &Graph) -> Result<usize, AlgebraError> {
    if g.has_cycle() {
        return Err(GraphError::Cyclic(g.name().to_string()).into());
    }
    Ok((0..g.vertex_count())
        .filter(|&v| g.is_sink(v))
        .map(|v| {
            let n = paths_ending_at(g, v, g.vertex_count()).len();
            n * n
        })
        .sum())
}

/// A generator of the free *-algebra on the graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Vertex(usize),
    Edge(usize),
    EdgeStar(usize),
}

/// A defining relation written as a noncommutative polynomial in the
/// generators; it holds when the polynomial evaluates to zero.
#[derive(Debug, Clone)]
pub struct Relation {
    pub label: String,
    pub terms: Vec<(Rational, Vec<Generator>)>,
}

impl Relation {
    /// Evaluates the polynomial with `image` supplying each generator.
    pub fn evaluate(
        &self,
        target: &Arc<Graph>,
        mut image: impl FnMut(Generator) -> Element,
    ) -> Result<Element, AlgebraError> {
        let mut total = Element::zero(target);
        for (c, word) in &self.terms {
            let mut factors = word.iter();
            let first = factors.next().expect("relation words are nonempty");
            let mut product = image(*first);
            for g in factors {
                product = product.mul(&image(*g))?;
            }
            total = total.add(&product.scale(c))?;
        }
        Ok(total)
    }
}

/// The generator itself, as an element of its own graph's algebra.
pub fn generator_element(host: &Arc<Graph>, g: Generator) -> Element {
    match g {
        Generator::Vertex(v) => Element::monomial(host, Monomial::projection(v)),
        Generator::Edge(e) => Element::monomial(host, Monomial::path(Path::edge(host, e))),
        Generator::EdgeStar(e) => Element::monomial(host, Monomial::path_star(Path::edge(host, e))),
    }
}

/// The Cuntz–Krieger relations of `g` together with the consequences used
/// throughout: projections are idempotent and mutually orthogonal,
/// `S_f* S_e = 0` for `e ≠ f`, and `P_s(e) S_e = S_e = S_e P_r(e)`.
pub fn relations(g: &Graph) -> Vec<Relation> {
    use Generator::*;
    let one = Rational::one;
    let minus = || -Rational::one();
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        out.push(Relation {
            label: format!("P_{0} P_{0} = P_{0}", g.vertex(v)),
            terms: vec![
                (one(), vec![Vertex(v), Vertex(v)]),
                (minus(), vec![Vertex(v)]),
            ],
        });
        for w in 0..g.vertex_count() {
            if v != w {
                out.push(Relation {
                    label: format!("P_{} P_{} = 0", g.vertex(v), g.vertex(w)),
                    terms: vec![(one(), vec![Vertex(v), Vertex(w)])],
                });
            }
        }
        let emitted = g.out_edges(v);
        if !emitted.is_empty() {
            let mut terms = vec![(one(), vec![Vertex(v)])];
            terms.extend(
                emitted
                    .iter()
                    .map(|&e| (minus(), vec![Edge(e), EdgeStar(e)])),
            );
            out.push(Relation {
                label: format!("CK2 at {}", g.vertex(v)),
                terms,
            });
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        out.push(Relation {
            label: format!("CK1 at {}", edge.id),
            terms: vec![
                (one(), vec![EdgeStar(e), Edge(e)]),
                (minus(), vec![Vertex(edge.rng)]),
            ],
        });
        out.push(Relation {
            label: format!("P_s S_{0} = S_{0}", edge.id),
            terms: vec![
                (one(), vec![Vertex(edge.src), Edge(e)]),
                (minus(), vec![Edge(e)]),
            ],
        });
        out.push(Relation {
            label: format!("S_{0} P_r = S_{0}", edge.id),
            terms: vec![
                (one(), vec![Edge(e), Vertex(edge.rng)]),
                (minus(), vec![Edge(e)]),
            ],
        });
        for f in 0..g.edge_count() {
            if f != e {
                out.push(Relation {
                    label: format!("S_{}* S_{} = 0", g.edge(f).id, edge.id),
                    terms: vec![(one(), vec![EdgeStar(f), Edge(e)])],
                });
            }
        }
    }
    out
}
