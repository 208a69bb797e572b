//! The square of quotient maps attached to an admissible decomposition
//! `E = F₁ ∪ F₂`, and bounded verification that it is a pullback of algebras:
//!
//! ```text
//!            π₁
//!   L(E)  ───────▶ L(F₁)
//!    │π₂             │χ₁
//!    ▼               ▼
//!   L(F₂) ───────▶ L(F₁∩F₂)
//!            χ₂
//! ```
//!
//! All four algebras normalize with the same special edge at every shared
//! vertex: the least edge of `F₁¹∩F₂¹` it emits, if any, and otherwise its
//! least edge. With that choice the four maps send irreducible monomials to
//! themselves or to zero, which is what makes the lift in [`pullback_lift`]
//! exact.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{
    check_admissible, verify_lemma_complement, verify_lemma_intersection, AdmissibilityReport,
    Decomposition, DecompositionError,
};
use crate::graph::{paths_up_to, Graph, VertexSet};
use crate::leavitt::{normal_form, AlgebraError, Element, MonomialPool, SpecialEdges};
use crate::linalg::Eliminator;
use crate::morphisms::{
    hom_respects_relations, ideal_spanning_monomials, is_graded_hom, lift_element,
    quotient_hom_onto, AlgebraHom, CheckOutcome, HomError,
};

pub const DEFAULT_LENGTH_BOUND: usize = 3;
pub const DEFAULT_SEED: u64 = 0x5eed;
pub const LIFTING_SAMPLES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PullbackError {
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("map `{map}` violates a defining relation: {witness}")]
    NotAHom { map: String, witness: String },
    #[error("element over `{found}` given where one over `{expected}` is required")]
    WrongGraph { expected: String, found: String },
    #[error("incompatible pair: χ₁(a) − χ₂(b) = {difference}")]
    Incompatible { difference: String },
}

impl From<AlgebraError> for PullbackError {
    fn from(e: AlgebraError) -> Self {
        PullbackError::Hom(e.into())
    }
}

/// The adapted special-edge choice on `g`, preferring edges in `shared`.
pub fn adapted_special_edges(g: &Arc<Graph>, shared: &BTreeSet<String>) -> SpecialEdges {
    SpecialEdges::preferring(g, |id| shared.contains(id))
}

#[derive(Debug, Clone)]
pub struct PullbackSquare {
    decomposition: Decomposition,
    pi1: AlgebraHom,
    pi2: AlgebraHom,
    chi1: AlgebraHom,
    chi2: AlgebraHom,
}

impl PullbackSquare {
    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn pi1(&self) -> &AlgebraHom {
        &self.pi1
    }

    pub fn pi2(&self) -> &AlgebraHom {
        &self.pi2
    }

    pub fn chi1(&self) -> &AlgebraHom {
        &self.chi1
    }

    pub fn chi2(&self) -> &AlgebraHom {
        &self.chi2
    }

    pub fn host(&self) -> &Arc<Graph> {
        self.pi1.source()
    }

    pub fn f1(&self) -> &Arc<Graph> {
        self.chi1.source()
    }

    pub fn f2(&self) -> &Arc<Graph> {
        self.chi2.source()
    }

    pub fn intersection(&self) -> &Arc<Graph> {
        self.chi1.target()
    }

    pub fn host_special(&self) -> SpecialEdges {
        adapted_special_edges(self.host(), &self.intersection().edge_ids())
    }

    pub fn maps(&self) -> [&AlgebraHom; 4] {
        [&self.pi1, &self.pi2, &self.chi1, &self.chi2]
    }

    /// The same square with `χ₂` replaced; only meant for negative controls.
    pub fn with_chi2(mut self, chi2: AlgebraHom) -> PullbackSquare {
        self.chi2 = chi2;
        self
    }
}

/// The four quotient maps of an admissible decomposition. Each is checked
/// against the defining relations of its source before being returned.
pub fn build_square(d: &Decomposition) -> Result<PullbackSquare, PullbackError> {
    let report = check_admissible(d);
    if !report.admissible {
        return Err(DecompositionError::NotAdmissible(Box::new(report)).into());
    }
    let shared = d.intersection().edge_ids();
    let host = Arc::new(d.host().clone());
    let f1 = Arc::new(d.f1().clone());
    let f2 = Arc::new(d.f2().clone());
    let meet = Arc::new(d.intersection().clone());
    let sp_f1 = adapted_special_edges(&f1, &shared);
    let sp_f2 = adapted_special_edges(&f2, &shared);
    let sp_meet = adapted_special_edges(&meet, &shared);

    let pi1 = quotient_hom_onto(&host, &d.complement(1), &sp_f1)?.with_name("pi1");
    let pi2 = quotient_hom_onto(&host, &d.complement(2), &sp_f2)?.with_name("pi2");
    let chi1 = quotient_hom_onto(&f1, &d.private_vertices(1), &sp_meet)?.with_name("chi1");
    let chi2 = quotient_hom_onto(&f2, &d.private_vertices(2), &sp_meet)?.with_name("chi2");
    for hom in [&pi1, &pi2, &chi1, &chi2] {
        let outcome = hom_respects_relations(hom, 2, DEFAULT_SEED)?;
        if !outcome.holds {
            return Err(PullbackError::NotAHom {
                map: hom.name().to_string(),
                witness: outcome.witness.unwrap_or_default(),
            });
        }
    }
    Ok(PullbackSquare {
        decomposition: d.clone(),
        pi1,
        pi2,
        chi1,
        chi2,
    })
}

/// `χ₁∘π₁` and `χ₂∘π₂` agree on every generator of `L(E)`.
pub fn check_commutes(sq: &PullbackSquare) -> Result<CheckOutcome, PullbackError> {
    let left = sq.chi1.compose(&sq.pi1)?;
    let right = sq.chi2.compose(&sq.pi2)?;
    Ok(match left.first_difference(&right)? {
        None => CheckOutcome::pass(),
        Some(generator) => CheckOutcome::fail(generator),
    })
}

fn kernel_monomials(
    sq: &PullbackSquare,
    piece: usize,
    max_len: usize,
) -> Result<Vec<crate::leavitt::Monomial>, PullbackError> {
    // ker π₁ is generated by the vertices of F₂ outside F₁, and vice versa
    let h = sq.decomposition.complement(piece);
    Ok(ideal_spanning_monomials(sq.host(), &h, max_len)?.monomials)
}

/// Every product `m₁m₂` and `m₂m₁` of spanning monomials of `ker π₁` and
/// `ker π₂` (paths of length at most `max_len`) vanishes.
pub fn check_kernel_products(
    sq: &PullbackSquare,
    max_len: usize,
) -> Result<CheckOutcome, PullbackError> {
    let host = sq.host();
    let special = sq.host_special();
    let k1 = kernel_monomials(sq, 1, max_len)?;
    let k2 = kernel_monomials(sq, 2, max_len)?;
    for m1 in &k1 {
        for m2 in &k2 {
            for (x, y) in [(m1, m2), (m2, m1)] {
                if let Some(product) = x.product(y) {
                    let nf = normal_form(&Element::monomial(host, product), &special)?;
                    if !nf.is_empty() {
                        return Ok(CheckOutcome::fail(format!(
                            "({}) · ({}) = {nf}",
                            x.display(host),
                            y.display(host)
                        )));
                    }
                }
            }
        }
    }
    Ok(CheckOutcome::pass())
}

/// Outcome of the mapped-kernel check, with the reverse inclusion observed
/// at the same bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappedKernel {
    pub included: CheckOutcome,
    pub equal_at_bound: bool,
}

/// `π₂(ker π₁) ⊆ ker χ₂` on spanning monomials with paths of length at most
/// `max_len`. Also records whether every spanning monomial of `ker χ₂` at
/// that bound is the image of a kernel element of `π₁`.
pub fn check_mapped_kernel(
    sq: &PullbackSquare,
    max_len: usize,
) -> Result<MappedKernel, PullbackError> {
    let host = sq.host();
    let mut included = CheckOutcome::pass();
    for m in kernel_monomials(sq, 1, max_len)? {
        let image = sq.pi2.apply(&Element::monomial(host, m.clone()))?;
        let image = sq.chi2.apply(&image)?;
        if !image.is_empty() {
            included = CheckOutcome::fail(m.display(host).to_string());
            break;
        }
    }

    let f2 = sq.f2();
    let f2_special = sq.pi2.target_special();
    let h = sq.decomposition.private_vertices(2);
    let mut equal_at_bound = true;
    for m in ideal_spanning_monomials(f2, &h, max_len)?.monomials {
        let x = Element::monomial(f2, m);
        let lifted = lift_element(&x, host)?;
        let back = sq.pi2.apply(&lifted)?;
        let in_kernel = sq.pi1.apply(&lifted)?.is_empty();
        let same = normal_form(&back.sub(&x)?, f2_special)?.is_empty();
        if !(in_kernel && same) {
            equal_at_bound = false;
            break;
        }
    }
    Ok(MappedKernel {
        included,
        equal_at_bound,
    })
}

/// An element `c` over `E` with `π₁(c) = a` and `π₂(c) = b`, for a pair with
/// `χ₁(a) = χ₂(b)`. Built as `lift(a) + lift(b) − lift(χ₁(a))` from normal
/// forms, and returned in normal form.
pub fn pullback_lift(
    sq: &PullbackSquare,
    a: &Element,
    b: &Element,
) -> Result<Element, PullbackError> {
    for (x, expected) in [(a, sq.f1()), (b, sq.f2())] {
        if !x.host().same_shape(expected) {
            return Err(PullbackError::WrongGraph {
                expected: expected.name().to_string(),
                found: x.host().name().to_string(),
            });
        }
    }
    let a = normal_form(
        &a.translate(sq.f1()).expect("same shape"),
        sq.pi1.target_special(),
    )?;
    let b = normal_form(
        &b.translate(sq.f2()).expect("same shape"),
        sq.pi2.target_special(),
    )?;
    let shared = sq.chi1.apply(&a)?;
    let difference = normal_form(&shared.sub(&sq.chi2.apply(&b)?)?, sq.chi1.target_special())?;
    if !difference.is_empty() {
        return Err(PullbackError::Incompatible {
            difference: difference.to_string(),
        });
    }
    let host = sq.host();
    let c = lift_element(&a, host)?
        .add(&lift_element(&b, host)?)?
        .sub(&lift_element(&shared, host)?)?;
    Ok(normal_form(&c, &sq.host_special())?)
}

/// Checks the lifting identity on `samples` random elements `c` over `E`:
/// `pullback_lift(π₁(c), π₂(c))` projects back onto `(π₁(c), π₂(c))`.
pub fn check_lifting(
    sq: &PullbackSquare,
    max_len: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckOutcome, PullbackError> {
    let pool = MonomialPool::new(sq.host(), max_len);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let c = pool.random_element(&mut rng, 5);
        let a = sq.pi1.apply(&c)?;
        let b = sq.pi2.apply(&c)?;
        let lifted = pullback_lift(sq, &a, &b)?;
        if sq.pi1.apply(&lifted)? != a || sq.pi2.apply(&lifted)? != b {
            return Ok(CheckOutcome::fail(format!("c = {c}")));
        }
    }
    Ok(CheckOutcome::pass())
}

/// `ker π₁ ∩ ker π₂ = 0` on the spans of bounded spanning monomials: every
/// linear relation between the two spanning sets, solved exactly, has a
/// vanishing `ker π₁` part.
pub fn check_kernel_intersection(
    sq: &PullbackSquare,
    max_len: usize,
) -> Result<CheckOutcome, PullbackError> {
    let host = sq.host();
    let special = sq.host_special();
    let k1 = kernel_monomials(sq, 1, max_len)?;
    let k2 = kernel_monomials(sq, 2, max_len)?;
    let mut elim = Eliminator::new();
    for m in k1.iter().chain(&k2) {
        elim.insert(normal_form(&Element::monomial(host, m.clone()), &special)?.terms());
    }
    for dependency in elim.dependencies() {
        let mut x = Element::zero(host);
        for (&label, c) in dependency.range(..k1.len()) {
            x.add_term(k1[label].clone(), c.clone());
        }
        let x = normal_form(&x, &special)?;
        if !x.is_empty() {
            return Ok(CheckOutcome::fail(x.to_string()));
        }
    }
    Ok(CheckOutcome::pass())
}

/// Every path of either piece, of length at most `max_len`, whose range lies
/// in `F₁⁰∩F₂⁰` is a path of `F₁∩F₂`.
pub fn check_path_containment(sq: &PullbackSquare, max_len: usize) -> CheckOutcome {
    let meet = sq.intersection();
    let shared: VertexSet = meet.vertex_set();
    for piece in [sq.f1(), sq.f2()] {
        for p in paths_up_to(piece, max_len) {
            if shared.contains(piece.vertex(p.range())) && p.translate(piece, meet).is_none() {
                return CheckOutcome::fail(format!("{} in {}", p.display(piece), piece.name()));
            }
        }
    }
    CheckOutcome::pass()
}

/// All four maps are graded on monomials with paths of length at most
/// `max_len`.
pub fn check_graded(sq: &PullbackSquare, max_len: usize) -> Result<CheckOutcome, PullbackError> {
    for hom in sq.maps() {
        let outcome = is_graded_hom(hom, max_len)?;
        if !outcome.holds {
            return Ok(CheckOutcome::fail(format!(
                "{}: {}",
                hom.name(),
                outcome.witness.unwrap_or_default()
            )));
        }
    }
    Ok(CheckOutcome::pass())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub graph: String,
    pub length_bound: usize,
    pub seed: u64,
    pub admissibility: AdmissibilityReport,
    pub lemmas: bool,
    pub commutes: bool,
    pub kernel_products_zero: bool,
    pub mapped_kernel_included: bool,
    /// Observation only; not part of `pass`.
    pub mapped_kernel_equal: bool,
    pub lifting_verified: bool,
    pub lifting_samples: usize,
    pub graded: bool,
    pub kernel_intersection_zero: bool,
    pub path_containment: bool,
    pub witnesses: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopped_at: Option<String>,
    pub pass: bool,
}

impl TheoremReport {
    fn stopped(d: &Decomposition, max_len: usize, seed: u64, stage: &str) -> TheoremReport {
        TheoremReport {
            graph: d.host().name().to_string(),
            length_bound: max_len,
            seed,
            admissibility: check_admissible(d),
            lemmas: false,
            commutes: false,
            kernel_products_zero: false,
            mapped_kernel_included: false,
            mapped_kernel_equal: false,
            lifting_verified: false,
            lifting_samples: 0,
            graded: false,
            kernel_intersection_zero: false,
            path_containment: false,
            witnesses: BTreeMap::new(),
            stopped_at: Some(stage.to_string()),
            pass: false,
        }
    }

    /// Names of the failed flags, in report order.
    pub fn failures(&self) -> Vec<&'static str> {
        [
            ("admissible", self.admissibility.admissible),
            ("lemmas", self.lemmas),
            ("commutes", self.commutes),
            ("kernel_products_zero", self.kernel_products_zero),
            ("mapped_kernel_included", self.mapped_kernel_included),
            ("lifting_verified", self.lifting_verified),
            ("graded", self.graded),
            ("kernel_intersection_zero", self.kernel_intersection_zero),
            ("path_containment", self.path_containment),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| name)
        .collect()
    }
}

/// Runs every check on `d` at path length `max_len`. Path containment is
/// checked up to `2 * max_len`. Stops after admissibility (or the lemmas) if
/// those fail.
pub fn verify_theorem(
    d: &Decomposition,
    max_len: usize,
    seed: u64,
) -> Result<TheoremReport, PullbackError> {
    let admissibility = check_admissible(d);
    if !admissibility.admissible {
        return Ok(TheoremReport::stopped(d, max_len, seed, "admissibility"));
    }
    if !(verify_lemma_intersection(d)? && verify_lemma_complement(d)?) {
        return Ok(TheoremReport::stopped(d, max_len, seed, "lemmas"));
    }
    let sq = build_square(d)?;
    let mut witnesses = BTreeMap::new();
    let mut record = |name: &str, outcome: CheckOutcome| {
        if let Some(w) = outcome.witness {
            witnesses.insert(name.to_string(), w);
        }
        outcome.holds
    };
    let commutes = record("commutes", check_commutes(&sq)?);
    let kernel_products_zero = record("kernel_products_zero", check_kernel_products(&sq, max_len)?);
    let mapped = check_mapped_kernel(&sq, max_len)?;
    let mapped_kernel_included = record("mapped_kernel_included", mapped.included);
    let lifting_verified = record(
        "lifting_verified",
        check_lifting(&sq, max_len, LIFTING_SAMPLES, seed)?,
    );
    let graded = record("graded", check_graded(&sq, max_len)?);
    let kernel_intersection_zero = record(
        "kernel_intersection_zero",
        check_kernel_intersection(&sq, max_len)?,
    );
    let path_containment = record("path_containment", check_path_containment(&sq, 2 * max_len));
    let pass = commutes
        && kernel_products_zero
        && mapped_kernel_included
        && lifting_verified
        && graded
        && kernel_intersection_zero
        && path_containment;
    Ok(TheoremReport {
        graph: d.host().name().to_string(),
        length_bound: max_len,
        seed,
        admissibility,
        lemmas: true,
        commutes,
        kernel_products_zero,
        mapped_kernel_included,
        mapped_kernel_equal: mapped.equal_at_bound,
        lifting_verified,
        lifting_samples: LIFTING_SAMPLES,
        graded,
        kernel_intersection_zero,
        path_containment,
        witnesses,
        stopped_at: None,
        pass,
    })
}
