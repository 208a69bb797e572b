use std::sync::Arc;

use rand::Rng;

use super::{monomials_up_to, Element, Monomial, Rational};
use crate::graph::Graph;

/// All monomials up to a length bound, for drawing random elements.
#[derive(Debug, Clone)]
pub struct MonomialPool {
    host: Arc<Graph>,
    monomials: Vec<Monomial>,
}

impl MonomialPool {
    pub fn new(host: &Arc<Graph>, max_len: usize) -> MonomialPool {
        MonomialPool {
            host: Arc::clone(host),
            monomials: monomials_up_to(host, max_len),
        }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// A random element with up to `max_terms` terms and small rational
    /// coefficients. Empty graphs only yield zero.
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_terms: usize) -> Element {
        let mut x = Element::zero(&self.host);
        if self.monomials.is_empty() || max_terms == 0 {
            return x;
        }
        let count = rng.gen_range(1..=max_terms);
        for _ in 0..count {
            let m = &self.monomials[rng.gen_range(0..self.monomials.len())];
            x.add_term(m.clone(), random_coefficient(rng));
        }
        x
    }

    /// A random element whose terms all have degree `degree`, or zero when
    /// no monomial in the pool has that degree.
    pub fn random_homogeneous<R: Rng>(
        &self,
        rng: &mut R,
        degree: i64,
        max_terms: usize,
    ) -> Element {
        let of_degree: Vec<&Monomial> = self
            .monomials
            .iter()
            .filter(|m| m.degree() == degree)
            .collect();
        let mut x = Element::zero(&self.host);
        if of_degree.is_empty() || max_terms == 0 {
            return x;
        }
        for _ in 0..rng.gen_range(1..=max_terms) {
            let m = of_degree[rng.gen_range(0..of_degree.len())];
            x.add_term(m.clone(), random_coefficient(rng));
        }
        x
    }
}

fn random_coefficient<R: Rng>(rng: &mut R) -> Rational {
    let mut numer = rng.gen_range(1i64..=5);
    if rng.gen_bool(0.5) {
        numer = -numer;
    }
    let denom = if rng.gen_bool(0.25) { 2 } else { 1 };
    Rational::new(numer.into(), denom.into())
}
