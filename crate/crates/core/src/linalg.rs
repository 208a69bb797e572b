//! Sparse Gaussian elimination over ℚ with vectors indexed by any ordered key
//! (monomials, in practice).

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::leavitt::{Element, Monomial, Rational};

pub type SparseVector<K> = BTreeMap<K, Rational>;

fn axpy<K: Ord + Clone>(target: &mut SparseVector<K>, factor: &Rational, source: &SparseVector<K>) {
    for (k, c) in source {
        let entry = target.entry(k.clone()).or_insert_with(Rational::zero);
        *entry -= factor * c;
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

/// Incremental row echelon form. Each inserted vector gets a label (its
/// insertion index); vectors that reduce to zero yield a linear dependency
/// among the labels.
#[derive(Debug, Clone)]
pub struct Eliminator<K: Ord + Clone> {
    /// Leading key ↦ (row with leading coefficient 1, row as a combination
    /// of inserted vectors).
    rows: BTreeMap<K, (SparseVector<K>, SparseVector<usize>)>,
    inserted: usize,
    dependencies: Vec<SparseVector<usize>>,
}

impl<K: Ord + Clone> Default for Eliminator<K> {
    fn default() -> Self {
        Eliminator {
            rows: BTreeMap::new(),
            inserted: 0,
            dependencies: Vec::new(),
        }
    }
}

impl<K: Ord + Clone> Eliminator<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Combinations `Σ c_l v_l = 0` found among inserted vectors, one per
    /// vector that was already in the span of its predecessors.
    pub fn dependencies(&self) -> &[SparseVector<usize>] {
        &self.dependencies
    }

    /// Remainder of `v` modulo the current rows, with the combination of
    /// inserted vectors that was subtracted.
    pub fn reduce(&self, v: &SparseVector<K>) -> (SparseVector<K>, SparseVector<usize>) {
        let mut rem = v.clone();
        let mut used = SparseVector::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = rem
                .iter()
                .filter(|(k, _)| cursor.as_ref().is_none_or(|c| *k > c))
                .find(|(k, _)| self.rows.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((key, factor)) = next else { break };
            let (row, comb) = &self.rows[&key];
            axpy(&mut rem, &factor, row);
            axpy(&mut used, &-factor, comb);
            cursor = Some(key);
        }
        (rem, used)
    }

    pub fn contains(&self, v: &SparseVector<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds `v`; returns the dependency it closes, if it was already in the
    /// span.
    pub fn insert(&mut self, v: &SparseVector<K>) -> Option<SparseVector<usize>> {
        let label = self.inserted;
        self.inserted += 1;
        let (rem, used) = self.reduce(v);
        // v - Σ used = rem
        let mut comb = SparseVector::new();
        comb.insert(label, Rational::one());
        axpy(&mut comb, &Rational::one(), &used);
        match rem.iter().next() {
            None => {
                self.dependencies.push(comb.clone());
                Some(comb)
            }
            Some((lead, c)) => {
                let lead = lead.clone();
                let inv = c.recip();
                let row = rem.into_iter().map(|(k, x)| (k, x * &inv)).collect();
                let comb = comb.into_iter().map(|(k, x)| (k, x * &inv)).collect();
                self.rows.insert(lead, (row, comb));
                None
            }
        }
    }
}

/// Coordinates of an element in its stored monomials.
pub fn coordinates(x: &Element) -> SparseVector<Monomial> {
    x.terms().clone()
}
