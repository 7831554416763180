use std::collections::BTreeMap;

use crate::chain::faces::{face_plain, face_star, rack_boundary_terms};
use crate::quandle::QuandleTable;

/// An integer combination of `degree`-tuples in the rack complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalChain {
    degree: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl FormalChain {
    pub fn zero(degree: usize) -> Self {
        FormalChain { degree, terms: BTreeMap::new() }
    }

    pub fn from_tuple(x: &[usize]) -> Self {
        let mut c = FormalChain::zero(x.len());
        c.add_term(x.to_vec(), 1);
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, t: Vec<usize>, coeff: i64) {
        assert_eq!(t.len(), self.degree, "tuple length does not match chain degree");
        if coeff == 0 {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &FormalChain, scale: i64) {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        for (t, &c) in &other.terms {
            self.add_term(t.clone(), scale * c);
        }
    }

    pub fn scaled(&self, scale: i64) -> FormalChain {
        let mut out = FormalChain::zero(self.degree);
        out.add_scaled(self, scale);
        out
    }

    pub fn coefficient(&self, t: &[usize]) -> i64 {
        self.terms.get(t).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest absolute coefficient (0 for the zero chain).
    pub fn max_abs(&self) -> u64 {
        self.terms.values().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.terms.iter().map(|(t, &c)| (t.as_slice(), c))
    }

    /// Applies a tuple-level linear map termwise.
    pub fn map_linear(&self, out_degree: usize, mut f: impl FnMut(&[usize]) -> FormalChain) -> FormalChain {
        let mut out = FormalChain::zero(out_degree);
        for (t, c) in self.iter() {
            out.add_scaled(&f(t), c);
        }
        out
    }

    /// Rack boundary.
    pub fn boundary(&self, q: &QuandleTable) -> FormalChain {
        let target = self.degree.saturating_sub(1);
        let mut out = FormalChain::zero(target);
        if self.degree == 0 {
            return out;
        }
        for (t, c) in self.iter() {
            for (face, s) in rack_boundary_terms(q, t) {
                out.add_term(face, s * c);
            }
        }
        out
    }

    /// `d_i^{(*_0)}` applied termwise (1-based `i`).
    pub fn face_plain(&self, i: usize) -> FormalChain {
        self.map_linear(self.degree - 1, |t| FormalChain::from_tuple(&face_plain(t, i)))
    }

    /// `d_i^{(*)}` applied termwise (1-based `i`).
    pub fn face_star(&self, q: &QuandleTable, i: usize) -> FormalChain {
        self.map_linear(self.degree - 1, |t| FormalChain::from_tuple(&face_star(q, t, i)))
    }

    /// Terms as 1-based tuples, for reports.
    pub fn to_one_based(&self) -> Vec<(Vec<usize>, i64)> {
        self.iter().map(|(t, c)| (t.iter().map(|v| v + 1).collect(), c)).collect()
    }
}
