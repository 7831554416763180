use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use super::abelian::AbelianGroup;
use super::basis::{nondegenerate_count, rack_count, ChainBasis, Theory};
use super::faces::rack_boundary_terms;
use super::modp::{is_prime, rank_mod_p_with_clearing};
use super::smith::{smith_form_owned, smith_form_with_clearing, SmithForm};
use super::sparse::SparseIntMatrix;
use crate::quandle::{orbits, QuandleTable};

/// Default cap on the number of basis tuples in any one degree.
pub const DEFAULT_BASIS_BUDGET: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("degree {degree} basis has {size} tuples, over the budget of {budget}")]
    DegreeTooLarge { degree: usize, size: String, budget: usize },
    #[error("the {0} complex needs a quandle, not a rack")]
    NeedsQuandle(Theory),
    #[error("degenerate tuple {tuple:?} has a non-degenerate face; the table is not a quandle")]
    DegenerateNotClosed { tuple: Vec<usize> },
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invariant factor {0} does not fit in 64 bits")]
    FactorOverflow(String),
}

/// Coefficients for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    /// The prime field `Z_p`.
    Prime(u32),
}

/// Rack, degenerate or quandle chain complex of a fixed table.
#[derive(Debug, Clone)]
pub struct ChainComplex<'a> {
    q: &'a QuandleTable,
    theory: Theory,
    budget: usize,
}

impl<'a> ChainComplex<'a> {
    pub fn new(q: &'a QuandleTable, theory: Theory) -> Result<Self, ChainError> {
        if theory != Theory::Rack && !q.is_quandle() {
            return Err(ChainError::NeedsQuandle(theory));
        }
        Ok(ChainComplex { q, theory, budget: DEFAULT_BASIS_BUDGET })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn quandle(&self) -> &QuandleTable {
        self.q
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    /// `dim C_n` without building the basis.
    pub fn dimension(&self, n: usize) -> Result<usize, ChainError> {
        let size = self.q.size();
        let rack = rack_count(size, n);
        let count = match self.theory {
            Theory::Rack => rack,
            Theory::Quandle => nondegenerate_count(size, n),
            Theory::Degenerate => rack.zip(nondegenerate_count(size, n)).map(|(r, q)| r - q),
        };
        // the degenerate basis is filtered out of the full rack enumeration
        let enumerated = if self.theory == Theory::Degenerate { rack } else { count };
        match (count, enumerated) {
            (Some(c), Some(e)) if e <= self.budget => Ok(c),
            _ => Err(ChainError::DegreeTooLarge {
                degree: n,
                size: rack.map_or_else(|| format!("{size}^{n}"), |r| r.to_string()),
                budget: self.budget,
            }),
        }
    }

    pub fn basis(&self, n: usize) -> Result<ChainBasis, ChainError> {
        self.dimension(n)?;
        Ok(ChainBasis::new(self.q.size(), n, self.theory))
    }

    /// Matrix of `d_n : C_n -> C_{n-1}`, columns indexed by `basis(n)`.
    ///
    /// The quandle differential is the rack differential followed by
    /// discarding degenerate faces; the degenerate differential is the
    /// restriction, and closure of degenerate tuples is checked per column.
    pub fn boundary(&self, n: usize) -> Result<SparseIntMatrix, ChainError> {
        self.boundary_without_rows(n, &[])
    }

    /// `d_n` with the rows in `dropped` (ascending basis indices of
    /// `C_{n-1}`) deleted and the rest renumbered.
    fn boundary_without_rows(&self, n: usize, dropped: &[usize]) -> Result<SparseIntMatrix, ChainError> {
        let cols_basis = self.basis(n)?;
        if n == 0 {
            return Ok(SparseIntMatrix::zeros(0, cols_basis.len()));
        }
        let rows_basis = self.basis(n - 1)?;
        let row_map = row_renumbering(rows_basis.len(), dropped);
        let kept = rows_basis.len() - dropped.len();
        let theory = self.theory;
        let q = self.q;
        let columns: Result<Vec<_>, ChainError> = (0..cols_basis.len())
            .into_par_iter()
            .map_init(
                || vec![0; n],
                |buf, j| {
                    cols_basis.tuple_into(j, buf);
                    let mut terms = rack_boundary_terms(q, buf);
                    if theory == Theory::Degenerate {
                        // faces cancel in pairs before closure can be judged
                        terms = collect_terms(terms);
                    }
                    let mut col = Vec::with_capacity(terms.len());
                    for (face, coeff) in terms {
                        match rows_basis.index_of(&face) {
                            Some(i) => {
                                if let Some(map) = &row_map {
                                    if map[i] != u32::MAX {
                                        col.push((map[i], coeff));
                                    }
                                } else {
                                    col.push((i as u32, coeff));
                                }
                            }
                            None if theory == Theory::Degenerate => {
                                return Err(ChainError::DegenerateNotClosed { tuple: buf.clone() })
                            }
                            None => {}
                        }
                    }
                    Ok(col)
                },
            )
            .collect();
        Ok(SparseIntMatrix::from_columns(kept, columns?))
    }

    /// `d_n d_{n+1} = 0`.
    pub fn verify_square_zero(&self, n: usize) -> Result<bool, ChainError> {
        if n == 0 {
            return Ok(true);
        }
        Ok(self.boundary(n)?.mul(&self.boundary(n + 1)?).is_zero())
    }

    /// `H_n`. Rows of `d_{n+1}` at the pivot columns of `d_n` are dropped
    /// before reducing it; this leaves its rank and invariant factors alone.
    pub fn homology(&self, n: usize, coefficients: Coefficients) -> Result<AbelianGroup, ChainError> {
        match coefficients {
            Coefficients::Integers => {
                let (lower, pivots) = smith_form_with_clearing(self.boundary(n)?);
                let upper = smith_form_owned(self.boundary_without_rows(n + 1, &pivots)?);
                homology_from_forms(self.dimension(n)?, lower.rank, &upper)
            }
            Coefficients::Prime(p) => {
                if !is_prime(p) {
                    return Err(ChainError::NotPrime(p));
                }
                let (lower, pivots) = rank_mod_p_with_clearing(&self.boundary(n)?, p);
                let (upper, _) = rank_mod_p_with_clearing(&self.boundary_without_rows(n + 1, &pivots)?, p);
                Ok(AbelianGroup::free(self.dimension(n)? - lower - upper))
            }
        }
    }

    /// Integral homology in degrees `1..=max_degree`, reducing each boundary
    /// once and clearing each by the pivots of the one below.
    pub fn homology_up_to(&self, max_degree: usize) -> Result<Vec<AbelianGroup>, ChainError> {
        Ok(self.sweep(max_degree, Coefficients::Integers)?.into_iter().map(|(g, _)| g).collect())
    }

    /// Homology in degrees `1..=max_degree` with the time spent on each
    /// degree since the previous one finished.
    pub fn sweep(&self, max_degree: usize, coefficients: Coefficients) -> Result<Vec<(AbelianGroup, Duration)>, ChainError> {
        if let Coefficients::Prime(p) = coefficients {
            if !is_prime(p) {
                return Err(ChainError::NotPrime(p));
            }
        }
        let mut out = Vec::with_capacity(max_degree);
        let mut clock = Instant::now();
        let mut pivots = Vec::new();
        let mut lower_rank = 0;
        for n in 1..=max_degree + 1 {
            let d = self.boundary_without_rows(n, &pivots)?;
            let form = match coefficients {
                Coefficients::Integers => {
                    let (form, next) = smith_form_with_clearing(d);
                    pivots = next;
                    form
                }
                Coefficients::Prime(p) => {
                    let (rank, next) = rank_mod_p_with_clearing(&d, p);
                    pivots = next;
                    SmithForm { rank, torsion: Vec::new() }
                }
            };
            if n >= 2 {
                let group = homology_from_forms(self.dimension(n - 1)?, lower_rank, &form)?;
                out.push((group, clock.elapsed()));
                clock = Instant::now();
            }
            lower_rank = form.rank;
        }
        Ok(out)
    }

    /// Smith form of `d_n`.
    pub fn smith(&self, n: usize) -> Result<SmithForm, ChainError> {
        Ok(smith_form_owned(self.boundary(n)?))
    }

    /// Rank predicted from the orbit count `k`: `k^n` (rack),
    /// `k (k-1)^{n-1}` (quandle, `n >= 1`) and their difference (degenerate).
    pub fn rank_prediction(&self, n: usize) -> usize {
        rank_prediction(self.q, n, self.theory)
    }
}

fn row_renumbering(rows: usize, dropped: &[usize]) -> Option<Vec<u32>> {
    if dropped.is_empty() {
        return None;
    }
    let mut map = vec![0u32; rows];
    for &r in dropped {
        map[r] = u32::MAX;
    }
    for (next, slot) in map.iter_mut().filter(|v| **v != u32::MAX).enumerate() {
        *slot = next as u32;
    }
    Some(map)
}

fn collect_terms(mut terms: Vec<(Vec<usize>, i64)>) -> Vec<(Vec<usize>, i64)> {
    terms.sort_unstable();
    let mut out: Vec<(Vec<usize>, i64)> = Vec::with_capacity(terms.len());
    for (t, c) in terms {
        match out.last_mut() {
            Some((lt, lc)) if *lt == t => *lc += c,
            _ => out.push((t, c)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    out
}

pub fn rank_prediction(q: &QuandleTable, n: usize, theory: Theory) -> usize {
    let k = orbits(q).count();
    let rack = k.pow(n as u32);
    let quandle = if n == 0 { 1 } else { k * (k - 1).pow(n as u32 - 1) };
    match theory {
        Theory::Rack => rack,
        Theory::Quandle => quandle,
        Theory::Degenerate => rack - quandle,
    }
}

/// `H_n = ker d_n / im d_{n+1}`: free rank `dim C_n - rank d_n - rank d_{n+1}`,
/// torsion the nontrivial invariant factors of `d_{n+1}`.
fn homology_from_forms(dim: usize, lower_rank: usize, upper: &SmithForm) -> Result<AbelianGroup, ChainError> {
    let torsion = upper
        .torsion
        .iter()
        .map(|d| u64::try_from(d).map_err(|_| ChainError::FactorOverflow(d.to_string())))
        .collect::<Result<_, _>>()?;
    Ok(AbelianGroup { rank: dim - lower_rank - upper.rank, torsion })
}

/// `H_n^R` is isomorphic to `H_n^D + H_n^Q` (rank and invariant factors).
pub fn splitting_check(q: &QuandleTable, n: usize) -> Result<bool, ChainError> {
    let h = |t| ChainComplex::new(q, t)?.homology(n, Coefficients::Integers);
    let rack = h(Theory::Rack)?;
    let sum = h(Theory::Degenerate)?.direct_sum(&h(Theory::Quandle)?);
    Ok(rack == sum)
}
