//! Invariant factors of sparse integer matrices.
//!
//! Elimination runs in two phases over a column-compressed matrix with
//! per-row column lists:
//!
//! 1. unit pivots (`±1`) chosen greedily by Markowitz cost
//!    `(col_len - 1) * (row_len - 1)`, which removes a row and a column each
//!    with no effect on the invariant factors beyond a `1`;
//! 2. when no unit remains, the entry of least absolute value is used and
//!    its row and column are cleared by Euclidean reduction, with row
//!    operations only applied while the pivot row is a singleton, so they
//!    touch the pivot column alone.
//!
//! The diagonal collected this way is normalized to a divisibility chain.
//! Arithmetic is checked, starting in `i32`; the whole state is widened to
//! `i64` and then `BigInt` on overflow.
//!
//! Phase 1 only ever subtracts multiples of a pivot column from other
//! columns. For a boundary matrix `d_n` this means the coordinates of a cycle
//! away from those pivot columns determine it, so the matching rows of
//! `d_{n+1}` can be dropped without changing its rank or torsion; see
//! [`smith_form_with_clearing`].

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};

use super::sparse::SparseIntMatrix;

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// Invariant factors greater than one, ascending, each dividing the next.
    pub torsion: Vec<BigUint>,
}

impl SmithForm {
    /// All nonzero invariant factors, ones included.
    pub fn invariants(&self) -> Vec<BigUint> {
        let ones = self.rank - self.torsion.len();
        std::iter::repeat_n(BigUint::one(), ones).chain(self.torsion.iter().cloned()).collect()
    }
}

/// The nonzero invariant factors `d_1 | d_2 | ...` of `m`.
pub fn smith_invariants(m: &SparseIntMatrix) -> Vec<BigUint> {
    smith_form(m).invariants()
}

pub fn smith_form(m: &SparseIntMatrix) -> SmithForm {
    smith_form_owned(m.clone())
}

pub fn smith_form_owned(m: SparseIntMatrix) -> SmithForm {
    run_elimination(m, false).0
}

/// Smith form together with the columns pivoted during the initial unit
/// phase, ascending.
///
/// If `m` is `d_n` (or `d_n` with some rows removed this way) and `d_{n+1}`
/// maps into its kernel, deleting these rows from `d_{n+1}` preserves the
/// Smith form of `d_{n+1}`.
pub fn smith_form_with_clearing(m: SparseIntMatrix) -> (SmithForm, Vec<usize>) {
    let (form, pivots) = run_elimination(m, true);
    let mut pivots: Vec<usize> = pivots.into_iter().map(|c| c as usize).collect();
    pivots.sort_unstable();
    (form, pivots)
}

fn run_elimination(m: SparseIntMatrix, record: bool) -> (SmithForm, Vec<u32>) {
    let nrows = m.rows();
    let cols = m.into_columns();
    // Entries start in i32 where possible; the state is widened on overflow.
    let narrow: Option<Vec<Column<i32>>> = cols
        .iter()
        .map(|c| c.iter().map(|&(r, v)| i32::try_from(v).ok().map(|v| (r, v))).collect())
        .collect();
    let mut wide: Eliminator<i64> = match narrow {
        Some(narrow) => {
            drop(cols);
            let mut e: Eliminator<i32> = Eliminator::new(nrows, narrow, record);
            match e.run() {
                Ok(()) => return e.finish(),
                Err(Overflow) => e.promote(),
            }
        }
        None => Eliminator::new(nrows, cols, record),
    };
    match wide.run() {
        Ok(()) => wide.finish(),
        Err(Overflow) => {
            let mut big: Eliminator<BigInt> = wide.promote();
            big.run().expect("BigInt arithmetic cannot overflow");
            big.finish()
        }
    }
}

/// Turns any list of nonzero diagonal entries into the invariant factors of
/// the diagonal matrix: returns the entries greater than one of the
/// normalized chain.
pub fn normalize_diagonal(mut diag: Vec<BigUint>) -> Vec<BigUint> {
    diag.retain(|d| !d.is_one());
    diag.sort();
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if !(&diag[j] % &diag[i]).is_zero() {
                let g = diag[i].gcd(&diag[j]);
                let l = diag[i].lcm(&diag[j]);
                diag[i] = g;
                diag[j] = l;
            }
        }
    }
    diag.retain(|d| !d.is_one());
    diag.sort();
    diag
}

/// Rank of an integer matrix (number of nonzero invariant factors).
pub fn rank(m: &SparseIntMatrix) -> usize {
    smith_form(m).rank
}

#[derive(Debug, Clone, Copy)]
struct Overflow;

trait Coeff: Clone + Debug + Integer + Signed + CheckedMul + CheckedSub {
    fn magnitude(&self) -> BigUint;
}

impl Coeff for i32 {
    fn magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Coeff for i64 {
    fn magnitude(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Coeff for BigInt {
    fn magnitude(&self) -> BigUint {
        self.magnitude().clone()
    }
}

type Column<T> = Vec<(u32, T)>;

struct Eliminator<T> {
    cols: Vec<Column<T>>,
    col_alive: Vec<bool>,
    /// Column has an entry in `heap` (whose key may be stale).
    queued: Vec<bool>,
    /// Columns that may hold an entry in each row; may contain stale ids.
    row_cols: Vec<Vec<u32>>,
    /// Exact number of live entries per row.
    row_count: Vec<u32>,
    row_alive: Vec<bool>,
    units: usize,
    diagonal: Vec<BigUint>,
    heap: BinaryHeap<Reverse<(u64, u32, u32)>>,
    scratch: Column<T>,
    /// Unit pivot columns, recorded until the first general pivot.
    early: Option<Vec<u32>>,
    early_done: Vec<u32>,
}

impl<T: Coeff> Eliminator<T> {
    fn new(nrows: usize, cols: Vec<Column<T>>, record: bool) -> Self {
        let mut row_cols = vec![Vec::new(); nrows];
        let mut row_count = vec![0u32; nrows];
        for (j, col) in cols.iter().enumerate() {
            for (r, _) in col {
                row_cols[*r as usize].push(j as u32);
                row_count[*r as usize] += 1;
            }
        }
        let col_alive = cols.iter().map(|c| !c.is_empty()).collect();
        let ncols = cols.len();
        Eliminator {
            cols,
            col_alive,
            queued: vec![false; ncols],
            row_cols,
            row_count,
            row_alive: vec![true; nrows],
            units: 0,
            diagonal: Vec::new(),
            heap: BinaryHeap::new(),
            scratch: Vec::new(),
            early: record.then(Vec::new),
            early_done: Vec::new(),
        }
    }

    fn promote<U: Coeff>(self) -> Eliminator<U>
    where
        T: Into<U>,
    {
        Eliminator {
            cols: self
                .cols
                .into_iter()
                .map(|c| c.into_iter().map(|(r, v)| (r, v.into())).collect())
                .collect(),
            col_alive: self.col_alive,
            queued: self.queued,
            row_cols: self.row_cols,
            row_count: self.row_count,
            row_alive: self.row_alive,
            units: self.units,
            diagonal: self.diagonal,
            heap: BinaryHeap::new(),
            scratch: Vec::new(),
            early: self.early,
            early_done: self.early_done,
        }
    }

    fn finish(self) -> (SmithForm, Vec<u32>) {
        let rank = self.units + self.diagonal.len();
        let early = match self.early {
            Some(list) => list,
            None => self.early_done,
        };
        (SmithForm { rank, torsion: normalize_diagonal(self.diagonal) }, early)
    }

    fn run(&mut self) -> Result<(), Overflow> {
        loop {
            self.unit_phase()?;
            let Some((r, c)) = self.min_abs_entry() else { return Ok(()) };
            if let Some(list) = self.early.take() {
                self.early_done = list;
            }
            self.general_pivot(r, c)?;
        }
    }

    fn entry(&self, r: u32, c: usize) -> Option<&T> {
        let col = &self.cols[c];
        col.binary_search_by_key(&r, |e| e.0).ok().map(|k| &col[k].1)
    }

    /// Live columns with an entry in row `r`, sorted; compacts the list.
    fn columns_in_row(&mut self, r: u32) -> Vec<u32> {
        let mut list = std::mem::take(&mut self.row_cols[r as usize]);
        list.sort_unstable();
        list.dedup();
        list.retain(|&c| self.col_alive[c as usize] && self.entry(r, c as usize).is_some());
        self.row_cols[r as usize] = list.clone();
        list
    }

    /// Cheapest unit entry of column `c` as `(cost, row)`.
    fn unit_cost(&self, c: usize) -> Option<(u64, u32)> {
        let col = &self.cols[c];
        let len = col.len() as u64;
        col.iter()
            .filter(|(r, v)| self.row_alive[*r as usize] && v.abs().is_one())
            .map(|(r, _)| ((len - 1) * (self.row_count[*r as usize] as u64 - 1), *r))
            .min()
    }

    fn enqueue(&mut self, c: usize, key: u64) {
        let tie = (c as u32).wrapping_mul(2654435761);
        self.heap.push(Reverse((key, tie, c as u32)));
        self.queued[c] = true;
    }

    fn unit_phase(&mut self) -> Result<(), Overflow> {
        self.heap.clear();
        self.queued.iter_mut().for_each(|q| *q = false);
        for c in 0..self.cols.len() {
            if self.col_alive[c] {
                if let Some((cost, _)) = self.unit_cost(c) {
                    self.enqueue(c, cost);
                }
            }
        }
        // Keys are refreshed lazily: a column whose cost has grown since it
        // was queued is pushed back with the new cost.
        while let Some(Reverse((key, _, c))) = self.heap.pop() {
            let c = c as usize;
            self.queued[c] = false;
            if !self.col_alive[c] {
                continue;
            }
            let Some((cost, r)) = self.unit_cost(c) else { continue };
            if cost > key {
                self.enqueue(c, cost);
                continue;
            }
            self.eliminate_unit(r, c)?;
        }
        Ok(())
    }

    /// `dst -= q * src`, keeping row bookkeeping exact.
    fn axpy(&mut self, dst: usize, q: &T, src: &[(u32, T)]) -> Result<(), Overflow> {
        let mut out = std::mem::take(&mut self.scratch);
        out.clear();
        let old = &self.cols[dst];
        let (mut i, mut j) = (0, 0);
        let mut result = Ok(());
        while i < old.len() || j < src.len() {
            if j == src.len() || (i < old.len() && old[i].0 < src[j].0) {
                out.push(old[i].clone());
                i += 1;
            } else if i == old.len() || src[j].0 < old[i].0 {
                let (r, v) = &src[j];
                match q.checked_mul(v).and_then(|p| T::zero().checked_sub(&p)) {
                    Some(v) => out.push((*r, v)),
                    None => {
                        result = Err(Overflow);
                        break;
                    }
                }
                j += 1;
            } else {
                let v = q.checked_mul(&src[j].1).and_then(|p| old[i].1.checked_sub(&p));
                match v {
                    Some(v) if v.is_zero() => {}
                    Some(v) => out.push((old[i].0, v)),
                    None => {
                        result = Err(Overflow);
                        break;
                    }
                }
                i += 1;
                j += 1;
            }
        }
        if result.is_err() {
            self.scratch = out;
            return result;
        }
        // Row bookkeeping: rows gained and lost relative to the old column.
        let old = std::mem::replace(&mut self.cols[dst], out);
        let new = &self.cols[dst];
        let (mut i, mut k) = (0, 0);
        while i < old.len() || k < new.len() {
            if k == new.len() || (i < old.len() && old[i].0 < new[k].0) {
                self.row_count[old[i].0 as usize] -= 1;
                i += 1;
            } else if i == old.len() || new[k].0 < old[i].0 {
                let r = new[k].0 as usize;
                self.row_count[r] += 1;
                self.row_cols[r].push(dst as u32);
                k += 1;
            } else {
                i += 1;
                k += 1;
            }
        }
        self.scratch = old;
        Ok(())
    }

    fn kill(&mut self, r: u32, c: usize) {
        let col = std::mem::take(&mut self.cols[c]);
        for (r2, _) in &col {
            self.row_count[*r2 as usize] -= 1;
        }
        self.col_alive[c] = false;
        self.row_alive[r as usize] = false;
    }

    fn eliminate_unit(&mut self, r: u32, c: usize) -> Result<(), Overflow> {
        let others = self.columns_in_row(r);
        let pivot = std::mem::take(&mut self.cols[c]);
        let u = pivot[pivot.binary_search_by_key(&r, |e| e.0).unwrap()].1.clone();
        for c2 in others {
            let c2 = c2 as usize;
            if c2 == c {
                continue;
            }
            let w = self.entry(r, c2).unwrap().clone();
            // u is its own inverse
            let q = w.checked_mul(&u).ok_or(Overflow);
            if let Err(e) = q.and_then(|q| self.axpy(c2, &q, &pivot)) {
                self.cols[c] = pivot;
                return Err(e);
            }
            if !self.queued[c2] {
                if let Some((cost, _)) = self.unit_cost(c2) {
                    self.enqueue(c2, cost);
                }
            }
        }
        self.cols[c] = pivot;
        self.kill(r, c);
        self.units += 1;
        if let Some(list) = &mut self.early {
            list.push(c as u32);
        }
        Ok(())
    }

    fn min_abs_entry(&self) -> Option<(u32, usize)> {
        let mut best: Option<(T, u64, u32, usize)> = None;
        for (c, col) in self.cols.iter().enumerate() {
            if !self.col_alive[c] {
                continue;
            }
            for (r, v) in col {
                let a = v.abs();
                let cost = (col.len() as u64 - 1) * (self.row_count[*r as usize] as u64 - 1);
                let better = match &best {
                    None => true,
                    Some((ba, bc, _, _)) => a < *ba || (a == *ba && cost < *bc),
                };
                if better {
                    best = Some((a, cost, *r, c));
                }
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn general_pivot(&mut self, mut r: u32, mut c: usize) -> Result<(), Overflow> {
        loop {
            let v = self.entry(r, c).unwrap().clone();
            let others = self.columns_in_row(r);
            let pivot = std::mem::take(&mut self.cols[c]);
            let mut smaller: Option<(T, usize)> = None;
            for c2 in others {
                let c2 = c2 as usize;
                if c2 == c {
                    continue;
                }
                let w = self.entry(r, c2).unwrap().clone();
                let q = w.div_floor(&v);
                if !q.is_zero() {
                    if let Err(e) = self.axpy(c2, &q, &pivot) {
                        self.cols[c] = pivot;
                        return Err(e);
                    }
                }
                if let Some(rem) = self.entry(r, c2) {
                    let a = rem.abs();
                    if smaller.as_ref().is_none_or(|(b, _)| a < *b) {
                        smaller = Some((a, c2));
                    }
                }
            }
            self.cols[c] = pivot;
            if let Some((_, c2)) = smaller {
                c = c2;
                continue;
            }
            // Row r is now the singleton (r, c): row operations against it
            // change column c only.
            let mut col = std::mem::take(&mut self.cols[c]);
            let mut next: Option<(T, u32)> = None;
            col.retain_mut(|(r2, w)| {
                if *r2 == r {
                    return true;
                }
                *w = w.mod_floor(&v);
                if w.is_zero() {
                    self.row_count[*r2 as usize] -= 1;
                    false
                } else {
                    let a = w.abs();
                    if next.as_ref().is_none_or(|(b, _)| a < *b) {
                        next = Some((a, *r2));
                    }
                    true
                }
            });
            self.cols[c] = col;
            if let Some((_, r2)) = next {
                r = r2;
                continue;
            }
            if v.abs().is_one() {
                self.units += 1;
            } else {
                self.diagonal.push(v.magnitude());
            }
            self.kill(r, c);
            return Ok(());
        }
    }
}
