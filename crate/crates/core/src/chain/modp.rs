//! Rank over the prime field `F_p`.
//!
//! Kept separate from the integer eliminator so mod-p homology is an
//! independent check on the Smith normal form route.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::sparse::SparseIntMatrix;

/// Rank of `m` reduced modulo the prime `p`.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u32) -> usize {
    rank_mod_p_with_clearing(m, p).0
}

/// Rank modulo `p` and the pivot columns, ascending. Elimination only
/// subtracts pivot columns from other columns, so these rows may be
/// dropped from the next boundary matrix without changing its rank.
pub fn rank_mod_p_with_clearing(m: &SparseIntMatrix, p: u32) -> (usize, Vec<usize>) {
    assert!(p >= 2 && is_prime(p), "{p} is not prime");
    let pp = p as i64;
    let cols: Vec<Vec<(u32, u32)>> = m
        .columns()
        .iter()
        .map(|col| {
            col.iter()
                .filter_map(|&(r, v)| {
                    let v = v.rem_euclid(pp) as u32;
                    (v != 0).then_some((r, v))
                })
                .collect()
        })
        .collect();
    let pivots = FieldElim::new(m.rows(), cols, p).run();
    (pivots.len(), pivots)
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inverse(a: u32, p: u32) -> u32 {
    // Fermat
    let mut result = 1u64;
    let mut base = a as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

struct FieldElim {
    p: u32,
    cols: Vec<Vec<(u32, u32)>>,
    alive: Vec<bool>,
    row_cols: Vec<Vec<u32>>,
    row_count: Vec<u32>,
}

impl FieldElim {
    fn new(nrows: usize, cols: Vec<Vec<(u32, u32)>>, p: u32) -> Self {
        let mut row_cols = vec![Vec::new(); nrows];
        let mut row_count = vec![0; nrows];
        for (j, c) in cols.iter().enumerate() {
            for &(r, _) in c {
                row_cols[r as usize].push(j as u32);
                row_count[r as usize] += 1;
            }
        }
        let alive = vec![true; cols.len()];
        FieldElim { p, cols, alive, row_cols, row_count }
    }

    fn cost(&self, c: usize) -> Option<(u64, u32)> {
        let len = self.cols[c].len() as u64;
        self.cols[c]
            .iter()
            .map(|&(r, _)| ((len - 1) * (self.row_count[r as usize] as u64 - 1), r))
            .min()
    }

    fn value(&self, c: usize, r: u32) -> Option<u32> {
        let col = &self.cols[c];
        col.binary_search_by_key(&r, |e| e.0).ok().map(|k| col[k].1)
    }

    fn run(mut self) -> Vec<usize> {
        let mut heap = BinaryHeap::new();
        for c in 0..self.cols.len() {
            if let Some((k, _)) = self.cost(c) {
                heap.push(Reverse((k, c as u32)));
            }
        }
        let mut pivots = Vec::new();
        while let Some(Reverse((key, c))) = heap.pop() {
            let c = c as usize;
            if !self.alive[c] {
                continue;
            }
            let Some((cost, r)) = self.cost(c) else { continue };
            if cost > key {
                heap.push(Reverse((cost, c as u32)));
                continue;
            }
            let pivot = std::mem::take(&mut self.cols[c]);
            self.alive[c] = false;
            let inv = inverse(self.value_in(&pivot, r), self.p);
            let mut others = std::mem::take(&mut self.row_cols[r as usize]);
            others.sort_unstable();
            others.dedup();
            for c2 in others {
                let c2 = c2 as usize;
                if !self.alive[c2] {
                    continue;
                }
                let Some(w) = self.value(c2, r) else { continue };
                let q = (w as u64 * inv as u64 % self.p as u64) as u32;
                self.subtract(c2, q, &pivot);
                if let Some((k, _)) = self.cost(c2) {
                    heap.push(Reverse((k, c2 as u32)));
                }
            }
            for &(r2, _) in &pivot {
                self.row_count[r2 as usize] -= 1;
            }
            pivots.push(c);
        }
        pivots.sort_unstable();
        pivots
    }

    fn value_in(&self, col: &[(u32, u32)], r: u32) -> u32 {
        col[col.binary_search_by_key(&r, |e| e.0).unwrap()].1
    }

    /// `cols[dst] -= q * src` over `F_p`.
    fn subtract(&mut self, dst: usize, q: u32, src: &[(u32, u32)]) {
        let p = self.p as u64;
        let neg = |v: u32| ((p - (q as u64 * v as u64) % p) % p) as u32;
        let old = std::mem::take(&mut self.cols[dst]);
        let mut out = Vec::with_capacity(old.len() + src.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < src.len() {
            if j == src.len() || (i < old.len() && old[i].0 < src[j].0) {
                out.push(old[i]);
                i += 1;
            } else if i == old.len() || src[j].0 < old[i].0 {
                let (r, v) = src[j];
                out.push((r, neg(v)));
                self.row_count[r as usize] += 1;
                self.row_cols[r as usize].push(dst as u32);
                j += 1;
            } else {
                let r = old[i].0;
                let v = ((old[i].1 as u64 + neg(src[j].1) as u64) % p) as u32;
                if v == 0 {
                    self.row_count[r as usize] -= 1;
                } else {
                    out.push((r, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.cols[dst] = out;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_drops_at_dividing_primes() {
        let m = SparseIntMatrix::from_dense(&[[2, 0], [0, 6]]);
        assert_eq!(rank_mod_p(&m, 2), 0);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }

    #[test]
    fn dependent_columns() {
        let m = SparseIntMatrix::from_dense(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]);
        assert_eq!(rank_mod_p(&m, 5), 2);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&SparseIntMatrix::zeros(3, 3), 7), 0);
    }

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(a as u64 * inverse(a, p) as u64 % p as u64, 1);
            }
        }
    }
}
