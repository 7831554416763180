use thiserror::Error;

use super::classify::orbits;
use super::table::QuandleTable;

pub const DEFAULT_SEARCH_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("isomorphism search exceeded {0} nodes")]
    SearchBudgetExceeded(usize),
}

/// Decides whether a bijection `h` with `h(a * b) = h(a) *' h(b)` exists.
pub fn are_isomorphic(q1: &QuandleTable, q2: &QuandleTable) -> Result<bool, IsoError> {
    Ok(find_isomorphism(q1, q2, DEFAULT_SEARCH_BUDGET)?.is_some())
}

/// Backtracking search for an isomorphism, returned as `h[a]`.
///
/// Candidates are pruned by a per-element signature (orbit size, stabilizer
/// size, cycle type of the right translation); each choice is propagated
/// through the product closure of the already-mapped elements.
pub fn find_isomorphism(q1: &QuandleTable, q2: &QuandleTable, budget: usize) -> Result<Option<Vec<usize>>, IsoError> {
    let n = q1.size();
    if n != q2.size() {
        return Err(IsoError::SizeMismatch(n, q2.size()));
    }
    let s1 = signatures(q1);
    let s2 = signatures(q2);
    let mut sorted1 = s1.clone();
    let mut sorted2 = s2.clone();
    sorted1.sort();
    sorted2.sort();
    if sorted1 != sorted2 {
        return Ok(None);
    }
    let mut search = Search {
        q1,
        q2,
        s1: &s1,
        s2: &s2,
        h: vec![usize::MAX; n],
        used: vec![false; n],
        mapped: Vec::with_capacity(n),
        nodes: 0,
        budget,
    };
    if search.solve()? {
        Ok(Some(search.h))
    } else {
        Ok(None)
    }
}

type Signature = (usize, usize, Vec<usize>);

fn signatures(q: &QuandleTable) -> Vec<Signature> {
    let n = q.size();
    let orb = orbits(q);
    (0..n)
        .map(|a| {
            let orbit_size = orb.blocks[orb.orbit_of[a]].len();
            let stab = (0..n).filter(|&x| q.op(a, x) == a).count();
            (orbit_size, stab, cycle_type(&q.right_translation(a)))
        })
        .collect()
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

struct Search<'a> {
    q1: &'a QuandleTable,
    q2: &'a QuandleTable,
    s1: &'a [Signature],
    s2: &'a [Signature],
    h: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
    nodes: usize,
    budget: usize,
}

impl Search<'_> {
    fn solve(&mut self) -> Result<bool, IsoError> {
        let n = self.q1.size();
        let Some(a) = (0..n).find(|&a| self.h[a] == usize::MAX) else {
            return Ok(true);
        };
        for t in 0..n {
            if self.used[t] || self.s1[a] != self.s2[t] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(IsoError::SearchBudgetExceeded(self.budget));
            }
            let mark = self.mapped.len();
            if self.assign_and_propagate(a, t) && self.solve()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn assign(&mut self, a: usize, t: usize) -> bool {
        if self.used[t] || self.s1[a] != self.s2[t] {
            return false;
        }
        self.h[a] = t;
        self.used[t] = true;
        self.mapped.push(a);
        true
    }

    fn assign_and_propagate(&mut self, a: usize, t: usize) -> bool {
        if !self.assign(a, t) {
            return false;
        }
        let mut next = self.mapped.len() - 1;
        while next < self.mapped.len() {
            let x = self.mapped[next];
            next += 1;
            // pairs involving x with everything mapped so far (including x)
            let mut i = 0;
            while i < self.mapped.len() {
                let y = self.mapped[i];
                i += 1;
                for (l, r) in [(x, y), (y, x)] {
                    let z = self.q1.op(l, r);
                    let target = self.q2.op(self.h[l], self.h[r]);
                    if self.h[z] == usize::MAX {
                        if !self.assign(z, target) {
                            return false;
                        }
                    } else if self.h[z] != target {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for a in self.mapped.drain(mark..) {
            self.used[self.h[a]] = false;
            self.h[a] = usize::MAX;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{corpus, make_alexander, make_conjugation_class, make_dihedral, make_trivial};

    fn is_hom(q1: &QuandleTable, q2: &QuandleTable, h: &[usize]) -> bool {
        let n = q1.size();
        (0..n).all(|a| (0..n).all(|b| h[q1.op(a, b)] == q2.op(h[a], h[b])))
    }

    #[test]
    fn conjugation_class_of_four_cycles_is_qs6() {
        let c = make_conjugation_class(4, &[4]).unwrap();
        let h = find_isomorphism(&c, &corpus::qs6(), DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        assert!(is_hom(&c, &corpus::qs6(), &h));
    }

    #[test]
    fn trivial_is_not_dihedral() {
        assert!(!are_isomorphic(&make_trivial(3).unwrap(), &make_dihedral(3).unwrap()).unwrap());
    }

    #[test]
    fn dihedral_three_is_alexander_minus_one() {
        let r3 = make_dihedral(3).unwrap();
        let a = make_alexander(3, 2).unwrap();
        let h = find_isomorphism(&r3, &a, DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
        assert!(is_hom(&r3, &a, &h));
    }

    #[test]
    fn relabelled_tables_are_isomorphic() {
        let q = corpus::q12_10();
        let perm = [5, 3, 11, 0, 7, 1, 9, 2, 10, 4, 8, 6];
        assert!(are_isomorphic(&q, &q.relabel(&perm)).unwrap());
    }

    #[test]
    fn size_mismatch() {
        assert_eq!(
            are_isomorphic(&make_trivial(2).unwrap(), &make_trivial(3).unwrap()),
            Err(IsoError::SizeMismatch(2, 3))
        );
    }

    #[test]
    fn two_six_element_conjugation_quandles_differ() {
        // transpositions of S_4 vs 4-cycles of S_4: same size, not isomorphic
        let t = make_conjugation_class(4, &[2, 1, 1]).unwrap();
        let c = make_conjugation_class(4, &[4]).unwrap();
        assert!(!are_isomorphic(&t, &c).unwrap());
    }
}
