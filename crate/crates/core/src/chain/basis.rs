use serde::{Deserialize, Serialize};

/// Which chain complex: rack, degenerate subcomplex, or quandle quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    #[serde(rename = "R")]
    Rack,
    #[serde(rename = "D")]
    Degenerate,
    #[serde(rename = "Q")]
    Quandle,
}

impl Theory {
    pub const ALL: [Theory; 3] = [Theory::Rack, Theory::Degenerate, Theory::Quandle];

    pub fn letter(self) -> char {
        match self {
            Theory::Rack => 'R',
            Theory::Degenerate => 'D',
            Theory::Quandle => 'Q',
        }
    }
}

impl std::str::FromStr for Theory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "R" | "r" | "rack" => Ok(Theory::Rack),
            "D" | "d" | "degenerate" => Ok(Theory::Degenerate),
            "Q" | "q" | "quandle" => Ok(Theory::Quandle),
            _ => Err(format!("unknown theory {s:?} (expected R, D or Q)")),
        }
    }
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Lexicographically ordered basis of `C_n^W(X)`.
///
/// Rack and non-degenerate tuples are ranked in closed form; degenerate
/// tuples keep a sorted list of their rack ranks.
#[derive(Debug, Clone)]
pub struct ChainBasis {
    theory: Theory,
    degree: usize,
    base: usize,
    len: usize,
    /// Rack ranks of the degenerate tuples, ascending (degenerate theory only).
    degenerate: Vec<u64>,
}

/// Number of rack `n`-tuples over `base` elements, or `None` on overflow.
pub fn rack_count(base: usize, degree: usize) -> Option<usize> {
    (0..degree).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// Number of `n`-tuples with no two equal neighbours.
pub fn nondegenerate_count(base: usize, degree: usize) -> Option<usize> {
    if degree == 0 {
        return Some(1);
    }
    rack_count(base.saturating_sub(1), degree - 1)?.checked_mul(base)
}

impl ChainBasis {
    /// Assumes the caller has checked the size budget.
    pub(crate) fn new(base: usize, degree: usize, theory: Theory) -> ChainBasis {
        let rack = rack_count(base, degree).expect("basis size checked by caller");
        let (len, degenerate) = match theory {
            Theory::Rack => (rack, Vec::new()),
            Theory::Quandle => (nondegenerate_count(base, degree).unwrap(), Vec::new()),
            Theory::Degenerate => {
                let mut buf = vec![0; degree];
                let list: Vec<u64> = (0..rack as u64)
                    .filter(|&i| {
                        decode_rack(i, base, &mut buf);
                        is_degenerate(&buf)
                    })
                    .collect();
                (list.len(), list)
            }
        };
        ChainBasis { theory, degree, base, len, degenerate }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Writes the `i`-th basis tuple into `out` (length = degree).
    pub fn tuple_into(&self, i: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.degree);
        match self.theory {
            Theory::Rack => decode_rack(i as u64, self.base, out),
            Theory::Degenerate => decode_rack(self.degenerate[i], self.base, out),
            Theory::Quandle => {
                let mut rest = i;
                let radix = self.base - 1;
                for k in (1..self.degree).rev() {
                    out[k] = rest % radix;
                    rest /= radix;
                }
                if self.degree > 0 {
                    out[0] = rest;
                }
                for k in 1..self.degree {
                    if out[k] >= out[k - 1] {
                        out[k] += 1;
                    }
                }
            }
        }
    }

    pub fn tuple(&self, i: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        self.tuple_into(i, &mut out);
        out
    }

    /// Position of `t` in this basis, or `None` when `t` does not belong to it.
    pub fn index_of(&self, t: &[usize]) -> Option<usize> {
        debug_assert_eq!(t.len(), self.degree);
        match self.theory {
            Theory::Rack => Some(encode_rack(t, self.base) as usize),
            Theory::Degenerate => {
                if !is_degenerate(t) {
                    return None;
                }
                self.degenerate.binary_search(&encode_rack(t, self.base)).ok()
            }
            Theory::Quandle => {
                if is_degenerate(t) {
                    return None;
                }
                let Some((&first, _)) = t.split_first() else { return Some(0) };
                let radix = self.base - 1;
                let mut idx = first;
                for k in 1..t.len() {
                    let d = if t[k] > t[k - 1] { t[k] - 1 } else { t[k] };
                    idx = idx * radix + d;
                }
                Some(idx)
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.len).map(|i| self.tuple(i))
    }
}

pub fn is_degenerate(t: &[usize]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

fn decode_rack(mut i: u64, base: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = (i % base as u64) as usize;
        i /= base as u64;
    }
}

fn encode_rack(t: &[usize], base: usize) -> u64 {
    t.iter().fold(0u64, |acc, &x| acc * base as u64 + x as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_for_six_points() {
        assert_eq!(ChainBasis::new(6, 2, Theory::Rack).len(), 36);
        assert_eq!(ChainBasis::new(6, 2, Theory::Quandle).len(), 30);
        assert_eq!(ChainBasis::new(6, 3, Theory::Degenerate).len(), 66);
    }

    #[test]
    fn degree_zero() {
        assert_eq!(ChainBasis::new(4, 0, Theory::Rack).len(), 1);
        assert_eq!(ChainBasis::new(4, 0, Theory::Quandle).len(), 1);
        assert_eq!(ChainBasis::new(4, 0, Theory::Degenerate).len(), 0);
        assert_eq!(ChainBasis::new(4, 1, Theory::Degenerate).len(), 0);
    }

    #[test]
    fn enumeration_is_lexicographic_and_indexed() {
        for theory in Theory::ALL {
            let b = ChainBasis::new(4, 3, theory);
            let tuples: Vec<_> = b.iter().collect();
            assert!(tuples.windows(2).all(|w| w[0] < w[1]), "{theory:?}");
            for (i, t) in tuples.iter().enumerate() {
                assert_eq!(b.index_of(t), Some(i));
                match theory {
                    Theory::Degenerate => assert!(is_degenerate(t)),
                    Theory::Quandle => assert!(!is_degenerate(t)),
                    Theory::Rack => {}
                }
            }
        }
        let d = ChainBasis::new(4, 3, Theory::Degenerate).len();
        let q = ChainBasis::new(4, 3, Theory::Quandle).len();
        assert_eq!(d + q, 64);
    }

    #[test]
    fn membership() {
        let q = ChainBasis::new(3, 2, Theory::Quandle);
        assert_eq!(q.index_of(&[1, 1]), None);
        let d = ChainBasis::new(3, 2, Theory::Degenerate);
        assert_eq!(d.index_of(&[1, 2]), None);
        assert_eq!(d.index_of(&[1, 1]), Some(1));
    }
}
