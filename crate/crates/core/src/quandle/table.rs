use std::fmt;

use thiserror::Error;

/// Whether a table is only required to be a rack or a full quandle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Rack,
    Quandle,
}

/// Axiom violations found while validating an operation table.
///
/// Witnesses use the same 0-based labels as [`QuandleTable`]; `Display`
/// renders them 1-based to match the table files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("entry ({}, {}) = {value} is out of range 1..={size}", .a + 1, .b + 1)]
    OutOfRangeEntry { a: usize, b: usize, value: i64, size: usize },
    #[error("column {} is not a permutation (x*{} is not invertible)", .0 + 1, .0 + 1)]
    NotAPermutationColumn(usize),
    #[error("right self-distributivity fails at a={}, b={}, c={}", .a + 1, .b + 1, .c + 1)]
    DistributivityFail { a: usize, b: usize, c: usize },
    #[error("idempotency fails at a={}", .0 + 1)]
    IdempotencyFail(usize),
}

/// A finite rack or quandle stored as its full operation table,
/// `table[a * n + b] = a * b`.
///
/// Values of this type have always passed [`QuandleTable::validate`]; there is
/// no way to mutate one afterwards.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuandleTable {
    size: usize,
    kind: Kind,
    table: Vec<usize>,
}

impl QuandleTable {
    /// Validates a square grid of 0-based entries.
    ///
    /// Checks, in order: shape, entry range, column invertibility,
    /// idempotency (quandles only), then right self-distributivity
    /// exhaustively. The first failure is returned with a witness.
    pub fn validate<R: AsRef<[i64]>>(raw: &[R], kind: Kind) -> Result<Self, TableError> {
        let n = raw.len();
        if n == 0 {
            return Err(TableError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (a, row) in raw.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(TableError::Ragged { row: a, len: row.len(), expected: n });
            }
            for (b, &v) in row.iter().enumerate() {
                if v < 0 || v as usize >= n {
                    return Err(TableError::OutOfRangeEntry { a, b, value: v + 1, size: n });
                }
                table.push(v as usize);
            }
        }
        Self::from_flat(n, table, kind)
    }

    /// Validates a flat row-major table of 0-based entries (length `n * n`).
    pub fn from_flat(n: usize, table: Vec<usize>, kind: Kind) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::Empty);
        }
        assert_eq!(table.len(), n * n, "flat table must have n*n entries");
        for (i, &v) in table.iter().enumerate() {
            if v >= n {
                return Err(TableError::OutOfRangeEntry { a: i / n, b: i % n, value: v as i64 + 1, size: n });
            }
        }
        let q = QuandleTable { size: n, kind, table };
        q.check_axioms()?;
        Ok(q)
    }

    fn check_axioms(&self) -> Result<(), TableError> {
        let n = self.size;
        let mut seen = vec![false; n];
        for b in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for a in 0..n {
                let v = self.op(a, b);
                if seen[v] {
                    return Err(TableError::NotAPermutationColumn(b));
                }
                seen[v] = true;
            }
        }
        if self.kind == Kind::Quandle {
            if let Some(a) = (0..n).find(|&a| self.op(a, a) != a) {
                return Err(TableError::IdempotencyFail(a));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.op(a, b);
                for c in 0..n {
                    if self.op(ab, c) != self.op(self.op(a, c), self.op(b, c)) {
                        return Err(TableError::DistributivityFail { a, b, c });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn is_quandle(&self) -> bool {
        self.kind == Kind::Quandle
    }

    /// `a * b`.
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// The unique `c` with `c * b = a`.
    ///
    /// Found by iterating `x -> x * b` from `a` until the orbit returns to
    /// `a`; the element just before the return is the preimage.
    pub fn op_bar(&self, a: usize, b: usize) -> usize {
        let mut prev = a;
        let mut cur = self.op(a, b);
        while cur != a {
            prev = cur;
            cur = self.op(cur, b);
        }
        prev
    }

    /// Row `a` of the table: `x -> a * x`.
    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    /// The right translation `x -> x * b` as a permutation.
    pub fn right_translation(&self, b: usize) -> Vec<usize> {
        (0..self.size).map(|a| self.op(a, b)).collect()
    }

    /// 0-based rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// Re-labels the elements with a permutation: the result has
    /// `perm[a] * perm[b] = perm[a * b]`.
    pub fn relabel(&self, perm: &[usize]) -> QuandleTable {
        let n = self.size;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.op(a, b)];
            }
        }
        QuandleTable { size: n, kind: self.kind, table }
    }

    /// Builds a table without axiom checks. Only for tests that need
    /// deliberately broken operations.
    #[doc(hidden)]
    pub fn new_unchecked(n: usize, table: Vec<usize>, kind: Kind) -> QuandleTable {
        assert_eq!(table.len(), n * n);
        QuandleTable { size: n, kind, table }
    }
}

impl fmt::Debug for QuandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QuandleTable({:?}, n = {})", self.kind, self.size)?;
        for row in self.table.chunks(self.size) {
            let line: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "  {}", line.join(" "))?;
        }
        Ok(())
    }
}
