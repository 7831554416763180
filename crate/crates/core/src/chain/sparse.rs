use std::fmt;

/// Exact integer matrix in compressed column form.
///
/// Each column is a list of `(row, value)` sorted by row with no zero values
/// and no repeated rows. Boundary coefficients are bounded by twice the degree,
/// so `i64` storage is exact here; elimination promotes to arbitrary precision
/// on overflow.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds a matrix from columns given as unsorted `(row, value)` lists;
    /// duplicate rows are summed and zeros dropped.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = cols.into_iter().map(normalize_column).collect();
        let m = SparseIntMatrix { rows, cols };
        debug_assert!(m.cols.iter().flatten().all(|&(r, _)| (r as usize) < rows));
        m
    }

    /// Builds a matrix from 0-based `(i, j, v)` triplets, summing duplicates.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i}, {j}) out of bounds");
            columns[j].push((i as u32, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.as_ref().iter().enumerate().map(move |(j, &v)| (i, j, v)));
        Self::from_triplets(nrows, ncols, triplets)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.cols
    }

    pub(crate) fn into_columns(self) -> Vec<Vec<(u32, i64)>> {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        let col = &self.cols[j];
        col.binary_search_by_key(&(i as u32), |&(r, _)| r).map_or(0, |k| col[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Entries in column-major order as 0-based `(i, j, v)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.iter().map(move |&(i, v)| (i as usize, j, v)))
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (i, j, v) in self.triplets() {
            cols[i].push((j as u32, v));
        }
        SparseIntMatrix { rows: self.cols(), cols }
    }

    /// `self * rhs`, with checked arithmetic. Panics on overflow.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols(), rhs.rows, "dimension mismatch");
        let mut acc = vec![0i64; self.rows];
        let mut touched = Vec::new();
        let cols = rhs
            .cols
            .iter()
            .map(|rcol| {
                for &(k, w) in rcol {
                    for &(i, v) in &self.cols[k as usize] {
                        let slot = &mut acc[i as usize];
                        if *slot == 0 {
                            touched.push(i);
                        }
                        *slot = slot.checked_add(v.checked_mul(w).expect("overflow")).expect("overflow");
                    }
                }
                touched.sort_unstable();
                let col: Vec<(u32, i64)> = touched
                    .drain(..)
                    .filter_map(|i| {
                        let v = std::mem::take(&mut acc[i as usize]);
                        (v != 0).then_some((i, v))
                    })
                    .collect();
                col
            })
            .collect();
        SparseIntMatrix { rows: self.rows, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols()]; self.rows];
        for (i, j, v) in self.triplets() {
            d[i][j] = v;
        }
        d
    }
}

fn normalize_column(mut col: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseIntMatrix({}x{}, nnz = {})", self.rows, self.cols(), self.nnz())
    }
}
