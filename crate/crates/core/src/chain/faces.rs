//! Face maps of the rack complex on single tuples (1-based face index `i`).

use crate::quandle::QuandleTable;

/// `d_i^{(*_0)}`: delete the `i`-th coordinate.
pub fn face_plain(x: &[usize], i: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(x.len() - 1);
    out.extend_from_slice(&x[..i - 1]);
    out.extend_from_slice(&x[i..]);
    out
}

/// `d_i^{(*)}`: delete the `i`-th coordinate after acting by it on the
/// coordinates to its left.
pub fn face_star(q: &QuandleTable, x: &[usize], i: usize) -> Vec<usize> {
    let xi = x[i - 1];
    let mut out = Vec::with_capacity(x.len() - 1);
    out.extend(x[..i - 1].iter().map(|&a| q.op(a, xi)));
    out.extend_from_slice(&x[i..]);
    out
}

/// Terms of the rack boundary
/// `sum_{i=1}^n (-1)^i (d_i^{(*_0)} - d_i^{(*)})(x)`, uncollected.
///
/// The `i = 1` pair is included; its two faces always coincide and cancel.
pub fn rack_boundary_terms(q: &QuandleTable, x: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::with_capacity(2 * x.len());
    for i in 1..=x.len() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        out.push((face_plain(x, i), sign));
        out.push((face_star(q, x, i), -sign));
    }
    out
}
