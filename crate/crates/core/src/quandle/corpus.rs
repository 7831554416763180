//! Operation tables transcribed from the literature, 1-based as printed.

use super::table::{Kind, QuandleTable};

/// `QS(6)`, the 4-cycles of `S_4` under conjugation.
pub const QS6_ROWS: [[usize; 6]; 6] = [
    [1, 1, 6, 5, 3, 4],
    [2, 2, 5, 6, 4, 3],
    [5, 6, 3, 3, 2, 1],
    [6, 5, 4, 4, 1, 2],
    [4, 3, 1, 2, 5, 5],
    [3, 4, 2, 1, 6, 6],
];

/// A non-connected 4-AQ quandle: `R_3` extended over the trivial quandle `T_2`.
pub const R3_X_T2_ROWS: [[usize; 6]; 6] = [
    [1, 3, 2, 1, 1, 1],
    [3, 2, 1, 2, 2, 2],
    [2, 1, 3, 3, 3, 3],
    [4, 4, 4, 4, 6, 5],
    [5, 5, 5, 6, 5, 4],
    [6, 6, 6, 5, 4, 6],
];

/// Rig quandle `Q(12,10)`, a 3-AQ quandle with `|Inn| = 216`.
pub const Q12_10_ROWS: [[usize; 12]; 12] = [
    [1, 1, 1, 12, 11, 10, 5, 4, 6, 9, 7, 8],
    [2, 2, 2, 11, 10, 12, 6, 5, 4, 8, 9, 7],
    [3, 3, 3, 10, 12, 11, 4, 6, 5, 7, 8, 9],
    [8, 9, 7, 4, 4, 4, 10, 12, 11, 3, 2, 1],
    [7, 8, 9, 5, 5, 5, 11, 10, 12, 2, 1, 3],
    [9, 7, 8, 6, 6, 6, 12, 11, 10, 1, 3, 2],
    [11, 12, 10, 3, 1, 2, 7, 7, 7, 4, 5, 6],
    [12, 10, 11, 1, 2, 3, 8, 8, 8, 5, 6, 4],
    [10, 11, 12, 2, 3, 1, 9, 9, 9, 6, 4, 5],
    [6, 5, 4, 7, 8, 9, 3, 2, 1, 10, 10, 10],
    [5, 4, 6, 9, 7, 8, 1, 3, 2, 11, 11, 11],
    [4, 6, 5, 8, 9, 7, 2, 1, 3, 12, 12, 12],
];

pub fn from_one_based<const N: usize>(rows: &[[usize; N]; N]) -> QuandleTable {
    let flat = rows.iter().flatten().map(|&v| v - 1).collect();
    QuandleTable::from_flat(N, flat, Kind::Quandle).expect("bundled table is a quandle")
}

pub fn qs6() -> QuandleTable {
    from_one_based(&QS6_ROWS)
}

pub fn r3_x_t2() -> QuandleTable {
    from_one_based(&R3_X_T2_ROWS)
}

pub fn q12_10() -> QuandleTable {
    from_one_based(&Q12_10_ROWS)
}
