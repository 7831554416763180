//! Shared by the integration tests and the acceptance harness.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use qhk::extension::{extend, quasigroup_by_trivial_cocycle};
use qhk::quandle::{aq_profile, corpus, is_connected, make_dihedral, make_trivial, stabilizer_subquandle_check, QuandleTable};
use rand::Rng;

pub fn corpus() -> Vec<(&'static str, QuandleTable)> {
    vec![
        ("T2", make_trivial(2).unwrap()),
        ("T3", make_trivial(3).unwrap()),
        ("R3", make_dihedral(3).unwrap()),
        ("R5", make_dihedral(5).unwrap()),
        ("R6", make_dihedral(6).unwrap()),
        ("QS6", corpus::qs6()),
        ("R3xT2", corpus::r3_x_t2()),
        ("Q12_10", corpus::q12_10()),
    ]
}

/// The m-AQ members of [`corpus`] plus a few extensions of dihedral
/// quandles over trivial ones.
pub fn aq_members() -> Vec<(String, QuandleTable)> {
    let mut out: Vec<(String, QuandleTable)> =
        corpus().into_iter().filter(|(_, q)| aq_profile(q).is_some()).map(|(n, q)| (n.to_string(), q)).collect();
    for (p, n) in [(3, 3), (5, 2), (5, 3), (7, 2)] {
        let y = extend(&quasigroup_by_trivial_cocycle(&make_dihedral(p).unwrap(), n).unwrap()).unwrap();
        out.push((format!("R{p} over T{n}"), y));
    }
    out
}

/// Stabilizers are subquandles moved onto each other by right translations;
/// `m <= 3` forces trivial stabilizers; trivial stabilizers force
/// connectivity unless `X` is trivial.
pub fn stabilizer_lemma(q: &QuandleTable) -> Result<(), String> {
    let p = aq_profile(q).ok_or("not m-AQ")?;
    for a in 0..q.size() {
        if !stabilizer_subquandle_check(q, a).unwrap().closed {
            return Err(format!("S_{} is not closed", a + 1));
        }
        for b in 0..q.size() {
            let mut moved: Vec<usize> = p.stabilizers[a].iter().map(|&s| q.op(s, b)).collect();
            let mut target = p.stabilizers[q.op(a, b)].clone();
            moved.sort_unstable();
            target.sort_unstable();
            if moved != target {
                return Err(format!("S_{} * {} differs from S_{}", a + 1, b + 1, q.op(a, b) + 1));
            }
        }
    }
    if p.m <= 3 && !p.trivial_stabilizers {
        return Err(format!("m = {} but stabilizers are not trivial", p.m));
    }
    if p.m < q.size() && p.trivial_stabilizers && !is_connected(q) {
        return Err("trivial stabilizers but not connected".into());
    }
    Ok(())
}

/// A random `r x c` matrix with `1 <= r, c <= 40` and entries in `[-9, 9]`:
/// dense, sparse, or a clamped low-rank product.
pub fn random_matrix(rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let (r, c) = (rng.gen_range(1..=40), rng.gen_range(1..=40));
    match rng.gen_range(0..3) {
        0 => (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect(),
        1 => (0..r).map(|_| (0..c).map(|_| if rng.gen_ratio(1, 7) { rng.gen_range(-9..=9) } else { 0 }).collect()).collect(),
        _ => {
            let k = rng.gen_range(1..=6);
            let u: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let v: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            u.iter().map(|row| (0..c).map(|j| (0..k).map(|l| row[l] * v[l][j]).sum::<i64>().clamp(-9, 9)).collect()).collect()
        }
    }
}

/// Nonzero invariant factors (ones included) by repeated min-entry pivoting
/// with the divisibility fix-up, on a dense copy.
pub fn dense_invariants(rows: &[Vec<i64>]) -> Vec<BigUint> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigInt>> = rows.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        let Some((pi, pj)) = min_entry(&a, (t..r).flat_map(|i| (t..c).map(move |j| (i, j)))) else { break };
        a.swap(t, pi);
        a.iter_mut().for_each(|row| row.swap(t, pj));
        loop {
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..c {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..r {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                }
            }
            let cross = (t + 1..r).map(|i| (i, t)).chain((t + 1..c).map(|j| (t, j)));
            if let Some((i, j)) = min_entry(&a, cross) {
                // a remainder is smaller than the pivot: move it to the corner
                a.swap(t, i);
                a.iter_mut().for_each(|row| row.swap(t, j));
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    for j in t..c {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs().to_biguint().unwrap());
    }
    diag
}

fn min_entry(a: &[Vec<BigInt>], cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells.filter(|&(i, j)| !a[i][j].is_zero()).min_by_key(|&(i, j)| a[i][j].abs())
}

