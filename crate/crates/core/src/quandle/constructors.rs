use num_integer::Integer;
use thiserror::Error;

use super::table::{Kind, QuandleTable, TableError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("size must be positive")]
    ZeroSize,
    #[error("t = {t} is not a unit modulo {n}")]
    NonUnitParameter { t: i64, n: usize },
    #[error("cycle type {parts:?} is not a partition of {degree}")]
    BadPartition { degree: usize, parts: Vec<usize> },
    #[error("constructed table failed validation: {0}")]
    Invalid(#[from] TableError),
}

/// `a * b = a` on `n` points.
pub fn make_trivial(n: usize) -> Result<QuandleTable, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let table = (0..n * n).map(|i| i / n).collect();
    Ok(QuandleTable::from_flat(n, table, Kind::Quandle)?)
}

/// Dihedral quandle `R_n`: `a * b = 2b - a (mod n)`.
pub fn make_dihedral(n: usize) -> Result<QuandleTable, ConstructError> {
    make_takasaki(&[n])
}

/// Takasaki quandle of `Z_{m_1} x ... x Z_{m_k}` with `a * b = 2b - a`.
///
/// Elements are linearized in mixed radix with the first factor most
/// significant.
pub fn make_takasaki(moduli: &[usize]) -> Result<QuandleTable, ConstructError> {
    if moduli.is_empty() || moduli.contains(&0) {
        return Err(ConstructError::ZeroSize);
    }
    let n: usize = moduli.iter().product();
    let decode = |mut x: usize| {
        let mut digits = vec![0; moduli.len()];
        for (d, &m) in digits.iter_mut().zip(moduli).rev() {
            *d = x % m;
            x /= m;
        }
        digits
    };
    let encode = |digits: &[usize]| digits.iter().zip(moduli).fold(0, |acc, (&d, &m)| acc * m + d);
    let elems: Vec<Vec<usize>> = (0..n).map(decode).collect();
    let mut table = Vec::with_capacity(n * n);
    for a in &elems {
        for b in &elems {
            let c: Vec<usize> = a
                .iter()
                .zip(b)
                .zip(moduli)
                .map(|((&x, &y), &m)| (2 * y + m - x % m) % m)
                .collect();
            table.push(encode(&c));
        }
    }
    Ok(QuandleTable::from_flat(n, table, Kind::Quandle)?)
}

/// Alexander quandle on `Z_n`: `a * b = t a + (1 - t) b (mod n)`.
pub fn make_alexander(n: usize, t: i64) -> Result<QuandleTable, ConstructError> {
    if n == 0 {
        return Err(ConstructError::ZeroSize);
    }
    let nn = n as i64;
    let t_mod = t.rem_euclid(nn);
    if t_mod.gcd(&nn) != 1 && n > 1 {
        return Err(ConstructError::NonUnitParameter { t, n });
    }
    let mut table = Vec::with_capacity(n * n);
    for a in 0..nn {
        for b in 0..nn {
            table.push((t_mod * a + (1 - t_mod) * b).rem_euclid(nn) as usize);
        }
    }
    Ok(QuandleTable::from_flat(n, table, Kind::Quandle)?)
}

/// The conjugacy class of the given cycle type in `S_degree`, with
/// `g * h = h^{-1} g h`.
///
/// Permutations are composed as functions, `(gh)(x) = g(h(x))`. Elements are
/// ordered lexicographically by one-line notation.
pub fn make_conjugation_class(degree: usize, cycle_type: &[usize]) -> Result<QuandleTable, ConstructError> {
    let bad = || ConstructError::BadPartition { degree, parts: cycle_type.to_vec() };
    if degree == 0 || cycle_type.contains(&0) || cycle_type.iter().sum::<usize>() != degree {
        return Err(bad());
    }
    let mut wanted = cycle_type.to_vec();
    wanted.sort_unstable();

    let mut class = Vec::new();
    let mut perm: Vec<usize> = (0..degree).collect();
    loop {
        if cycle_type_of(&perm) == wanted {
            class.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let n = class.len();
    let index = |p: &[usize]| class.binary_search_by(|q| q.as_slice().cmp(p)).expect("class closed under conjugation");
    let mut table = Vec::with_capacity(n * n);
    for g in &class {
        for h in &class {
            let h_inv = invert(h);
            // h^{-1} g h as x -> h_inv(g(h(x)))
            let conj: Vec<usize> = (0..degree).map(|x| h_inv[g[h[x]]]).collect();
            table.push(index(&conj));
        }
    }
    Ok(QuandleTable::from_flat(n, table, Kind::Quandle)?)
}

fn cycle_type_of(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable();
    lens
}

fn invert(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_three_matches_formula() {
        let r3 = make_dihedral(3).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(r3.op(a, b), (2 * b + 3 - a) % 3);
            }
        }
    }

    #[test]
    fn takasaki_product_is_a_quandle() {
        let q = make_takasaki(&[2, 3]).unwrap();
        assert_eq!(q.size(), 6);
        let z2sq = make_takasaki(&[2, 2]).unwrap();
        // in Z_2^2, 2b - a = a, so T(Z_2^2) is trivial
        assert_eq!(z2sq, make_trivial(4).unwrap());
    }

    #[test]
    fn alexander_requires_unit() {
        assert_eq!(make_alexander(6, 2), Err(ConstructError::NonUnitParameter { t: 2, n: 6 }));
        assert!(make_alexander(8, 3).is_ok());
        assert_eq!(make_alexander(5, -1).unwrap(), make_dihedral(5).unwrap());
    }

    #[test]
    fn conjugation_class_sizes() {
        assert_eq!(make_conjugation_class(4, &[4]).unwrap().size(), 6);
        assert_eq!(make_conjugation_class(5, &[2, 2, 1]).unwrap().size(), 15);
        assert_eq!(make_conjugation_class(4, &[2, 1, 1]).unwrap().size(), 6);
        let one = make_conjugation_class(3, &[1, 1, 1]).unwrap();
        assert_eq!(one.size(), 1);
    }

    #[test]
    fn bad_partitions_rejected() {
        assert!(matches!(make_conjugation_class(4, &[3, 2]), Err(ConstructError::BadPartition { .. })));
        assert!(matches!(make_conjugation_class(4, &[4, 0]), Err(ConstructError::BadPartition { .. })));
        assert_eq!(make_trivial(0), Err(ConstructError::ZeroSize));
    }
}
