use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use super::table::QuandleTable;

/// Orbits of `X` under the right action `x -> x * b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    /// Each block sorted ascending; blocks ordered by smallest element.
    pub blocks: Vec<Vec<usize>>,
    /// `orbit_of[x]` is the index into `blocks` containing `x`.
    pub orbit_of: Vec<usize>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }
}

/// Orbits under the group generated by all right translations.
///
/// Right translations are permutations of a finite set, so closing under
/// `x -> x * b` alone already closes under the inverses.
pub fn orbits(q: &QuandleTable) -> OrbitPartition {
    let n = q.size();
    let mut orbit_of = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![start];
        orbit_of[start] = id;
        let mut i = 0;
        while i < block.len() {
            let x = block[i];
            for b in 0..n {
                let y = q.op(x, b);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    block.push(y);
                }
            }
            i += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    OrbitPartition { blocks, orbit_of }
}

pub fn is_connected(q: &QuandleTable) -> bool {
    orbits(q).count() == 1
}

/// Every left translation `x -> a * x` is a bijection.
pub fn is_quasigroup(q: &QuandleTable) -> bool {
    let n = q.size();
    let mut seen = vec![false; n];
    (0..n).all(|a| {
        seen.iter_mut().for_each(|s| *s = false);
        q.row(a).iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    })
}

/// The torsion exponent bound attached to an m-AQ quandle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AnnihilationBound {
    /// `m * lcm(|X|, |X| - m)` for `m < |X|`.
    Bound(u64),
    /// `m = |X|`: the quandle is trivial and its rack homology is free.
    TorsionFree,
}

impl AnnihilationBound {
    pub fn value(self) -> Option<u64> {
        match self {
            AnnihilationBound::Bound(n) => Some(n),
            AnnihilationBound::TorsionFree => None,
        }
    }
}

/// m-almost-quasigroup classification of a quandle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AqProfile {
    pub m: usize,
    /// `stabilizers[a]` lists `S_a = {x : a * x = a}` with `a` first and the
    /// rest ascending, so `stabilizers[a][k]` is `a^{(k+1)}`.
    pub stabilizers: Vec<Vec<usize>>,
    /// Every `S_a` is a trivial subquandle: `s * t = s` on `S_a`.
    pub trivial_stabilizers: bool,
    pub annihilation_bound: AnnihilationBound,
}

/// Returns the m-AQ profile, or `None` when the stabilizers have unequal
/// sizes or some `a * x = b` with `b` outside `S_a` is not uniquely solvable.
pub fn aq_profile(q: &QuandleTable) -> Option<AqProfile> {
    if !q.is_quandle() {
        return None;
    }
    let n = q.size();
    let mut stabilizers = Vec::with_capacity(n);
    let mut hits = vec![0usize; n];
    for a in 0..n {
        let mut stab = vec![a];
        stab.extend((0..n).filter(|&x| x != a && q.op(a, x) == a));
        hits.iter_mut().for_each(|h| *h = 0);
        for &v in q.row(a) {
            hits[v] += 1;
        }
        let in_stab = |b: usize| stab.contains(&b);
        if (0..n).any(|b| !in_stab(b) && hits[b] != 1) {
            return None;
        }
        stabilizers.push(stab);
    }
    let m = stabilizers[0].len();
    if stabilizers.iter().any(|s| s.len() != m) {
        return None;
    }
    let trivial_stabilizers = stabilizers
        .iter()
        .all(|s| s.iter().all(|&x| s.iter().all(|&y| q.op(x, y) == x)));
    let annihilation_bound = if m == n {
        AnnihilationBound::TorsionFree
    } else {
        AnnihilationBound::Bound(m as u64 * (n as u64).lcm(&((n - m) as u64)))
    };
    Some(AqProfile { m, stabilizers, trivial_stabilizers, annihilation_bound })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("quandle is not m-almost quasigroup")]
    NotAq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilizerCheck {
    /// `S_a` is closed under `*` (hence a subquandle, the table being finite).
    pub closed: bool,
    pub trivial: bool,
}

pub fn stabilizer_subquandle_check(q: &QuandleTable, a: usize) -> Result<StabilizerCheck, ClassifyError> {
    let profile = aq_profile(q).ok_or(ClassifyError::NotAq)?;
    let s = &profile.stabilizers[a];
    let closed = s.iter().all(|&x| s.iter().all(|&y| s.contains(&q.op(x, y))));
    let trivial = s.iter().all(|&x| s.iter().all(|&y| q.op(x, y) == x));
    Ok(StabilizerCheck { closed, trivial })
}
