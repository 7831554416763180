use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use super::smith::normalize_diagonal;

/// A finitely generated abelian group `Z^rank + Z_{d_1} + ... + Z_{d_k}`
/// with `d_1 | d_2 | ... | d_k`, each `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn free(rank: usize) -> Self {
        AbelianGroup { rank, torsion: Vec::new() }
    }

    /// Normalizes arbitrary cyclic orders (ones allowed) into invariant factors.
    pub fn from_cyclic_orders(rank: usize, orders: &[u64]) -> Self {
        let diag = orders.iter().map(|&d| BigUint::from(d)).collect();
        let torsion = normalize_diagonal(diag)
            .into_iter()
            .map(|d| u64::try_from(d).expect("invariant factor fits in u64"))
            .collect();
        AbelianGroup { rank, torsion }
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn exponent(&self) -> u64 {
        self.torsion.last().copied().unwrap_or(1)
    }

    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        AbelianGroup::from_cyclic_orders(self.rank + other.rank, &orders)
    }
}

/// Every invariant factor of `g` divides `n`.
pub fn check_torsion_annihilated(g: &AbelianGroup, n: u64) -> bool {
    assert!(n >= 1, "annihilator must be positive");
    g.torsion.iter().all(|&d| n.is_multiple_of(d))
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|&&e| e == d).count();
            parts.push(if run == 1 { format!("Z_{d}") } else { format!("Z_{d}^{run}") });
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annihilation_examples() {
        let z24 = AbelianGroup { rank: 0, torsion: vec![24] };
        assert!(check_torsion_annihilated(&z24, 24));
        let g = AbelianGroup { rank: 0, torsion: vec![2, 30] };
        assert!(check_torsion_annihilated(&g, 180));
        let mut p = 1u64;
        for _ in 0..10 {
            p *= 15;
            assert!(!check_torsion_annihilated(&g, p));
        }
    }

    #[test]
    fn direct_sum_normalizes() {
        let a = AbelianGroup { rank: 1, torsion: vec![2] };
        let b = AbelianGroup { rank: 2, torsion: vec![3] };
        assert_eq!(a.direct_sum(&b), AbelianGroup { rank: 3, torsion: vec![6] });
    }

    #[test]
    fn display() {
        assert_eq!(AbelianGroup { rank: 8, torsion: vec![3, 3] }.to_string(), "Z^8 + Z_3^2");
        assert_eq!(AbelianGroup::free(0).to_string(), "0");
        assert_eq!(AbelianGroup { rank: 1, torsion: vec![2, 2, 2, 30] }.to_string(), "Z + Z_2^3 + Z_30");
    }
}
