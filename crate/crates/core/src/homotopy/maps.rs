use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::chain::FormalChain;
use crate::quandle::{AqProfile, QuandleTable};

/// The chain maps `g_0, g_1, g_2, g_s` and the homotopies `G, F, D, E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "g0")]
    G0,
    #[serde(rename = "g1")]
    G1,
    #[serde(rename = "g2")]
    G2,
    #[serde(rename = "gs")]
    Gs,
    G,
    F,
    D,
    E,
}

impl Family {
    pub const HOMOTOPIES: [Family; 4] = [Family::G, Family::F, Family::D, Family::E];

    pub fn name(self) -> &'static str {
        match self {
            Family::G0 => "g0",
            Family::G1 => "g1",
            Family::G2 => "g2",
            Family::Gs => "gs",
            Family::G => "G",
            Family::F => "F",
            Family::D => "D",
            Family::E => "E",
        }
    }

    pub fn is_homotopy(self) -> bool {
        matches!(self, Family::G | Family::F | Family::D | Family::E)
    }

    /// Admissible `j` on `degree`-tuples.
    pub fn j_range(self, degree: usize) -> std::ops::RangeInclusive<usize> {
        match self {
            Family::Gs => 0..=degree,
            Family::F | Family::E => 2..=degree,
            _ => 1..=degree,
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "g0" => Family::G0,
            "g1" => Family::G1,
            "g2" => Family::G2,
            "gs" => Family::Gs,
            "G" => Family::G,
            "F" => Family::F,
            "D" => Family::D,
            "E" => Family::E,
            _ => return Err(format!("unknown map family {s:?}")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MapId {
    pub family: Family,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomotopyError {
    #[error("index j={j} is outside the range of {family} on degree {degree}")]
    BadIndex { family: Family, j: usize, degree: usize },
    #[error("the stabilizer sets are not trivial subquandles")]
    HypothesisFail,
    #[error("the quandle is not m-almost quasigroup")]
    NotAq,
    #[error(transparent)]
    Chain(#[from] crate::chain::ChainError),
}

/// Output degree of `family` on `degree`-tuples.
pub fn target_degree(family: Family, degree: usize) -> usize {
    if family.is_homotopy() {
        degree + 1
    } else {
        degree
    }
}

/// Applies the map to one tuple (0-based entries, 1-based `j`).
///
/// `x_j^{(k)}` runs over `profile.stabilizers[x_j]`; `y` runs over all of `X`.
pub fn apply_map(
    q: &QuandleTable,
    profile: &AqProfile,
    id: MapId,
    x: &[usize],
) -> Result<FormalChain, HomotopyError> {
    let (family, j, n) = (id.family, id.j, x.len());
    if !family.j_range(n).contains(&j) {
        return Err(HomotopyError::BadIndex { family, j, degree: n });
    }
    let mut out = FormalChain::zero(target_degree(family, n));
    let rest = &x[j.min(n)..];
    let build = |prefix: &[(usize, usize)], tail: &[usize]| -> Vec<usize> {
        let mut t = Vec::with_capacity(n + 1);
        for &(v, count) in prefix {
            t.extend(std::iter::repeat_n(v, count));
        }
        t.extend_from_slice(tail);
        t
    };
    if family == Family::Gs {
        for y in 0..q.size() {
            out.add_term(build(&[(y, j)], rest), 1);
        }
        return Ok(out);
    }
    let xj = x[j - 1];
    let stab = &profile.stabilizers[xj];
    for &s in stab {
        match family {
            Family::G1 => out.add_term(build(&[(s, j - 1), (xj, 1)], rest), 1),
            Family::G2 => out.add_term(build(&[(s, j)], rest), 1),
            Family::G0 => out.add_term(build(&[(xj, j - 1), (s, 1)], rest), 1),
            _ => {
                for y in 0..q.size() {
                    match family {
                        Family::G => {
                            out.add_term(build(&[(s, j - 1), (xj, 1), (y, 1)], rest), 1);
                            out.add_term(build(&[(xj, j - 1), (s, 1), (y, 1)], rest), -1);
                        }
                        Family::F => {
                            out.add_term(build(&[(xj, j - 1), (y, 1), (s, 1)], rest), 1);
                            out.add_term(build(&[(s, j - 1), (y, 1), (s, 1)], rest), -1);
                        }
                        Family::D => out.add_term(build(&[(s, j), (y, 1)], rest), 1),
                        Family::E => out.add_term(build(&[(s, j - 1), (y, 1), (xj, 1)], rest), 1),
                        _ => unreachable!(),
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Linear extension of [`apply_map`] to chains.
pub fn apply_to_chain(
    q: &QuandleTable,
    profile: &AqProfile,
    id: MapId,
    c: &FormalChain,
) -> Result<FormalChain, HomotopyError> {
    let mut out = FormalChain::zero(target_degree(id.family, c.degree()));
    for (t, coeff) in c.iter() {
        out.add_scaled(&apply_map(q, profile, id, t)?, coeff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{aq_profile, corpus};

    fn qs6() -> (QuandleTable, AqProfile) {
        let q = corpus::qs6();
        let p = aq_profile(&q).unwrap();
        (q, p)
    }

    fn all_tuples(size: usize, n: usize) -> Vec<Vec<usize>> {
        (0..size.pow(n as u32))
            .map(|mut i| {
                let mut t = vec![0; n];
                for slot in t.iter_mut().rev() {
                    *slot = i % size;
                    i /= size;
                }
                t
            })
            .collect()
    }

    #[test]
    fn g1_at_one_is_m_times_identity() {
        let (q, p) = qs6();
        for x in all_tuples(6, 3) {
            let g = apply_map(&q, &p, MapId { family: Family::G1, j: 1 }, &x).unwrap();
            assert_eq!(g, FormalChain::from_tuple(&x).scaled(p.m as i64));
        }
    }

    #[test]
    fn g0_and_g2_agree_at_one() {
        let (q, p) = qs6();
        for x in all_tuples(6, 2) {
            let g0 = apply_map(&q, &p, MapId { family: Family::G0, j: 1 }, &x).unwrap();
            let g2 = apply_map(&q, &p, MapId { family: Family::G2, j: 1 }, &x).unwrap();
            assert_eq!(g0, g2);
        }
    }

    #[test]
    fn symmetrizer_on_a_pair() {
        let (q, p) = qs6();
        let g = apply_map(&q, &p, MapId { family: Family::Gs, j: 1 }, &[0, 2]).unwrap();
        assert_eq!(g.len(), 6);
        assert!((0..6).all(|y| g.coefficient(&[y, 2]) == 1));
    }

    #[test]
    fn index_ranges_are_enforced() {
        let (q, p) = qs6();
        let bad = |family, j| apply_map(&q, &p, MapId { family, j }, &[0, 1, 2]).unwrap_err();
        assert_eq!(bad(Family::F, 1), HomotopyError::BadIndex { family: Family::F, j: 1, degree: 3 });
        assert!(matches!(bad(Family::E, 1), HomotopyError::BadIndex { .. }));
        assert!(matches!(bad(Family::G, 4), HomotopyError::BadIndex { .. }));
        assert!(matches!(bad(Family::D, 0), HomotopyError::BadIndex { .. }));
        assert!(apply_map(&q, &p, MapId { family: Family::Gs, j: 0 }, &[0, 1, 2]).is_ok());
    }

    #[test]
    fn homotopies_raise_degree_with_expected_term_counts() {
        let (q, p) = qs6();
        let d = apply_map(&q, &p, MapId { family: Family::D, j: 2 }, &[0, 3, 5]).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.iter().map(|(_, c)| c).sum::<i64>(), (p.m * q.size()) as i64);
        let e = apply_map(&q, &p, MapId { family: Family::E, j: 2 }, &[0, 3]).unwrap();
        assert!(e.iter().all(|(t, _)| t[2] == 3 && t[3..].is_empty()));
    }

    #[test]
    fn maps_are_linear() {
        let (q, p) = qs6();
        let mut c = FormalChain::zero(3);
        c.add_term(vec![0, 1, 2], 3);
        c.add_term(vec![5, 5, 4], -2);
        for family in [Family::G, Family::F, Family::D, Family::E, Family::G0, Family::Gs] {
            let id = MapId { family, j: 2 };
            let mut expected = apply_map(&q, &p, id, &[0, 1, 2]).unwrap().scaled(3);
            expected.add_scaled(&apply_map(&q, &p, id, &[5, 5, 4]).unwrap(), -2);
            assert_eq!(apply_to_chain(&q, &p, id, &c).unwrap(), expected);
        }
    }
}
