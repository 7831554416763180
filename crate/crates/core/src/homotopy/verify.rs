use rayon::prelude::*;
use serde::Serialize;

use super::chain::FormalChain;
use super::maps::{apply_map, apply_to_chain, Family, HomotopyError, MapId};
use crate::chain::{
    check_torsion_annihilated, rack_count, AbelianGroup, ChainBasis, ChainComplex, ChainError, Theory,
    DEFAULT_BASIS_BUDGET,
};
use crate::quandle::{AnnihilationBound, AqProfile, QuandleTable};

/// A tuple where an identity fails, with its nonzero residual. Both are
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<usize>,
    pub residual: Vec<(Vec<usize>, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub family: Family,
    pub degree: usize,
    pub j: usize,
    pub tuples_checked: usize,
    /// Largest absolute coefficient over all residuals.
    pub max_residual: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl IdentityReport {
    pub fn holds(&self) -> bool {
        self.max_residual == 0
    }
}

/// The right-hand side claimed for `d H + H d` on `x`.
fn expected(q: &QuandleTable, p: &AqProfile, family: Family, j: usize, x: &[usize]) -> FormalChain {
    let nx = q.size() as i64;
    let m = p.m as i64;
    let map = |family, j| apply_map(q, p, MapId { family, j }, x).expect("index checked by caller");
    let sign = |e: usize| if e.is_multiple_of(2) { 1 } else { -1 };
    let mut out = FormalChain::zero(x.len());
    match family {
        Family::G => {
            let s = sign(j + 1) * (nx - m);
            out.add_scaled(&map(Family::G1, j), s);
            out.add_scaled(&map(Family::G0, j), -s);
        }
        Family::F => {
            let s = sign(j) * (nx - m);
            out.add_scaled(&map(Family::G0, j), s);
            out.add_scaled(&map(Family::G2, j), -s);
        }
        Family::D => {
            let s = sign(j + 1);
            out.add_scaled(&map(Family::G2, j), s * nx);
            out.add_scaled(&map(Family::Gs, j), -s * m);
        }
        Family::E => {
            let s = sign(j);
            out.add_scaled(&map(Family::G1, j), s * nx);
            out.add_scaled(&map(Family::Gs, j - 1), -s * m);
        }
        _ => unreachable!("not a homotopy family"),
    }
    out
}

/// `d_{n+1} H_n^j(x) + H_{n-1}^j(d_n x)`, where `H_{n-1}^j` is zero when `j`
/// is outside the family's range on degree `n - 1`.
pub fn homotopy_left_side(q: &QuandleTable, p: &AqProfile, id: MapId, x: &[usize]) -> Result<FormalChain, HomotopyError> {
    let mut lhs = apply_map(q, p, id, x)?.boundary(q);
    let n = x.len();
    if n >= 1 && id.family.j_range(n - 1).contains(&id.j) {
        let dx = FormalChain::from_tuple(x).boundary(q);
        lhs.add_scaled(&apply_to_chain(q, p, id, &dx)?, 1);
    }
    Ok(lhs)
}

fn check_budget(q: &QuandleTable, degree: usize, budget: usize) -> Result<(), HomotopyError> {
    match rack_count(q.size(), degree + 1) {
        Some(size) if size <= budget => Ok(()),
        other => Err(ChainError::DegreeTooLarge {
            degree: degree + 1,
            size: other.map_or_else(|| "overflow".to_string(), |s| s.to_string()),
            budget,
        }
        .into()),
    }
}

/// Checks one homotopy identity on every `n`-tuple.
///
/// Requires trivial stabilizers; use [`diagnose_cancellation`] to inspect
/// quandles where that hypothesis fails.
pub fn verify_identity(
    q: &QuandleTable,
    profile: &AqProfile,
    family: Family,
    n: usize,
    j: usize,
) -> Result<IdentityReport, HomotopyError> {
    verify_identity_with_budget(q, profile, family, n, j, DEFAULT_BASIS_BUDGET)
}

/// [`verify_identity`] with a cap on the number of `(n+1)`-tuples.
pub fn verify_identity_with_budget(
    q: &QuandleTable,
    profile: &AqProfile,
    family: Family,
    n: usize,
    j: usize,
    budget: usize,
) -> Result<IdentityReport, HomotopyError> {
    if !profile.trivial_stabilizers {
        return Err(HomotopyError::HypothesisFail);
    }
    if !family.is_homotopy() || !family.j_range(n).contains(&j) {
        return Err(HomotopyError::BadIndex { family, j, degree: n });
    }
    check_budget(q, n, budget)?;
    let basis = ChainBasis::new(q.size(), n, Theory::Rack);
    let id = MapId { family, j };
    let residuals: Vec<(usize, u64, Option<FormalChain>)> = (0..basis.len())
        .into_par_iter()
        .map(|i| {
            let x = basis.tuple(i);
            let mut r = homotopy_left_side(q, profile, id, &x).expect("index checked above");
            r.add_scaled(&expected(q, profile, family, j, &x), -1);
            let size = r.max_abs();
            (i, size, (size != 0).then_some(r))
        })
        .filter(|(_, size, _)| *size != 0)
        .collect();
    let max_residual = residuals.iter().map(|r| r.1).max().unwrap_or(0);
    let witness = residuals.into_iter().next().map(|(i, _, r)| Witness {
        tuple: basis.tuple(i).iter().map(|v| v + 1).collect(),
        residual: r.expect("nonzero residual kept").to_one_based(),
    });
    Ok(IdentityReport { family, degree: n, j, tuples_checked: basis.len(), max_residual, witness })
}

/// Every homotopy identity for `1 <= n <= n_max` and all admissible `j`.
pub fn verify_all_identities(
    q: &QuandleTable,
    profile: &AqProfile,
    n_max: usize,
) -> Result<Vec<IdentityReport>, HomotopyError> {
    verify_all_identities_with_budget(q, profile, n_max, DEFAULT_BASIS_BUDGET)
}

pub fn verify_all_identities_with_budget(
    q: &QuandleTable,
    profile: &AqProfile,
    n_max: usize,
    budget: usize,
) -> Result<Vec<IdentityReport>, HomotopyError> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        for family in Family::HOMOTOPIES {
            for j in family.j_range(n) {
                out.push(verify_identity_with_budget(q, profile, family, n, j, budget)?);
            }
        }
    }
    Ok(out)
}

/// Diagnostic for the face `i = j + 1` of `G_n^j`: returns the first tuple
/// where `(d_{j+1}^{(*_0)} - d_{j+1}^{(*)}) G_n^j(x)` differs from
/// `(|X| - m)(g_1^j - g_0^j)(x)`. Runs without the stabilizer hypothesis.
pub fn diagnose_cancellation(
    q: &QuandleTable,
    profile: &AqProfile,
    n: usize,
    j: usize,
) -> Result<Option<Witness>, HomotopyError> {
    if !(1..=n).contains(&j) {
        return Err(HomotopyError::BadIndex { family: Family::G, j, degree: n });
    }
    check_budget(q, n, DEFAULT_BASIS_BUDGET)?;
    let basis = ChainBasis::new(q.size(), n, Theory::Rack);
    let scale = q.size() as i64 - profile.m as i64;
    let id = MapId { family: Family::G, j };
    let found = (0..basis.len()).into_par_iter().find_map_first(|i| {
        let x = basis.tuple(i);
        let g = apply_map(q, profile, id, &x).expect("index checked");
        let mut r = g.face_plain(j + 1);
        r.add_scaled(&g.face_star(q, j + 1), -1);
        let g1 = apply_map(q, profile, MapId { family: Family::G1, j }, &x).expect("index checked");
        let g0 = apply_map(q, profile, MapId { family: Family::G0, j }, &x).expect("index checked");
        r.add_scaled(&g1, -scale);
        r.add_scaled(&g0, scale);
        (!r.is_zero()).then(|| Witness { tuple: x.iter().map(|v| v + 1).collect(), residual: r.to_one_based() })
    });
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeCheck {
    pub theory: Theory,
    pub degree: usize,
    pub group: AbelianGroup,
    pub annihilated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilationReport {
    pub m: usize,
    pub bound: AnnihilationBound,
    pub identities: Vec<IdentityReport>,
    pub degrees: Vec<DegreeCheck>,
}

impl AnnihilationReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(IdentityReport::holds) && self.degrees.iter().all(|d| d.annihilated)
    }
}

/// Runs every identity up to `n_max`, then computes rack and quandle homology
/// up to `n_max` and checks that the torsion is killed by the bound.
pub fn verify_annihilation_pipeline(
    q: &QuandleTable,
    profile: &AqProfile,
    n_max: usize,
) -> Result<AnnihilationReport, HomotopyError> {
    verify_annihilation_pipeline_with_budget(q, profile, n_max, DEFAULT_BASIS_BUDGET)
}

pub fn verify_annihilation_pipeline_with_budget(
    q: &QuandleTable,
    profile: &AqProfile,
    n_max: usize,
    budget: usize,
) -> Result<AnnihilationReport, HomotopyError> {
    let identities = verify_all_identities_with_budget(q, profile, n_max, budget)?;
    let bound = profile.annihilation_bound;
    let mut degrees = Vec::new();
    for theory in [Theory::Rack, Theory::Quandle] {
        let groups = ChainComplex::new(q, theory)?.with_budget(budget).homology_up_to(n_max)?;
        for (i, group) in groups.into_iter().enumerate() {
            let annihilated = match bound {
                AnnihilationBound::Bound(n) => check_torsion_annihilated(&group, n),
                AnnihilationBound::TorsionFree => group.is_free(),
            };
            degrees.push(DegreeCheck { theory, degree: i + 1, group, annihilated });
        }
    }
    Ok(AnnihilationReport { m: profile.m, bound, identities, degrees })
}
