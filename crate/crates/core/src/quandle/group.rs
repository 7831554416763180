use std::collections::HashSet;

use thiserror::Error;

use super::table::QuandleTable;

pub const DEFAULT_GROUP_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order exceeds the cap of {cap}")]
    GroupTooLarge { cap: usize },
}

/// A permutation group given by generators, with its order found by
/// closing the generator set under composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub order: usize,
}

impl PermutationGroup {
    /// Breadth-first closure from the identity, multiplying by generators.
    /// Every element of a finite group is a positive word in the generators,
    /// so inverses need not be added.
    pub fn generate(degree: usize, generators: Vec<Vec<usize>>, cap: usize) -> Result<Self, GroupError> {
        let mut gens: Vec<Vec<u16>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| x as u16).collect())
            .collect();
        gens.sort();
        gens.dedup();
        let identity: Box<[u16]> = (0..degree as u16).collect();
        let mut seen: HashSet<Box<[u16]>> = HashSet::new();
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in &gens {
                let next: Box<[u16]> = p.iter().map(|&x| g[x as usize]).collect();
                if !seen.contains(&next) {
                    if seen.len() >= cap {
                        return Err(GroupError::GroupTooLarge { cap });
                    }
                    seen.insert(next.clone());
                    frontier.push(next);
                }
            }
        }
        Ok(PermutationGroup { degree, generators, order: seen.len() })
    }
}

/// `Inn(X)`, generated by the right translations `x -> x * b`.
pub fn inner_group(q: &QuandleTable) -> Result<PermutationGroup, GroupError> {
    inner_group_with_cap(q, DEFAULT_GROUP_CAP)
}

pub fn inner_group_with_cap(q: &QuandleTable, cap: usize) -> Result<PermutationGroup, GroupError> {
    let gens = (0..q.size()).map(|b| q.right_translation(b)).collect();
    PermutationGroup::generate(q.size(), gens, cap)
}
