//! Exact solvers that are fast when one side of the acquaintance
//! relation is small.
//!
//! With few unacquainted pairs, every socially stable matching is a
//! classically stable matching of some subinstance obtained by removing
//! a subset of the unacquainted pairs, and conversely every such stable
//! matching is socially stable in the original instance. Enumerating the
//! subsets and running the proposal algorithm on each is exact.
//!
//! With few acquainted pairs, each pair (r, h) is protected from
//! blocking by one of two conditions: r is matched to h or better, or h
//! is fully subscribed with no assignee worse than r. A condition path
//! fixes one side per pair; its conditions are enforced by truncating
//! preference lists and then demanding that every conditioned resident,
//! and every post of every conditioned hospital, be matched. That demand
//! is checked on a clone graph where conditioned nodes are red and each
//! edge weighs the number of red endpoints: a maximum-weight matching
//! saturates all red nodes exactly when its weight counts them all. The
//! largest feasible path result over all 2^|A| paths is a maximum
//! socially stable matching.

use std::collections::BTreeSet;

use crate::bipartite::{augment_preserving, max_weight_matching, WeightedBipartiteGraph};
use crate::classical::stable_matching_on_subinstance;
use crate::error::SolverError;
use crate::model::{Hospital, HrssInstance, Matching, Pair, Resident};

/// Bounds on the exponential parameters, checked before enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FptConfig {
    pub max_unacquainted: usize,
    pub max_acquainted: usize,
}

impl Default for FptConfig {
    fn default() -> Self {
        FptConfig {
            max_unacquainted: 20,
            max_acquainted: 16,
        }
    }
}

/// Which side of an acquainted pair a condition path satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// The resident is matched to this hospital or one he prefers.
    Left,
    /// The hospital is fully subscribed with no assignee it ranks below
    /// this resident.
    Right,
}

/// One branch per acquainted pair, in the canonical order of the
/// acquaintance set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionPath {
    pub branches: Vec<Branch>,
}

impl ConditionPath {
    /// Decodes a path from a bit counter: bit i set means the i-th
    /// acquainted pair branches right.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        let branches = (0..len)
            .map(|i| {
                if bits >> i & 1 == 1 {
                    Branch::Right
                } else {
                    Branch::Left
                }
            })
            .collect();
        ConditionPath { branches }
    }

    /// Residents a left branch obliges to be matched.
    pub fn conditioned_residents(&self, inst: &HrssInstance) -> BTreeSet<Resident> {
        inst.acquainted_pairs()
            .zip(&self.branches)
            .filter(|&(_, &b)| b == Branch::Left)
            .map(|((r, _), _)| r)
            .collect()
    }

    /// Hospitals a right branch obliges to fill every post.
    pub fn conditioned_hospitals(&self, inst: &HrssInstance) -> BTreeSet<Hospital> {
        inst.acquainted_pairs()
            .zip(&self.branches)
            .filter(|&(_, &b)| b == Branch::Right)
            .map(|((_, h), _)| h)
            .collect()
    }
}

/// The subinstance a path's conditions leave available: a left branch
/// on (r, h) drops from r's list every hospital worse than h, a right
/// branch drops from h's list every resident worse than r. The pair
/// itself always survives its own branch.
pub fn apply_truncations(inst: &HrssInstance, path: &ConditionPath) -> HrssInstance {
    assert_eq!(path.branches.len(), inst.n_acquainted());
    let mut removed: BTreeSet<Pair> = BTreeSet::new();
    for ((r, h), &branch) in inst.acquainted_pairs().zip(&path.branches) {
        match branch {
            Branch::Left => {
                let cut = inst
                    .resident_rank(r, h)
                    .expect("acquainted pairs are acceptable")
                    .0 as usize;
                for &worse in &inst.resident_prefs(r)[cut..] {
                    removed.insert((r, worse));
                }
            }
            Branch::Right => {
                let cut = inst
                    .hospital_rank(h, r)
                    .expect("acquainted pairs are acceptable")
                    .0 as usize;
                for &worse in &inst.hospital_prefs(h)[cut..] {
                    removed.insert((worse, h));
                }
            }
        }
    }
    inst.remove_pairs(&removed)
}

/// Solves one condition path: `None` when the path's conditions cannot
/// all be met, otherwise a largest matching meeting them.
pub fn solve_path(inst: &HrssInstance, path: &ConditionPath) -> Option<Matching> {
    let reduced = apply_truncations(inst, path);
    let conditioned_r = path.conditioned_residents(inst);
    let conditioned_h = path.conditioned_hospitals(inst);

    // One clone per hospital post; a clone is red when its hospital must
    // fill every post, a resident is red when he must be matched.
    let mut clone_offset = Vec::with_capacity(reduced.n_hospitals());
    let mut clone_owner = Vec::new();
    for h in reduced.hospitals() {
        clone_offset.push(clone_owner.len());
        for _ in 0..reduced.capacity(h) {
            clone_owner.push(h);
        }
    }
    let red_clones: Vec<bool> = clone_owner
        .iter()
        .map(|h| conditioned_h.contains(h))
        .collect();
    let n_red = conditioned_r.len() + red_clones.iter().filter(|&&red| red).count();

    let mut g = WeightedBipartiteGraph::new(reduced.n_residents(), clone_owner.len());
    for r in reduced.residents() {
        let r_red = u64::from(conditioned_r.contains(&r));
        for &h in reduced.resident_prefs(r) {
            for q in 0..reduced.capacity(h) as usize {
                let clone = clone_offset[h.0] + q;
                g.add_edge(r.0, clone, r_red + u64::from(red_clones[clone]));
            }
        }
    }

    let best = max_weight_matching(&g);
    if g.matching_weight(&best) < n_red as u64 {
        return None;
    }
    let full = augment_preserving(&g, &best);
    Some(
        full.pairs()
            .into_iter()
            .map(|(r, clone)| (Resident(r), clone_owner[clone]))
            .collect(),
    )
}

/// Exact maximum socially stable matching by enumerating subsets of the
/// unacquainted pairs and keeping the largest classically stable
/// matching found among the subinstances.
pub fn solve_fpt_unacquainted(
    inst: &HrssInstance,
    config: &FptConfig,
) -> Result<Matching, SolverError> {
    let unacquainted = inst.unacquainted_pairs();
    if unacquainted.len() > config.max_unacquainted {
        return Err(SolverError::TooManyUnacquainted {
            count: unacquainted.len(),
            bound: config.max_unacquainted,
        });
    }
    let mut best: Option<Matching> = None;
    for mask in 0u64..1 << unacquainted.len() {
        let removed: BTreeSet<Pair> = unacquainted
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let m = stable_matching_on_subinstance(inst, &removed);
        if best.as_ref().is_none_or(|b| m.len() > b.len()) {
            best = Some(m);
        }
    }
    Ok(best.unwrap_or_default())
}

/// Result of the acquainted-pairs solver together with how many
/// condition paths were feasible.
#[derive(Clone, Debug)]
pub struct AcquaintedRun {
    pub matching: Matching,
    pub feasible_paths: usize,
    pub total_paths: u64,
}

/// Exact maximum socially stable matching by enumerating condition
/// paths over the acquainted pairs.
pub fn solve_fpt_acquainted(
    inst: &HrssInstance,
    config: &FptConfig,
) -> Result<Matching, SolverError> {
    solve_fpt_acquainted_detailed(inst, config).map(|run| run.matching)
}

/// As [`solve_fpt_acquainted`], also reporting path feasibility counts.
pub fn solve_fpt_acquainted_detailed(
    inst: &HrssInstance,
    config: &FptConfig,
) -> Result<AcquaintedRun, SolverError> {
    let k = inst.n_acquainted();
    if k > config.max_acquainted {
        return Err(SolverError::TooManyAcquainted {
            count: k,
            bound: config.max_acquainted,
        });
    }
    let total_paths = 1u64 << k;
    let mut best: Option<Matching> = None;
    let mut feasible_paths = 0;
    for bits in 0..total_paths {
        let path = ConditionPath::from_bits(bits, k);
        let Some(m) = solve_path(inst, &path) else {
            continue;
        };
        feasible_paths += 1;
        if best.as_ref().is_none_or(|b| m.len() > b.len()) {
            best = Some(m);
        }
    }
    Ok(AcquaintedRun {
        matching: best.unwrap_or_default(),
        feasible_paths,
        total_paths,
    })
}
