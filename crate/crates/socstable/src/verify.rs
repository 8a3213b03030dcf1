//! Blocking-pair detection and the stability predicates.
//!
//! A pair (r, h) outside a matching M blocks it classically when r is
//! unmatched or prefers h to its assignment, and h is undersubscribed or
//! prefers r to its worst assignee. It blocks *socially* when it blocks
//! classically and the pair is acquainted. All verifiers reject matchings
//! that are invalid for the instance instead of answering on garbage.

use crate::error::MatchingError;
use crate::model::{AssignmentView, Hospital, HrssInstance, Matching, Pair, Resident};
use crate::reductions::{HrsnInstance, SmtiInstance};

/// One blocking pair, tagged with whether the pair is acquainted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockingPair {
    pub resident: Resident,
    pub hospital: Hospital,
    pub social: bool,
}

/// Every classical blocking pair of a matching, in (resident index, rank)
/// order. The socially relevant ones are the entries with `social` set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockingReport {
    pub pairs: Vec<BlockingPair>,
}

impl BlockingReport {
    pub fn n_classical(&self) -> usize {
        self.pairs.len()
    }

    pub fn n_social(&self) -> usize {
        self.pairs.iter().filter(|p| p.social).count()
    }

    pub fn is_stable(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_socially_stable(&self) -> bool {
        self.n_social() == 0
    }
}

fn blocks(inst: &HrssInstance, view: &AssignmentView, r: Resident, h: Hospital) -> bool {
    if view.by_resident[r.0] == Some(h) {
        return false;
    }
    let rank_rh = inst
        .resident_rank(r, h)
        .expect("blocking candidates come from preference lists");
    let resident_side = match view.by_resident[r.0] {
        None => true,
        Some(cur) => rank_rh < inst.resident_rank(r, cur).expect("assignment is acceptable"),
    };
    if !resident_side {
        return false;
    }
    if view.by_hospital[h.0].len() < inst.capacity(h) as usize {
        return true;
    }
    let rank_hr = inst
        .hospital_rank(h, r)
        .expect("blocking candidates are mutually acceptable");
    match view.worst_rank[h.0] {
        Some(worst) => rank_hr < worst,
        None => false,
    }
}

pub fn blocking_report(
    inst: &HrssInstance,
    m: &Matching,
) -> Result<BlockingReport, MatchingError> {
    let view = m.assignment_view(inst)?;
    let mut pairs = Vec::new();
    for (r, h) in inst.acceptable_pairs() {
        if blocks(inst, &view, r, h) {
            pairs.push(BlockingPair {
                resident: r,
                hospital: h,
                social: inst.is_acquainted(r, h),
            });
        }
    }
    Ok(BlockingReport { pairs })
}

/// Classical blocking pairs in (resident index, rank) order.
pub fn classical_blocking_pairs(
    inst: &HrssInstance,
    m: &Matching,
) -> Result<Vec<Pair>, MatchingError> {
    Ok(blocking_report(inst, m)?
        .pairs
        .into_iter()
        .map(|p| (p.resident, p.hospital))
        .collect())
}

/// Acquainted blocking pairs in (resident index, rank) order.
pub fn social_blocking_pairs(
    inst: &HrssInstance,
    m: &Matching,
) -> Result<Vec<Pair>, MatchingError> {
    Ok(blocking_report(inst, m)?
        .pairs
        .into_iter()
        .filter(|p| p.social)
        .map(|p| (p.resident, p.hospital))
        .collect())
}

pub fn is_classically_stable(inst: &HrssInstance, m: &Matching) -> Result<bool, MatchingError> {
    let view = m.assignment_view(inst)?;
    for (r, h) in inst.acceptable_pairs() {
        if blocks(inst, &view, r, h) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Only acquainted pairs can refute social stability, so this scans the
/// acquaintance relation directly.
pub fn is_socially_stable(inst: &HrssInstance, m: &Matching) -> Result<bool, MatchingError> {
    let view = m.assignment_view(inst)?;
    for (r, h) in inst.acquainted_pairs() {
        if inst.is_acceptable(r, h) && blocks(inst, &view, r, h) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Stability under a resident-side social network: a classical blocking
/// pair (r, h) only counts when some current assignee of h is a friend of
/// r, so blocking requires a channel through which r could learn of the
/// opening.
pub fn is_locally_stable(hrsn: &HrsnInstance, m: &Matching) -> Result<bool, MatchingError> {
    let inst = &hrsn.hr;
    let view = m.assignment_view(inst)?;
    for (r, h) in inst.acceptable_pairs() {
        if blocks(inst, &view, r, h)
            && view.by_hospital[h.0]
                .iter()
                .any(|&other| hrsn.are_friends(r, other))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weak stability for stable marriage with ties: a pair blocks only when
/// both sides strictly prefer each other to their assignments. Members of
/// the same tie are never strictly preferred to one another.
pub fn smti_is_stable(smti: &SmtiInstance, m: &Matching) -> Result<bool, MatchingError> {
    let (by_man, by_woman) = smti.assignment_view(m)?;
    for man in smti.men() {
        for woman in smti.acceptable_to(man) {
            if by_man[man.0] == Some(woman) {
                continue;
            }
            let rank_mw = smti.man_rank(man, woman).expect("list membership");
            let man_strict = match by_man[man.0] {
                None => true,
                Some(cur) => rank_mw < smti.man_rank(man, cur).expect("assignment acceptable"),
            };
            if !man_strict {
                continue;
            }
            let rank_wm = smti.woman_rank(woman, man).expect("symmetric acceptability");
            let woman_strict = match by_woman[woman.0] {
                None => true,
                Some(cur) => rank_wm < smti.woman_rank(woman, cur).expect("assignment acceptable"),
            };
            if woman_strict {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
