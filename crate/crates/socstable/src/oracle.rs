//! Exhaustive ground truth for small instances.
//!
//! Every searcher first bounds the assignment space by the product of
//! (list length + 1) over residents and refuses to run past the caller's
//! limit, so accidental blowups fail fast instead of hanging. Results are
//! deterministic: residents are scanned in index order, each resident's
//! options in (unmatched, then rank) order, and maxima keep the first
//! matching found of the best size.

use crate::error::SolverError;
use crate::model::{Hospital, HrssInstance, Matching, Resident};
use crate::reductions::SimpleGraph;

/// Default cap on the number of enumerated assignments.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

/// Largest vertex count accepted by [`max_independent_set`].
pub const MAX_GRAPH_VERTICES: usize = 20;

/// Product of (list length + 1) over residents: the enumeration bound.
pub fn search_space(inst: &HrssInstance) -> u128 {
    inst.residents()
        .map(|r| inst.resident_prefs(r).len() as u128 + 1)
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

fn check_limit(inst: &HrssInstance, limit: u64) -> Result<(), SolverError> {
    let space = search_space(inst);
    if space > limit as u128 {
        return Err(SolverError::SearchSpaceExceeded { space, limit });
    }
    Ok(())
}

/// Calls `visit` with every capacity-respecting assignment of residents
/// to acceptable hospitals, as a per-resident slice.
pub fn for_each_matching(
    inst: &HrssInstance,
    limit: u64,
    mut visit: impl FnMut(&[Option<Hospital>]),
) -> Result<(), SolverError> {
    check_limit(inst, limit)?;
    let n = inst.n_residents();
    let mut assignment: Vec<Option<Hospital>> = vec![None; n];
    let mut load = vec![0u32; inst.n_hospitals()];
    fn rec(
        inst: &HrssInstance,
        r: usize,
        assignment: &mut Vec<Option<Hospital>>,
        load: &mut Vec<u32>,
        visit: &mut impl FnMut(&[Option<Hospital>]),
    ) {
        if r == inst.n_residents() {
            visit(assignment);
            return;
        }
        rec(inst, r + 1, assignment, load, visit);
        for &h in inst.resident_prefs(Resident(r)) {
            if load[h.0] < inst.capacity(h) {
                load[h.0] += 1;
                assignment[r] = Some(h);
                rec(inst, r + 1, assignment, load, visit);
                assignment[r] = None;
                load[h.0] -= 1;
            }
        }
    }
    rec(inst, 0, &mut assignment, &mut load, &mut visit);
    Ok(())
}

/// State shared by the leaf checks below: assignees of each hospital in
/// assignment order, for worst-rank queries.
fn hospital_loads(inst: &HrssInstance, assignment: &[Option<Hospital>]) -> Vec<Vec<Resident>> {
    let mut by_hospital = vec![Vec::new(); inst.n_hospitals()];
    for (r, h) in assignment.iter().enumerate() {
        if let Some(h) = h {
            by_hospital[h.0].push(Resident(r));
        }
    }
    by_hospital
}

fn pair_blocks_assignment(
    inst: &HrssInstance,
    assignment: &[Option<Hospital>],
    by_hospital: &[Vec<Resident>],
    r: Resident,
    h: Hospital,
) -> bool {
    if assignment[r.0] == Some(h) {
        return false;
    }
    let rank_rh = match inst.resident_rank(r, h) {
        Some(rank) => rank,
        None => return false,
    };
    let resident_side = match assignment[r.0] {
        None => true,
        Some(cur) => rank_rh < inst.resident_rank(r, cur).expect("assignment acceptable"),
    };
    if !resident_side {
        return false;
    }
    let holders = &by_hospital[h.0];
    if holders.len() < inst.capacity(h) as usize {
        return true;
    }
    let rank_hr = match inst.hospital_rank(h, r) {
        Some(rank) => rank,
        None => return false,
    };
    holders
        .iter()
        .filter_map(|&x| inst.hospital_rank(h, x))
        .max()
        .is_some_and(|worst| rank_hr < worst)
}

fn socially_stable_assignment(inst: &HrssInstance, assignment: &[Option<Hospital>]) -> bool {
    let by_hospital = hospital_loads(inst, assignment);
    !inst
        .acquainted_pairs()
        .any(|(r, h)| pair_blocks_assignment(inst, assignment, &by_hospital, r, h))
}

fn classically_stable_assignment(inst: &HrssInstance, assignment: &[Option<Hospital>]) -> bool {
    let by_hospital = hospital_loads(inst, assignment);
    !inst
        .acceptable_pairs()
        .any(|(r, h)| pair_blocks_assignment(inst, assignment, &by_hospital, r, h))
}

/// A maximum-cardinality socially stable matching, by exhaustive search.
pub fn max_socially_stable(inst: &HrssInstance, limit: u64) -> Result<Matching, SolverError> {
    let mut best: Option<(usize, Matching)> = None;
    for_each_matching(inst, limit, |assignment| {
        let size = assignment.iter().flatten().count();
        if best.as_ref().is_some_and(|&(b, _)| size <= b) {
            return;
        }
        if socially_stable_assignment(inst, assignment) {
            best = Some((size, Matching::from_assignment(assignment)));
        }
    })?;
    // A classically stable matching always exists and is socially stable,
    // so valid instances always produce a candidate; the fallback only
    // covers degenerate unvalidated input.
    Ok(best.map(|(_, m)| m).unwrap_or_default())
}

/// Every classically stable matching, in enumeration order.
pub fn enumerate_stable_matchings(
    inst: &HrssInstance,
    limit: u64,
) -> Result<Vec<Matching>, SolverError> {
    let mut out = Vec::new();
    for_each_matching(inst, limit, |assignment| {
        if classically_stable_assignment(inst, assignment) {
            out.push(Matching::from_assignment(assignment));
        }
    })?;
    Ok(out)
}

/// Every socially stable matching, in enumeration order.
pub fn enumerate_socially_stable_matchings(
    inst: &HrssInstance,
    limit: u64,
) -> Result<Vec<Matching>, SolverError> {
    let mut out = Vec::new();
    for_each_matching(inst, limit, |assignment| {
        if socially_stable_assignment(inst, assignment) {
            out.push(Matching::from_assignment(assignment));
        }
    })?;
    Ok(out)
}

/// Maximum independent set size by subset enumeration, for graphs of at
/// most [`MAX_GRAPH_VERTICES`] vertices.
pub fn max_independent_set(g: &SimpleGraph) -> Result<u32, SolverError> {
    let n = g.n_vertices();
    if n > MAX_GRAPH_VERTICES {
        return Err(SolverError::GraphTooLarge(n, MAX_GRAPH_VERTICES));
    }
    let mut neighbor_mask = vec![0u32; n];
    for (v, mask) in neighbor_mask.iter_mut().enumerate() {
        for u in g.neighbors(v) {
            *mask |= 1 << u;
        }
    }
    let mut best = 0;
    for set in 0u32..(1u32 << n) {
        if set.count_ones() <= best {
            continue;
        }
        let independent = (0..n).all(|v| set & (1 << v) == 0 || set & neighbor_mask[v] == 0);
        if independent {
            best = set.count_ones();
        }
    }
    Ok(best)
}

/// All stable matchings of one instance share their size; exposed as a
/// helper so tests can lean on it.
pub fn stable_matchings_share_size(matchings: &[Matching]) -> bool {
    matchings.windows(2).all(|w| w[0].len() == w[1].len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{fixture_fig1, fixture_tight, HrssInstance, Matching};
    use crate::verify::{is_classically_stable, is_socially_stable};

    #[test]
    fn fig1_optimum_has_size_two() {
        let inst = fixture_fig1();
        let m = max_socially_stable(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(m.len(), 2);
        assert!(is_socially_stable(&inst, &m).unwrap());
    }

    #[test]
    fn fig1_unique_stable_matching_enumerated() {
        let inst = fixture_fig1();
        let m2 = inst.resident_by_id("m2").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let all = enumerate_stable_matchings(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(all, vec![Matching::from_pairs([(m2, w1)])]);
    }

    #[test]
    fn tight_optimum_is_the_known_unique_one() {
        let inst = fixture_tight();
        let m = max_socially_stable(&inst, DEFAULT_LIMIT).unwrap();
        let m1 = inst.resident_by_id("m1").unwrap();
        let m2 = inst.resident_by_id("m2").unwrap();
        let m3 = inst.resident_by_id("m3").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let w2 = inst.hospital_by_id("w2").unwrap();
        let w3 = inst.hospital_by_id("w3").unwrap();
        assert_eq!(m, Matching::from_pairs([(m1, w3), (m2, w1), (m3, w2)]));
    }

    #[test]
    fn empty_preferences_give_empty_enumeration() {
        let mut b = HrssInstance::builder();
        b.resident("r");
        b.hospital("h", 1);
        b.resident_prefs("r", &[]).unwrap();
        b.hospital_prefs("h", &[]).unwrap();
        let inst = b.build();
        let all = enumerate_stable_matchings(&inst, DEFAULT_LIMIT).unwrap();
        assert_eq!(all, vec![Matching::new()]);
    }

    #[test]
    fn limit_is_enforced() {
        let mut b = HrssInstance::builder();
        for i in 0..10 {
            b.resident(&format!("r{i}"));
        }
        for j in 0..10 {
            b.hospital(&format!("h{j}"), 1);
        }
        let hs: Vec<String> = (0..10).map(|j| format!("h{j}")).collect();
        let hrefs: Vec<&str> = hs.iter().map(String::as_str).collect();
        let rs: Vec<String> = (0..10).map(|i| format!("r{i}")).collect();
        let rrefs: Vec<&str> = rs.iter().map(String::as_str).collect();
        for i in 0..10 {
            b.resident_prefs(&format!("r{i}"), &hrefs).unwrap();
        }
        for j in 0..10 {
            b.hospital_prefs(&format!("h{j}"), &rrefs).unwrap();
        }
        let inst = b.build();
        // 11^10 assignments is past the (lowered) limit.
        assert!(matches!(
            max_socially_stable(&inst, 1_000_000),
            Err(SolverError::SearchSpaceExceeded { .. })
        ));
    }

    #[test]
    fn all_enumerated_stable_matchings_verify_and_share_size() {
        let inst = fixture_tight();
        let all = enumerate_stable_matchings(&inst, DEFAULT_LIMIT).unwrap();
        assert!(!all.is_empty());
        for m in &all {
            assert!(is_classically_stable(&inst, m).unwrap());
        }
        assert!(stable_matchings_share_size(&all));
    }

    #[test]
    fn when_everyone_is_acquainted_social_equals_classical_optimum() {
        let inst = fixture_tight();
        // Add every acceptable pair to the acquaintance relation.
        let mut b = HrssInstance::builder();
        b.resident("m1");
        b.resident("m2");
        b.resident("m3");
        b.hospital("w1", 1);
        b.hospital("w2", 1);
        b.hospital("w3", 1);
        b.resident_prefs("m1", &["w1", "w3"]).unwrap();
        b.resident_prefs("m2", &["w1", "w2"]).unwrap();
        b.resident_prefs("m3", &["w2"]).unwrap();
        b.hospital_prefs("w1", &["m2", "m1"]).unwrap();
        b.hospital_prefs("w2", &["m2", "m3"]).unwrap();
        b.hospital_prefs("w3", &["m1"]).unwrap();
        for (r, h) in inst.acceptable_pairs() {
            b.acquainted(inst.resident_id(r), inst.hospital_id(h)).unwrap();
        }
        let full = b.build();
        let opt = max_socially_stable(&full, DEFAULT_LIMIT).unwrap();
        let stable = crate::classical::stable_matching(&full);
        assert_eq!(opt.len(), stable.len());
    }
}
