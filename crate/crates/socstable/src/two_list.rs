//! Exact maximum socially stable matching when every man lists at most
//! two women.
//!
//! Three phases over a one-to-one instance:
//!
//! 1. Pruning. When a man's first remaining choice w is acquainted with
//!    him, no socially stable matching can give w anyone she ranks below
//!    him: the pair (m, w) would block it. Those entries are deleted and
//!    deletions cascade until no rule applies, so every socially stable
//!    matching survives inside the pruned pair set.
//! 2. A maximum-cardinality matching over the surviving pairs that,
//!    among those, minimizes the sum of the women's original ranks of
//!    their partners. Its size is therefore an upper bound on the size
//!    of any socially stable matching.
//! 3. A fixpoint sweep moving any man matched to his second remaining
//!    choice up to his first whenever that woman is unmatched and
//!    acquainted with him. Each man moves at most once.
//!
//! The sweep output has no social blocking pair: pairs deleted in
//! phase 1 leave the woman with a strictly better surviving partner,
//! pruning removes every suitor a woman could prefer an acquainted
//! first-choice man to, and the minimum-weight tie-break stops a woman
//! from ending below an unmatched acquainted man. The result keeps the
//! phase 2 cardinality, so it is a maximum socially stable matching.

use std::collections::{BTreeSet, VecDeque};

use crate::bipartite::{min_weight_max_cardinality_matching, WeightedBipartiteGraph};
use crate::error::SolverError;
use crate::model::{Hospital, HrssInstance, Matching, Pair, Resident};

/// Longest men's preference list the solver accepts.
pub const MAX_LIST: usize = 2;

fn check_preconditions(inst: &HrssInstance) -> Result<(), SolverError> {
    for h in inst.hospitals() {
        if inst.capacity(h) != 1 {
            return Err(SolverError::NotUnitCapacity(
                inst.hospital_id(h).to_string(),
                inst.capacity(h),
            ));
        }
    }
    for m in inst.residents() {
        let len = inst.resident_prefs(m).len();
        if len > MAX_LIST {
            return Err(SolverError::ListTooLong(
                inst.resident_id(m).to_string(),
                len,
            ));
        }
    }
    Ok(())
}

fn first_choice(inst: &HrssInstance, deleted: &BTreeSet<Pair>, m: Resident) -> Option<Hospital> {
    inst.resident_prefs(m)
        .iter()
        .copied()
        .find(|&w| !deleted.contains(&(m, w)))
}

/// Phase 1: the set of pairs no socially stable matching can contain.
///
/// A pair (m', w) is deleted when some man m acquainted with w has w as
/// his first remaining choice and w ranks m' below m. Deleting a pair
/// can expose a new first choice for m', so he is re-examined.
pub fn prune(inst: &HrssInstance) -> Result<BTreeSet<Pair>, SolverError> {
    check_preconditions(inst)?;
    let mut deleted: BTreeSet<Pair> = BTreeSet::new();
    let mut queued = vec![true; inst.n_residents()];
    let mut queue: VecDeque<Resident> = inst.residents().collect();
    while let Some(m) = queue.pop_front() {
        queued[m.0] = false;
        let Some(w) = first_choice(inst, &deleted, m) else {
            continue;
        };
        if !inst.is_acquainted(m, w) {
            continue;
        }
        let Some(my_rank) = inst.hospital_rank(w, m) else {
            continue;
        };
        let list = inst.hospital_prefs(w);
        for &other in &list[my_rank.0 as usize..] {
            if deleted.insert((other, w)) && !queued[other.0] {
                queued[other.0] = true;
                queue.push_back(other);
            }
        }
    }
    Ok(deleted)
}

/// Maximum socially stable matching for unit capacities and men's lists
/// of length at most two.
pub fn solve(inst: &HrssInstance) -> Result<Matching, SolverError> {
    let deleted = prune(inst)?;
    let mut g = WeightedBipartiteGraph::new(inst.n_residents(), inst.n_hospitals());
    for m in inst.residents() {
        for &w in inst.resident_prefs(m) {
            if deleted.contains(&(m, w)) {
                continue;
            }
            let Some(rank) = inst.hospital_rank(w, m) else {
                continue;
            };
            g.add_edge(m.0, w.0, u64::from(rank.0));
        }
    }
    let matched = min_weight_max_cardinality_matching(&g);
    let mut woman_of: Vec<Option<Hospital>> = vec![None; inst.n_residents()];
    let mut man_of: Vec<Option<Resident>> = vec![None; inst.n_hospitals()];
    for (l, r) in matched.pairs() {
        woman_of[l] = Some(Hospital(r));
        man_of[r] = Some(Resident(l));
    }
    // Moves never change cardinality and send each man to his first
    // remaining choice, where he stays, so the sweep ends within
    // n_residents passes.
    loop {
        let mut moved = false;
        for m in inst.residents() {
            let Some(cur) = woman_of[m.0] else {
                continue;
            };
            let Some(first) = first_choice(inst, &deleted, m) else {
                continue;
            };
            if first == cur || !inst.is_acquainted(m, first) || man_of[first.0].is_some() {
                continue;
            }
            man_of[cur.0] = None;
            man_of[first.0] = Some(m);
            woman_of[m.0] = Some(first);
            moved = true;
        }
        if !moved {
            break;
        }
    }
    Ok(Matching::from_assignment(&woman_of))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{fixture_fig1, fixture_tight, HrssInstance};
    use crate::oracle::{
        enumerate_socially_stable_matchings, max_socially_stable, DEFAULT_LIMIT,
    };
    use crate::verify::is_socially_stable;
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fig1_reaches_the_optimum_the_approximation_also_finds() {
        let inst = fixture_fig1();
        let m = solve(&inst).unwrap();
        assert_eq!(m.len(), 2);
        assert!(is_socially_stable(&inst, &m).unwrap());
    }

    #[test]
    fn tight_example_recovers_the_full_optimum() {
        let inst = fixture_tight();
        let m = solve(&inst).unwrap();
        let m1 = inst.resident_by_id("m1").unwrap();
        let m2 = inst.resident_by_id("m2").unwrap();
        let m3 = inst.resident_by_id("m3").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let w2 = inst.hospital_by_id("w2").unwrap();
        let w3 = inst.hospital_by_id("w3").unwrap();
        assert_eq!(m, Matching::from_pairs([(m1, w3), (m2, w1), (m3, w2)]));
    }

    #[test]
    fn pruned_pairs_appear_in_no_socially_stable_matching() {
        let mut total_deleted = 0;
        for seed in 0..40 {
            let inst = sample_instance(seed);
            let deleted = prune(&inst).unwrap();
            total_deleted += deleted.len();
            for m in enumerate_socially_stable_matchings(&inst, DEFAULT_LIMIT).unwrap() {
                for &(r, h) in &deleted {
                    assert!(!m.contains(r, h), "seed {seed} kept a pruned pair");
                }
            }
        }
        assert!(total_deleted > 0, "no sampled instance exercised pruning");
    }

    #[test]
    fn pruning_keeps_the_firing_man_on_the_womans_list() {
        let mut b = HrssInstance::builder();
        b.resident("a");
        b.resident("b");
        b.resident("c");
        b.hospital("w", 1);
        b.resident_prefs("a", &["w"]).unwrap();
        b.resident_prefs("b", &["w"]).unwrap();
        b.resident_prefs("c", &["w"]).unwrap();
        b.hospital_prefs("w", &["a", "b", "c"]).unwrap();
        b.acquainted("b", "w").unwrap();
        let inst = b.build();
        let deleted = prune(&inst).unwrap();
        let c = inst.resident_by_id("c").unwrap();
        let w = inst.hospital_by_id("w").unwrap();
        assert_eq!(deleted.len(), 1);
        assert!(deleted.contains(&(c, w)));
    }

    #[test]
    fn rejects_long_lists_and_large_capacities() {
        let mut b = HrssInstance::builder();
        b.resident("r");
        b.hospital("h", 2);
        b.resident_prefs("r", &["h"]).unwrap();
        b.hospital_prefs("h", &["r"]).unwrap();
        assert!(matches!(
            solve(&b.build()),
            Err(SolverError::NotUnitCapacity(h, 2)) if h == "h"
        ));

        let mut b = HrssInstance::builder();
        b.resident("r");
        b.hospital("h1", 1);
        b.hospital("h2", 1);
        b.hospital("h3", 1);
        b.resident_prefs("r", &["h1", "h2", "h3"]).unwrap();
        b.hospital_prefs("h1", &["r"]).unwrap();
        b.hospital_prefs("h2", &["r"]).unwrap();
        b.hospital_prefs("h3", &["r"]).unwrap();
        assert!(matches!(
            solve(&b.build()),
            Err(SolverError::ListTooLong(r, 3)) if r == "r"
        ));
    }

    #[test]
    fn empty_instance_yields_empty_matching() {
        let b = HrssInstance::builder();
        assert!(solve(&b.build()).unwrap().is_empty());
    }

    /// Random one-to-one instance with men's lists of length at most two.
    fn sample_instance(seed: u64) -> HrssInstance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n_men = rng.gen_range(1..=5);
        let n_women = rng.gen_range(1..=5);
        let mut b = HrssInstance::builder();
        let men: Vec<String> = (0..n_men).map(|i| format!("m{}", i + 1)).collect();
        let women: Vec<String> = (0..n_women).map(|i| format!("w{}", i + 1)).collect();
        for m in &men {
            b.resident(m);
        }
        for w in &women {
            b.hospital(w, 1);
        }
        let mut listers: Vec<Vec<usize>> = vec![Vec::new(); n_women];
        let mut lists: Vec<Vec<usize>> = Vec::new();
        for (i, m) in men.iter().enumerate() {
            let mut pool: Vec<usize> = (0..n_women).collect();
            pool.shuffle(&mut rng);
            let len = rng.gen_range(0..=2.min(n_women));
            pool.truncate(len);
            for &w in &pool {
                listers[w].push(i);
            }
            let names: Vec<&str> = pool.iter().map(|&w| women[w].as_str()).collect();
            b.resident_prefs(m, &names).unwrap();
            lists.push(pool);
        }
        for (w, name) in women.iter().enumerate() {
            listers[w].shuffle(&mut rng);
            let names: Vec<&str> = listers[w].iter().map(|&m| men[m].as_str()).collect();
            b.hospital_prefs(name, &names).unwrap();
        }
        for (i, list) in lists.iter().enumerate() {
            for &w in list {
                if rng.gen_bool(0.5) {
                    b.acquainted(&men[i], &women[w]).unwrap();
                }
            }
        }
        let inst = b.build();
        assert!(inst.validate().is_empty());
        inst
    }

    #[test]
    fn matches_the_exhaustive_optimum_on_random_instances() {
        for seed in 0..120 {
            let inst = sample_instance(seed);
            let got = solve(&inst).unwrap();
            assert!(
                is_socially_stable(&inst, &got).unwrap(),
                "socially unstable output for seed {seed}"
            );
            let best = max_socially_stable(&inst, DEFAULT_LIMIT).unwrap();
            assert_eq!(got.len(), best.len(), "suboptimal for seed {seed}");
        }
    }
}
