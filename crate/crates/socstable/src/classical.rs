//! Resident-proposing deferred acceptance for Hospitals/Residents.
//!
//! Produces the resident-optimal classically stable matching. The result
//! is independent of proposal order; the free queue is still kept in
//! index order so traces are reproducible.

use std::collections::{BTreeSet, VecDeque};

use crate::model::{Hospital, HrssInstance, Matching, Pair, Rank, Resident};

/// Classically stable matching of the full instance.
pub fn stable_matching(inst: &HrssInstance) -> Matching {
    stable_matching_on_subinstance(inst, &BTreeSet::new())
}

/// Classically stable matching of the instance with `removed` pairs
/// deleted from both preference lists. Pairs outside the acceptability
/// relation are ignored.
pub fn stable_matching_on_subinstance(inst: &HrssInstance, removed: &BTreeSet<Pair>) -> Matching {
    let n_r = inst.n_residents();
    let mut cursor = vec![0usize; n_r];
    let mut assigned: Vec<Option<Hospital>> = vec![None; n_r];
    // Each hospital keeps its provisional assignees ordered by rank, so
    // the worst one is the last entry.
    let mut held: Vec<BTreeSet<(Rank, Resident)>> = vec![BTreeSet::new(); inst.n_hospitals()];
    let mut free: VecDeque<Resident> = inst.residents().collect();

    while let Some(r) = free.pop_front() {
        let prefs = inst.resident_prefs(r);
        while cursor[r.0] < prefs.len() {
            let h = prefs[cursor[r.0]];
            cursor[r.0] += 1;
            if removed.contains(&(r, h)) {
                continue;
            }
            let rank = match inst.hospital_rank(h, r) {
                Some(rank) => rank,
                // Asymmetric pair; a validated instance never hits this.
                None => continue,
            };
            let cap = inst.capacity(h) as usize;
            if cap == 0 {
                continue;
            }
            if held[h.0].len() < cap {
                held[h.0].insert((rank, r));
                assigned[r.0] = Some(h);
                break;
            }
            let &(worst_rank, worst) = held[h.0].iter().next_back().expect("cap > 0");
            if rank < worst_rank {
                held[h.0].remove(&(worst_rank, worst));
                assigned[worst.0] = None;
                free.push_back(worst);
                held[h.0].insert((rank, r));
                assigned[r.0] = Some(h);
                break;
            }
        }
    }
    Matching::from_assignment(&assigned)
}
