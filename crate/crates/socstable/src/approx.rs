//! 3/2-approximation for maximum socially stable matching.
//!
//! One-to-one instances are solved by a proposal process with promotion.
//! Men propose down their lists; a woman orders her suitors by a
//! two-tier rule and classical rank inside each tier:
//!
//! * tier 1: men acquainted with her, and promoted unacquainted men;
//! * tier 2: unacquainted men who have not been promoted.
//!
//! Whenever an acquainted man proposes to a woman, every strictly
//! worse-ranked entry of her list is deleted for good, whether or not
//! the proposal is accepted; deleted pairs can never be proposed again.
//! After a proposal sequence exhausts itself, unmatched promoted men
//! leave the instance and unmatched unpromoted men with non-empty lists
//! are promoted and start over from the top of what remains of their
//! lists. The final matching is socially stable and at least 2/3 of the
//! maximum socially stable matching; the factor is tight.
//!
//! Instances with larger capacities are solved by cloning hospitals into
//! unit posts, running the same process, and folding the clones back.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use crate::error::SolverError;
use crate::model::{Hospital, HrssInstance, Matching, Rank, Resident};
use crate::reductions::clone_to_unit_capacity;

/// Counters describing one solver run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ApproxStats {
    pub proposals: u64,
    pub deletions: u64,
    pub promotions: u64,
    pub removals: u64,
    /// Number of proposal sequences run.
    pub rounds: u64,
}

/// One step of the proposal process, for tracing and diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceEvent {
    SequenceStart { round: u64 },
    Propose { man: Resident, woman: Hospital },
    Accept { man: Resident, woman: Hospital },
    Displace { woman: Hospital, old: Resident, new: Resident },
    Reject { man: Resident, woman: Hospital },
    Delete { man: Resident, woman: Hospital },
    Promote { man: Resident },
    Remove { man: Resident },
}

impl TraceEvent {
    /// Renders the event with agent ids from `inst`.
    pub fn describe(&self, inst: &HrssInstance) -> String {
        let r = |m: Resident| inst.resident_id(m).to_string();
        let w = |h: Hospital| inst.hospital_id(h).to_string();
        match *self {
            TraceEvent::SequenceStart { round } => format!("sequence {round}"),
            TraceEvent::Propose { man, woman } => format!("propose {} {}", r(man), w(woman)),
            TraceEvent::Accept { man, woman } => format!("accept {} {}", r(man), w(woman)),
            TraceEvent::Displace { woman, old, new } => {
                format!("displace {} {} -> {}", w(woman), r(old), r(new))
            }
            TraceEvent::Reject { man, woman } => format!("reject {} {}", r(man), w(woman)),
            TraceEvent::Delete { man, woman } => format!("delete {} {}", r(man), w(woman)),
            TraceEvent::Promote { man } => format!("promote {}", r(man)),
            TraceEvent::Remove { man } => format!("remove {}", r(man)),
        }
    }
}

/// A suitor as a woman sees him: identity plus promotion state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Suitor {
    pub man: Resident,
    pub promoted: bool,
}

/// The woman's preference between two suitors: `Less` means she prefers
/// `a`. Requires both men on her list; distinct suitors never compare
/// equal because classical ranks inside a tier are strict.
pub fn compare_suitors(inst: &HrssInstance, woman: Hospital, a: Suitor, b: Suitor) -> Ordering {
    if a.man == b.man {
        return Ordering::Equal;
    }
    let tier = |s: Suitor| -> u8 {
        if inst.is_acquainted(s.man, woman) || s.promoted {
            1
        } else {
            2
        }
    };
    let rank = |s: Suitor| -> Rank {
        inst.hospital_rank(woman, s.man)
            .expect("suitors come from the woman's list")
    };
    tier(a).cmp(&tier(b)).then_with(|| rank(a).cmp(&rank(b)))
}

/// Mutable state of the proposal process over a one-to-one instance.
pub struct ProposalState<'a> {
    inst: &'a HrssInstance,
    deleted: HashSet<(Resident, Hospital)>,
    cursor: Vec<usize>,
    promoted: Vec<bool>,
    removed: Vec<bool>,
    man_of: Vec<Option<Resident>>,
    woman_of: Vec<Option<Hospital>>,
    stats: ApproxStats,
}

impl<'a> ProposalState<'a> {
    pub fn new(inst: &'a HrssInstance) -> Result<Self, SolverError> {
        for h in inst.hospitals() {
            if inst.capacity(h) != 1 {
                return Err(SolverError::NotUnitCapacity(
                    inst.hospital_id(h).to_string(),
                    inst.capacity(h),
                ));
            }
        }
        Ok(ProposalState {
            inst,
            deleted: HashSet::new(),
            cursor: vec![0; inst.n_residents()],
            promoted: vec![false; inst.n_residents()],
            removed: vec![false; inst.n_residents()],
            man_of: vec![None; inst.n_hospitals()],
            woman_of: vec![None; inst.n_residents()],
            stats: ApproxStats::default(),
        })
    }

    pub fn matching(&self) -> Matching {
        Matching::from_assignment(&self.woman_of)
    }

    pub fn stats(&self) -> ApproxStats {
        self.stats
    }

    pub fn is_deleted(&self, m: Resident, w: Hospital) -> bool {
        self.deleted.contains(&(m, w))
    }

    fn has_remaining_entries(&self, m: Resident) -> bool {
        self.inst
            .resident_prefs(m)
            .iter()
            .any(|&w| !self.deleted.contains(&(m, w)))
    }

    /// Next non-deleted woman at or after the cursor, advancing past her.
    fn next_woman(&mut self, m: Resident) -> Option<Hospital> {
        let prefs = self.inst.resident_prefs(m);
        while self.cursor[m.0] < prefs.len() {
            let w = prefs[self.cursor[m.0]];
            self.cursor[m.0] += 1;
            if !self.deleted.contains(&(m, w)) {
                return Some(w);
            }
        }
        None
    }

    fn suitor(&self, m: Resident) -> Suitor {
        Suitor {
            man: m,
            promoted: self.promoted[m.0],
        }
    }

    /// Runs proposals until every unmatched live man has exhausted the
    /// remainder of his list. Unmatched men propose in ascending index
    /// order; a displaced man resumes right after his last proposal.
    pub fn run_sequence(&mut self, trace: &mut dyn FnMut(&TraceEvent)) {
        self.stats.rounds += 1;
        trace(&TraceEvent::SequenceStart {
            round: self.stats.rounds,
        });
        let mut queue: BTreeSet<Resident> = self
            .inst
            .residents()
            .filter(|&m| !self.removed[m.0] && self.woman_of[m.0].is_none())
            .collect();
        while let Some(&m) = queue.iter().next() {
            if self.woman_of[m.0].is_some() || self.removed[m.0] {
                queue.remove(&m);
                continue;
            }
            let Some(w) = self.next_woman(m) else {
                queue.remove(&m);
                continue;
            };
            self.stats.proposals += 1;
            trace(&TraceEvent::Propose { man: m, woman: w });
            match self.man_of[w.0] {
                None => {
                    self.assign(m, w);
                    trace(&TraceEvent::Accept { man: m, woman: w });
                    queue.remove(&m);
                }
                Some(holder) => {
                    if compare_suitors(self.inst, w, self.suitor(m), self.suitor(holder))
                        == Ordering::Less
                    {
                        self.woman_of[holder.0] = None;
                        self.assign(m, w);
                        trace(&TraceEvent::Displace {
                            woman: w,
                            old: holder,
                            new: m,
                        });
                        queue.remove(&m);
                        queue.insert(holder);
                    } else {
                        trace(&TraceEvent::Reject { man: m, woman: w });
                        // A rejected acquainted man is always worse-ranked
                        // than the holder; the deletion step below then
                        // leaves the holder untouched.
                        debug_assert!(
                            !self.inst.is_acquainted(m, w)
                                || self.inst.hospital_rank(w, holder)
                                    < self.inst.hospital_rank(w, m)
                        );
                    }
                }
            }
            if self.inst.is_acquainted(m, w) {
                self.delete_below(m, w, trace);
            }
        }
    }

    fn assign(&mut self, m: Resident, w: Hospital) {
        self.man_of[w.0] = Some(m);
        self.woman_of[m.0] = Some(w);
    }

    /// Deletes every pair the woman ranks strictly below `m`. Runs on
    /// every proposal of an acquainted pair, accepted or not.
    fn delete_below(&mut self, m: Resident, w: Hospital, trace: &mut dyn FnMut(&TraceEvent)) {
        let my_rank = self
            .inst
            .hospital_rank(w, m)
            .expect("proposals follow preference lists");
        let list = self.inst.hospital_prefs(w);
        for &other in &list[my_rank.0 as usize..] {
            if self.deleted.insert((other, w)) {
                self.stats.deletions += 1;
                trace(&TraceEvent::Delete {
                    man: other,
                    woman: w,
                });
                // The woman's current partner is never deleted: he either
                // outranks every deleted entry or just displaced one.
                debug_assert!(self.man_of[w.0] != Some(other));
            }
        }
    }

    /// End-of-sequence bookkeeping: unmatched promoted men leave, then
    /// unmatched unpromoted men with something left to propose to are
    /// promoted and restart at their first remaining entry. Returns
    /// whether anyone was promoted, i.e. whether another sequence is due.
    pub fn promote_and_remove(&mut self, trace: &mut dyn FnMut(&TraceEvent)) -> bool {
        let mut any = false;
        for m in self.inst.residents() {
            if self.removed[m.0] || self.woman_of[m.0].is_some() {
                continue;
            }
            if self.promoted[m.0] {
                self.removed[m.0] = true;
                self.stats.removals += 1;
                trace(&TraceEvent::Remove { man: m });
            } else if self.has_remaining_entries(m) {
                self.promoted[m.0] = true;
                self.cursor[m.0] = 0;
                self.stats.promotions += 1;
                trace(&TraceEvent::Promote { man: m });
                any = true;
            }
        }
        any
    }
}

/// Approximation for one-to-one instances, with a trace callback.
pub fn solve_smiss_traced(
    inst: &HrssInstance,
    trace: &mut dyn FnMut(&TraceEvent),
) -> Result<(Matching, ApproxStats), SolverError> {
    let mut state = ProposalState::new(inst)?;
    loop {
        state.run_sequence(trace);
        if !state.promote_and_remove(trace) {
            break;
        }
    }
    Ok((state.matching(), state.stats()))
}

/// Approximation for one-to-one instances: socially stable, at least
/// two thirds of the optimum size.
pub fn solve_smiss(inst: &HrssInstance) -> Result<(Matching, ApproxStats), SolverError> {
    solve_smiss_traced(inst, &mut |_| {})
}

/// Approximation for arbitrary capacities via hospital cloning. Stats
/// and trace events are measured on the cloned one-to-one instance.
pub fn solve_hrss_traced(
    inst: &HrssInstance,
    trace: &mut dyn FnMut(&HrssInstance, &TraceEvent),
) -> Result<(Matching, ApproxStats), SolverError> {
    let (cloned, map) = clone_to_unit_capacity(inst);
    let (m, stats) = solve_smiss_traced(&cloned, &mut |event| trace(&cloned, event))?;
    let back = map
        .unclone_matching(&m, inst)
        .expect("clone posts never exceed capacity");
    Ok((back, stats))
}

pub fn solve_hrss(inst: &HrssInstance) -> Result<(Matching, ApproxStats), SolverError> {
    solve_hrss_traced(inst, &mut |_, _| {})
}
