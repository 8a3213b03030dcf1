//! Capacity cloning: a hospital with capacity c becomes c unit hospitals
//! that share its preference list, and every resident replaces the
//! hospital by the run of its clones in post order. Acquaintance is
//! replicated to every clone. Matching size and social stability are
//! preserved in both directions; the translation of a matching back and
//! forth assigns a hospital's better-ranked residents to lower-numbered
//! clones.

use crate::error::MatchingError;
use crate::model::{Hospital, HrssInstance, Matching};

/// Which original post each cloned hospital stands for.
#[derive(Clone, Debug)]
pub struct CloneMap {
    /// For each hospital of the cloned instance: (original hospital,
    /// 1-based post).
    source: Vec<(Hospital, u32)>,
    /// For each original hospital: its clones in post order.
    clones: Vec<Vec<Hospital>>,
}

impl CloneMap {
    pub fn source(&self, clone: Hospital) -> (Hospital, u32) {
        self.source[clone.0]
    }

    pub fn clones_of(&self, original: Hospital) -> &[Hospital] {
        &self.clones[original.0]
    }

    /// Translates a matching of the cloned instance back to the original.
    pub fn unclone_matching(
        &self,
        m: &Matching,
        original: &HrssInstance,
    ) -> Result<Matching, MatchingError> {
        let out: Matching = m.iter().map(|(r, w)| (r, self.source(w).0)).collect();
        out.validate_for(original)?;
        Ok(out)
    }

    /// Translates a matching of the original instance into the cloned
    /// one, giving each hospital's better-ranked assignees lower posts.
    pub fn clone_matching(
        &self,
        m: &Matching,
        original: &HrssInstance,
        cloned: &HrssInstance,
    ) -> Result<Matching, MatchingError> {
        m.validate_for(original)?;
        let mut out = Matching::new();
        for h in original.hospitals() {
            let mut assignees = m.residents_of(h);
            assignees.sort_by_key(|&r| original.hospital_rank(h, r));
            for (q, r) in assignees.into_iter().enumerate() {
                out.insert(r, self.clones[h.0][q]);
            }
        }
        out.validate_for(cloned)?;
        Ok(out)
    }
}

/// Clones every hospital into unit-capacity copies named `id#post`.
pub fn clone_to_unit_capacity(inst: &HrssInstance) -> (HrssInstance, CloneMap) {
    let mut b = HrssInstance::builder();
    let residents: Vec<_> = inst
        .residents()
        .map(|r| b.resident(inst.resident_id(r)))
        .collect();
    let mut source = Vec::new();
    let mut clones = Vec::new();
    for h in inst.hospitals() {
        let mut row = Vec::new();
        for q in 1..=inst.capacity(h) {
            let clone = b.hospital(&format!("{}#{}", inst.hospital_id(h), q), 1);
            source.push((h, q));
            row.push(clone);
        }
        clones.push(row);
    }
    for r in inst.residents() {
        let list = inst
            .resident_prefs(r)
            .iter()
            .flat_map(|&h| clones[h.0].iter().copied())
            .collect();
        b.resident_prefs_resolved(residents[r.0], list);
    }
    for h in inst.hospitals() {
        let list: Vec<_> = inst
            .hospital_prefs(h)
            .iter()
            .map(|&r| residents[r.0])
            .collect();
        for &clone in &clones[h.0] {
            b.hospital_prefs_resolved(clone, list.clone());
        }
    }
    for (r, h) in inst.acquainted_pairs() {
        for &clone in &clones[h.0] {
            b.acquainted_resolved(residents[r.0], clone);
        }
    }
    (b.build(), CloneMap { source, clones })
}
