//! Core problem types.
//!
//! An [`HrssInstance`] is a Hospitals/Residents instance together with a
//! bipartite acquaintance relation between residents and hospitals. A pair
//! may be matched whenever it is mutually acceptable, but only *acquainted*
//! pairs are ever able to block a matching. The one-to-one case is the same
//! type with every capacity equal to 1.
//!
//! Agent ids are opaque strings; internally every agent is a dense index in
//! declaration order and all solver loops iterate in that order, so equal
//! inputs produce byte-equal outputs. Preference ranks are 1-based positions
//! in the original lists and are never renumbered: solvers that delete pairs
//! track the deletions on the side.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{BuildError, MatchingError};

/// Dense index of a resident (proposing side) in declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Resident(pub usize);

/// Dense index of a hospital (reviewing side) in declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Hospital(pub usize);

/// 1-based position in an agent's original preference list. Smaller is
/// better. Frozen at construction; deletions never renumber.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rank(pub u32);

/// A mutually acceptable (resident, hospital) pair.
pub type Pair = (Resident, Hospital);

#[derive(Clone, Debug, PartialEq)]
pub struct HrssInstance {
    resident_ids: Vec<String>,
    hospital_ids: Vec<String>,
    capacities: Vec<u32>,
    resident_prefs: Vec<Vec<Hospital>>,
    hospital_prefs: Vec<Vec<Resident>>,
    acquainted: BTreeSet<Pair>,
    resident_rank: Vec<HashMap<usize, Rank>>,
    hospital_rank: Vec<HashMap<usize, Rank>>,
    resident_index: HashMap<String, Resident>,
    hospital_index: HashMap<String, Hospital>,
}

impl HrssInstance {
    pub fn builder() -> HrssBuilder {
        HrssBuilder::default()
    }

    pub fn n_residents(&self) -> usize {
        self.resident_ids.len()
    }

    pub fn n_hospitals(&self) -> usize {
        self.hospital_ids.len()
    }

    pub fn residents(&self) -> impl Iterator<Item = Resident> {
        (0..self.n_residents()).map(Resident)
    }

    pub fn hospitals(&self) -> impl Iterator<Item = Hospital> {
        (0..self.n_hospitals()).map(Hospital)
    }

    pub fn resident_id(&self, r: Resident) -> &str {
        &self.resident_ids[r.0]
    }

    pub fn hospital_id(&self, h: Hospital) -> &str {
        &self.hospital_ids[h.0]
    }

    pub fn resident_by_id(&self, id: &str) -> Option<Resident> {
        self.resident_index.get(id).copied()
    }

    pub fn hospital_by_id(&self, id: &str) -> Option<Hospital> {
        self.hospital_index.get(id).copied()
    }

    pub fn capacity(&self, h: Hospital) -> u32 {
        self.capacities[h.0]
    }

    /// True when every hospital has capacity 1 (the one-to-one case).
    pub fn is_unit_capacity(&self) -> bool {
        self.capacities.iter().all(|&c| c == 1)
    }

    pub fn resident_prefs(&self, r: Resident) -> &[Hospital] {
        &self.resident_prefs[r.0]
    }

    pub fn hospital_prefs(&self, h: Hospital) -> &[Resident] {
        &self.hospital_prefs[h.0]
    }

    /// Rank of `h` on `r`'s list, if acceptable.
    pub fn resident_rank(&self, r: Resident, h: Hospital) -> Option<Rank> {
        self.resident_rank[r.0].get(&h.0).copied()
    }

    /// Rank of `r` on `h`'s list, if acceptable.
    pub fn hospital_rank(&self, h: Hospital, r: Resident) -> Option<Rank> {
        self.hospital_rank[h.0].get(&r.0).copied()
    }

    pub fn is_acceptable(&self, r: Resident, h: Hospital) -> bool {
        self.resident_rank[r.0].contains_key(&h.0)
    }

    pub fn is_acquainted(&self, r: Resident, h: Hospital) -> bool {
        self.acquainted.contains(&(r, h))
    }

    /// Acquainted pairs in canonical order (resident index, hospital index).
    pub fn acquainted_pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.acquainted.iter().copied()
    }

    pub fn n_acquainted(&self) -> usize {
        self.acquainted.len()
    }

    /// Mutually acceptable pairs, residents in index order, each resident's
    /// hospitals in rank order.
    pub fn acceptable_pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        self.residents().flat_map(move |r| {
            self.resident_prefs(r).iter().map(move |&h| (r, h))
        })
    }

    pub fn n_acceptable(&self) -> usize {
        self.resident_prefs.iter().map(Vec::len).sum()
    }

    /// Acceptable pairs that are not acquainted, in `acceptable_pairs` order.
    pub fn unacquainted_pairs(&self) -> Vec<Pair> {
        self.acceptable_pairs()
            .filter(|&(r, h)| !self.is_acquainted(r, h))
            .collect()
    }

    /// Copy of the instance with the given pairs removed from both sides.
    /// Pairs outside the acceptability relation are ignored. Acquaintances
    /// of removed pairs are dropped with them. Ranks in the copy follow the
    /// shortened lists.
    pub fn remove_pairs(&self, removed: &BTreeSet<Pair>) -> HrssInstance {
        let mut b = HrssBuilder::default();
        for id in &self.resident_ids {
            b.resident(id);
        }
        for (id, &cap) in self.hospital_ids.iter().zip(&self.capacities) {
            b.hospital(id, cap);
        }
        b.raw_resident_prefs = self
            .residents()
            .map(|r| {
                self.resident_prefs(r)
                    .iter()
                    .copied()
                    .filter(|&h| !removed.contains(&(r, h)))
                    .collect()
            })
            .collect();
        b.raw_hospital_prefs = self
            .hospitals()
            .map(|h| {
                self.hospital_prefs(h)
                    .iter()
                    .copied()
                    .filter(|&r| !removed.contains(&(r, h)))
                    .collect()
            })
            .collect();
        b.raw_acquainted = self
            .acquainted
            .iter()
            .copied()
            .filter(|p| !removed.contains(p))
            .collect();
        b.build_resolved()
    }

    /// Every invariant violation in the instance, in a fixed order.
    /// An empty result means the instance is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen_r = BTreeSet::new();
        let mut dup = BTreeSet::new();
        for id in &self.resident_ids {
            if !seen_r.insert(id) && dup.insert(id) {
                out.push(Violation::DuplicateResidentId(id.clone()));
            }
        }
        let mut seen_h = BTreeSet::new();
        dup.clear();
        for id in &self.hospital_ids {
            if !seen_h.insert(id) && dup.insert(id) {
                out.push(Violation::DuplicateHospitalId(id.clone()));
            }
        }
        dup.clear();
        for id in &self.resident_ids {
            if seen_h.contains(id) && dup.insert(id) {
                out.push(Violation::SharedId(id.clone()));
            }
        }
        for h in self.hospitals() {
            if self.capacity(h) == 0 {
                out.push(Violation::NonPositiveCapacity {
                    hospital: self.hospital_id(h).to_string(),
                });
            }
        }
        for r in self.residents() {
            let mut seen = BTreeSet::new();
            for &h in self.resident_prefs(r) {
                if !seen.insert(h) {
                    out.push(Violation::DuplicatePrefEntry {
                        agent: self.resident_id(r).to_string(),
                        entry: self.hospital_id(h).to_string(),
                    });
                }
            }
        }
        for h in self.hospitals() {
            let mut seen = BTreeSet::new();
            for &r in self.hospital_prefs(h) {
                if !seen.insert(r) {
                    out.push(Violation::DuplicatePrefEntry {
                        agent: self.hospital_id(h).to_string(),
                        entry: self.resident_id(r).to_string(),
                    });
                }
            }
        }
        for r in self.residents() {
            for &h in self.resident_prefs(r) {
                if self.hospital_rank(h, r).is_none() {
                    out.push(Violation::AsymmetricPair {
                        resident: self.resident_id(r).to_string(),
                        hospital: self.hospital_id(h).to_string(),
                        resident_lists_hospital: true,
                    });
                }
            }
        }
        for h in self.hospitals() {
            for &r in self.hospital_prefs(h) {
                if self.resident_rank(r, h).is_none() {
                    out.push(Violation::AsymmetricPair {
                        resident: self.resident_id(r).to_string(),
                        hospital: self.hospital_id(h).to_string(),
                        resident_lists_hospital: false,
                    });
                }
            }
        }
        for &(r, h) in &self.acquainted {
            if !self.is_acceptable(r, h) {
                out.push(Violation::AcquaintedNotAcceptable {
                    resident: self.resident_id(r).to_string(),
                    hospital: self.hospital_id(h).to_string(),
                });
            }
        }
        out
    }
}

/// A single well-formedness defect, carrying the offending ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateResidentId(String),
    DuplicateHospitalId(String),
    /// The same id declared as both a resident and a hospital.
    SharedId(String),
    NonPositiveCapacity {
        hospital: String,
    },
    DuplicatePrefEntry {
        agent: String,
        entry: String,
    },
    AsymmetricPair {
        resident: String,
        hospital: String,
        /// True when the resident lists the hospital but not vice versa.
        resident_lists_hospital: bool,
    },
    AcquaintedNotAcceptable {
        resident: String,
        hospital: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateResidentId(id) => {
                write!(f, "resident id {id:?} declared more than once")
            }
            Violation::DuplicateHospitalId(id) => {
                write!(f, "hospital id {id:?} declared more than once")
            }
            Violation::SharedId(id) => {
                write!(f, "id {id:?} declared as both a resident and a hospital")
            }
            Violation::NonPositiveCapacity { hospital } => {
                write!(f, "hospital {hospital} has capacity 0")
            }
            Violation::DuplicatePrefEntry { agent, entry } => {
                write!(f, "{agent} lists {entry} more than once")
            }
            Violation::AsymmetricPair {
                resident,
                hospital,
                resident_lists_hospital: true,
            } => write!(f, "{resident} lists {hospital} but {hospital} does not list {resident}"),
            Violation::AsymmetricPair {
                resident, hospital, ..
            } => write!(f, "{hospital} lists {resident} but {resident} does not list {hospital}"),
            Violation::AcquaintedNotAcceptable {
                resident, hospital,
            } => write!(f, "acquainted pair ({resident}, {hospital}) is not mutually acceptable"),
        }
    }
}

/// Staged construction of an [`HrssInstance`] from agent names.
/// Declarations must precede the preference and acquaintance lines that
/// mention them; semantic defects (asymmetric lists, zero capacities,
/// acquaintances outside the acceptability relation) are representable and
/// surface through [`HrssInstance::validate`].
#[derive(Default)]
pub struct HrssBuilder {
    resident_ids: Vec<String>,
    hospital_ids: Vec<String>,
    capacities: Vec<u32>,
    resident_index: HashMap<String, Resident>,
    hospital_index: HashMap<String, Hospital>,
    raw_resident_prefs: Vec<Vec<Hospital>>,
    raw_hospital_prefs: Vec<Vec<Resident>>,
    raw_acquainted: BTreeSet<Pair>,
}

impl HrssBuilder {
    pub fn resident(&mut self, id: &str) -> Resident {
        let r = Resident(self.resident_ids.len());
        self.resident_ids.push(id.to_string());
        self.raw_resident_prefs.push(Vec::new());
        self.resident_index.entry(id.to_string()).or_insert(r);
        r
    }

    pub fn hospital(&mut self, id: &str, capacity: u32) -> Hospital {
        let h = Hospital(self.hospital_ids.len());
        self.hospital_ids.push(id.to_string());
        self.capacities.push(capacity);
        self.raw_hospital_prefs.push(Vec::new());
        self.hospital_index.entry(id.to_string()).or_insert(h);
        h
    }

    pub fn lookup_resident(&self, id: &str) -> Result<Resident, BuildError> {
        self.resident_index
            .get(id)
            .copied()
            .ok_or_else(|| BuildError::UnknownResident(id.to_string()))
    }

    pub fn lookup_hospital(&self, id: &str) -> Result<Hospital, BuildError> {
        self.hospital_index
            .get(id)
            .copied()
            .ok_or_else(|| BuildError::UnknownHospital(id.to_string()))
    }

    /// Replaces the preference list of resident `id`.
    pub fn resident_prefs(&mut self, id: &str, list: &[&str]) -> Result<(), BuildError> {
        let r = self.lookup_resident(id)?;
        let resolved = list
            .iter()
            .map(|h| self.lookup_hospital(h))
            .collect::<Result<Vec<_>, _>>()?;
        self.raw_resident_prefs[r.0] = resolved;
        Ok(())
    }

    /// Replaces the preference list of hospital `id`.
    pub fn hospital_prefs(&mut self, id: &str, list: &[&str]) -> Result<(), BuildError> {
        let h = self.lookup_hospital(id)?;
        let resolved = list
            .iter()
            .map(|r| self.lookup_resident(r))
            .collect::<Result<Vec<_>, _>>()?;
        self.raw_hospital_prefs[h.0] = resolved;
        Ok(())
    }

    pub fn resident_prefs_resolved(&mut self, r: Resident, list: Vec<Hospital>) {
        self.raw_resident_prefs[r.0] = list;
    }

    pub fn hospital_prefs_resolved(&mut self, h: Hospital, list: Vec<Resident>) {
        self.raw_hospital_prefs[h.0] = list;
    }

    pub fn acquainted(&mut self, resident: &str, hospital: &str) -> Result<(), BuildError> {
        let r = self.lookup_resident(resident)?;
        let h = self.lookup_hospital(hospital)?;
        self.raw_acquainted.insert((r, h));
        Ok(())
    }

    pub fn acquainted_resolved(&mut self, r: Resident, h: Hospital) {
        self.raw_acquainted.insert((r, h));
    }

    pub fn build(self) -> HrssInstance {
        self.build_resolved()
    }

    fn build_resolved(self) -> HrssInstance {
        let resident_rank = self
            .raw_resident_prefs
            .iter()
            .map(|list| rank_table(list.iter().map(|h| h.0)))
            .collect();
        let hospital_rank = self
            .raw_hospital_prefs
            .iter()
            .map(|list| rank_table(list.iter().map(|r| r.0)))
            .collect();
        HrssInstance {
            resident_ids: self.resident_ids,
            hospital_ids: self.hospital_ids,
            capacities: self.capacities,
            resident_prefs: self.raw_resident_prefs,
            hospital_prefs: self.raw_hospital_prefs,
            acquainted: self.raw_acquainted,
            resident_rank,
            hospital_rank,
            resident_index: self.resident_index,
            hospital_index: self.hospital_index,
        }
    }
}

/// First occurrence wins, so rank lookups stay meaningful even on lists
/// that validate() will flag for duplicates.
fn rank_table(list: impl Iterator<Item = usize>) -> HashMap<usize, Rank> {
    let mut table = HashMap::new();
    for (pos, x) in list.enumerate() {
        table.entry(x).or_insert(Rank(pos as u32 + 1));
    }
    table
}

/// A set of (resident, hospital) pairs. Validity against a concrete
/// instance (acceptability, one hospital per resident, capacities) is
/// checked by [`Matching::validate_for`]; the set itself is unconstrained.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pairs: BTreeSet<Pair>,
}

impl Matching {
    pub fn new() -> Self {
        Matching::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = Pair>) -> Self {
        Matching {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// Builds a matching from a per-resident assignment slice.
    pub fn from_assignment(assignment: &[Option<Hospital>]) -> Self {
        Matching {
            pairs: assignment
                .iter()
                .enumerate()
                .filter_map(|(r, h)| h.map(|h| (Resident(r), h)))
                .collect(),
        }
    }

    pub fn insert(&mut self, r: Resident, h: Hospital) {
        self.pairs.insert((r, h));
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, r: Resident, h: Hospital) -> bool {
        self.pairs.contains(&(r, h))
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }

    /// Hospital assigned to `r`, assuming the matching is valid (at most
    /// one assignment per resident).
    pub fn hospital_of(&self, r: Resident) -> Option<Hospital> {
        self.pairs
            .range((r, Hospital(0))..=(r, Hospital(usize::MAX)))
            .next()
            .map(|&(_, h)| h)
    }

    pub fn residents_of(&self, h: Hospital) -> Vec<Resident> {
        self.iter().filter(|&(_, x)| x == h).map(|(r, _)| r).collect()
    }

    pub fn validate_for(&self, inst: &HrssInstance) -> Result<(), MatchingError> {
        self.assignment_view(inst).map(|_| ())
    }

    /// Per-agent assignment tables, validating along the way.
    pub(crate) fn assignment_view(
        &self,
        inst: &HrssInstance,
    ) -> Result<AssignmentView, MatchingError> {
        let mut by_resident = vec![None; inst.n_residents()];
        let mut by_hospital = vec![Vec::new(); inst.n_hospitals()];
        for &(r, h) in &self.pairs {
            if r.0 >= inst.n_residents() || h.0 >= inst.n_hospitals() {
                return Err(MatchingError::IndexOutOfRange);
            }
            if !inst.is_acceptable(r, h) {
                return Err(MatchingError::NotAcceptable {
                    resident: inst.resident_id(r).to_string(),
                    hospital: inst.hospital_id(h).to_string(),
                });
            }
            if by_resident[r.0].replace(h).is_some() {
                return Err(MatchingError::ResidentReassigned(
                    inst.resident_id(r).to_string(),
                ));
            }
            by_hospital[h.0].push(r);
        }
        for h in inst.hospitals() {
            if by_hospital[h.0].len() > inst.capacity(h) as usize {
                return Err(MatchingError::CapacityExceeded {
                    hospital: inst.hospital_id(h).to_string(),
                    assigned: by_hospital[h.0].len(),
                    capacity: inst.capacity(h),
                });
            }
        }
        let worst_rank = by_hospital
            .iter()
            .enumerate()
            .map(|(h, rs)| {
                rs.iter()
                    .filter_map(|&r| inst.hospital_rank(Hospital(h), r))
                    .max()
            })
            .collect();
        Ok(AssignmentView {
            by_resident,
            by_hospital,
            worst_rank,
        })
    }
}

impl FromIterator<Pair> for Matching {
    fn from_iter<T: IntoIterator<Item = Pair>>(iter: T) -> Self {
        Matching::from_pairs(iter)
    }
}

/// Assignment tables derived from a validated matching.
pub(crate) struct AssignmentView {
    pub by_resident: Vec<Option<Hospital>>,
    pub by_hospital: Vec<Vec<Resident>>,
    /// Worst (largest) rank among each hospital's assignees.
    pub worst_rank: Vec<Option<Rank>>,
}

/// Two residents, two hospitals, capacity 1. The unique classically stable
/// matching has size 1 while a socially stable matching of size 2 exists,
/// so the gap between the two optima is exactly 2.
pub fn fixture_fig1() -> HrssInstance {
    let mut b = HrssInstance::builder();
    b.resident("m1");
    b.resident("m2");
    b.hospital("w1", 1);
    b.hospital("w2", 1);
    b.resident_prefs("m1", &["w1"]).unwrap();
    b.resident_prefs("m2", &["w1", "w2"]).unwrap();
    b.hospital_prefs("w1", &["m2", "m1"]).unwrap();
    b.hospital_prefs("w2", &["m2"]).unwrap();
    b.acquainted("m1", "w1").unwrap();
    b.acquainted("m2", "w2").unwrap();
    b.build()
}

/// Three residents, three hospitals, capacity 1. The proposal-based
/// approximation returns a matching of size 2 while the unique optimum
/// {(m1,w3),(m2,w1),(m3,w2)} has size 3, so the 3/2 factor is tight here.
pub fn fixture_tight() -> HrssInstance {
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
    b.acquainted("m1", "w1").unwrap();
    b.acquainted("m1", "w3").unwrap();
    b.acquainted("m2", "w2").unwrap();
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_shape() {
        let inst = fixture_fig1();
        assert!(inst.validate().is_empty());
        assert_eq!(inst.n_acceptable(), 3);
        assert_eq!(inst.n_acquainted(), 2);
        let m2 = inst.resident_by_id("m2").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        assert_eq!(inst.unacquainted_pairs(), vec![(m2, w1)]);
    }

    #[test]
    fn tight_shape() {
        let inst = fixture_tight();
        assert!(inst.validate().is_empty());
        assert_eq!(inst.n_acceptable(), 5);
        assert_eq!(inst.n_acquainted(), 3);
        let m2 = inst.resident_by_id("m2").unwrap();
        let m3 = inst.resident_by_id("m3").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let w2 = inst.hospital_by_id("w2").unwrap();
        assert!(!inst.is_acquainted(m2, w1));
        assert!(!inst.is_acquainted(m3, w2));
        assert_eq!(inst.unacquainted_pairs(), vec![(m2, w1), (m3, w2)]);
    }

    #[test]
    fn ranks_are_positions() {
        let inst = fixture_fig1();
        let m2 = inst.resident_by_id("m2").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let w2 = inst.hospital_by_id("w2").unwrap();
        assert_eq!(inst.resident_rank(m2, w1), Some(Rank(1)));
        assert_eq!(inst.resident_rank(m2, w2), Some(Rank(2)));
        let m1 = inst.resident_by_id("m1").unwrap();
        assert_eq!(inst.hospital_rank(w1, m1), Some(Rank(2)));
        assert_eq!(inst.resident_rank(m1, w2), None);
    }

    #[test]
    fn validate_flags_acquainted_outside_acceptability() {
        let mut b = HrssInstance::builder();
        b.resident("m1");
        b.hospital("w1", 1);
        b.hospital("w2", 1);
        b.resident_prefs("m1", &["w1"]).unwrap();
        b.hospital_prefs("w1", &["m1"]).unwrap();
        b.hospital_prefs("w2", &[]).unwrap();
        b.acquainted("m1", "w2").unwrap();
        let inst = b.build();
        assert_eq!(
            inst.validate(),
            vec![Violation::AcquaintedNotAcceptable {
                resident: "m1".into(),
                hospital: "w2".into(),
            }]
        );
    }

    #[test]
    fn validate_flags_zero_capacity_and_asymmetry() {
        let mut b = HrssInstance::builder();
        b.resident("r");
        b.hospital("h", 0);
        b.resident_prefs("r", &["h"]).unwrap();
        let inst = b.build();
        let vs = inst.validate();
        assert!(vs.contains(&Violation::NonPositiveCapacity {
            hospital: "h".into()
        }));
        assert!(vs.contains(&Violation::AsymmetricPair {
            resident: "r".into(),
            hospital: "h".into(),
            resident_lists_hospital: true,
        }));
    }

    #[test]
    fn validate_flags_duplicates() {
        let mut b = HrssInstance::builder();
        b.resident("r");
        b.resident("r");
        b.hospital("h", 1);
        b.resident_prefs("r", &["h", "h"]).unwrap();
        b.hospital_prefs("h", &["r"]).unwrap();
        let inst = b.build();
        let vs = inst.validate();
        assert!(vs.contains(&Violation::DuplicateResidentId("r".into())));
        assert!(vs.contains(&Violation::DuplicatePrefEntry {
            agent: "r".into(),
            entry: "h".into(),
        }));
    }

    #[test]
    fn remove_pairs_drops_both_sides_and_acquaintances() {
        let inst = fixture_fig1();
        let m1 = inst.resident_by_id("m1").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let reduced = inst.remove_pairs(&BTreeSet::from([(m1, w1)]));
        assert!(!reduced.is_acceptable(m1, w1));
        assert!(!reduced.is_acquainted(m1, w1));
        assert_eq!(reduced.resident_prefs(m1), &[]);
        assert_eq!(reduced.hospital_prefs(w1).len(), 1);
        assert!(reduced.validate().is_empty());
    }

    #[test]
    fn matching_validity() {
        let inst = fixture_fig1();
        let m1 = inst.resident_by_id("m1").unwrap();
        let m2 = inst.resident_by_id("m2").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let w2 = inst.hospital_by_id("w2").unwrap();
        let ok = Matching::from_pairs([(m1, w1), (m2, w2)]);
        assert!(ok.validate_for(&inst).is_ok());
        assert_eq!(ok.hospital_of(m1), Some(w1));
        assert_eq!(ok.residents_of(w2), vec![m2]);

        let unacceptable = Matching::from_pairs([(m1, w2)]);
        assert!(matches!(
            unacceptable.validate_for(&inst),
            Err(MatchingError::NotAcceptable { .. })
        ));

        let doubled = Matching::from_pairs([(m2, w1), (m2, w2)]);
        assert!(matches!(
            doubled.validate_for(&inst),
            Err(MatchingError::ResidentReassigned(_))
        ));

        let over = Matching::from_pairs([(m1, w1), (m2, w1)]);
        assert!(matches!(
            over.validate_for(&inst),
            Err(MatchingError::CapacityExceeded { .. })
        ));
    }
}
