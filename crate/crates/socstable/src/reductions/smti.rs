//! Stable marriage with ties at the tails of men's lists.
//!
//! Every man's list is a strict prefix followed by one tie (possibly of
//! size 1); women's lists are strict. Breaking each tie into an arbitrary
//! strict order and marking exactly the prefix pairs as acquainted yields
//! a one-to-one instance whose complete socially stable matchings are
//! exactly the complete weakly stable matchings of the source.

use std::collections::HashMap;

use crate::error::{BuildError, MatchingError};
use crate::model::{Hospital, HrssInstance, Matching, Rank, Resident};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Matched partner of each man and of each woman, by index.
pub(crate) type AssignmentViews = (Vec<Option<Hospital>>, Vec<Option<Resident>>);

/// Men are indexed like residents, women like hospitals, so [`Matching`]
/// is shared with the rest of the crate.
#[derive(Clone, Debug, PartialEq)]
pub struct SmtiInstance {
    men_ids: Vec<String>,
    women_ids: Vec<String>,
    prefix: Vec<Vec<Hospital>>,
    tie: Vec<Vec<Hospital>>,
    women_lists: Vec<Vec<Resident>>,
    man_rank: Vec<HashMap<usize, Rank>>,
    woman_rank: Vec<HashMap<usize, Rank>>,
    men_index: HashMap<String, Resident>,
    women_index: HashMap<String, Hospital>,
}

impl SmtiInstance {
    pub fn builder() -> SmtiBuilder {
        SmtiBuilder::default()
    }

    pub fn n_men(&self) -> usize {
        self.men_ids.len()
    }

    pub fn n_women(&self) -> usize {
        self.women_ids.len()
    }

    pub fn men(&self) -> impl Iterator<Item = Resident> {
        (0..self.n_men()).map(Resident)
    }

    pub fn women(&self) -> impl Iterator<Item = Hospital> {
        (0..self.n_women()).map(Hospital)
    }

    pub fn man_id(&self, m: Resident) -> &str {
        &self.men_ids[m.0]
    }

    pub fn woman_id(&self, w: Hospital) -> &str {
        &self.women_ids[w.0]
    }

    pub fn man_by_id(&self, id: &str) -> Option<Resident> {
        self.men_index.get(id).copied()
    }

    pub fn woman_by_id(&self, id: &str) -> Option<Hospital> {
        self.women_index.get(id).copied()
    }

    /// Strict part of the man's list, before the tie.
    pub fn prefix(&self, m: Resident) -> &[Hospital] {
        &self.prefix[m.0]
    }

    /// Tail tie; all members share the rank just below the prefix.
    pub fn tie(&self, m: Resident) -> &[Hospital] {
        &self.tie[m.0]
    }

    pub fn woman_list(&self, w: Hospital) -> &[Resident] {
        &self.women_lists[w.0]
    }

    pub fn acceptable_to(&self, m: Resident) -> impl Iterator<Item = Hospital> + '_ {
        self.prefix[m.0].iter().chain(&self.tie[m.0]).copied()
    }

    /// Rank of `w` for `m`; tie members share the bottom rank.
    pub fn man_rank(&self, m: Resident, w: Hospital) -> Option<Rank> {
        self.man_rank[m.0].get(&w.0).copied()
    }

    pub fn woman_rank(&self, w: Hospital, m: Resident) -> Option<Rank> {
        self.woman_rank[w.0].get(&m.0).copied()
    }

    /// Human-readable defects: asymmetric acceptability or duplicates.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        for m in self.men() {
            let mut seen = std::collections::BTreeSet::new();
            for w in self.acceptable_to(m) {
                if !seen.insert(w) {
                    out.push(format!(
                        "{} lists {} more than once",
                        self.man_id(m),
                        self.woman_id(w)
                    ));
                }
                if self.woman_rank(w, m).is_none() {
                    out.push(format!(
                        "{} lists {} but {} does not list {}",
                        self.man_id(m),
                        self.woman_id(w),
                        self.woman_id(w),
                        self.man_id(m)
                    ));
                }
            }
        }
        for w in self.women() {
            let mut seen = std::collections::BTreeSet::new();
            for &m in self.woman_list(w) {
                if !seen.insert(m) {
                    out.push(format!(
                        "{} lists {} more than once",
                        self.woman_id(w),
                        self.man_id(m)
                    ));
                }
                if self.man_rank(m, w).is_none() {
                    out.push(format!(
                        "{} lists {} but {} does not list {}",
                        self.woman_id(w),
                        self.man_id(m),
                        self.man_id(m),
                        self.woman_id(w)
                    ));
                }
            }
        }
        out
    }

    /// True when every man and every woman is matched.
    pub fn is_complete(&self, m: &Matching) -> bool {
        m.len() == self.n_men() && m.len() == self.n_women()
    }

    pub(crate) fn assignment_view(&self, m: &Matching) -> Result<AssignmentViews, MatchingError> {
        let mut by_man = vec![None; self.n_men()];
        let mut by_woman = vec![None; self.n_women()];
        for (man, woman) in m.iter() {
            if man.0 >= self.n_men() || woman.0 >= self.n_women() {
                return Err(MatchingError::IndexOutOfRange);
            }
            if self.man_rank(man, woman).is_none() {
                return Err(MatchingError::NotAcceptable {
                    resident: self.man_id(man).to_string(),
                    hospital: self.woman_id(woman).to_string(),
                });
            }
            if by_man[man.0].replace(woman).is_some() {
                return Err(MatchingError::ResidentReassigned(
                    self.man_id(man).to_string(),
                ));
            }
            if by_woman[woman.0].replace(man).is_some() {
                return Err(MatchingError::CapacityExceeded {
                    hospital: self.woman_id(woman).to_string(),
                    assigned: 2,
                    capacity: 1,
                });
            }
        }
        Ok((by_man, by_woman))
    }
}

/// Assembles an [`SmtiInstance`] from agent names. A man's tie is set
/// separately from his strict prefix; leaving the tie empty is allowed
/// only for an empty list.
#[derive(Default)]
pub struct SmtiBuilder {
    men_ids: Vec<String>,
    women_ids: Vec<String>,
    prefix: Vec<Vec<Hospital>>,
    tie: Vec<Vec<Hospital>>,
    women_lists: Vec<Vec<Resident>>,
    men_index: HashMap<String, Resident>,
    women_index: HashMap<String, Hospital>,
}

impl SmtiBuilder {
    pub fn man(&mut self, id: &str) -> Resident {
        let m = Resident(self.men_ids.len());
        self.men_ids.push(id.to_string());
        self.prefix.push(Vec::new());
        self.tie.push(Vec::new());
        self.men_index.entry(id.to_string()).or_insert(m);
        m
    }

    pub fn woman(&mut self, id: &str) -> Hospital {
        let w = Hospital(self.women_ids.len());
        self.women_ids.push(id.to_string());
        self.women_lists.push(Vec::new());
        self.women_index.entry(id.to_string()).or_insert(w);
        w
    }

    pub fn lookup_man(&self, id: &str) -> Result<Resident, BuildError> {
        self.men_index
            .get(id)
            .copied()
            .ok_or_else(|| BuildError::UnknownResident(id.to_string()))
    }

    pub fn lookup_woman(&self, id: &str) -> Result<Hospital, BuildError> {
        self.women_index
            .get(id)
            .copied()
            .ok_or_else(|| BuildError::UnknownHospital(id.to_string()))
    }

    /// Sets a man's list as (strict prefix, tail tie).
    pub fn man_prefs(
        &mut self,
        id: &str,
        prefix: &[&str],
        tie: &[&str],
    ) -> Result<(), BuildError> {
        let m = self.lookup_man(id)?;
        let p = prefix
            .iter()
            .map(|w| self.lookup_woman(w))
            .collect::<Result<Vec<_>, _>>()?;
        let t = tie
            .iter()
            .map(|w| self.lookup_woman(w))
            .collect::<Result<Vec<_>, _>>()?;
        self.prefix[m.0] = p;
        self.tie[m.0] = t;
        Ok(())
    }

    pub fn man_prefs_resolved(&mut self, m: Resident, prefix: Vec<Hospital>, tie: Vec<Hospital>) {
        self.prefix[m.0] = prefix;
        self.tie[m.0] = tie;
    }

    pub fn woman_prefs(&mut self, id: &str, list: &[&str]) -> Result<(), BuildError> {
        let w = self.lookup_woman(id)?;
        let resolved = list
            .iter()
            .map(|m| self.lookup_man(m))
            .collect::<Result<Vec<_>, _>>()?;
        self.women_lists[w.0] = resolved;
        Ok(())
    }

    pub fn woman_prefs_resolved(&mut self, w: Hospital, list: Vec<Resident>) {
        self.women_lists[w.0] = list;
    }

    pub fn build(self) -> SmtiInstance {
        let man_rank = self
            .prefix
            .iter()
            .zip(&self.tie)
            .map(|(prefix, tie)| {
                let mut table = HashMap::new();
                for (pos, w) in prefix.iter().enumerate() {
                    table.entry(w.0).or_insert(Rank(pos as u32 + 1));
                }
                let tie_rank = Rank(prefix.len() as u32 + 1);
                for w in tie {
                    table.entry(w.0).or_insert(tie_rank);
                }
                table
            })
            .collect();
        let woman_rank = self
            .women_lists
            .iter()
            .map(|list| {
                let mut table = HashMap::new();
                for (pos, m) in list.iter().enumerate() {
                    table.entry(m.0).or_insert(Rank(pos as u32 + 1));
                }
                table
            })
            .collect();
        SmtiInstance {
            men_ids: self.men_ids,
            women_ids: self.women_ids,
            prefix: self.prefix,
            tie: self.tie,
            women_lists: self.women_lists,
            man_rank,
            woman_rank,
            men_index: self.men_index,
            women_index: self.women_index,
        }
    }
}

/// Breaks each man's tail tie into a seeded random strict order and marks
/// his strict prefix as the acquainted pairs. Agent ids carry over.
pub fn smti_to_smiss(smti: &SmtiInstance, seed: u64) -> HrssInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = HrssInstance::builder();
    let men: Vec<_> = smti.men().map(|m| b.resident(smti.man_id(m))).collect();
    let women: Vec<_> = smti
        .women()
        .map(|w| b.hospital(smti.woman_id(w), 1))
        .collect();
    for m in smti.men() {
        let mut list: Vec<Hospital> = smti.prefix(m).iter().map(|&w| women[w.0]).collect();
        let mut broken: Vec<Hospital> = smti.tie(m).iter().map(|&w| women[w.0]).collect();
        broken.shuffle(&mut rng);
        list.extend(broken);
        b.resident_prefs_resolved(men[m.0], list);
        for &w in smti.prefix(m) {
            b.acquainted_resolved(men[m.0], women[w.0]);
        }
    }
    for w in smti.women() {
        let list = smti.woman_list(w).iter().map(|&m| men[m.0]).collect();
        b.hospital_prefs_resolved(women[w.0], list);
    }
    b.build()
}
