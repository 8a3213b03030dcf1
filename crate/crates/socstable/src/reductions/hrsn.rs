//! From acquaintance to a resident-side social network.
//!
//! Each hospital h gains a dummy resident that ranks only h, sits first
//! on h's list, and raises h's capacity by one. The dummy befriends
//! exactly the residents acquainted with h. A matching is socially stable
//! in the source instance iff its extension by all (dummy, hospital)
//! pairs is locally stable in the image, and every resident-complete
//! locally stable matching of the image restricts back to a socially
//! stable one.

use std::collections::BTreeSet;

use crate::model::{Hospital, HrssInstance, Matching, Resident};

/// A Hospitals/Residents instance plus an undirected friendship relation
/// between residents. The embedded [`HrssInstance`] carries an empty
/// acquaintance relation; blocking here is gated by friendships instead
/// (see `verify::is_locally_stable`).
#[derive(Clone, Debug, PartialEq)]
pub struct HrsnInstance {
    pub hr: HrssInstance,
    social: BTreeSet<(Resident, Resident)>,
}

impl HrsnInstance {
    pub fn new(hr: HrssInstance, edges: impl IntoIterator<Item = (Resident, Resident)>) -> Self {
        let social = edges
            .into_iter()
            .filter(|&(a, b)| a != b)
            .map(|(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        HrsnInstance { hr, social }
    }

    pub fn are_friends(&self, a: Resident, b: Resident) -> bool {
        let key = if a < b { (a, b) } else { (b, a) };
        self.social.contains(&key)
    }

    pub fn social_edges(&self) -> impl Iterator<Item = (Resident, Resident)> + '_ {
        self.social.iter().copied()
    }

    pub fn n_social_edges(&self) -> usize {
        self.social.len()
    }
}

/// Which resident of the image is the dummy for each hospital.
#[derive(Clone, Debug)]
pub struct HrsnMap {
    n_original_residents: usize,
    dummy_of: Vec<Resident>,
}

impl HrsnMap {
    pub fn dummy_of(&self, h: Hospital) -> Resident {
        self.dummy_of[h.0]
    }

    pub fn is_dummy(&self, r: Resident) -> bool {
        r.0 >= self.n_original_residents
    }

    /// Adds the (dummy, hospital) pair for every hospital.
    pub fn extend_matching(&self, m: &Matching) -> Matching {
        let mut out = m.clone();
        for (h, &d) in self.dummy_of.iter().enumerate() {
            out.insert(d, Hospital(h));
        }
        out
    }

    /// Drops every pair whose resident is a dummy.
    pub fn restrict_matching(&self, m: &Matching) -> Matching {
        m.iter().filter(|&(r, _)| !self.is_dummy(r)).collect()
    }
}

/// Builds the social-network image of an instance. Dummy residents are
/// named `dummy::<hospital id>` and appended after the original residents
/// in hospital order.
pub fn hrss_to_hrsn(inst: &HrssInstance) -> (HrsnInstance, HrsnMap) {
    let mut b = HrssInstance::builder();
    let originals: Vec<_> = inst
        .residents()
        .map(|r| b.resident(inst.resident_id(r)))
        .collect();
    let dummies: Vec<_> = inst
        .hospitals()
        .map(|h| b.resident(&format!("dummy::{}", inst.hospital_id(h))))
        .collect();
    let hospitals: Vec<_> = inst
        .hospitals()
        .map(|h| b.hospital(inst.hospital_id(h), inst.capacity(h) + 1))
        .collect();
    for r in inst.residents() {
        let list = inst
            .resident_prefs(r)
            .iter()
            .map(|&h| hospitals[h.0])
            .collect();
        b.resident_prefs_resolved(originals[r.0], list);
    }
    for h in inst.hospitals() {
        b.resident_prefs_resolved(dummies[h.0], vec![hospitals[h.0]]);
        let mut list = vec![dummies[h.0]];
        list.extend(inst.hospital_prefs(h).iter().map(|&r| originals[r.0]));
        b.hospital_prefs_resolved(hospitals[h.0], list);
    }
    let edges: Vec<_> = inst
        .acquainted_pairs()
        .map(|(r, h)| (originals[r.0], dummies[h.0]))
        .collect();
    let map = HrsnMap {
        n_original_residents: inst.n_residents(),
        dummy_of: dummies,
    };
    (HrsnInstance::new(b.build(), edges), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{fixture_fig1, Matching};
    use crate::verify::is_locally_stable;

    #[test]
    fn fig1_image_shape() {
        let inst = fixture_fig1();
        let (hrsn, map) = hrss_to_hrsn(&inst);
        assert_eq!(hrsn.hr.n_residents(), 4);
        assert_eq!(hrsn.hr.n_hospitals(), 2);
        let w1 = hrsn.hr.hospital_by_id("w1").unwrap();
        assert_eq!(hrsn.hr.capacity(w1), 2);
        let d1 = hrsn.hr.resident_by_id("dummy::w1").unwrap();
        assert_eq!(map.dummy_of(w1), d1);
        assert!(map.is_dummy(d1));
        // Dummy sits first on the hospital's list and lists only it.
        assert_eq!(hrsn.hr.hospital_prefs(w1)[0], d1);
        assert_eq!(hrsn.hr.resident_prefs(d1), &[w1]);
        // One friendship per acquainted pair.
        assert_eq!(hrsn.n_social_edges(), 2);
        let m1 = hrsn.hr.resident_by_id("m1").unwrap();
        assert!(hrsn.are_friends(m1, d1));
        assert!(hrsn.hr.validate().is_empty());
    }

    #[test]
    fn no_acquaintance_means_no_friendships() {
        let mut b = HrssInstance::builder();
        b.resident("r");
        b.hospital("h", 1);
        b.resident_prefs("r", &["h"]).unwrap();
        b.hospital_prefs("h", &["r"]).unwrap();
        let inst = b.build();
        let (hrsn, _) = hrss_to_hrsn(&inst);
        assert_eq!(hrsn.n_social_edges(), 0);
    }

    #[test]
    fn fig1_socially_stable_matching_maps_to_locally_stable() {
        let inst = fixture_fig1();
        let (hrsn, map) = hrss_to_hrsn(&inst);
        let m1 = inst.resident_by_id("m1").unwrap();
        let m2 = inst.resident_by_id("m2").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let w2 = inst.hospital_by_id("w2").unwrap();
        let m = Matching::from_pairs([(m1, w1), (m2, w2)]);
        let extended = map.extend_matching(&m);
        assert_eq!(extended.len(), 4);
        assert!(is_locally_stable(&hrsn, &extended).unwrap());
        assert_eq!(map.restrict_matching(&extended), m);
    }

    #[test]
    fn empty_matching_is_locally_stable() {
        let inst = fixture_fig1();
        let (hrsn, _) = hrss_to_hrsn(&inst);
        assert!(is_locally_stable(&hrsn, &Matching::new()).unwrap());
    }

    #[test]
    fn friendship_with_an_assignee_enables_blocking() {
        let mut b = HrssInstance::builder();
        b.resident("a");
        b.resident("b");
        b.hospital("h", 1);
        b.resident_prefs("a", &["h"]).unwrap();
        b.resident_prefs("b", &["h"]).unwrap();
        b.hospital_prefs("h", &["a", "b"]).unwrap();
        let inst = b.build();
        let a = inst.resident_by_id("a").unwrap();
        let b_ = inst.resident_by_id("b").unwrap();
        let h = inst.hospital_by_id("h").unwrap();
        let m = Matching::from_pairs([(b_, h)]);
        // (a, h) blocks classically; with no friendships that stays
        // invisible, with {a, b} it does not.
        let lonely = HrsnInstance::new(inst.clone(), []);
        assert!(is_locally_stable(&lonely, &m).unwrap());
        let social = HrsnInstance::new(inst, [(a, b_)]);
        assert!(!is_locally_stable(&social, &m).unwrap());
    }
}
