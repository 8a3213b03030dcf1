//! Randomized invariants over generated instances: format round-trips,
//! verifier consistency, the approximation's guarantees, and the
//! capacity-cloning correspondence.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use socstable::approx;
use socstable::classical::stable_matching;
use socstable::format::{
    parse_graph, parse_hrss, parse_matching, parse_smti, serialize_graph, serialize_hrss,
    serialize_matching, serialize_smti,
};
use socstable::gen::GenSpec;
use socstable::model::{HrssInstance, Matching};
use socstable::oracle;
use socstable::reductions::{clone_to_unit_capacity, SimpleGraph, SmtiInstance};
use socstable::verify::{blocking_report, is_classically_stable, is_socially_stable};

fn instance(seed: u64, residents: usize, hospitals: usize, cap: u32, rho_q: u8) -> HrssInstance {
    GenSpec {
        seed,
        residents,
        hospitals,
        capacity: (1, cap),
        list_len: (0, hospitals),
        rho: f64::from(rho_q) * 0.25,
        count: 1,
        constraint: None,
    }
    .instance(0)
}

proptest! {
    #[test]
    fn instance_text_round_trips(
        seed in any::<u64>(),
        nr in 0usize..=6,
        nh in 0usize..=5,
        cap in 1u32..=3,
        rho_q in 0u8..=4,
    ) {
        let inst = instance(seed, nr, nh, cap, rho_q);
        prop_assert_eq!(parse_hrss(&serialize_hrss(&inst)).unwrap(), inst);
    }

    #[test]
    fn matching_text_round_trips(
        seed in any::<u64>(),
        nr in 0usize..=6,
        nh in 1usize..=5,
        cap in 1u32..=3,
        rho_q in 0u8..=4,
    ) {
        let inst = instance(seed, nr, nh, cap, rho_q);
        let m = stable_matching(&inst);
        prop_assert_eq!(parse_matching(&serialize_matching(&inst, &m), &inst).unwrap(), m);
    }

    #[test]
    fn deferred_acceptance_output_has_no_blockers(
        seed in any::<u64>(),
        nr in 0usize..=6,
        nh in 1usize..=5,
        cap in 1u32..=3,
        rho_q in 0u8..=4,
    ) {
        let inst = instance(seed, nr, nh, cap, rho_q);
        let m = stable_matching(&inst);
        prop_assert!(is_classically_stable(&inst, &m).unwrap());
        prop_assert!(is_socially_stable(&inst, &m).unwrap());
    }

    #[test]
    fn blocking_report_tags_exactly_the_acquainted_pairs(
        seed in any::<u64>(),
        nr in 0usize..=6,
        nh in 1usize..=5,
        cap in 1u32..=3,
        rho_q in 0u8..=4,
    ) {
        let inst = instance(seed, nr, nh, cap, rho_q);
        let (approx_m, _) = approx::solve_hrss(&inst).unwrap();
        for m in [Matching::new(), stable_matching(&inst), approx_m] {
            let report = blocking_report(&inst, &m).unwrap();
            for p in &report.pairs {
                prop_assert!(!m.contains(p.resident, p.hospital));
                prop_assert_eq!(p.social, inst.is_acquainted(p.resident, p.hospital));
            }
            prop_assert_eq!(
                is_socially_stable(&inst, &m).unwrap(),
                report.is_socially_stable()
            );
        }
        // With nobody matched, every acceptable pair blocks classically.
        let empty = blocking_report(&inst, &Matching::new()).unwrap();
        prop_assert_eq!(empty.n_classical(), inst.n_acceptable());
    }

    #[test]
    fn approximation_is_socially_stable_with_bounded_work(
        seed in any::<u64>(),
        nr in 0usize..=6,
        nh in 1usize..=5,
        cap in 1u32..=3,
        rho_q in 0u8..=4,
    ) {
        let inst = instance(seed, nr, nh, cap, rho_q);
        let (m, stats) = approx::solve_hrss(&inst).unwrap();
        prop_assert!(is_socially_stable(&inst, &m).unwrap());
        let cloned_pairs: u64 = inst
            .acceptable_pairs()
            .map(|(_, h)| u64::from(inst.capacity(h)))
            .sum();
        prop_assert!(stats.proposals <= 2 * cloned_pairs);
    }

    #[test]
    fn approximation_reaches_two_thirds_of_the_optimum(
        seed in any::<u64>(),
        nr in 0usize..=5,
        nh in 1usize..=4,
        rho_q in 0u8..=4,
    ) {
        let inst = instance(seed, nr, nh, 1, rho_q);
        let (m, _) = approx::solve_hrss(&inst).unwrap();
        let best = oracle::max_socially_stable(&inst, oracle::DEFAULT_LIMIT).unwrap();
        prop_assert!(3 * m.len() >= 2 * best.len());
    }

    #[test]
    fn cloning_preserves_size_and_verdict(
        seed in any::<u64>(),
        nr in 0usize..=5,
        nh in 1usize..=4,
        cap in 1u32..=3,
        rho_q in 0u8..=4,
    ) {
        let inst = instance(seed, nr, nh, cap, rho_q);
        let (cloned, map) = clone_to_unit_capacity(&inst);
        let (approx_m, _) = approx::solve_hrss(&inst).unwrap();
        let best = oracle::max_socially_stable(&inst, oracle::DEFAULT_LIMIT).unwrap();
        for m in [Matching::new(), stable_matching(&inst), approx_m, best] {
            let image = map.clone_matching(&m, &inst, &cloned).unwrap();
            prop_assert_eq!(image.len(), m.len());
            prop_assert_eq!(
                is_socially_stable(&cloned, &image).unwrap(),
                is_socially_stable(&inst, &m).unwrap()
            );
            prop_assert_eq!(map.unclone_matching(&image, &inst).unwrap(), m);
        }
    }

    #[test]
    fn graph_text_round_trips(seed in any::<u64>(), n in 0usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = SimpleGraph::new();
        for i in 0..n {
            g.add_vertex(&format!("v{i}"));
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(0.4) {
                    g.add_edge(a, b).unwrap();
                }
            }
        }
        prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }

    #[test]
    fn marriage_text_round_trips(seed in any::<u64>(), men in 0usize..=3, women in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut b = SmtiInstance::builder();
        for i in 1..=men {
            b.man(&format!("m{i}"));
        }
        for i in 1..=women {
            b.woman(&format!("w{i}"));
        }
        let mut acceptors: Vec<Vec<usize>> = vec![Vec::new(); women];
        for m in 0..men {
            let mut support: Vec<usize> = (0..women).filter(|_| rng.gen_bool(0.6)).collect();
            support.shuffle(&mut rng);
            for &w in &support {
                acceptors[w].push(m);
            }
            // Every nonempty list ends in a tie of at least one woman.
            let tie_len = if support.is_empty() { 0 } else { rng.gen_range(1..=support.len()) };
            let cut = support.len() - tie_len;
            let names: Vec<String> = support.iter().map(|w| format!("w{}", w + 1)).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            b.man_prefs(&format!("m{}", m + 1), &refs[..cut], &refs[cut..]).unwrap();
        }
        for (w, mut list) in acceptors.into_iter().enumerate() {
            list.shuffle(&mut rng);
            let names: Vec<String> = list.iter().map(|m| format!("m{}", m + 1)).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            b.woman_prefs(&format!("w{}", w + 1), &refs).unwrap();
        }
        let smti = b.build();
        prop_assert!(smti.validate().is_empty());
        prop_assert_eq!(parse_smti(&serialize_smti(&smti)).unwrap(), smti);
    }
}
