//! Seeded random instance generation.
//!
//! A spec file drives the generator:
//!
//! ```text
//! genspec 1
//! seed 42
//! residents 7
//! hospitals 7
//! capacity 1 2
//! list-len 1 5
//! rho 0.5
//! count 100
//! constraint max-acq 5
//! ```
//!
//! `seed`, `residents`, `hospitals`, and `rho` are required; `capacity`
//! defaults to 1 1, `list-len` to the full 0..=hospitals range, `count`
//! to 1. Instance `i` of a spec depends only on (seed, i), so a batch
//! can be regenerated instance by instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{GenError, ParseError};
use crate::format::{content_lines, expect_header};
use crate::model::HrssInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenConstraint {
    /// Every resident's list has length at most 2.
    Degree2,
    /// At most this many acquainted pairs.
    MaxAcquainted(usize),
    /// At most this many acceptable-but-unacquainted pairs.
    MaxUnacquainted(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub seed: u64,
    pub residents: usize,
    pub hospitals: usize,
    pub capacity: (u32, u32),
    pub list_len: (usize, usize),
    pub rho: f64,
    pub count: usize,
    pub constraint: Option<GenConstraint>,
}

impl GenSpec {
    pub fn check(&self) -> Result<(), GenError> {
        if !(0.0..=1.0).contains(&self.rho) {
            return Err(GenError::InvalidSpec(format!(
                "rho {} is outside [0, 1]",
                self.rho
            )));
        }
        if self.capacity.0 == 0 {
            return Err(GenError::InvalidSpec("capacity minimum must be positive".into()));
        }
        if self.capacity.0 > self.capacity.1 {
            return Err(GenError::InvalidSpec("capacity range is reversed".into()));
        }
        if self.list_len.0 > self.list_len.1 {
            return Err(GenError::InvalidSpec("list-len range is reversed".into()));
        }
        if self.count == 0 {
            return Err(GenError::InvalidSpec("count must be positive".into()));
        }
        if self.list_len.0 > self.hospitals {
            return Err(GenError::Unsatisfiable(format!(
                "minimum list length {} exceeds the {} hospitals",
                self.list_len.0, self.hospitals
            )));
        }
        Ok(())
    }

    /// Generates instance number `index` of this spec.
    pub fn instance(&self, index: usize) -> HrssInstance {
        let stream = self.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let mut b = HrssInstance::builder();
        let resident_names: Vec<String> = (1..=self.residents).map(|i| format!("r{i}")).collect();
        let hospital_names: Vec<String> = (1..=self.hospitals).map(|i| format!("h{i}")).collect();
        for name in &resident_names {
            b.resident(name);
        }
        for name in &hospital_names {
            let cap = rng.gen_range(self.capacity.0..=self.capacity.1);
            b.hospital(name, cap);
        }

        let mut lists: Vec<Vec<usize>> = Vec::with_capacity(self.residents);
        for _ in 0..self.residents {
            let mut len = rng.gen_range(self.list_len.0..=self.list_len.1);
            if self.constraint == Some(GenConstraint::Degree2) {
                len = len.min(2);
            }
            len = len.min(self.hospitals);
            let picks = rand::seq::index::sample(&mut rng, self.hospitals, len);
            lists.push(picks.into_vec());
        }
        let mut listers: Vec<Vec<usize>> = vec![Vec::new(); self.hospitals];
        for (r, list) in lists.iter().enumerate() {
            for &h in list {
                listers[h].push(r);
            }
        }
        for l in &mut listers {
            l.shuffle(&mut rng);
        }

        let mut acquainted: Vec<(usize, usize)> = Vec::new();
        let mut unacquainted: Vec<(usize, usize)> = Vec::new();
        for (r, list) in lists.iter().enumerate() {
            for &h in list {
                if rng.gen_bool(self.rho) {
                    acquainted.push((r, h));
                } else {
                    unacquainted.push((r, h));
                }
            }
        }
        match self.constraint {
            Some(GenConstraint::MaxAcquainted(k)) if acquainted.len() > k => {
                acquainted.shuffle(&mut rng);
                for &pair in &acquainted[k..] {
                    unacquainted.push(pair);
                }
                acquainted.truncate(k);
            }
            Some(GenConstraint::MaxUnacquainted(k)) if unacquainted.len() > k => {
                unacquainted.shuffle(&mut rng);
                for &pair in &unacquainted[k..] {
                    acquainted.push(pair);
                }
                unacquainted.truncate(k);
            }
            _ => {}
        }

        for (r, list) in lists.iter().enumerate() {
            let names: Vec<&str> = list.iter().map(|&h| hospital_names[h].as_str()).collect();
            b.resident_prefs(&resident_names[r], &names)
                .expect("generated entries exist");
        }
        for (h, l) in listers.iter().enumerate() {
            let names: Vec<&str> = l.iter().map(|&r| resident_names[r].as_str()).collect();
            b.hospital_prefs(&hospital_names[h], &names)
                .expect("generated entries exist");
        }
        for (r, h) in acquainted {
            b.acquainted(&resident_names[r], &hospital_names[h])
                .expect("generated pairs exist");
        }
        let inst = b.build();
        debug_assert!(inst.validate().is_empty());
        inst
    }

    pub fn instances(&self) -> impl Iterator<Item = HrssInstance> + '_ {
        (0..self.count).map(|i| self.instance(i))
    }
}

fn parse_number<T: std::str::FromStr>(n: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(n, format!("{what} {token} is not a valid number")))
}

pub fn parse_genspec(text: &str) -> Result<GenSpec, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "genspec")?;
    let mut seed: Option<u64> = None;
    let mut residents: Option<usize> = None;
    let mut hospitals: Option<usize> = None;
    let mut capacity: Option<(u32, u32)> = None;
    let mut list_len: Option<(usize, usize)> = None;
    let mut rho: Option<f64> = None;
    let mut count: Option<usize> = None;
    let mut constraint: Option<GenConstraint> = None;

    fn set<T>(n: usize, slot: &mut Option<T>, value: T, name: &str) -> Result<(), ParseError> {
        if slot.is_some() {
            return Err(ParseError::new(n, format!("{name} given twice")));
        }
        *slot = Some(value);
        Ok(())
    }

    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match (tokens[0], tokens.len()) {
            ("seed", 2) => set(n, &mut seed, parse_number(n, tokens[1], "seed")?, "seed")?,
            ("residents", 2) => set(
                n,
                &mut residents,
                parse_number(n, tokens[1], "residents")?,
                "residents",
            )?,
            ("hospitals", 2) => set(
                n,
                &mut hospitals,
                parse_number(n, tokens[1], "hospitals")?,
                "hospitals",
            )?,
            ("capacity", 3) => {
                let lo = parse_number(n, tokens[1], "capacity")?;
                let hi = parse_number(n, tokens[2], "capacity")?;
                set(n, &mut capacity, (lo, hi), "capacity")?;
            }
            ("list-len", 3) => {
                let lo = parse_number(n, tokens[1], "list-len")?;
                let hi = parse_number(n, tokens[2], "list-len")?;
                set(n, &mut list_len, (lo, hi), "list-len")?;
            }
            ("rho", 2) => set(n, &mut rho, parse_number(n, tokens[1], "rho")?, "rho")?,
            ("count", 2) => set(n, &mut count, parse_number(n, tokens[1], "count")?, "count")?,
            ("constraint", 2) if tokens[1] == "degree2" => {
                set(n, &mut constraint, GenConstraint::Degree2, "constraint")?;
            }
            ("constraint", 3) if tokens[1] == "max-acq" => {
                let k = parse_number(n, tokens[2], "max-acq")?;
                set(n, &mut constraint, GenConstraint::MaxAcquainted(k), "constraint")?;
            }
            ("constraint", 3) if tokens[1] == "max-unacq" => {
                let k = parse_number(n, tokens[2], "max-unacq")?;
                set(n, &mut constraint, GenConstraint::MaxUnacquainted(k), "constraint")?;
            }
            (other, _) => {
                return Err(ParseError::new(n, format!("unknown directive {other}")));
            }
        }
    }

    fn require<T>(slot: Option<T>, name: &str) -> Result<T, ParseError> {
        slot.ok_or_else(|| ParseError::new(1, format!("spec is missing the {name} directive")))
    }
    let residents = require(residents, "residents")?;
    let hospitals = require(hospitals, "hospitals")?;
    Ok(GenSpec {
        seed: require(seed, "seed")?,
        residents,
        hospitals,
        capacity: capacity.unwrap_or((1, 1)),
        list_len: list_len.unwrap_or((0, hospitals)),
        rho: require(rho, "rho")?,
        count: count.unwrap_or(1),
        constraint,
    })
}
