//! Instance files.
//!
//! ```text
//! hrss 1
//! resident m1
//! hospital w1 cap 1
//! pref m1: w1 w2
//! pref w1: m2 m1
//! acq m1 w1
//! ```
//!
//! Agents are declared before they are referenced and every agent needs
//! exactly one `pref` line (possibly empty after the colon). The variant
//! header `hrsn 1` replaces `acq` lines with resident-resident `sn`
//! lines. Parsing checks references and shape only; semantic problems
//! such as asymmetric lists or non-acceptable acquainted pairs are left
//! to instance validation so they can be reported together.

use std::collections::HashMap;

use crate::error::ParseError;
use crate::format::{content_lines, end_line, expect_header};
use crate::model::{HrssInstance, Resident};
use crate::reductions::HrsnInstance;

struct Declarations {
    residents: Vec<String>,
    hospitals: Vec<(String, u32)>,
    resident_index: HashMap<String, usize>,
    hospital_index: HashMap<String, usize>,
    prefs: HashMap<String, (usize, Vec<String>)>,
}

impl Declarations {
    fn new() -> Self {
        Declarations {
            residents: Vec::new(),
            hospitals: Vec::new(),
            resident_index: HashMap::new(),
            hospital_index: HashMap::new(),
            prefs: HashMap::new(),
        }
    }

    fn declare_resident(&mut self, n: usize, id: &str) -> Result<(), ParseError> {
        if self.resident_index.contains_key(id) {
            return Err(ParseError::new(n, format!("resident {id} declared twice")));
        }
        self.resident_index.insert(id.to_string(), self.residents.len());
        self.residents.push(id.to_string());
        Ok(())
    }

    fn declare_hospital(&mut self, n: usize, id: &str, cap: u32) -> Result<(), ParseError> {
        if self.hospital_index.contains_key(id) {
            return Err(ParseError::new(n, format!("hospital {id} declared twice")));
        }
        self.hospital_index.insert(id.to_string(), self.hospitals.len());
        self.hospitals.push((id.to_string(), cap));
        Ok(())
    }

    fn record_prefs(&mut self, n: usize, id: &str, entries: Vec<String>) -> Result<(), ParseError> {
        let is_resident = self.resident_index.contains_key(id);
        let is_hospital = self.hospital_index.contains_key(id);
        if is_resident && is_hospital {
            return Err(ParseError::new(
                n,
                format!("{id} names both a resident and a hospital"),
            ));
        }
        if !is_resident && !is_hospital {
            return Err(ParseError::new(n, format!("pref line for undeclared agent {id}")));
        }
        let other = |entry: &String| -> Result<(), ParseError> {
            let known = if is_resident {
                self.hospital_index.contains_key(entry)
            } else {
                self.resident_index.contains_key(entry)
            };
            if known {
                Ok(())
            } else {
                Err(ParseError::new(
                    n,
                    format!("pref entry {entry} is not a declared agent on the other side"),
                ))
            }
        };
        entries.iter().try_for_each(other)?;
        if self.prefs.insert(id.to_string(), (n, entries)).is_some() {
            return Err(ParseError::new(n, format!("second pref line for {id}")));
        }
        Ok(())
    }

    fn lookup_pair(&self, n: usize, r: &str, h: &str) -> Result<(), ParseError> {
        if !self.resident_index.contains_key(r) {
            return Err(ParseError::new(n, format!("unknown resident {r}")));
        }
        if !self.hospital_index.contains_key(h) {
            return Err(ParseError::new(n, format!("unknown hospital {h}")));
        }
        Ok(())
    }

    fn build(mut self, last_line: usize, acq: &[(String, String)]) -> Result<HrssInstance, ParseError> {
        let mut b = HrssInstance::builder();
        for id in &self.residents {
            b.resident(id);
        }
        for (id, cap) in &self.hospitals {
            b.hospital(id, *cap);
        }
        for id in self.residents.clone() {
            let (_, entries) = self.prefs.remove(&id).ok_or_else(|| {
                ParseError::new(last_line, format!("missing pref line for resident {id}"))
            })?;
            let refs: Vec<&str> = entries.iter().map(String::as_str).collect();
            b.resident_prefs(&id, &refs)
                .expect("pref entries were checked during parsing");
        }
        for (id, _) in self.hospitals.clone() {
            let (_, entries) = self.prefs.remove(&id).ok_or_else(|| {
                ParseError::new(last_line, format!("missing pref line for hospital {id}"))
            })?;
            let refs: Vec<&str> = entries.iter().map(String::as_str).collect();
            b.hospital_prefs(&id, &refs)
                .expect("pref entries were checked during parsing");
        }
        for (r, h) in acq {
            b.acquainted(r, h)
                .expect("acq ids were checked during parsing");
        }
        Ok(b.build())
    }
}

/// Splits a `pref` line's target token, which carries the colon.
fn pref_target(n: usize, token: &str) -> Result<&str, ParseError> {
    token
        .strip_suffix(':')
        .filter(|id| !id.is_empty())
        .ok_or_else(|| {
            ParseError::new(n, format!("pref target {token} must end with a colon"))
        })
}

fn parse_cap(n: usize, tokens: &[&str]) -> Result<u32, ParseError> {
    if tokens.len() != 4 || tokens[2] != "cap" {
        return Err(ParseError::new(
            n,
            "hospital line must read: hospital <id> cap <count>",
        ));
    }
    tokens[3]
        .parse()
        .map_err(|_| ParseError::new(n, format!("capacity {} is not a number", tokens[3])))
}

pub fn parse_hrss(text: &str) -> Result<HrssInstance, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "hrss")?;
    let mut decl = Declarations::new();
    let mut acq: Vec<(String, String)> = Vec::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "resident" if tokens.len() == 2 => decl.declare_resident(n, tokens[1])?,
            "hospital" => {
                let cap = parse_cap(n, &tokens)?;
                decl.declare_hospital(n, tokens[1], cap)?;
            }
            "pref" if tokens.len() >= 2 => {
                let id = pref_target(n, tokens[1])?;
                let entries = tokens[2..].iter().map(|t| t.to_string()).collect();
                decl.record_prefs(n, id, entries)?;
            }
            "acq" if tokens.len() == 3 => {
                decl.lookup_pair(n, tokens[1], tokens[2])?;
                acq.push((tokens[1].to_string(), tokens[2].to_string()));
            }
            other => {
                return Err(ParseError::new(n, format!("unknown directive {other}")));
            }
        }
    }
    decl.build(end_line(text), &acq)
}

pub fn serialize_hrss(inst: &HrssInstance) -> String {
    let mut out = String::from("hrss 1\n");
    write_agents_and_prefs(inst, &mut out);
    for (r, h) in inst.acquainted_pairs() {
        out.push_str(&format!(
            "acq {} {}\n",
            inst.resident_id(r),
            inst.hospital_id(h)
        ));
    }
    out
}

fn write_agents_and_prefs(inst: &HrssInstance, out: &mut String) {
    for r in inst.residents() {
        out.push_str(&format!("resident {}\n", inst.resident_id(r)));
    }
    for h in inst.hospitals() {
        out.push_str(&format!(
            "hospital {} cap {}\n",
            inst.hospital_id(h),
            inst.capacity(h)
        ));
    }
    for r in inst.residents() {
        out.push_str(&format!("pref {}:", inst.resident_id(r)));
        for &h in inst.resident_prefs(r) {
            out.push(' ');
            out.push_str(inst.hospital_id(h));
        }
        out.push('\n');
    }
    for h in inst.hospitals() {
        out.push_str(&format!("pref {}:", inst.hospital_id(h)));
        for &r in inst.hospital_prefs(h) {
            out.push(' ');
            out.push_str(inst.resident_id(r));
        }
        out.push('\n');
    }
}

pub fn parse_hrsn(text: &str) -> Result<HrsnInstance, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "hrsn")?;
    let mut decl = Declarations::new();
    let mut social: Vec<(usize, String, String)> = Vec::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "resident" if tokens.len() == 2 => decl.declare_resident(n, tokens[1])?,
            "hospital" => {
                let cap = parse_cap(n, &tokens)?;
                decl.declare_hospital(n, tokens[1], cap)?;
            }
            "pref" if tokens.len() >= 2 => {
                let id = pref_target(n, tokens[1])?;
                let entries = tokens[2..].iter().map(|t| t.to_string()).collect();
                decl.record_prefs(n, id, entries)?;
            }
            "sn" if tokens.len() == 3 => {
                for t in &tokens[1..] {
                    if !decl.resident_index.contains_key(*t) {
                        return Err(ParseError::new(n, format!("unknown resident {t}")));
                    }
                }
                if tokens[1] == tokens[2] {
                    return Err(ParseError::new(
                        n,
                        format!("social edge joins {} to itself", tokens[1]),
                    ));
                }
                social.push((n, tokens[1].to_string(), tokens[2].to_string()));
            }
            other => {
                return Err(ParseError::new(n, format!("unknown directive {other}")));
            }
        }
    }
    let edges: Vec<(Resident, Resident)> = social
        .iter()
        .map(|(_, a, b)| {
            (
                Resident(decl.resident_index[a]),
                Resident(decl.resident_index[b]),
            )
        })
        .collect();
    let hr = decl.build(end_line(text), &[])?;
    Ok(HrsnInstance::new(hr, edges))
}

pub fn serialize_hrsn(hrsn: &HrsnInstance) -> String {
    let mut out = String::from("hrsn 1\n");
    write_agents_and_prefs(&hrsn.hr, &mut out);
    for (a, b) in hrsn.social_edges() {
        out.push_str(&format!(
            "sn {} {}\n",
            hrsn.hr.resident_id(a),
            hrsn.hr.resident_id(b)
        ));
    }
    out
}
