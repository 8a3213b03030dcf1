//! Matching files: one `match <resident> <hospital>` line per assigned
//! resident, no header. Parsing resolves ids against a given instance;
//! semantic checks (acceptability, capacities) stay with
//! [`Matching::validate_for`](crate::model::Matching::validate_for).

use crate::error::ParseError;
use crate::format::content_lines;
use crate::model::{HrssInstance, Matching, Pair};

pub fn parse_matching(text: &str, inst: &HrssInstance) -> Result<Matching, ParseError> {
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seen = vec![false; inst.n_residents()];
    for (n, line) in content_lines(text) {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 3 || tokens[0] != "match" {
            return Err(ParseError::new(n, "expected: match <resident> <hospital>"));
        }
        let r = inst
            .resident_by_id(tokens[1])
            .ok_or_else(|| ParseError::new(n, format!("unknown resident {}", tokens[1])))?;
        let h = inst
            .hospital_by_id(tokens[2])
            .ok_or_else(|| ParseError::new(n, format!("unknown hospital {}", tokens[2])))?;
        if seen[r.0] {
            return Err(ParseError::new(
                n,
                format!("resident {} assigned twice", tokens[1]),
            ));
        }
        seen[r.0] = true;
        pairs.push((r, h));
    }
    Ok(Matching::from_pairs(pairs))
}

pub fn serialize_matching(inst: &HrssInstance, m: &Matching) -> String {
    let mut rows: Vec<(&str, &str)> = m
        .iter()
        .map(|(r, h)| (inst.resident_id(r), inst.hospital_id(h)))
        .collect();
    rows.sort();
    let mut out = String::new();
    for (r, h) in rows {
        out.push_str(&format!("match {r} {h}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixture_fig1;

    #[test]
    fn round_trips_and_sorts_by_resident_id() {
        let inst = fixture_fig1();
        let m1 = inst.resident_by_id("m1").unwrap();
        let m2 = inst.resident_by_id("m2").unwrap();
        let w1 = inst.hospital_by_id("w1").unwrap();
        let w2 = inst.hospital_by_id("w2").unwrap();
        let m = Matching::from_pairs([(m2, w2), (m1, w1)]);
        let text = serialize_matching(&inst, &m);
        assert_eq!(text, "match m1 w1\nmatch m2 w2\n");
        assert_eq!(parse_matching(&text, &inst).unwrap(), m);
    }

    #[test]
    fn empty_matching_is_an_empty_file() {
        let inst = fixture_fig1();
        assert_eq!(serialize_matching(&inst, &Matching::new()), "");
        assert!(parse_matching("", &inst).unwrap().is_empty());
        assert!(parse_matching("# nothing assigned\n", &inst).unwrap().is_empty());
    }

    #[test]
    fn errors_name_the_offending_line() {
        let inst = fixture_fig1();
        let err = parse_matching("match m1 w1\nmatch m9 w2\n", &inst).unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.message.contains("m9"));
        let err = parse_matching("match m1 w1\nmatch m1 w2\n", &inst).unwrap_err();
        assert!(err.message.contains("twice"));
        assert!(parse_matching("match m1\n", &inst).is_err());
        assert!(parse_matching("pair m1 w1\n", &inst).is_err());
    }
}
