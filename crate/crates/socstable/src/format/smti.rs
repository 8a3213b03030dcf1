//! Marriage instances whose men end their lists in a single tie.
//!
//! ```text
//! smti 1
//! man m1
//! woman w1
//! pref m1: w1 [w2 w3]
//! pref w1: m1 m2
//! ```
//!
//! A man's bracketed group must sit at the end of the line. A man's line
//! without brackets treats the last entry as a tie of length one, so
//! every nonempty list ends in a tie. Women's lists are strict and admit
//! no brackets.

use std::collections::HashMap;

use crate::error::ParseError;
use crate::format::{content_lines, end_line, expect_header};
use crate::reductions::SmtiInstance;

/// Preference entries split into the strict prefix and the tail tie.
fn split_tie<'a>(n: usize, tokens: &[&'a str]) -> Result<(Vec<&'a str>, Vec<&'a str>), ParseError> {
    let open = tokens.iter().position(|t| t.starts_with('['));
    let Some(open) = open else {
        // No brackets: the last entry forms a tie by itself.
        let (prefix, tie) = tokens.split_at(tokens.len().saturating_sub(1));
        return Ok((prefix.to_vec(), tie.to_vec()));
    };
    let last = tokens.len() - 1;
    if !tokens[last].ends_with(']') {
        return Err(ParseError::new(n, "tie bracket must close at the end of the line"));
    }
    let mut tie: Vec<&str> = Vec::new();
    for (i, token) in tokens.iter().enumerate().skip(open) {
        let mut entry = *token;
        if i == open {
            entry = &entry[1..];
        }
        if i == last {
            entry = entry.strip_suffix(']').unwrap_or(entry);
        }
        if entry.contains('[') || entry.contains(']') {
            return Err(ParseError::new(n, format!("stray bracket in {token}")));
        }
        if entry.is_empty() {
            return Err(ParseError::new(n, "empty entry inside tie brackets"));
        }
        tie.push(entry);
    }
    Ok((tokens[..open].to_vec(), tie))
}

pub fn parse_smti(text: &str) -> Result<SmtiInstance, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "smti")?;
    let mut b = SmtiInstance::builder();
    let mut men: Vec<String> = Vec::new();
    let mut women: Vec<String> = Vec::new();
    let mut prefs: HashMap<String, (usize, Vec<String>)> = HashMap::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "man" if tokens.len() == 2 => {
                if b.lookup_man(tokens[1]).is_ok() {
                    return Err(ParseError::new(n, format!("man {} declared twice", tokens[1])));
                }
                b.man(tokens[1]);
                men.push(tokens[1].to_string());
            }
            "woman" if tokens.len() == 2 => {
                if b.lookup_woman(tokens[1]).is_ok() {
                    return Err(ParseError::new(n, format!("woman {} declared twice", tokens[1])));
                }
                b.woman(tokens[1]);
                women.push(tokens[1].to_string());
            }
            "pref" if tokens.len() >= 2 => {
                let id = tokens[1].strip_suffix(':').filter(|id| !id.is_empty()).ok_or_else(
                    || ParseError::new(n, format!("pref target {} must end with a colon", tokens[1])),
                )?;
                let entries = tokens[2..].iter().map(|t| t.to_string()).collect();
                if prefs.insert(id.to_string(), (n, entries)).is_some() {
                    return Err(ParseError::new(n, format!("second pref line for {id}")));
                }
            }
            other => return Err(ParseError::new(n, format!("unknown directive {other}"))),
        }
    }
    for id in &men {
        let (n, entries) = prefs.remove(id).ok_or_else(|| {
            ParseError::new(end_line(text), format!("missing pref line for man {id}"))
        })?;
        let tokens: Vec<&str> = entries.iter().map(String::as_str).collect();
        let (prefix, tie) = split_tie(n, &tokens)?;
        b.man_prefs(id, &prefix, &tie)
            .map_err(|e| ParseError::new(n, e.to_string()))?;
    }
    for id in &women {
        let (n, entries) = prefs.remove(id).ok_or_else(|| {
            ParseError::new(end_line(text), format!("missing pref line for woman {id}"))
        })?;
        for entry in &entries {
            if entry.contains('[') || entry.contains(']') {
                return Err(ParseError::new(n, "women's lists are strict; no brackets"));
            }
        }
        let tokens: Vec<&str> = entries.iter().map(String::as_str).collect();
        b.woman_prefs(id, &tokens)
            .map_err(|e| ParseError::new(n, e.to_string()))?;
    }
    if let Some((id, (n, _))) = prefs.into_iter().min_by_key(|(_, (n, _))| *n) {
        return Err(ParseError::new(n, format!("pref line for undeclared agent {id}")));
    }
    Ok(b.build())
}

pub fn serialize_smti(smti: &SmtiInstance) -> String {
    let mut out = String::from("smti 1\n");
    for m in smti.men() {
        out.push_str(&format!("man {}\n", smti.man_id(m)));
    }
    for w in smti.women() {
        out.push_str(&format!("woman {}\n", smti.woman_id(w)));
    }
    for m in smti.men() {
        out.push_str(&format!("pref {}:", smti.man_id(m)));
        for &w in smti.prefix(m) {
            out.push(' ');
            out.push_str(smti.woman_id(w));
        }
        let tie = smti.tie(m);
        match tie.len() {
            0 => {}
            1 => {
                out.push(' ');
                out.push_str(smti.woman_id(tie[0]));
            }
            _ => {
                out.push_str(" [");
                let names: Vec<&str> = tie.iter().map(|&w| smti.woman_id(w)).collect();
                out.push_str(&names.join(" "));
                out.push(']');
            }
        }
        out.push('\n');
    }
    for w in smti.women() {
        out.push_str(&format!("pref {}:", smti.woman_id(w)));
        for &m in smti.woman_list(w) {
            out.push(' ');
            out.push_str(smti.man_id(m));
        }
        out.push('\n');
    }
    out
}
