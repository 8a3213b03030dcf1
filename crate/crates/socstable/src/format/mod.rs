//! Line-oriented text formats for instances, matchings, and graphs.
//!
//! All formats share the same lexical rules: tokens are separated by
//! whitespace, blank lines and lines whose first token starts with `#`
//! are ignored, and the first content line names the format and its
//! version, e.g. `hrss 1`. Comments are whole lines only, since agent
//! ids may themselves contain `#`. Parse errors carry 1-based line
//! numbers.

pub mod graph;
pub mod hrss;
pub mod matching;
pub mod smti;

pub use graph::{parse_graph, serialize_graph};
pub use hrss::{parse_hrsn, parse_hrss, serialize_hrsn, serialize_hrss};
pub use matching::{parse_matching, serialize_matching};
pub use smti::{parse_smti, serialize_smti};

use crate::error::ParseError;

/// Content lines: 1-based number and trimmed text, with blank and
/// comment lines dropped.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, trimmed))
        }
    })
}

/// Consumes the first content line and checks it declares the format.
pub(crate) fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    format: &str,
) -> Result<(), ParseError> {
    match lines.next() {
        Some((n, line)) => {
            if line.split_whitespace().eq([format, "1"]) {
                Ok(())
            } else {
                Err(ParseError::new(
                    n,
                    format!("expected header \"{format} 1\", found \"{line}\""),
                ))
            }
        }
        None => Err(ParseError::new(
            1,
            format!("empty input, expected header \"{format} 1\""),
        )),
    }
}

/// Line number to blame for something missing at end of input.
pub(crate) fn end_line(text: &str) -> usize {
    text.lines().count().max(1)
}
