//! Undirected simple graphs.
//!
//! ```text
//! graph 1
//! vertex a
//! vertex b
//! edge a b
//! ```

use crate::error::ParseError;
use crate::format::{content_lines, expect_header};
use crate::reductions::SimpleGraph;

pub fn parse_graph(text: &str) -> Result<SimpleGraph, ParseError> {
    let mut lines = content_lines(text);
    expect_header(&mut lines, "graph")?;
    let mut g = SimpleGraph::new();
    for (n, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "vertex" if tokens.len() == 2 => {
                if g.vertex_by_id(tokens[1]).is_some() {
                    return Err(ParseError::new(n, format!("vertex {} declared twice", tokens[1])));
                }
                g.add_vertex(tokens[1]);
            }
            "edge" if tokens.len() == 3 => {
                let a = g.vertex_by_id(tokens[1]).ok_or_else(|| {
                    ParseError::new(n, format!("unknown vertex {}", tokens[1]))
                })?;
                let b = g.vertex_by_id(tokens[2]).ok_or_else(|| {
                    ParseError::new(n, format!("unknown vertex {}", tokens[2]))
                })?;
                g.add_edge(a, b).map_err(|e| ParseError::new(n, e))?;
            }
            other => return Err(ParseError::new(n, format!("unknown directive {other}"))),
        }
    }
    Ok(g)
}

pub fn serialize_graph(g: &SimpleGraph) -> String {
    let mut out = String::from("graph 1\n");
    for v in 0..g.n_vertices() {
        out.push_str(&format!("vertex {}\n", g.vertex_id(v)));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("edge {} {}\n", g.vertex_id(a), g.vertex_id(b)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let mut g = SimpleGraph::new();
        let a = g.add_vertex("a");
        let b = g.add_vertex("b");
        g.add_vertex("c");
        g.add_edge(a, b).unwrap();
        let text = serialize_graph(&g);
        assert_eq!(text, "graph 1\nvertex a\nvertex b\nvertex c\nedge a b\n");
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn rejects_self_loops_and_unknowns() {
        let err = parse_graph("graph 1\nvertex a\nedge a a\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(parse_graph("graph 1\nedge a b\n").is_err());
        assert!(parse_graph("graph 1\nvertex a\nvertex a\n").is_err());
        assert!(parse_graph("graph 1\nnode a\n").is_err());
        assert!(parse_graph("graph 2\n").is_err());
    }

    #[test]
    fn empty_graph_round_trips() {
        let g = parse_graph("graph 1\n").unwrap();
        assert_eq!(g.n_vertices(), 0);
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
    }
}
