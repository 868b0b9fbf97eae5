//! The text graph format.
//!
//! ```text
//! n m M d|u
//! tail head weight      (m lines, 0-indexed)
//! ```
//!
//! Line order is edge order, which is also the tie-breaking order.

use std::fmt::Write as _;
use std::path::Path;

use dso_core::{Failure, Graph};

use crate::error::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse().map_err(|_| parse_err(line, format!("{what} {tok:?} is not a nonnegative integer")))
}

pub fn load_graph(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input, expected header \"n m M d|u\""))?;
    let tok: Vec<&str> = header.split_whitespace().collect();
    let [n, m, max_w, dir] = tok[..] else {
        return Err(parse_err(1, format!("header needs 4 fields \"n m M d|u\", found {}", tok.len())));
    };
    let n: usize = number(n, 1, "vertex count")?;
    let m: usize = number(m, 1, "edge count")?;
    let max_w: u32 = number(max_w, 1, "maximum weight")?;
    if max_w == 0 {
        return Err(parse_err(1, "maximum weight must be at least 1"));
    }
    let directed = match dir {
        "d" => true,
        "u" => false,
        other => return Err(parse_err(1, format!("expected d or u, found {other:?}"))),
    };

    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let tok: Vec<&str> = text.split_whitespace().collect();
        if tok.len() == 4 && matches!(tok[3], "d" | "u") {
            return Err(parse_err(line, "duplicate header"));
        }
        if edges.len() == m {
            if tok.is_empty() {
                continue;
            }
            return Err(parse_err(line, format!("unexpected line after {m} edges")));
        }
        let [a, b, w] = tok[..] else {
            return Err(parse_err(line, format!("edge needs 3 fields \"tail head weight\", found {}", tok.len())));
        };
        let a: usize = number(a, line, "tail")?;
        let b: usize = number(b, line, "head")?;
        let w: u64 = number(w, line, "weight")?;
        for x in [a, b] {
            if x >= n {
                return Err(parse_err(line, format!("vertex {x} out of range (n = {n})")));
            }
        }
        if a == b {
            return Err(parse_err(line, format!("self-loop on vertex {a}")));
        }
        if w == 0 || w > u64::from(max_w) {
            return Err(parse_err(line, format!("weight {w} outside 1..={max_w}")));
        }
        edges.push((a, b, w));
    }
    if edges.len() < m {
        return Err(parse_err(edges.len() + 2, format!("expected {m} edges, found {}", edges.len())));
    }
    Ok(Graph::new(n, max_w, directed, edges)?)
}

pub fn dump_graph(g: &Graph) -> String {
    let mut out = String::new();
    let dir = if g.is_directed() { 'd' } else { 'u' };
    let _ = writeln!(out, "{} {} {} {dir}", g.vertex_count(), g.edge_count(), g.max_weight());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.tail, e.head, e.weight);
    }
    out
}

pub fn read_graph_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_graph(&text)
}

/// Parses `v:<id>` or `e:<id>`, the form failures are printed in.
pub fn parse_failure(s: &str) -> Result<Failure> {
    let bad = || Error::Input(format!("failure {s:?} must look like v:<vertex> or e:<edge>"));
    let (kind, id) = s.split_once(':').ok_or_else(bad)?;
    let id: usize = id.parse().map_err(|_| bad())?;
    match kind {
        "v" => Ok(Failure::Vertex(id)),
        "e" => Ok(Failure::Edge(id)),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dso_core::graph::fixtures;

    const FIX_A: &str = "4 6 5 d\n0 1 1\n1 2 1\n2 3 1\n0 2 2\n0 3 5\n1 3 3\n";

    #[test]
    fn fix_a_round_trip() {
        let g = load_graph(FIX_A).unwrap();
        assert_eq!(g, fixtures::fix_a());
        assert_eq!(dump_graph(&g), FIX_A);
    }

    #[test]
    fn weight_below_one_names_the_line() {
        let err = load_graph("4 1 5 d\n0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_bad_ids_headers_and_counts() {
        assert!(matches!(load_graph("3 1 2 d\n0 3 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_graph("3 1 2 d\n3 1 2 d\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_graph("3 2 2 d\n0 1 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(load_graph("3 1 2 d\n0 1 1\n1 2 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(load_graph("3 1 2 x\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(load_graph("3 1 2 d\n0 0 1\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_graph("3 1 3 d\n0 1 4\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(load_graph(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn undirected_round_trip() {
        let text = "3 2 4 u\n0 1 4\n2 1 1\n";
        let g = load_graph(text).unwrap();
        assert_eq!(g.arc_count(), 4);
        assert_eq!(dump_graph(&g), text);
    }

    #[test]
    fn failure_syntax() {
        assert_eq!(parse_failure("v:3").unwrap(), Failure::Vertex(3));
        assert_eq!(parse_failure("e:0").unwrap(), Failure::Edge(0));
        assert!(parse_failure("x:1").is_err());
        assert!(parse_failure("v3").is_err());
    }
}
