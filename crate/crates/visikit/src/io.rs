//! Plain-text edge-list format.
//!
//! First significant line is `n m`, followed by exactly `m` lines `u v` with
//! 0-based vertex ids. Lines starting with `#` and blank lines are ignored
//! but still counted for error positions. The writer emits edges with
//! `u < v` in lexicographic order.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let a = parse_id(tokens.next(), line)?;
        let b = parse_id(tokens.next(), line)?;
        if let Some(extra) = tokens.next() {
            return Err(parse_err(line, format!("unexpected token {extra:?}")));
        }
        match header {
            None => header = Some((a, b)),
            Some((n, m)) => {
                if edges.len() == m {
                    return Err(parse_err(line, format!("more than {m} edge lines")));
                }
                if a >= n || b >= n {
                    return Err(parse_err(line, format!("vertex id out of range 0..{n}")));
                }
                if a == b {
                    return Err(parse_err(line, format!("self-loop at vertex {a}")));
                }
                if !seen.insert((a.min(b), a.max(b))) {
                    return Err(parse_err(line, format!("duplicate edge ({a}, {b})")));
                }
                edges.push((a, b));
            }
        }
    }

    let (n, m) = header.ok_or_else(|| parse_err(last_line + 1, "missing 'n m' header".into()))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line + 1,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Graph::from_edges(n, &edges).expect("edges validated during parsing"))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn parse_id(token: Option<&str>, line: usize) -> Result<usize> {
    let token = token.ok_or_else(|| parse_err(line, "expected two integers".into()))?;
    token
        .parse()
        .map_err(|_| parse_err(line, format!("not an integer: {token:?}")))
}

fn parse_err(line: usize, msg: String) -> Error {
    Error::Parse { line, msg }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_path() {
        let g = parse_edge_list("4 3\n0 1\n1 2\n2 3\n").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn skips_comments_and_blanks() {
        let g = parse_edge_list("# a triangle\n\n3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
    }

    #[test]
    fn duplicate_edge_with_line_number() {
        match parse_edge_list("3 2\n0 1\n0 1\n") {
            Err(Error::Parse { line: 3, msg }) => assert!(msg.contains("duplicate")),
            other => panic!("expected parse error on line 3, got {other:?}"),
        }
        // Reversed orientation is the same edge.
        assert!(parse_edge_list("3 2\n0 1\n1 0\n").is_err());
    }

    #[test]
    fn structural_errors_carry_lines() {
        assert!(matches!(
            parse_edge_list("3 1\n4 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n1 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("2 1\nx 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list("# nothing\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trip_is_canonical() {
        let text = "4 4\n0 1\n0 3\n1 2\n2 3\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(to_edge_list(&g), text);
        // Shuffled input canonicalizes to the same form.
        let g2 = parse_edge_list("4 4\n2 3\n1 0\n3 0\n2 1\n").unwrap();
        assert_eq!(to_edge_list(&g2), text);
    }
}
