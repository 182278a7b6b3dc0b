//! Plain-text edge-list format.
//!
//! ```text
//! # comment
//! n m
//! u v
//! ...
//! ```
//!
//! Indices are 0-based ASCII decimal. Lines whose first non-blank character
//! is `#`, and blank lines, are ignored. [`serialize`] writes the header and
//! the edges in ascending `(u, v)` order with `u < v`, one per line, each
//! terminated by `\n`.

use crate::graph::{Graph, Vertex};
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { line: usize, index: usize, n: usize },
    #[error("line {line}: {message}")]
    SimplenessViolation { line: usize, message: String },
    #[error("header declares {declared} edges but {found} were given")]
    CountMismatch { declared: usize, found: usize },
}

impl ParseError {
    /// 1-based line number, where one applies.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. }
            | ParseError::IndexOutOfRange { line, .. }
            | ParseError::SimplenessViolation { line, .. } => Some(*line),
            ParseError::CountMismatch { .. } => None,
        }
    }
}

/// A parsed file before simplicity is enforced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawEdgeList {
    pub n: usize,
    /// `(line, u, v)` in file order.
    pub edges: Vec<(usize, Vertex, Vertex)>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn two_numbers(line: usize, text: &str) -> Result<(usize, usize), ParseError> {
    let syntax = |message: String| ParseError::Syntax { line, message };
    let mut fields = text.split_ascii_whitespace();
    let mut next = |what: &str| {
        let field = fields
            .next()
            .ok_or_else(|| syntax(format!("missing {what}")))?;
        field
            .parse::<usize>()
            .map_err(|_| syntax(format!("{what} {field:?} is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if let Some(extra) = fields.next() {
        return Err(syntax(format!("unexpected trailing field {extra:?}")));
    }
    Ok((a, b))
}

/// Parses the header and edge lines, checking indices and the edge count
/// but not simplicity.
pub fn parse_raw(text: &str) -> Result<RawEdgeList, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or(ParseError::Syntax {
        line: 1,
        message: "missing \"n m\" header".into(),
    })?;
    let (n, m) = two_numbers(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let (u, v) = two_numbers(line, body)?;
        for index in [u, v] {
            if index >= n {
                return Err(ParseError::IndexOutOfRange { line, index, n });
            }
        }
        edges.push((line, u, v));
    }
    if edges.len() != m {
        return Err(ParseError::CountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(RawEdgeList { n, edges })
}

/// Parses an edge list, rejecting self-loops and repeated edges.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let raw = parse_raw(text)?;
    let mut seen = std::collections::HashMap::new();
    for &(line, u, v) in &raw.edges {
        if u == v {
            return Err(ParseError::SimplenessViolation {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if let Some(first) = seen.insert((u.min(v), u.max(v)), line) {
            return Err(ParseError::SimplenessViolation {
                line,
                message: format!("edge {u} {v} already given on line {first}"),
            });
        }
    }
    let pairs: Vec<_> = raw.edges.iter().map(|&(_, u, v)| (u, v)).collect();
    Ok(Graph::from_edges(raw.n, &pairs).expect("validated above"))
}

/// Parses an edge list, dropping self-loops and repeated edges. Returns the
/// graph and the number of dropped lines.
pub fn parse_edge_list_lenient(text: &str) -> Result<(Graph, usize), ParseError> {
    let raw = parse_raw(text)?;
    let pairs: Vec<_> = raw.edges.iter().map(|&(_, u, v)| (u, v)).collect();
    Ok(Graph::from_edges_lenient(raw.n, &pairs).expect("indices validated"))
}

pub fn serialize(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.m() + 1));
    writeln!(out, "{} {}", g.n(), g.m()).expect("writing to a String");
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle, path, petersen};
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_edge_list("3 2\n0 1\n1 2\n").unwrap(),
            path(3).unwrap()
        );
        assert_eq!(
            parse_edge_list("4 4\n0 1\n1 2\n2 3\n3 0\n").unwrap(),
            cycle(4).unwrap()
        );
    }

    #[test]
    fn reports_line_of_bad_index() {
        let err = parse_edge_list("3 1\n0 3\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::IndexOutOfRange {
                line: 2,
                index: 3,
                n: 3
            }
        );
        assert_eq!(err.line(), Some(2));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# P_3\n\n3 2\n# first edge\n0 1\n  \n1 2\n";
        assert_eq!(parse_edge_list(text).unwrap(), path(3).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(
            parse_edge_list(""),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 x\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n0 1 2\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("3 1\n-1 2\n"),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert_eq!(
            parse_edge_list("3 2\n0 1\n"),
            Err(ParseError::CountMismatch {
                declared: 2,
                found: 1
            })
        );
    }

    #[test]
    fn strict_and_lenient_simplicity() {
        let text = "3 3\n0 1\n1 0\n2 2\n";
        assert!(matches!(
            parse_edge_list(text),
            Err(ParseError::SimplenessViolation { line: 3, .. })
        ));
        let (g, dropped) = parse_edge_list_lenient(text).unwrap();
        assert_eq!((g.m(), dropped), (1, 2));
    }

    #[test]
    fn serialize_format() {
        assert_eq!(serialize(&cycle(4).unwrap()), "4 4\n0 1\n0 3\n1 2\n2 3\n");
        assert_eq!(serialize(&Graph::empty(2)), "2 0\n");
        let pet = petersen();
        assert_eq!(parse_edge_list(&serialize(&pet)).unwrap(), pet);
    }

    proptest! {
        #[test]
        fn roundtrip(n in 1usize..30, raw in proptest::collection::vec((0usize..30, 0usize..30), 0..80)) {
            let pairs: Vec<_> = raw.into_iter().filter(|&(u, v)| u < n && v < n).collect();
            let (g, _) = Graph::from_edges_lenient(n, &pairs).unwrap();
            let text = serialize(&g);
            prop_assert_eq!(parse_edge_list(&text).unwrap(), g.clone());
            prop_assert_eq!(serialize(&parse_edge_list(&text).unwrap()), text);
        }
    }
}
