//! Text formats: edge lists and Graphviz DOT export.
//!
//! Edge list: a header line `n m`, then `m` lines `u v` with 0-indexed
//! endpoints. Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Profile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize), FormatError> {
    let mut fields = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize, FormatError> {
        let tok = fields.next().ok_or_else(|| FormatError::Parse {
            line,
            msg: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| FormatError::Parse {
            line,
            msg: format!("{what} {tok:?} is not a non-negative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(FormatError::Parse {
            line,
            msg: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (n, m) = parse_pair(hline, header)?;
    let edges = lines
        .map(|(i, l)| parse_pair(i, l))
        .collect::<Result<Vec<_>, _>>()?;
    if edges.len() != m {
        return Err(FormatError::EdgeCount {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// DOT rendering; when a profile is given, preference-1 nodes are filled.
pub fn to_dot(g: &Graph, profile: Option<&Profile>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle, style=filled];\n");
    for v in 0..g.n() {
        let color = match profile {
            Some(p) if p.get(v) => "black",
            _ => "white",
        };
        let font = if color == "black" { "white" } else { "black" };
        writeln!(out, "  {v} [fillcolor={color}, fontcolor={font}];").unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
