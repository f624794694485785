//! Graph file formats.
//!
//! Two line-oriented formats are read, detected from the first significant
//! line. Lines starting with `#` or `c` are comments and blank lines are
//! skipped in both.
//!
//! ```text
//! # edge list            c DIMACS-like
//! 3 2                    p edge 3 2
//! 1 2                    e 1 2
//! 2 3                    e 2 3
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result, Site};
use crate::graph::{Graph, Vertex};

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("{what} `{tok}` is not a nonnegative integer"),
    })
}

fn no_trailing<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<()> {
    match toks.next() {
        Some(t) => Err(Error::Parse {
            line,
            msg: format!("unexpected token `{t}`"),
        }),
        None => Ok(()),
    }
}

/// Parses either supported format from a string.
pub fn parse_graph_str(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty input".into(),
    })?;
    let mut toks = header.split_whitespace();
    let dimacs = header.starts_with('p');
    if dimacs {
        toks.next();
        if toks.next() != Some("edge") {
            return Err(Error::Parse {
                line: header_line,
                msg: "expected `p edge <n> <m>`".into(),
            });
        }
    }
    let n = parse_count(toks.next(), header_line, "vertex count")?;
    let m = parse_count(toks.next(), header_line, "edge count")?;
    no_trailing(toks, header_line)?;

    let mut edges: Vec<(Vertex, Vertex)> = Vec::with_capacity(m);
    let mut at_line = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in lines {
        last_line = line;
        let mut toks = text.split_whitespace();
        if dimacs && toks.next() != Some("e") {
            return Err(Error::Parse {
                line,
                msg: "expected `e <u> <v>`".into(),
            });
        }
        let u = parse_count(toks.next(), line, "endpoint")?;
        let v = parse_count(toks.next(), line, "endpoint")?;
        no_trailing(toks, line)?;
        edges.push((u, v));
        at_line.push(line);
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: last_line,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, &edges).map_err(|e| e.at_site(|i| Site::Line(at_line[i])))
}

pub fn parse_graph(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph_str(&std::fs::read_to_string(path)?)
}

/// `n m` header followed by one `u v` line per edge.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// `p edge n m` header followed by one `e u v` line per edge.
pub fn to_dimacs(g: &Graph) -> String {
    let mut s = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}
