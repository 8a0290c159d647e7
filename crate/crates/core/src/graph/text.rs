//! Plain-text formats: `n m` edge lists and DOT.

use std::fmt::Write;

use super::Graph;
use crate::error::{Error, Result};

/// Parses a first line `n m` followed by `m` lines `u v`. Blank lines and
/// `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing `n m` header".into()))?;
    let (n, m) = parse_pair(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        edges.push(parse_pair(line)?);
    }
    if edges.len() != m {
        return Err(Error::EdgeList(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::EdgeList(format!("expected two integers, got `{line}`"))),
    }
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Undirected DOT. Vertices are emitted in id order; `labels` overrides the
/// graph's own labels when given.
pub fn emit_dot(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let label = match labels {
            Some(ls) => ls[v].clone(),
            None => g.label(v).into_owned(),
        };
        writeln!(out, "  {v} [label=\"{}\"];", label.replace('"', "\\\"")).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
