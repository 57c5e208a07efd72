//! Text formats: hMETIS-style hypergraphs, label files and partition files.
//!
//! Hypergraph files start with `m n [fmt]` where `fmt` is `0` (or absent)
//! for unweighted hyperedges and `1` for weighted ones. Each of the `m`
//! following lines lists 1-based node indices, preceded by the weight when
//! weighted. Lines starting with `%` are comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::modularity::Partition;

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Non-comment, non-blank lines paired with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'))
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn load_hmetis(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_hmetis(&read_to_string(path.as_ref())?)
}

pub fn parse_hmetis(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if !(2..=3).contains(&fields.len()) {
        return Err(parse_err(header_line, "header must be `m n [fmt]`"));
    }
    let count = |s: &str, what: &str| {
        s.parse::<usize>()
            .map_err(|_| parse_err(header_line, format!("invalid {what} `{s}`")))
    };
    let m = count(fields[0], "hyperedge count")?;
    let n = count(fields[1], "node count")?;
    let weighted = match fields.get(2).copied() {
        None | Some("0") => false,
        Some("1") => true,
        Some(other) => {
            return Err(parse_err(
                header_line,
                format!("unsupported format flag `{other}`"),
            ))
        }
    };

    let mut edges = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(if weighted { m } else { 0 });
    for (line_no, line) in lines {
        if edges.len() == m {
            return Err(parse_err(line_no, format!("more than {m} hyperedge lines")));
        }
        let mut tokens = line.split_whitespace();
        if weighted {
            let tok = tokens.next().unwrap_or_default();
            let w: f64 = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid weight `{tok}`")))?;
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::NonPositiveWeight {
                    edge: edges.len(),
                    weight: w,
                });
            }
            weights.push(w);
        }
        let mut nodes = Vec::new();
        for tok in tokens {
            let v: usize = tok
                .parse()
                .map_err(|_| parse_err(line_no, format!("invalid node index `{tok}`")))?;
            if v == 0 || v > n {
                return Err(Error::NodeOutOfRange {
                    edge: edges.len(),
                    node: v,
                    n,
                });
            }
            nodes.push(v - 1);
        }
        if nodes.is_empty() {
            return Err(parse_err(line_no, "hyperedge lists no nodes"));
        }
        edges.push(nodes);
    }
    if edges.len() != m {
        return Err(parse_err(
            text.lines().count(),
            format!("expected {m} hyperedge lines, found {}", edges.len()),
        ));
    }
    Hypergraph::new(n, edges, weighted.then_some(weights))
}

pub fn format_hmetis(g: &Hypergraph) -> String {
    let mut out = String::new();
    if g.is_weighted() {
        writeln!(out, "{} {} 1", g.num_edges(), g.num_nodes()).unwrap();
    } else {
        writeln!(out, "{} {}", g.num_edges(), g.num_nodes()).unwrap();
    }
    for (e, nodes) in g.edges().enumerate() {
        let mut first = true;
        if g.is_weighted() {
            write!(out, "{}", g.weight(e)).unwrap();
            first = false;
        }
        for &v in nodes {
            if !first {
                out.push(' ');
            }
            write!(out, "{}", v + 1).unwrap();
            first = false;
        }
        out.push('\n');
    }
    out
}

/// One integer class label per line; line `i` labels node `i`.
pub fn parse_labels(text: &str) -> Result<Vec<i64>> {
    content_lines(text)
        .map(|(line, l)| {
            l.parse()
                .map_err(|_| parse_err(line, format!("invalid label `{l}`")))
        })
        .collect()
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<Vec<i64>> {
    parse_labels(&read_to_string(path.as_ref())?)
}

pub fn format_labels(labels: &[usize]) -> String {
    let mut out = String::with_capacity(labels.len() * 3);
    for l in labels {
        writeln!(out, "{l}").unwrap();
    }
    out
}

/// `node_id<TAB>cluster_id` lines with 1-based original node ids.
pub fn format_partition(g: &Hypergraph, p: &Partition) -> String {
    let mut out = String::new();
    for (v, &c) in p.assignment().iter().enumerate() {
        writeln!(out, "{}\t{}", g.original_ids()[v] + 1, c).unwrap();
    }
    out
}

/// Reads either a partition file (`node_id cluster_id` per line) or a label
/// file (one label per line) into a map from 1-based node id to label.
pub fn parse_assignment(text: &str) -> Result<BTreeMap<usize, i64>> {
    let mut map = BTreeMap::new();
    let mut columns = None;
    for (idx, (line, l)) in content_lines(text).enumerate() {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match *columns.get_or_insert(fields.len()) {
            n if n != fields.len() => {
                return Err(parse_err(line, "inconsistent number of columns"));
            }
            1 => {
                let label = fields[0]
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid label `{}`", fields[0])))?;
                map.insert(idx + 1, label);
            }
            2 => {
                let node: usize = fields[0]
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid node id `{}`", fields[0])))?;
                let label = fields[1]
                    .parse()
                    .map_err(|_| parse_err(line, format!("invalid cluster id `{}`", fields[1])))?;
                if map.insert(node, label).is_some() {
                    return Err(parse_err(line, format!("node {node} listed twice")));
                }
            }
            _ => return Err(parse_err(line, "expected one or two columns")),
        }
    }
    Ok(map)
}

pub fn load_assignment(path: impl AsRef<Path>) -> Result<BTreeMap<usize, i64>> {
    parse_assignment(&read_to_string(path.as_ref())?)
}
