//! Graph serialization: graph6, plain edge-list text, and DOT export.
//!
//! graph6 follows the standard format: size bytes, then the upper
//! triangle of the adjacency matrix in column order `(0,1), (0,2),
//! (1,2), (0,3), ...`, packed 6 bits per printable byte offset by 63.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_SHORT_N: usize = 62;
const MAX_LONG_N: usize = 258_047;

/// Encodes a graph as a graph6 string (canonical minimal header).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(n <= MAX_LONG_N, "graph6 support is capped at n = {MAX_LONG_N}");
    let mut bytes = Vec::new();
    if n <= MAX_SHORT_N {
        bytes.push(OFFSET + n as u8);
    } else {
        bytes.push(126);
        bytes.push(OFFSET + ((n >> 12) & 63) as u8);
        bytes.push(OFFSET + ((n >> 6) & 63) as u8);
        bytes.push(OFFSET + (n & 63) as u8);
    }
    let mut acc = 0u8;
    let mut filled = 0u8;
    for col in 1..n {
        for row in 0..col {
            acc = (acc << 1) | u8::from(g.has_edge(row, col));
            filled += 1;
            if filled == 6 {
                bytes.push(OFFSET + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push(OFFSET + (acc << (6 - filled)));
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ASCII")
}

/// Decodes a graph6 string (optionally prefixed with `>>graph6<<`).
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(">>graph6<<") {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::MalformedHeader("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(OFFSET..=126).contains(&b)) {
        return Err(Error::MalformedHeader(format!(
            "byte {b:#x} outside graph6 range"
        )));
    }
    let (n, body) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(Error::MalformedHeader(
                "graphs with n >= 258048 are not supported".into(),
            ));
        }
        if bytes.len() < 4 {
            return Err(Error::MalformedHeader("truncated size bytes".into()));
        }
        let n = ((bytes[1] - OFFSET) as usize) << 12
            | ((bytes[2] - OFFSET) as usize) << 6
            | (bytes[3] - OFFSET) as usize;
        (n, &bytes[4..])
    } else {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    };
    if n == 0 {
        return Err(Error::MalformedHeader("vertex count is zero".into()));
    }
    let bit_count = n * (n - 1) / 2;
    let expected = bit_count.div_ceil(6);
    if body.len() != expected {
        return Err(Error::TruncatedBitstream {
            expected,
            got: body.len(),
        });
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    for col in 1..n {
        for row in 0..col {
            let byte = body[idx / 6] - OFFSET;
            if (byte >> (5 - idx % 6)) & 1 == 1 {
                edges.push((row, col));
            }
            idx += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

/// Encodes a graph as edge-list text: first line `n m`, then one
/// `u v` line per edge (0-based, `u < v`, lexicographic).
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Parses edge-list text produced by [`to_edge_list`].
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (lineno, header) = lines.next().ok_or(Error::EdgeListParse {
        line: 1,
        reason: "missing `n m` header line".into(),
    })?;
    let (n, m) = parse_pair(header).ok_or_else(|| Error::EdgeListParse {
        line: lineno + 1,
        reason: "header must be two integers `n m`".into(),
    })?;
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let (u, v) = parse_pair(line).ok_or_else(|| Error::EdgeListParse {
            line: lineno + 1,
            reason: "edge line must be two integers `u v`".into(),
        })?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::EdgeListParse {
            line: text.lines().count(),
            reason: format!("header declares m = {m} but found {} edges", edges.len()),
        });
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Renders the graph in DOT form for visualization.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph {\n");
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            let _ = writeln!(out, "  {v};");
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
