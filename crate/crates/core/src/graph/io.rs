//! Edge-list and graph6 text formats.
//!
//! Edge list: the first meaningful line is the vertex count, each further
//! line is `u v`. Blank lines and lines starting with `#` are skipped. Edge
//! ids follow line order.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

/// Reads either format: text whose first meaningful line is a bare integer is
/// an edge list, anything else is graph6.
pub fn load_graph(source: &str) -> Result<Graph> {
    let first = source
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'));
    match first {
        Some(line) if line.bytes().all(|b| b.is_ascii_digit()) => parse_edge_list(source),
        Some(line) => parse_graph6(line),
        None => Err(Error::Parse {
            line: 1,
            message: "empty input".into(),
        }),
    }
}

pub fn parse_edge_list(source: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let number = |t: &str| {
            t.parse::<usize>()
                .map_err(|_| parse_err(format!("expected a non-negative integer, got {t:?}")))
        };
        match &mut graph {
            None => {
                if fields.len() != 1 {
                    return Err(parse_err(format!(
                        "expected the vertex count alone, got {line:?}"
                    )));
                }
                graph = Some(Graph::new(number(fields[0])?));
            }
            Some(g) => {
                if fields.len() != 2 {
                    return Err(parse_err(format!("expected \"u v\", got {line:?}")));
                }
                let (u, v) = (number(fields[0])?, number(fields[1])?);
                g.add_edge(u, v).map_err(|e| match e {
                    Error::VertexRange { .. } => parse_err(e.to_string()),
                    other => other,
                })?;
            }
        }
    }
    graph.ok_or(Error::Parse {
        line: 1,
        message: "missing vertex count".into(),
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for e in g.edges() {
        writeln!(out, "{} {}", e.u, e.v).expect("string write");
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let err = |message: String| Error::Parse { line: 1, message };
    let text = text.trim();
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let data = text.as_bytes();
    if let Some(&b) = data.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!("byte {b} is outside the graph6 range 63..=126")));
    }
    let (n, rest) = match data {
        [] => return Err(err("empty graph6 string".into())),
        [126, 126, ..] => return Err(err("graph6 vertex counts above 258047 are not supported".into())),
        [126, a, b, c, rest @ ..] => {
            let n = (((*a - 63) as usize) << 12) | (((*b - 63) as usize) << 6) | (*c - 63) as usize;
            (n, rest)
        }
        [126, ..] => return Err(err("truncated graph6 size field".into())),
        [a, rest @ ..] => ((*a - 63) as usize, rest),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if rest.len() != needed {
        return Err(err(format!(
            "graph6 body has {} bytes, expected {needed} for {n} vertices",
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    edges.sort_unstable();
    Graph::from_edges(n, &edges)
}

/// graph6 encoding of a simple graph.
pub fn write_graph6(g: &Graph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::Argument("graph6 encodes simple graphs only".into()));
    }
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.extend([126, (n >> 12) as u8 + 63, (n >> 6 & 63) as u8 + 63, (n & 63) as u8 + 63]);
    } else {
        return Err(Error::capacity("graph6 vertex count", n, 258_047));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (t, &b) in chunk.iter().enumerate() {
            byte |= (b as u8) << (5 - t);
        }
        out.push(byte + 63);
    }
    Ok(String::from_utf8(out).expect("ascii"))
}
