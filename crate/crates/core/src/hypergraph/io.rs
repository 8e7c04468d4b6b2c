//! The `.hyp` text format.
//!
//! ```text
//! hyp <r> <n> <e>
//! parts <k> <size_1> ... <size_k>      (optional)
//! <v_1> ... <v_r>                        (e lines, ascending, 0-based)
//! ```

use std::fmt::Write as _;

use super::{UniformHypergraph, Vertex};
use crate::error::{Error, Result};

fn numbers(line: &str, lineno: usize) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::parse(lineno, format!("expected an integer, found {tok:?}")))
        })
        .collect()
}

pub fn parse_hyp(text: &str) -> Result<UniformHypergraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).peekable();
    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut head = header.split_whitespace();
    if head.next() != Some("hyp") {
        return Err(Error::parse(ln, "expected `hyp <r> <n> <e>`"));
    }
    let dims = numbers(&head.collect::<Vec<_>>().join(" "), ln)?;
    let [r, n, e] = dims[..] else {
        return Err(Error::parse(ln, "expected `hyp <r> <n> <e>`"));
    };
    let (r, n, e) = (r as usize, n as usize, e as usize);
    if r < 2 {
        return Err(Error::parse(ln, format!("uniformity {r} < 2")));
    }

    let mut parts = None;
    if let Some(&(pl, line)) = lines.peek() {
        if line.split_whitespace().next() == Some("parts") {
            lines.next();
            let vals = numbers(line.trim_start().trim_start_matches("parts"), pl)?;
            let Some((&k, sizes)) = vals.split_first() else {
                return Err(Error::parse(pl, "expected `parts <k> <sizes...>`"));
            };
            if sizes.len() as u64 != k {
                return Err(Error::parse(pl, format!("declared {k} parts, listed {}", sizes.len())));
            }
            if sizes.contains(&0) || sizes.iter().sum::<u64>() > n as u64 {
                return Err(Error::parse(pl, "part sizes must be positive and fit the vertex count"));
            }
            parts = Some(sizes.iter().map(|&s| s as usize).collect::<Vec<_>>());
        }
    }

    let block = parts.as_ref().map(|p| super::block_map(p, n));
    let mut edges: Vec<Vertex> = Vec::with_capacity(e * r);
    let mut prev: Option<Vec<Vertex>> = None;
    let mut seen = 0;
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if seen == e {
            return Err(Error::parse(ln, format!("more than the declared {e} edges")));
        }
        let vals = numbers(line, ln)?;
        if vals.len() != r {
            return Err(Error::parse(ln, format!("edge has {} vertices, expected {r}", vals.len())));
        }
        if let Some(&v) = vals.iter().find(|&&v| v >= n as u64) {
            return Err(Error::parse(ln, format!("vertex {v} out of range for {n} vertices")));
        }
        if vals.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::parse(ln, "edge vertices must be strictly ascending"));
        }
        let tuple: Vec<Vertex> = vals.iter().map(|&v| v as Vertex).collect();
        if let Some(block) = &block {
            let mut hit: Vec<usize> = tuple.iter().filter_map(|&v| block[v as usize]).collect();
            hit.sort_unstable();
            if hit.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::parse(ln, "edge meets a part more than once"));
            }
        }
        if let Some(p) = &prev {
            if *p >= tuple {
                return Err(Error::parse(ln, "edges must be strictly increasing in lexicographic order"));
            }
        }
        edges.extend_from_slice(&tuple);
        prev = Some(tuple);
        seen += 1;
    }
    if seen != e {
        return Err(Error::parse(text.lines().count().max(1), format!("declared {e} edges, found {seen}")));
    }
    Ok(UniformHypergraph::from_sorted_flat(r, n, edges, parts))
}

pub fn write_hyp(h: &UniformHypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "hyp {} {} {}", h.uniformity(), h.vertex_count(), h.edge_count()).unwrap();
    if let Some(parts) = h.parts() {
        write!(out, "parts {}", parts.len()).unwrap();
        for s in parts {
            write!(out, " {s}").unwrap();
        }
        out.push('\n');
    }
    for e in h.edges() {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            write!(out, "{v}").unwrap();
            first = false;
        }
        out.push('\n');
    }
    out
}
