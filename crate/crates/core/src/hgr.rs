//! Plain-text hypergraph files.
//!
//! ```text
//! # comment lines start with '#'
//! 5 3          <- header: n r
//! 1 2 4        <- one edge per line, r distinct 1-based vertices
//! 1 3 5
//! ```
//!
//! Blank lines are ignored. A repeated edge (in any vertex order) is an
//! error. [`serialize`] writes edges in canonical order, so
//! `parse(serialize(h)) == h`.

use std::fmt::Write as _;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::Vertex;

pub fn serialize(h: &Hypergraph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", h.n(), h.r()).unwrap();
    for edge in h.edges() {
        let mut first = true;
        for v in edge {
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

pub fn parse(text: &str) -> Result<Hypergraph> {
    let err = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header `n r`".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, r] = fields[..] else {
        return Err(err(hline, format!("header must be `n r`, found `{header}`")));
    };
    let n: usize = n.parse().map_err(|_| err(hline, format!("bad vertex count `{n}`")))?;
    let r: usize = r.parse().map_err(|_| err(hline, format!("bad uniformity `{r}`")))?;
    if r == 0 {
        return Err(err(hline, "uniformity must be at least 1".into()));
    }

    let mut seen: FxHashSet<Vec<Vertex>> = FxHashSet::default();
    let mut flat = Vec::new();
    for (lineno, line) in lines {
        let mut edge = Vec::with_capacity(r);
        for tok in line.split_whitespace() {
            let v: Vertex = tok
                .parse()
                .map_err(|_| err(lineno, format!("`{tok}` is not a vertex index")))?;
            if v == 0 || v as usize > n {
                return Err(err(lineno, format!("vertex {v} outside 1..={n}")));
            }
            edge.push(v);
        }
        if edge.len() != r {
            return Err(err(lineno, format!("edge has {} vertices, expected {r}", edge.len())));
        }
        edge.sort_unstable();
        if edge.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(lineno, "edge repeats a vertex".into()));
        }
        if !seen.insert(edge.clone()) {
            return Err(err(lineno, "duplicate edge".into()));
        }
        flat.extend_from_slice(&edge);
    }
    Ok(Hypergraph::from_flat_unchecked(n, r, flat))
}
