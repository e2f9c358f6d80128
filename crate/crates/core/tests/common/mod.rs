//! Brute-force reference implementations, written without touching the
//! library's search or counting code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use unicolor::{Hypergraph, Vertex};

pub fn edge_lists(h: &Hypergraph) -> Vec<Vec<Vertex>> {
    h.edges().map(|e| e.to_vec()).collect()
}

fn rainbow(edge: &[Vertex], colors: &[u32]) -> bool {
    let mut seen = BTreeSet::new();
    edge.iter().all(|&v| seen.insert(colors[v as usize - 1]))
}

/// Relabels colors in order of first appearance.
pub fn first_appearance(colors: &[u32]) -> Vec<u32> {
    let mut map = BTreeMap::new();
    colors
        .iter()
        .map(|c| {
            let next = map.len() as u32 + 1;
            *map.entry(*c).or_insert(next)
        })
        .collect()
}

/// Every assignment in `[k]^n`, filtered for properness, then deduplicated
/// up to relabeling.
pub fn naive_classes(h: &Hypergraph, k: usize) -> BTreeSet<Vec<u32>> {
    let n = h.n();
    let edges = edge_lists(h);
    let mut out = BTreeSet::new();
    let mut colors = vec![1u32; n];
    loop {
        if edges.iter().all(|e| rainbow(e, &colors)) {
            out.insert(first_appearance(&colors));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return out;
            }
            if (colors[pos] as usize) < k {
                colors[pos] += 1;
                break;
            }
            colors[pos] = 1;
            pos += 1;
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for slot in 0..=p.len() {
            let mut q = p.clone();
            q.insert(slot, k as u32);
            out.push(q);
        }
    }
    out
}

/// Searches all `k!` color permutations.
pub fn naive_equivalent(a: &[u32], b: &[u32], k: usize) -> bool {
    a.len() == b.len() && permutations(k).iter().any(|p| a.iter().zip(b).all(|(&x, &y)| p[x as usize - 1] == y))
}

fn subsets(set: &[Vertex], size: usize) -> Vec<Vec<Vertex>> {
    if size == 0 {
        return vec![vec![]];
    }
    if set.len() < size {
        return vec![];
    }
    let mut with: Vec<Vec<Vertex>> = subsets(&set[1..], size - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, set[0]);
            s
        })
        .collect();
    with.extend(subsets(&set[1..], size));
    with
}

/// The `(r-i)`-sets inside some edge.
pub fn naive_shadow(h: &Hypergraph, i: usize) -> BTreeSet<Vec<Vertex>> {
    edge_lists(h).iter().flat_map(|e| subsets(e, h.r() - i)).collect()
}

/// Minimum over `i`-sets inside some edge of the number of edges containing
/// them, by scanning all edges per set.
pub fn naive_min_degree(h: &Hypergraph, i: usize) -> Option<usize> {
    let edges = edge_lists(h);
    let sets: BTreeSet<Vec<Vertex>> = edges.iter().flat_map(|e| subsets(e, i)).collect();
    sets.iter().map(|s| edges.iter().filter(|e| s.iter().all(|v| e.contains(v))).count()).min()
}
