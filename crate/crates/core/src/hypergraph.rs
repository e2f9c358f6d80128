//! Uniform hypergraphs and the degree/shadow/link machinery.
//!
//! Edges are kept in one flat buffer with stride `r`: every edge is sorted
//! internally and the edge list is sorted lexicographically without
//! duplicates, so structurally equal hypergraphs compare equal.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_traits::PrimInt;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;
use crate::Vertex;

pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vertex>,
    pairs: OnceLock<Vec<VertexSet>>,
}

impl Hypergraph {
    pub fn empty(n: usize, r: usize) -> Result<Self> {
        Self::new(n, r, std::iter::empty::<&[Vertex]>())
    }

    /// Validates and normalizes an edge list; duplicate edges are merged.
    pub fn new<I, E>(n: usize, r: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if r == 0 {
            return Err(Error::param("uniformity r must be at least 1"));
        }
        let mut flat = Vec::new();
        for edge in edges {
            let edge = edge.as_ref();
            let start = flat.len();
            flat.extend_from_slice(edge);
            let chunk = &mut flat[start..];
            chunk.sort_unstable();
            check_edge(chunk, n, r)?;
        }
        Ok(Self::from_flat_unchecked(n, r, flat))
    }

    /// `flat` holds edges of length `r`, each already sorted and in range.
    pub(crate) fn from_flat_unchecked(n: usize, r: usize, flat: Vec<Vertex>) -> Self {
        debug_assert_eq!(flat.len() % r, 0);
        let edges = normalize_flat(r, flat);
        Hypergraph { n, r, edges, pairs: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len() / self.r
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in lexicographic order, each sorted.
    pub fn edges(&self) -> std::slice::ChunksExact<'_, Vertex> {
        self.edges.chunks_exact(self.r)
    }

    pub fn edge(&self, index: usize) -> Option<&[Vertex]> {
        self.edges.get(index * self.r..(index + 1) * self.r)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n as Vertex
    }

    /// Membership test for an edge given in any vertex order.
    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        if edge.len() != self.r {
            return false;
        }
        let mut key = edge.to_vec();
        key.sort_unstable();
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).unwrap().cmp(&key[..]) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return true,
            }
        }
        false
    }

    fn check_subset(&self, s: &VertexSet) -> Result<Vec<Vertex>> {
        let members = s.to_vec();
        if members.is_empty() || members.len() >= self.r {
            return Err(Error::param(format!(
                "set size {} outside 1..={} for a {}-graph",
                members.len(),
                self.r.saturating_sub(1),
                self.r
            )));
        }
        if let Some(&v) = members.iter().find(|&&v| v as usize > self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(members)
    }

    /// The `(r - i)`-graph of all `(r - i)`-sets lying in some edge; `i = 0`
    /// returns a copy.
    pub fn shadow(&self, i: usize) -> Result<Hypergraph> {
        if i == 0 {
            return Ok(self.clone());
        }
        if i >= self.r {
            return Err(Error::param(format!("shadow level {i} needs 0 <= i < r = {}", self.r)));
        }
        let size = self.r - i;
        Ok(Self::from_flat_unchecked(self.n, size, self.shadow_flat(i)))
    }

    /// Edges of the `i`-th shadow, flat, sorted and distinct, for `0 < i < r`.
    fn shadow_flat(&self, i: usize) -> Vec<Vertex> {
        let mut flat = self.edges.clone();
        for size in (self.r - i + 1..=self.r).rev() {
            flat = drop_one(self.n, size, &flat).0;
        }
        flat
    }

    /// Number of edges of the `i`-th shadow without materializing it.
    pub fn shadow_len(&self, i: usize) -> Result<usize> {
        if i == 0 {
            return Ok(self.len());
        }
        if i >= self.r {
            return Err(Error::param(format!("shadow level {i} needs 0 <= i < r = {}", self.r)));
        }
        if i == self.r - 1 {
            return Ok(self.vertex_degrees().iter().filter(|&&d| d > 0).count());
        }
        Ok(self.shadow_flat(i).len() / (self.r - i))
    }

    /// `|∂_i H|` for every `i` in `0..r`. Each level is derived from the
    /// previous one.
    pub fn shadow_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.len()];
        if self.r < 2 {
            return sizes;
        }
        let mut flat = self.edges.clone();
        for size in (2..=self.r).rev() {
            flat = drop_one(self.n, size, &flat).0;
            sizes.push(flat.len() / (size - 1));
        }
        sizes
    }

    /// The `(r - |S|)`-graph of sets `e` with `S ∪ e` an edge, on the same
    /// vertex labels.
    pub fn link(&self, s: &VertexSet) -> Result<Hypergraph> {
        let members = self.check_subset(s)?;
        let size = self.r - members.len();
        let mut flat = Vec::new();
        for edge in self.edges() {
            if members.iter().all(|v| edge.binary_search(v).is_ok()) {
                flat.extend(edge.iter().filter(|v| !s.contains(**v)));
            }
        }
        Ok(Self::from_flat_unchecked(self.n, size, flat))
    }

    /// `|link(S)|`, the number of edges containing `S`.
    pub fn degree(&self, s: &VertexSet) -> Result<usize> {
        let members = self.check_subset(s)?;
        Ok(self
            .edges()
            .filter(|edge| members.iter().all(|v| edge.binary_search(v).is_ok()))
            .count())
    }

    /// Degree of each vertex, indexed by `v - 1`.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &v in &self.edges {
            deg[v as usize - 1] += 1;
        }
        deg
    }

    /// Minimum degree over the `i`-sets that lie in some edge; `None` for an
    /// edgeless hypergraph.
    pub fn min_positive_degree(&self, i: usize) -> Result<Option<usize>> {
        if i == 0 || i >= self.r {
            return Err(Error::param(format!("degree level {i} needs 1 <= i < r = {}", self.r)));
        }
        if self.is_empty() {
            return Ok(None);
        }
        if i == 1 {
            return Ok(self.vertex_degrees().into_iter().filter(|&d| d > 0).min());
        }
        if i == self.r - 1 {
            return Ok(drop_one(self.n, self.r, &self.edges).1.into_iter().min().map(|c| c as usize));
        }
        Ok(SubsetCounts::of_edges(self, i).min_count().map(|c| c as usize))
    }

    /// Shorthand for the minimum positive codegree, `i = r - 1`.
    pub fn min_positive_codegree(&self) -> Result<Option<usize>> {
        self.min_positive_degree(self.r - 1)
    }

    pub fn has_isolated(&self) -> bool {
        let mut seen = VertexSet::empty(self.n);
        for &v in &self.edges {
            seen.insert(v);
        }
        seen.len() < self.n
    }

    /// Neighborhoods in the graph of pairs covered by an edge, indexed by
    /// `v - 1`. Built once on first use.
    pub fn pair_graph(&self) -> &[VertexSet] {
        self.pairs.get_or_init(|| {
            let mut adj = vec![VertexSet::empty(self.n); self.n];
            for edge in self.edges() {
                for (a, &u) in edge.iter().enumerate() {
                    for &v in &edge[a + 1..] {
                        adj[u as usize - 1].insert(v);
                        adj[v as usize - 1].insert(u);
                    }
                }
            }
            adj
        })
    }

    /// Whether some edge contains both `u` and `v`.
    pub fn pair_covered(&self, u: Vertex, v: Vertex) -> Result<bool> {
        for w in [u, v] {
            if w == 0 || w as usize > self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::param("pair_covered needs two distinct vertices"));
        }
        Ok(self.pair_graph()[u as usize - 1].contains(v))
    }
}

fn check_edge(edge: &[Vertex], n: usize, r: usize) -> Result<()> {
    if edge.len() != r || edge.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::MalformedEdge { edge: edge.to_vec(), r });
    }
    if let Some(&v) = edge.iter().find(|&&v| v == 0 || v as usize > n) {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

/// Sorts the edges of a flat buffer lexicographically and drops repeats.
fn normalize_flat(r: usize, flat: Vec<Vertex>) -> Vec<Vertex> {
    let strictly_sorted = flat
        .chunks_exact(r)
        .zip(flat.chunks_exact(r).skip(1))
        .all(|(a, b)| a < b);
    if strictly_sorted {
        return flat;
    }
    let count = flat.len() / r;
    let mut order: Vec<u32> = (0..count as u32).collect();
    let edge = |i: u32| &flat[i as usize * r..(i as usize + 1) * r];
    order.sort_unstable_by(|&a, &b| edge(a).cmp(edge(b)));
    order.dedup_by(|a, b| edge(*a) == edge(*b));
    let mut out = Vec::with_capacity(order.len() * r);
    for i in order {
        out.extend_from_slice(edge(i));
    }
    out
}

impl Clone for Hypergraph {
    fn clone(&self) -> Self {
        Hypergraph { n: self.n, r: self.r, edges: self.edges.clone(), pairs: OnceLock::new() }
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// The distinct `(s-1)`-subsets of a sorted, duplicate-free family of
/// `s`-sets (flat, stride `s`), in lexicographic order, with the number of
/// members containing each.
fn drop_one(n: usize, s: usize, family: &[Vertex]) -> (Vec<Vertex>, Vec<u32>) {
    debug_assert!(s >= 2);
    let bits = usize::BITS - n.leading_zeros();
    match bits as usize * (s - 1) {
        0..=64 => drop_one_packed::<u64>(n, s, bits, family),
        65..=128 => drop_one_packed::<u128>(n, s, bits, family),
        _ => drop_one_sorted(s, family),
    }
}

/// Fallback for subsets too long to pack: materializes all of them and
/// sorts indices.
fn drop_one_sorted(s: usize, family: &[Vertex]) -> (Vec<Vertex>, Vec<u32>) {
    let w = s - 1;
    let mut subs = Vec::with_capacity(family.len() * w);
    for set in family.chunks_exact(s) {
        for skip in 0..s {
            subs.extend(set.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
        }
    }
    let sub = |i: u32| &subs[i as usize * w..(i as usize + 1) * w];
    let mut order: Vec<u32> = (0..(subs.len() / w) as u32).collect();
    order.sort_unstable_by(|&a, &b| sub(a).cmp(sub(b)));
    let (mut out, mut counts) = (Vec::new(), Vec::new());
    for run in order.chunk_by(|&a, &b| sub(a) == sub(b)) {
        out.extend_from_slice(sub(run[0]));
        counts.push(run.len() as u32);
    }
    (out, counts)
}

/// Subsets are handled one smallest-vertex bucket at a time: a subset with
/// smallest vertex `a` comes from a member starting at `a` (dropping a later
/// vertex) or from one whose second vertex is `a` (dropping the first).
fn drop_one_packed<K: PrimInt>(n: usize, s: usize, bits: u32, family: &[Vertex]) -> (Vec<Vertex>, Vec<u32>) {
    let sets = family.len() / s;
    let set = |idx: usize| &family[idx * s..(idx + 1) * s];
    let pack = |set: &[Vertex], skip: usize| {
        set.iter()
            .enumerate()
            .filter(|&(j, _)| j != skip)
            .fold(K::zero(), |acc, (_, &v)| (acc << bits as usize) | K::from(v).unwrap())
    };

    let mut starts = vec![0usize; n + 2];
    let mut second_starts = vec![0usize; n + 2];
    for idx in 0..sets {
        starts[set(idx)[0] as usize + 1] += 1;
        second_starts[set(idx)[1] as usize + 1] += 1;
    }
    for a in 1..=n + 1 {
        starts[a] += starts[a - 1];
        second_starts[a] += second_starts[a - 1];
    }
    let mut by_second = vec![0u32; sets];
    let mut fill = second_starts.clone();
    for idx in 0..sets {
        let b = set(idx)[1] as usize;
        by_second[fill[b]] = idx as u32;
        fill[b] += 1;
    }

    let mask = (K::one() << bits as usize) - K::one();
    let (mut out, mut counts) = (Vec::new(), Vec::new());
    let mut keys: Vec<K> = Vec::new();
    for a in 1..=n {
        keys.clear();
        for idx in starts[a]..starts[a + 1] {
            keys.extend((1..s).map(|skip| pack(set(idx), skip)));
        }
        for &idx in &by_second[second_starts[a]..second_starts[a + 1]] {
            keys.push(pack(set(idx as usize), 0));
        }
        keys.sort_unstable();
        for run in keys.chunk_by(|x, y| x == y) {
            let key = run[0];
            out.extend((0..s - 1).rev().map(|t| ((key >> (bits as usize * t)) & mask).to_u32().unwrap()));
            counts.push(run.len() as u32);
        }
    }
    (out, counts)
}

/// Calls `f` on every `size`-subset of the sorted slice `set`, in
/// lexicographic order of positions.
pub fn for_each_subset(set: &[Vertex], size: usize, mut f: impl FnMut(&[Vertex])) {
    let len = set.len();
    if size > len {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf: Vec<Vertex> = idx.iter().map(|&i| set[i]).collect();
    loop {
        f(&buf);
        // advance the rightmost index that can still move
        let Some(pos) = (0..size).rev().find(|&p| idx[p] < len - size + p) else {
            return;
        };
        idx[pos] += 1;
        buf[pos] = set[idx[pos]];
        for q in pos + 1..size {
            idx[q] = idx[q - 1] + 1;
            buf[q] = set[idx[q]];
        }
    }
}

enum Table {
    Packed(FxHashMap<u128, u32>),
    Boxed(FxHashMap<Box<[Vertex]>, u32>),
}

/// Multiset of fixed-size vertex subsets keyed by a canonical encoding:
/// sorted vertices packed into a `u128` when they fit, boxed slices otherwise.
pub struct SubsetCounts {
    size: usize,
    bits: u32,
    table: Table,
}

impl SubsetCounts {
    pub fn new(n: usize, size: usize) -> Self {
        let bits = usize::BITS - n.leading_zeros();
        let table = if (bits as usize) * size <= 128 {
            Table::Packed(FxHashMap::default())
        } else {
            Table::Boxed(FxHashMap::default())
        };
        SubsetCounts { size, bits, table }
    }

    /// For each `size`-set lying in an edge, the number of edges containing it.
    pub fn of_edges(h: &Hypergraph, size: usize) -> Self {
        let mut counts = Self::new(h.n(), size);
        if let Table::Packed(map) = &mut counts.table {
            map.reserve(h.len());
        }
        for edge in h.edges() {
            for_each_subset(edge, size, |s| {
                counts.adjust(s, 1);
            });
        }
        counts
    }

    fn pack(&self, subset: &[Vertex]) -> u128 {
        subset.iter().fold(0u128, |acc, &v| (acc << self.bits) | v as u128)
    }

    fn unpack(&self, mut key: u128, out: &mut Vec<Vertex>) {
        out.clear();
        let mask = (1u128 << self.bits) - 1;
        for _ in 0..self.size {
            out.push((key & mask) as Vertex);
            key >>= self.bits;
        }
        out.reverse();
    }

    /// Adds `delta` to the count of a sorted subset and returns the new
    /// count; entries reaching zero are removed.
    pub fn adjust(&mut self, subset: &[Vertex], delta: i64) -> u32 {
        debug_assert_eq!(subset.len(), self.size);
        let apply = |c: &mut u32| {
            let next = *c as i64 + delta;
            assert!(next >= 0, "subset count went negative");
            *c = next as u32;
            *c
        };
        match &mut self.table {
            Table::Packed(map) => {
                let key = subset.iter().fold(0u128, |acc, &v| (acc << self.bits) | v as u128);
                let c = apply(map.entry(key).or_insert(0));
                if c == 0 {
                    map.remove(&key);
                }
                c
            }
            Table::Boxed(map) => {
                let c = apply(map.entry(subset.into()).or_insert(0));
                if c == 0 {
                    map.remove(subset);
                }
                c
            }
        }
    }

    pub fn get(&self, subset: &[Vertex]) -> u32 {
        match &self.table {
            Table::Packed(map) => map.get(&self.pack(subset)).copied().unwrap_or(0),
            Table::Boxed(map) => map.get(subset).copied().unwrap_or(0),
        }
    }

    /// Number of distinct subsets with a positive count.
    pub fn len(&self) -> usize {
        match &self.table {
            Table::Packed(map) => map.len(),
            Table::Boxed(map) => map.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn min_count(&self) -> Option<u32> {
        match &self.table {
            Table::Packed(map) => map.values().copied().min(),
            Table::Boxed(map) => map.values().copied().min(),
        }
    }

    /// Visits every stored subset with its count, in unspecified order.
    pub fn for_each(&self, mut f: impl FnMut(&[Vertex], u32)) {
        match &self.table {
            Table::Packed(map) => {
                let mut buf = Vec::with_capacity(self.size);
                for (&key, &c) in map {
                    self.unpack(key, &mut buf);
                    f(&buf, c);
                }
            }
            Table::Boxed(map) => {
                for (key, &c) in map {
                    f(key, c);
                }
            }
        }
    }
}
