//! Proper colorings, their equivalence classes, and unique colorability.
//!
//! A coloring of an `r`-graph is proper when every edge is rainbow, which is
//! the same as being a proper coloring of the graph of covered pairs. All
//! enumeration runs on that pair graph.
//!
//! Two colorings are equivalent when a permutation of the colors maps one to
//! the other. Every color permutation is an automorphism of the complete
//! `r`-graph on `k` vertices, so equivalence is equality of the induced vertex
//! partitions, decided here by comparing canonical forms.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rational::{from_int, ratio};
use crate::report::Report;
use crate::{Color, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    k: usize,
    colors: Vec<Color>,
}

impl Coloring {
    /// `colors[v - 1]` is the color of vertex `v`, each in `1..=k`.
    pub fn new(k: usize, colors: Vec<Color>) -> Result<Self> {
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c as usize > k) {
            return Err(Error::param(format!("color {c} outside 1..={k}")));
        }
        Ok(Coloring { k, colors })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v as usize - 1]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    /// Size of each color class, indexed by `color - 1`.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &c in &self.colors {
            sizes[c as usize - 1] += 1;
        }
        sizes
    }

    pub fn is_surjective(&self) -> bool {
        self.class_sizes().iter().all(|&s| s > 0)
    }

    /// Relabels colors by order of first appearance along `1..=n`.
    pub fn canonicalize(&self) -> Coloring {
        Coloring { k: self.k, colors: first_appearance(&self.colors, self.k) }
    }

    pub fn is_canonical(&self) -> bool {
        first_appearance(&self.colors, self.k) == self.colors
    }

    pub fn is_equivalent(&self, other: &Coloring) -> Result<bool> {
        if self.k != other.k || self.n() != other.n() {
            return Err(Error::param(format!(
                "cannot compare a {}-coloring of {} vertices with a {}-coloring of {} vertices",
                self.k,
                self.n(),
                other.k,
                other.n()
            )));
        }
        Ok(self.canonicalize() == other.canonicalize())
    }
}

fn first_appearance(colors: &[Color], k: usize) -> Vec<Color> {
    let mut relabel = vec![0 as Color; k + 1];
    let mut next = 0;
    colors
        .iter()
        .map(|&c| {
            let slot = &mut relabel[c as usize];
            if *slot == 0 {
                next += 1;
                *slot = next;
            }
            *slot
        })
        .collect()
}

/// Every edge receives `r` distinct colors. Always false for a nonempty
/// hypergraph when `k < r`.
pub fn is_proper(h: &Hypergraph, c: &Coloring) -> bool {
    if c.n() != h.n() {
        return false;
    }
    h.edges().all(|edge| {
        edge.iter()
            .enumerate()
            .all(|(a, &u)| edge[a + 1..].iter().all(|&v| c.color(u) != c.color(v)))
    })
}

pub fn are_equivalent(a: &Coloring, b: &Coloring) -> Result<bool> {
    a.is_equivalent(b)
}

/// Backtracking over the pair graph with forward checking.
///
/// The next vertex is the uncolored one with the fewest open colors, ties
/// broken by decreasing degree in `h` and then by label. A vertex may only
/// take a color already in use or the single next fresh one, so each
/// partition is produced exactly once.
struct Search<'a> {
    /// Tie-break rank of each vertex; lower goes first.
    rank: Vec<usize>,
    neighbors: Vec<Vec<usize>>,
    k: usize,
    color: Vec<Color>,
    /// `blocked[u * k + c - 1]`: neighbors of `u` currently colored `c`.
    blocked: Vec<u32>,
    /// Colors still open for `u`.
    open: Vec<usize>,
    limit: Option<usize>,
    found: &'a mut Vec<Vec<Color>>,
}

impl Search<'_> {
    fn next_vertex(&self) -> Option<usize> {
        (0..self.color.len())
            .filter(|&u| self.color[u] == 0)
            .min_by_key(|&u| (self.open[u], self.rank[u]))
    }

    fn run(&mut self, max_used: usize) -> bool {
        let Some(v) = self.next_vertex() else {
            self.found.push(self.color.clone());
            return self.limit.is_some_and(|l| self.found.len() >= l);
        };
        let top = (max_used + 1).min(self.k);
        for c in 1..=top {
            if self.blocked[v * self.k + c - 1] > 0 {
                continue;
            }
            self.color[v] = c as Color;
            let viable = self.assign(v, c);
            let stop = viable && self.run(max_used.max(c));
            self.unassign(v, c);
            self.color[v] = 0;
            if stop {
                return true;
            }
        }
        false
    }

    fn assign(&mut self, v: usize, c: usize) -> bool {
        let mut viable = true;
        for &u in &self.neighbors[v] {
            let slot = &mut self.blocked[u * self.k + c - 1];
            *slot += 1;
            if *slot == 1 {
                self.open[u] -= 1;
                if self.open[u] == 0 && self.color[u] == 0 {
                    viable = false;
                }
            }
        }
        viable
    }

    fn unassign(&mut self, v: usize, c: usize) {
        for &u in &self.neighbors[v] {
            let slot = &mut self.blocked[u * self.k + c - 1];
            *slot -= 1;
            if *slot == 0 {
                self.open[u] += 1;
            }
        }
    }
}

/// One canonical representative per equivalence class of proper
/// `k`-colorings, sorted lexicographically.
///
/// With `limit = Some(l)` the search stops once `l` classes are found; the
/// returned classes are then the first `l` in search order (sorted), not
/// necessarily the `l` lexicographically smallest.
pub fn enumerate_classes(h: &Hypergraph, k: usize, limit: Option<usize>) -> Vec<Coloring> {
    let n = h.n();
    if limit == Some(0) {
        return Vec::new();
    }
    // At most n colors can appear, so larger k only matters for labels.
    let k_eff = k.min(n);
    if n > 0 && k_eff == 0 {
        return Vec::new();
    }

    let neighbors: Vec<Vec<usize>> = h
        .pair_graph()
        .iter()
        .map(|row| row.iter().map(|u| u as usize - 1).collect())
        .collect();
    let degrees = h.vertex_degrees();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }

    let mut found = Vec::new();
    let mut search = Search {
        rank,
        neighbors,
        k: k_eff,
        color: vec![0; n],
        blocked: vec![0; n * k_eff],
        open: vec![k_eff; n],
        limit,
        found: &mut found,
    };
    search.run(0);

    let mut classes: Vec<Coloring> = found
        .into_iter()
        .map(|colors| Coloring { k, colors: first_appearance(&colors, k) })
        .collect();
    classes.sort();
    classes.dedup();
    classes
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    Unique,
    Multiple,
    NotColorable,
}

impl Uniqueness {
    pub fn as_str(self) -> &'static str {
        match self {
            Uniqueness::Unique => "UNIQUE",
            Uniqueness::Multiple => "MULTIPLE",
            Uniqueness::NotColorable => "NOT_COLORABLE",
        }
    }
}

/// Stops as soon as a second class turns up.
pub fn uniqueness(h: &Hypergraph, k: usize) -> Uniqueness {
    match enumerate_classes(h, k, Some(2)).len() {
        0 => Uniqueness::NotColorable,
        1 => Uniqueness::Unique,
        _ => Uniqueness::Multiple,
    }
}

/// False for non-colorable input; [`uniqueness`] tells the cases apart.
pub fn is_uniquely_colorable(h: &Hypergraph, k: usize) -> bool {
    uniqueness(h, k) == Uniqueness::Unique
}

/// Class sizes with the good (`|S| ≥ n/(k+2)`) and large
/// (`|S| ≥ 3n/(3k-2)`) colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartProfile {
    pub sizes: Vec<usize>,
    pub good: BTreeSet<Color>,
    pub large: BTreeSet<Color>,
}

pub fn classify_parts(h: &Hypergraph, c: &Coloring) -> Result<PartProfile> {
    if !is_proper(h, c) {
        return Err(Error::ImproperColoring);
    }
    let n = h.n() as i64;
    let k = c.k() as i64;
    let good_floor = ratio(n, k + 2);
    let large_floor = ratio(3 * n, 3 * k - 2);
    let sizes = c.class_sizes();
    let mut good = BTreeSet::new();
    let mut large = BTreeSet::new();
    for (i, &s) in sizes.iter().enumerate() {
        let s = from_int(s as i64);
        if s >= good_floor {
            good.insert(i as Color + 1);
        }
        if s >= large_floor {
            large.insert(i as Color + 1);
        }
    }
    Ok(PartProfile { sizes, good, large })
}

/// Under no isolated vertices and minimum positive codegree strictly above
/// `max{(3k-3r+1)/(3k-2), (k-r+1)/(k+2)}·n`, every coloring class must be
/// surjective with at most `r - 2` large colors. SKIPPED when the hypothesis
/// fails.
pub fn check_structural_props(h: &Hypergraph, k: usize) -> Report {
    let (n, r) = (h.n(), h.r());
    let mut report = Report::new("structural")
        .with_param("k", k)
        .with_param("r", r)
        .with_param("n", n);
    if r < 2 || k < r {
        report.skip(format!("needs k >= r >= 2, got k = {k}, r = {r}"));
        return report;
    }
    if h.has_isolated() {
        report.skip("hypergraph has isolated vertices");
        return report;
    }
    let Some(codegree) = h.min_positive_codegree().expect("r >= 2") else {
        report.skip("hypergraph has no edges");
        return report;
    };
    let (ki, ri) = (k as i64, r as i64);
    let factor = ratio(3 * ki - 3 * ri + 1, 3 * ki - 2).max(ratio(ki - ri + 1, ki + 2));
    let bound = factor * from_int(n as i64);
    report.measure("min_codegree", codegree);
    report.measure("bound", &bound);
    if from_int(codegree as i64) <= bound {
        report.skip("minimum positive codegree does not exceed the bound");
        return report;
    }

    let classes = enumerate_classes(h, k, None);
    report.measure("classes", classes.len());
    if classes.is_empty() {
        report.skip("hypergraph is not k-colorable");
        return report;
    }
    for class in &classes {
        let profile = classify_parts(h, class).expect("enumerated colorings are proper");
        report.check(class.is_surjective(), || format!("{:?} is not surjective", class.as_slice()));
        report.check(profile.large.len() + 2 <= r, || {
            format!("{:?} has {} large colors, more than r - 2", class.as_slice(), profile.large.len())
        });
        report.check(profile.large.is_subset(&profile.good), || {
            format!("{:?}: a large color is not good", class.as_slice())
        });
    }
    if !report.failures.is_empty() {
        report.counterexample = Some(crate::hgr::serialize(h));
    }
    report.conclude();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(k: usize, cs: &[Color]) -> Coloring {
        Coloring::new(k, cs.to_vec()).unwrap()
    }

    fn single() -> Hypergraph {
        Hypergraph::new(3, 3, [[1, 2, 3]]).unwrap()
    }

    /// The five-vertex construction: {1} | {2} {3} | {4} {5}.
    fn h331() -> Hypergraph {
        Hypergraph::new(5, 3, [[1, 2, 4], [1, 3, 5]]).unwrap()
    }

    #[test]
    fn proper_checks() {
        assert!(is_proper(&single(), &col(3, &[1, 2, 3])));
        assert!(!is_proper(&single(), &col(3, &[1, 1, 2])));
        assert!(!is_proper(&single(), &col(2, &[1, 2, 1])));
        assert!(is_proper(&h331(), &col(3, &[1, 2, 2, 3, 3])));
        assert!(is_proper(&h331(), &col(3, &[1, 2, 3, 3, 2])));
    }

    #[test]
    fn new_rejects_out_of_range_colors() {
        assert!(Coloring::new(2, vec![1, 3]).is_err());
        assert!(Coloring::new(2, vec![0]).is_err());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(col(2, &[2, 2, 1]).canonicalize(), col(2, &[1, 1, 2]));
        assert_eq!(col(3, &[3, 1, 2]).canonicalize(), col(3, &[1, 2, 3]));
        let psi2 = col(3, &[1, 2, 3, 3, 2]);
        assert_eq!(psi2.canonicalize(), psi2);
        let c = col(4, &[4, 4, 2, 1, 2]);
        assert_eq!(c.canonicalize().canonicalize(), c.canonicalize());
        assert!(c.canonicalize().is_canonical());
    }

    #[test]
    fn equivalence() {
        let c = col(3, &[1, 2, 3, 1]);
        assert!(c.is_equivalent(&c).unwrap());
        assert!(c.is_equivalent(&col(3, &[2, 1, 3, 2])).unwrap());
        let psi1 = col(3, &[1, 2, 2, 3, 3]);
        let psi2 = col(3, &[1, 2, 3, 3, 2]);
        assert!(!are_equivalent(&psi1, &psi2).unwrap());
        assert!(c.is_equivalent(&col(4, &[1, 2, 3, 1])).is_err());
        assert!(c.is_equivalent(&col(3, &[1, 2, 3])).is_err());
    }

    #[test]
    fn enumerate_single_edge() {
        assert_eq!(enumerate_classes(&single(), 3, None), vec![col(3, &[1, 2, 3])]);
    }

    #[test]
    fn enumerate_edgeless_pair() {
        let h = Hypergraph::empty(2, 2).unwrap();
        assert_eq!(enumerate_classes(&h, 2, None), vec![col(2, &[1, 1]), col(2, &[1, 2])]);
        assert_eq!(enumerate_classes(&h, 2, Some(1)).len(), 1);
        assert!(enumerate_classes(&h, 2, Some(0)).is_empty());
    }

    #[test]
    fn enumerate_not_colorable() {
        assert!(enumerate_classes(&single(), 2, None).is_empty());
        assert_eq!(uniqueness(&single(), 2), Uniqueness::NotColorable);
        assert!(!is_uniquely_colorable(&single(), 2));
    }

    #[test]
    fn enumerate_no_vertices() {
        let h = Hypergraph::empty(0, 2).unwrap();
        assert_eq!(enumerate_classes(&h, 0, None).len(), 1);
        assert_eq!(enumerate_classes(&h, 3, None).len(), 1);
    }

    #[test]
    fn construction_has_two_classes() {
        let classes = enumerate_classes(&h331(), 3, None);
        assert_eq!(classes, vec![col(3, &[1, 2, 2, 3, 3]), col(3, &[1, 2, 3, 3, 2])]);
        assert_eq!(uniqueness(&h331(), 3), Uniqueness::Multiple);
        assert!(is_uniquely_colorable(&single(), 3));
    }

    #[test]
    fn classify_examples() {
        // seven-vertex construction with alpha = 3: {1,2,3} | {4} {5} | {6} {7}
        let h = Hypergraph::new(
            7,
            3,
            [[1, 4, 6], [2, 4, 6], [3, 4, 6], [1, 5, 7], [2, 5, 7], [3, 5, 7]],
        )
        .unwrap();
        let p = classify_parts(&h, &col(3, &[1, 1, 1, 2, 2, 3, 3])).unwrap();
        assert_eq!(p.sizes, vec![3, 2, 2]);
        assert_eq!(p.good, BTreeSet::from([1, 2, 3]));
        assert_eq!(p.large, BTreeSet::from([1]));

        let p = classify_parts(&single(), &col(3, &[1, 2, 3])).unwrap();
        assert_eq!(p.good, BTreeSet::from([1, 2, 3]));
        assert!(p.large.is_empty());

        let k43 = Hypergraph::new(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]).unwrap();
        let p = classify_parts(&k43, &col(4, &[1, 2, 3, 4])).unwrap();
        assert_eq!(p.sizes, vec![1, 1, 1, 1]);
        assert_eq!(p.good.len(), 4);
        assert!(p.large.is_empty());

        assert_eq!(classify_parts(&single(), &col(3, &[1, 1, 2])), Err(Error::ImproperColoring));
    }

    #[test]
    fn structural_props() {
        use crate::report::Verdict;
        assert_eq!(check_structural_props(&single(), 3).verdict, Some(Verdict::Pass));
        assert_eq!(check_structural_props(&h331(), 3).verdict, Some(Verdict::Skipped));
        let with_isolated = Hypergraph::new(4, 3, [[1, 2, 3]]).unwrap();
        assert_eq!(check_structural_props(&with_isolated, 3).verdict, Some(Verdict::Skipped));
    }
}
