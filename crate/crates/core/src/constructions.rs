//! Generators: the two-sided extremal family, quasi-sunflowers, complete
//! `k`-partite hypergraphs and seeded random `k`-partite instances.

use std::ops::Range;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::hypergraph::{for_each_subset, Hypergraph, SubsetCounts};
use crate::rational::{self, from_int};
use crate::{Color, Rational, Vertex};

/// Parameters of the family with `k - 2` common parts of size `⌊αm⌋` and
/// two swappable pairs of parts of size `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub k: usize,
    pub r: usize,
    pub alpha: Rational,
    pub m: usize,
}

impl ConstructionSpec {
    pub fn new(k: usize, r: usize, alpha: Rational, m: usize) -> Result<Self> {
        let spec = ConstructionSpec { k, r, alpha, m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_integer_alpha(k: usize, r: usize, alpha: i64, m: usize) -> Result<Self> {
        Self::new(k, r, from_int(alpha), m)
    }

    fn validate(&self) -> Result<()> {
        if self.r < 2 || self.k < self.r {
            return Err(Error::param(format!("needs k >= r >= 2, got k = {}, r = {}", self.k, self.r)));
        }
        if self.m == 0 {
            return Err(Error::param("m must be at least 1"));
        }
        if !self.alpha.is_positive() {
            return Err(Error::param("alpha must be positive"));
        }
        if self.k >= 3 && self.common_size() == 0 {
            return Err(Error::param(format!(
                "floor(alpha * m) = 0 for alpha = {}, m = {}",
                rational::format(&self.alpha),
                self.m
            )));
        }
        Ok(())
    }

    /// `⌊αm⌋`, the size of each of the `k - 2` common parts.
    pub fn common_size(&self) -> usize {
        let scaled = &self.alpha * from_int(self.m as i64);
        rational::floor_u64(&scaled).unwrap_or(0) as usize
    }

    /// `(k - 2)⌊αm⌋ + 4m`.
    pub fn n(&self) -> usize {
        (self.k - 2) * self.common_size() + 4 * self.m
    }
}

/// Vertex blocks in labeling order: `V_1, …, V_{k-2}`, then `V_{k-1,1}`,
/// `V_{k-1,2}`, `V_{k,1}`, `V_{k,2}`, consecutive from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub common: Vec<Range<Vertex>>,
    /// `[V_{k-1,1}, V_{k-1,2}]`
    pub penultimate: [Range<Vertex>; 2],
    /// `[V_{k,1}, V_{k,2}]`
    pub last: [Range<Vertex>; 2],
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub spec: ConstructionSpec,
    pub hypergraph: Hypergraph,
    pub psi1: Coloring,
    pub psi2: Coloring,
    pub blocks: Blocks,
}

/// Edges are the rainbow `r`-sets of `U_1` (common parts plus `V_{k-1,1}`,
/// `V_{k,1}`) and of `U_2` (common parts plus `V_{k-1,2}`, `V_{k,2}`).
pub fn build_construction(spec: &ConstructionSpec) -> Result<Construction> {
    spec.validate()?;
    let (k, r, m) = (spec.k, spec.r, spec.m as Vertex);
    let a = spec.common_size() as Vertex;

    let mut next = 1;
    let mut block = |len: Vertex| {
        let range = next..next + len;
        next += len;
        range
    };
    let common: Vec<_> = (0..k - 2).map(|_| block(a)).collect();
    let penultimate = [block(m), block(m)];
    let last = [block(m), block(m)];
    let n = spec.n();

    let sides: Vec<Vec<Vertex>> = (0..2)
        .map(|side| {
            let mut parts = common.clone();
            parts.push(penultimate[side].clone());
            parts.push(last[side].clone());
            let mut flat = Vec::new();
            rainbow_edges(&parts, r, &mut flat);
            flat
        })
        .collect();
    let hypergraph = Hypergraph::from_flat_unchecked(n, r, merge_sorted(r, &sides[0], &sides[1]));

    let mut psi1 = vec![0 as Color; n];
    let mut psi2 = vec![0 as Color; n];
    let paint = |colors: &mut Vec<Color>, range: &Range<Vertex>, c: usize| {
        for v in range.clone() {
            colors[v as usize - 1] = c as Color;
        }
    };
    for (i, part) in common.iter().enumerate() {
        paint(&mut psi1, part, i + 1);
        paint(&mut psi2, part, i + 1);
    }
    paint(&mut psi1, &penultimate[0], k - 1);
    paint(&mut psi1, &penultimate[1], k - 1);
    paint(&mut psi1, &last[0], k);
    paint(&mut psi1, &last[1], k);
    paint(&mut psi2, &penultimate[0], k - 1);
    paint(&mut psi2, &last[1], k - 1);
    paint(&mut psi2, &penultimate[1], k);
    paint(&mut psi2, &last[0], k);

    Ok(Construction {
        spec: spec.clone(),
        hypergraph,
        psi1: Coloring::new(k, psi1)?,
        psi2: Coloring::new(k, psi2)?,
        blocks: Blocks { common, penultimate, last },
    })
}

/// Merges two sorted duplicate-free edge lists, keeping shared edges once.
fn merge_sorted(r: usize, a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut a, mut b) = (a.chunks_exact(r).peekable(), b.chunks_exact(r).peekable());
    loop {
        let next = match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match x.cmp(y) {
                std::cmp::Ordering::Less => a.next(),
                std::cmp::Ordering::Greater => b.next(),
                std::cmp::Ordering::Equal => {
                    b.next();
                    a.next()
                }
            },
            (Some(_), None) => a.next(),
            (None, _) => b.next(),
        };
        match next {
            Some(edge) => out.extend_from_slice(edge),
            None => return out,
        }
    }
}

/// Appends every `r`-set with at most one vertex per part. Parts must be
/// listed in increasing label order so each edge comes out sorted.
fn rainbow_edges(parts: &[Range<Vertex>], r: usize, out: &mut Vec<Vertex>) {
    fn go(parts: &[Range<Vertex>], r: usize, buf: &mut Vec<Vertex>, out: &mut Vec<Vertex>) {
        if buf.len() == r {
            out.extend_from_slice(buf);
            return;
        }
        let need = r - buf.len();
        for p in 0..parts.len() {
            if parts.len() - p < need {
                break;
            }
            for v in parts[p].clone() {
                buf.push(v);
                go(&parts[p + 1..], r, buf, out);
                buf.pop();
            }
        }
    }
    go(parts, r, &mut Vec::with_capacity(r), out);
}

fn quasi_sunflower_edges(r: usize, m: usize) -> Vec<Vec<Vertex>> {
    let q = (m - 1) / (r - 1);
    let hub = m as Vertex;
    let mut edges: Vec<Vec<Vertex>> = (0..q)
        .map(|j| {
            let petal = (j * (r - 1) + 1) as Vertex..=((j + 1) * (r - 1)) as Vertex;
            petal.chain([hub]).collect()
        })
        .collect();
    let tail: Vec<Vertex> = ((m - r + 1) as Vertex..=hub).collect();
    if !edges.contains(&tail) {
        edges.push(tail);
    }
    edges
}

fn check_sunflower(r: usize, m: usize) -> Result<()> {
    if r < 2 || m < r {
        return Err(Error::param(format!("quasi-sunflower needs m >= r >= 2, got r = {r}, m = {m}")));
    }
    Ok(())
}

/// `⌊(m-1)/(r-1)⌋` petals of `r - 1` consecutive vertices plus the tail
/// `{m-r+1, …, m}`, all through vertex `m`.
pub fn build_quasi_sunflower(r: usize, m: usize) -> Result<Hypergraph> {
    check_sunflower(r, m)?;
    Hypergraph::new(m, r, quasi_sunflower_edges(r, m))
}

/// Union of the quasi-sunflowers on `1..=j` for every `j` in `r..=m`.
pub fn build_nested_sunflowers(r: usize, m: usize) -> Result<Hypergraph> {
    check_sunflower(r, m)?;
    Hypergraph::new(m, r, (r..=m).flat_map(|j| quasi_sunflower_edges(r, j)))
}

fn kpartite_parts(r: usize, sizes: &[usize]) -> Result<Vec<Range<Vertex>>> {
    if r == 0 || sizes.len() < r {
        return Err(Error::param(format!("{} parts cannot carry a {r}-graph", sizes.len())));
    }
    if sizes.contains(&0) {
        return Err(Error::param("part sizes must be positive"));
    }
    let mut next = 1;
    Ok(sizes
        .iter()
        .map(|&s| {
            let range = next..next + s as Vertex;
            next += s as Vertex;
            range
        })
        .collect())
}

/// Colors the consecutive blocks of the given sizes `1, 2, …`.
pub fn part_coloring(sizes: &[usize]) -> Coloring {
    let colors = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i as Color + 1, s))
        .collect();
    Coloring::new(sizes.len(), colors).expect("part colors are in range")
}

/// All `r`-sets with at most one vertex per part, and the coloring that
/// names each part.
pub fn complete_kpartite(r: usize, sizes: &[usize]) -> Result<(Hypergraph, Coloring)> {
    let parts = kpartite_parts(r, sizes)?;
    let mut flat = Vec::new();
    rainbow_edges(&parts, r, &mut flat);
    let n = sizes.iter().sum();
    Ok((Hypergraph::from_flat_unchecked(n, r, flat), part_coloring(sizes)))
}

/// Keeps each edge of the complete `k`-partite `r`-graph independently with
/// probability `density`.
pub fn random_kpartite<R: Rng>(
    r: usize,
    sizes: &[usize],
    density: f64,
    rng: &mut R,
) -> Result<(Hypergraph, Coloring)> {
    let (complete, coloring) = complete_kpartite(r, sizes)?;
    let mut flat = Vec::new();
    for edge in complete.edges() {
        if rng.gen_bool(density.clamp(0.0, 1.0)) {
            flat.extend_from_slice(edge);
        }
    }
    Ok((Hypergraph::from_flat_unchecked(complete.n(), r, flat), coloring))
}

/// Uniform over all vectors of `k` positive integers with sum at most
/// `n_max`, via the bijection with `k`-subsets of `1..=n_max` (partial sums).
pub fn random_composition<R: Rng>(k: usize, n_max: usize, rng: &mut R) -> Result<Vec<usize>> {
    if k == 0 || n_max < k {
        return Err(Error::param(format!("no composition into {k} positive parts with sum <= {n_max}")));
    }
    let mut marks: Vec<usize> = index::sample(rng, n_max, k).into_iter().map(|i| i + 1).collect();
    marks.sort_unstable();
    let mut prev = 0;
    Ok(marks
        .into_iter()
        .map(|m| {
            let part = m - prev;
            prev = m;
            part
        })
        .collect())
}

/// Child seed for trial `index` of a run seeded with `seed`. Independent of
/// the order in which trials execute.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(index))
}

/// Smallest degree strictly above `threshold · n^(r-i)`.
fn required_degree(threshold: &Rational, n: usize, exponent: usize) -> u64 {
    let scale = Rational::from_integer(BigInt::from(n).pow(exponent as u32));
    rational::strictly_above(&(threshold * scale)).unwrap_or(u64::MAX)
}

/// Seeded stream of `k`-partite `r`-graphs with prescribed part sizes, no
/// isolated vertices, and `δ⁺_i > threshold · n^(r-i)`.
///
/// Each trial starts from the complete `k`-partite graph and makes a random
/// number of attempts (uniform in `0..=3|H|`) to delete a uniformly chosen
/// remaining edge; a deletion that would isolate a vertex or push a positive
/// `i`-degree to the bound or below is rejected. Trial `t` uses
/// [`derive_seed`]`(seed, t)`, so streams are reproducible and trials can run
/// in any order.
#[derive(Debug, Clone)]
pub struct KpartiteSampler {
    r: usize,
    level: usize,
    sizes: Vec<usize>,
    threshold: Rational,
    required: u64,
    trials: usize,
    seed: u64,
    next_trial: usize,
    complete: Option<Hypergraph>,
    diagnostic: Option<String>,
}

impl KpartiteSampler {
    /// Why the stream is empty, if the constraint is infeasible.
    pub fn diagnostic(&self) -> Option<&str> {
        self.diagnostic.as_deref()
    }

    pub fn is_feasible(&self) -> bool {
        self.complete.is_some()
    }

    /// Runs one trial by index; `None` when infeasible.
    pub fn trial(&self, t: usize) -> Option<Hypergraph> {
        let complete = self.complete.as_ref()?;
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(self.seed, t as u64));
        let r = self.r;
        let mut edges: Vec<&[Vertex]> = complete.edges().collect();
        let mut counts = SubsetCounts::of_edges(complete, self.level);
        let mut vdeg = complete.vertex_degrees();
        let attempts = rng.gen_range(0..=3 * edges.len());
        for _ in 0..attempts {
            if edges.is_empty() {
                break;
            }
            let pick = rng.gen_range(0..edges.len());
            let edge = edges[pick];
            if edge.iter().any(|&v| vdeg[v as usize - 1] == 1) {
                continue;
            }
            let mut ok = true;
            for_each_subset(edge, self.level, |s| {
                let after = counts.get(s) as u64 - 1;
                if after > 0 && after < self.required {
                    ok = false;
                }
            });
            if !ok {
                continue;
            }
            for_each_subset(edge, self.level, |s| {
                counts.adjust(s, -1);
            });
            for &v in edge {
                vdeg[v as usize - 1] -= 1;
            }
            edges.swap_remove(pick);
        }
        let flat: Vec<Vertex> = edges.iter().flat_map(|e| e.iter().copied()).collect();
        let h = Hypergraph::from_flat_unchecked(complete.n(), r, flat);
        assert!(!h.has_isolated(), "sampler emitted an isolated vertex");
        let degree = h.min_positive_degree(self.level).unwrap().unwrap_or(0);
        assert!(degree as u64 >= self.required, "sampler emitted a hypergraph below the bound");
        Some(h)
    }

    pub fn threshold(&self) -> &Rational {
        &self.threshold
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
}

impl Iterator for KpartiteSampler {
    type Item = Hypergraph;

    fn next(&mut self) -> Option<Hypergraph> {
        if self.next_trial >= self.trials {
            return None;
        }
        let h = self.trial(self.next_trial)?;
        self.next_trial += 1;
        Some(h)
    }
}

/// Sampler for `δ⁺_{r-1} > threshold · n`.
pub fn sample_kpartite_above(
    k: usize,
    r: usize,
    sizes: &[usize],
    threshold: &Rational,
    trials: usize,
    seed: u64,
) -> Result<KpartiteSampler> {
    sample_kpartite_above_level(k, r, r.saturating_sub(1), sizes, threshold, trials, seed)
}

/// Sampler for `δ⁺_i > threshold · n^(r-i)`.
pub fn sample_kpartite_above_level(
    k: usize,
    r: usize,
    level: usize,
    sizes: &[usize],
    threshold: &Rational,
    trials: usize,
    seed: u64,
) -> Result<KpartiteSampler> {
    if sizes.len() != k {
        return Err(Error::param(format!("{} part sizes given for k = {k}", sizes.len())));
    }
    if r < 2 || k < r {
        return Err(Error::param(format!("needs k >= r >= 2, got k = {k}, r = {r}")));
    }
    if level == 0 || level >= r {
        return Err(Error::param(format!("degree level {level} needs 1 <= i < r = {r}")));
    }
    let (complete, _) = complete_kpartite(r, sizes)?;
    let n = complete.n();
    let required = required_degree(threshold, n, r - level);
    let base = complete.min_positive_degree(level)?.unwrap_or(0) as u64;
    let (complete, diagnostic) = if base >= required {
        (Some(complete), None)
    } else {
        let why = format!(
            "complete {k}-partite graph with parts {sizes:?} has positive {level}-degree {base}, \
             needs at least {required}"
        );
        (None, Some(why))
    };
    Ok(KpartiteSampler {
        r,
        level,
        sizes: sizes.to_vec(),
        threshold: threshold.clone(),
        required,
        trials,
        seed,
        next_trial: 0,
        complete,
        diagnostic,
    })
}
