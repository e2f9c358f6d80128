use std::fmt;

use crate::Vertex;

/// Subset of `1..=n` stored as a bit vector; bit `v - 1` marks vertex `v`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet { n, words: vec![0; n.div_ceil(64)] }
    }

    pub fn full(n: usize) -> Self {
        let mut set = Self::empty(n);
        for v in 1..=n as Vertex {
            set.insert(v);
        }
        set
    }

    /// Panics if a vertex lies outside `1..=n`.
    pub fn from_vertices(n: usize, vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut set = Self::empty(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Size of the ground set `1..=n`.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, v: Vertex) -> (usize, u64) {
        assert!(v >= 1 && v as usize <= self.n, "vertex {v} outside 1..={}", self.n);
        let i = v as usize - 1;
        (i / 64, 1u64 << (i % 64))
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        let (w, bit) = self.slot(v);
        let fresh = self.words[w] & bit == 0;
        self.words[w] |= bit;
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        let (w, bit) = self.slot(v);
        let present = self.words[w] & bit != 0;
        self.words[w] &= !bit;
        present
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        if v == 0 || v as usize > self.n {
            return false;
        }
        let i = v as usize - 1;
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Self {
        let n = self.n.max(other.n);
        let len = n.div_ceil(64);
        let word = |ws: &[u64], i: usize| ws.get(i).copied().unwrap_or(0);
        let words = (0..len).map(|i| op(word(&self.words, i), word(&other.words, i))).collect();
        VertexSet { n, words }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some((w * 64 + tz as usize + 1) as Vertex)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn membership_and_iteration() {
        let mut s = VertexSet::empty(70);
        assert!(s.insert(1));
        assert!(s.insert(65));
        assert!(!s.insert(65));
        assert!(s.contains(65) && !s.contains(64) && !s.contains(0) && !s.contains(71));
        assert_eq!(s.to_vec(), vec![1, 65]);
        assert!(s.remove(1));
        assert_eq!(s.len(), 1);
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn insert_out_of_range_panics() {
        VertexSet::empty(3).insert(4);
    }

    proptest! {
        #[test]
        fn inclusion_exclusion(a in proptest::collection::vec(1u32..=130, 0..60),
                               b in proptest::collection::vec(1u32..=130, 0..60)) {
            let a = VertexSet::from_vertices(130, a);
            let b = VertexSet::from_vertices(130, b);
            prop_assert_eq!(a.union(&b).len() + a.intersection(&b).len(), a.len() + b.len());
            prop_assert_eq!(a.difference(&b).len(), a.len() - a.intersection(&b).len());
            prop_assert!(a.intersection(&b).is_subset(&a));
            prop_assert!(a.is_subset(&a.union(&b)));
            prop_assert!(a.difference(&b).is_disjoint(&b));
        }
    }
}
