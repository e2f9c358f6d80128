mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use unicolor::coloring::{are_equivalent, check_structural_props, enumerate_classes, is_uniquely_colorable};
use unicolor::constructions::{
    build_nested_sunflowers, build_quasi_sunflower, part_coloring, random_kpartite, sample_kpartite_above,
};
use unicolor::rational::ratio;
use unicolor::thresholds::{binom, ffk_check_with};
use unicolor::{Coloring, Hypergraph, Rational, Verdict, Vertex};

use common::*;

fn all_subsets(n: usize, r: usize) -> Vec<Vec<Vertex>> {
    fn go(start: Vertex, n: Vertex, r: usize, buf: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if buf.len() == r {
            out.push(buf.clone());
            return;
        }
        for v in start..=n {
            buf.push(v);
            go(v + 1, n, r, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n as Vertex, r, &mut Vec::new(), &mut out);
    out
}

/// Arbitrary `r`-graphs on at most `n_max` vertices.
fn hypergraph(n_max: usize, r_max: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=n_max)
        .prop_flat_map(move |n| (Just(n), 1..=r_max.min(n)))
        .prop_flat_map(|(n, r)| {
            let pool = all_subsets(n, r);
            let len = pool.len();
            (Just(n), Just(r), proptest::sample::subsequence(pool, 0..=len))
        })
        .prop_map(|(n, r, edges)| Hypergraph::new(n, r, edges).unwrap())
}

fn coloring(n: usize, k: usize) -> impl Strategy<Value = Coloring> {
    proptest::collection::vec(1..=k as u32, n).prop_map(move |c| Coloring::new(k, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn enumeration_matches_brute_force(h in hypergraph(7, 3), k in 1usize..=4) {
        let fast: BTreeSet<Vec<u32>> = enumerate_classes(&h, k, None).iter().map(|c| c.as_slice().to_vec()).collect();
        let slow = naive_classes(&h, k);
        prop_assert_eq!(&fast, &slow);
        prop_assert_eq!(is_uniquely_colorable(&h, k), slow.len() == 1);
        prop_assert_eq!(is_uniquely_colorable(&h, k), enumerate_classes(&h, k, Some(2)).len() == 1);
    }

    #[test]
    fn limited_enumeration_is_a_prefix_count(h in hypergraph(6, 3), k in 1usize..=4, limit in 1usize..4) {
        let all = enumerate_classes(&h, k, None);
        let some = enumerate_classes(&h, k, Some(limit));
        prop_assert_eq!(some.len(), all.len().min(limit));
        prop_assert!(some.iter().all(|c| all.contains(c)));
    }

    #[test]
    fn shadows_match_brute_force(h in hypergraph(7, 4)) {
        for i in 0..h.r() {
            let fast: BTreeSet<Vec<Vertex>> = edge_lists(&h.shadow(i).unwrap()).into_iter().collect();
            prop_assert_eq!(&fast, &naive_shadow(&h, i));
            prop_assert_eq!(h.shadow_len(i).unwrap(), fast.len());
            prop_assert_eq!(h.shadow_sizes()[i], fast.len());
        }
    }

    #[test]
    fn shadows_compose(h in hypergraph(7, 4)) {
        let r = h.r();
        for i in 0..r {
            for j in 0..r - i {
                let two_step = h.shadow(i).unwrap().shadow(j).unwrap();
                prop_assert_eq!(two_step, h.shadow(i + j).unwrap());
            }
        }
    }

    #[test]
    fn degrees_match_brute_force(h in hypergraph(7, 4)) {
        for i in 1..h.r() {
            prop_assert_eq!(h.min_positive_degree(i).unwrap(), naive_min_degree(&h, i));
        }
        let total: usize = h.vertex_degrees().iter().sum();
        prop_assert_eq!(total, h.r() * h.len());
        if h.r() >= 2 {
            // every edge holds r sets of size r - 1
            let edges = edge_lists(&h);
            let codegrees: usize = naive_shadow(&h, 1)
                .iter()
                .map(|s| edges.iter().filter(|e| s.iter().all(|v| e.contains(v))).count())
                .sum();
            prop_assert_eq!(codegrees, h.r() * h.len());
        }
        for i in 0..h.r() {
            prop_assert_eq!(h.shadow(i).unwrap().is_empty(), h.is_empty());
        }
    }

    #[test]
    fn equivalence_matches_permutation_search(
        (a, b, c) in (1usize..=8, 1usize..=5).prop_flat_map(|(n, k)| (coloring(n, k), coloring(n, k), coloring(n, k)))
    ) {
        let k = a.k();
        let eq = |x: &Coloring, y: &Coloring| are_equivalent(x, y).unwrap();
        prop_assert_eq!(eq(&a, &b), naive_equivalent(a.as_slice(), b.as_slice(), k));
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        prop_assert!(!(eq(&a, &b) && eq(&b, &c)) || eq(&a, &c));
        prop_assert!(eq(&a, &a.canonicalize()));
        // a relabeled copy is always equivalent
        let shifted: Vec<u32> = a.as_slice().iter().map(|&x| x % k as u32 + 1).collect();
        prop_assert!(eq(&a, &Coloring::new(k, shifted).unwrap()));
    }

    #[test]
    fn sunflowers_are_small_and_share_the_hub(r in 2usize..=5, extra in 0usize..=12) {
        let m = r + extra;
        let h = build_quasi_sunflower(r, m).unwrap();
        prop_assert!(h.len() <= (m - 1) / (r - 1) + 1);
        prop_assert!(h.edges().all(|e| e.contains(&(m as Vertex))));
        let nested = build_nested_sunflowers(r, m).unwrap();
        for u in 1..=m as Vertex {
            for v in u + 1..=m as Vertex {
                prop_assert!(nested.pair_covered(u, v).unwrap());
            }
        }
    }

    #[test]
    fn structural_checks_never_fail(h in hypergraph(7, 3), k in 2usize..=4) {
        let report = check_structural_props(&h, k);
        prop_assert_ne!(report.verdict, Some(Verdict::Fail), "{}", report);
    }

    #[test]
    fn sampler_output_meets_the_bound(sizes in proptest::collection::vec(2usize..=5, 3), seed: u64) {
        let threshold: Rational = ratio(1, 5);
        let n = sizes.iter().sum::<usize>();
        let witness = part_coloring(&sizes);
        for h in sample_kpartite_above(3, 3, &sizes, &threshold, 4, seed).unwrap() {
            let delta = naive_min_degree(&h, 2).unwrap();
            prop_assert!(Rational::from_integer(delta.into()) > &threshold * Rational::from_integer(n.into()));
            prop_assert!(h.vertex_degrees().iter().all(|&d| d > 0));
            let rainbow = edge_lists(&h).iter().all(|e| {
                let colors: BTreeSet<u32> = e.iter().map(|&v| witness.color(v)).collect();
                colors.len() == 3
            });
            prop_assert!(rainbow);
        }
    }

    #[test]
    fn ffk_holds_on_random_partite_instances(
        sizes in proptest::collection::vec(1usize..=3, 2..=5),
        r in 2usize..=5,
        density in 0.0f64..=1.0,
        seed: u64,
    ) {
        prop_assume!(r <= sizes.len());
        let k = sizes.len();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let (h, witness) = random_kpartite(r, &sizes, density, &mut rng).unwrap();
        for i in 1..r {
            let edges = BigUint::from(h.len());
            let shadow = BigUint::from(naive_shadow(&h, i).len());
            let lhs = edges.pow((r - i) as u32) * binom(k, r - i).pow(r as u32);
            let rhs = shadow.pow(r as u32) * binom(k, r).pow((r - i) as u32);
            prop_assert!(lhs <= rhs);
            prop_assert!(ffk_check_with(&h, &witness, i).unwrap().holds());
        }
    }
}
