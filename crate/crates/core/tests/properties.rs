//! Structural invariants of the digraph model, checked against brute force
//! and under randomized relabelings.

use proptest::prelude::*;
use std::collections::HashSet;
use treecsp_core::digraph::{
    canonical_encoding, center_or_bicenter, distances_from, is_triad, levels, parse_canonical,
    Digraph, Middle, TreeDigraph,
};
use treecsp_oracle as oracle;

fn relabel(t: &TreeDigraph, perm: &[usize]) -> TreeDigraph {
    let edges: Vec<(usize, usize)> = t.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    TreeDigraph::new(Digraph::new(t.vertex_count(), edges).unwrap()).unwrap()
}

fn permutation(rng: &mut oracle::Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut perm);
    perm
}

proptest! {
    #[test]
    fn canonical_encoding_is_relabeling_invariant(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = oracle::Rng::new(seed);
        let t = oracle::random_tree(&mut rng, n);
        let perm = permutation(&mut rng, n);
        prop_assert_eq!(canonical_encoding(&t), canonical_encoding(&relabel(&t, &perm)));
    }

    #[test]
    fn canonical_roundtrips_through_parse(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = oracle::Rng::new(seed);
        let t = oracle::random_tree(&mut rng, n);
        let canon = canonical_encoding(&t);
        let (parsed, _) = parse_canonical(&canon).unwrap();
        prop_assert_eq!(canonical_encoding(&parsed), canon);
    }

    #[test]
    fn reverse_is_an_involution(seed in any::<u64>(), n in 1usize..10) {
        let mut rng = oracle::Rng::new(seed);
        let h = oracle::random_digraph(&mut rng, n, 30);
        let mut original: Vec<_> = h.edges().to_vec();
        let mut twice: Vec<_> = h.reverse().reverse().edges().to_vec();
        original.sort_unstable();
        twice.sort_unstable();
        prop_assert_eq!(original, twice);
    }

    #[test]
    fn triad_predicate_is_reversal_invariant(seed in any::<u64>(), n in 4usize..12) {
        let mut rng = oracle::Rng::new(seed);
        let t = oracle::random_tree(&mut rng, n);
        prop_assert_eq!(is_triad(&t), is_triad(&t.reverse()));
    }

    #[test]
    fn power_edge_count_law(seed in any::<u64>(), n in 1usize..5, k in 1usize..4) {
        let mut rng = oracle::Rng::new(seed);
        let h = oracle::random_digraph(&mut rng, n, 40);
        let p = h.categorical_power(k, 1 << 20).unwrap();
        prop_assert_eq!(p.edge_count(), h.edge_count().pow(k as u32));
    }

    #[test]
    fn levels_match_an_independent_computation(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = oracle::Rng::new(seed);
        let t = oracle::random_tree(&mut rng, n);
        let computed = levels(&t).unwrap();
        // second route: depth-first offsets from a random start, renormalized
        let start = rng.below(n);
        let mut raw = vec![i64::MIN; n];
        raw[start] = 0;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in t.out_neighbors(v) {
                if raw[w] == i64::MIN {
                    raw[w] = raw[v] + 1;
                    stack.push(w);
                }
            }
            for &w in t.in_neighbors(v) {
                if raw[w] == i64::MIN {
                    raw[w] = raw[v] - 1;
                    stack.push(w);
                }
            }
        }
        let min = *raw.iter().min().unwrap();
        for v in 0..n {
            prop_assert_eq!(computed.level(v) as i64, raw[v] - min);
        }
    }

    /// The Jordan middle does not depend on which longest path is found:
    /// relabeling changes every internal tie-break, but the middle must map
    /// along the relabeling.
    #[test]
    fn middle_is_relabeling_equivariant(seed in any::<u64>(), n in 1usize..12) {
        let mut rng = oracle::Rng::new(seed);
        let t = oracle::random_tree(&mut rng, n);
        let perm = permutation(&mut rng, n);
        let relabeled = relabel(&t, &perm);
        let mapped = match center_or_bicenter(&t) {
            Middle::Center(c) => Middle::Center(perm[c]),
            Middle::Bicenter((u, v)) => Middle::Bicenter((perm[u], perm[v])),
        };
        prop_assert_eq!(center_or_bicenter(&relabeled), mapped);
    }
}

/// The middle returned by the double sweep lies in the middle of every
/// longest path (all-pairs check).
#[test]
fn middle_agrees_with_all_longest_paths() {
    let mut rng = oracle::Rng::new(7);
    for _ in 0..200 {
        let n = 2 + rng.below(9);
        let t = oracle::random_tree(&mut rng, n);
        let middle = center_or_bicenter(&t);
        let dist: Vec<Vec<usize>> = (0..n).map(|v| distances_from(&t, v)).collect();
        let diameter = (0..n).flat_map(|v| dist[v].iter().copied()).max().unwrap();
        for a in 0..n {
            for b in 0..n {
                if dist[a][b] != diameter {
                    continue;
                }
                // the middle of the a..b path: at distance floor(d/2) from
                // both ends (center), or both endpoints of the middle edge
                match middle {
                    Middle::Center(c) => {
                        assert_eq!(diameter % 2, 0);
                        assert_eq!(dist[a][c], diameter / 2);
                        assert_eq!(dist[b][c], diameter / 2);
                    }
                    Middle::Bicenter((u, v)) => {
                        assert_eq!(diameter % 2, 1);
                        let (du, dv) = (dist[a][u], dist[a][v]);
                        assert_eq!(du.min(dv), diameter / 2);
                        assert_eq!(dist[b][u].min(dist[b][v]), diameter / 2);
                    }
                }
            }
        }
    }
}

/// Canonical encodings separate isomorphism classes: equal iff isomorphic,
/// with the brute-force AHU key as the independent oracle.
#[test]
fn canonical_encoding_is_an_isomorphism_invariant() {
    for n in 1..=8 {
        let classes = oracle::all_oriented_trees(n);
        let mut canons = HashSet::new();
        for t in &classes {
            assert!(
                canons.insert(canonical_encoding(t)),
                "distinct classes must differ"
            );
        }
        assert_eq!(canons.len(), classes.len());
    }
    // and equal on relabelings (isomorphic inputs)
    let mut rng = oracle::Rng::new(11);
    for _ in 0..100 {
        let n = 1 + rng.below(8);
        let t = oracle::random_tree(&mut rng, n);
        let perm = permutation(&mut rng, n);
        assert_eq!(
            canonical_encoding(&t),
            canonical_encoding(&relabel(&t, &perm))
        );
        assert!(oracle::trees_isomorphic(&t, &relabel(&t, &perm)));
    }
}

/// Oriented-tree class counts behind the enumeration oracle match the core
/// generator's input universe.
#[test]
fn oracle_tree_counts() {
    let expect = [1usize, 1, 3, 8, 27, 91, 350, 1376];
    for (i, &e) in expect.iter().enumerate() {
        assert_eq!(oracle::all_oriented_trees(i + 1).len(), e);
    }
}
