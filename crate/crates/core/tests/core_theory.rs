//! The core-test equivalences on small trees, against brute-force search.

use treecsp_core::consistency::{find_homomorphism, DomainLists, SearchOpts, SearchResult};
use treecsp_core::cores::{
    core_of, endomorphisms_bruteforce, is_core_tree, is_rooted_core_at, DEFAULT_ENDOMORPHISM_BOUND,
};
use treecsp_core::digraph::{canonical_encoding, center_or_bicenter, Middle, TreeDigraph};
use treecsp_core::generation::Generator;
use treecsp_oracle as oracle;

/// A tree is a core iff its endomorphism monoid is trivial iff every
/// endomorphism is injective; full enumeration up to 8 vertices.
#[test]
fn core_test_equals_endomorphism_triviality() {
    for n in 1..=8 {
        for t in oracle::all_oriented_trees(n) {
            let endos = endomorphisms_bruteforce(&t, DEFAULT_ENDOMORPHISM_BOUND).unwrap();
            let only_identity = endos.len() == 1 && endos[0].is_identity();
            let all_injective = endos.iter().all(|h| h.is_injective());
            let core = is_core_tree(&t);
            assert_eq!(core, only_identity, "{}", canonical_encoding(&t));
            assert_eq!(core, all_injective, "{}", canonical_encoding(&t));
        }
    }
}

/// Same equivalence at 9 vertices with an early-exit search instead of full
/// enumeration (stars have millions of endomorphisms).
#[test]
fn core_test_matches_endomorphism_search_at_nine() {
    for t in oracle::all_oriented_trees(9) {
        let mut nontrivial = false;
        oracle::for_each_homomorphism(&t, &t, None, &mut |map| {
            if map.iter().enumerate().any(|(v, &w)| v != w) {
                nontrivial = true;
                return false;
            }
            true
        });
        assert_eq!(is_core_tree(&t), !nontrivial, "{}", canonical_encoding(&t));
    }
}

/// A core tree is a rooted core at its center (or either bicenter endpoint).
#[test]
fn cores_are_rooted_cores_at_their_middle() {
    let mut generator = Generator::new();
    for n in 1..=12 {
        generator.core_trees(n, &mut |tree, canon| match center_or_bicenter(&tree) {
            Middle::Center(c) => {
                assert!(is_rooted_core_at(&tree, c), "{canon} at center {c}");
            }
            Middle::Bicenter((u, v)) => {
                assert!(is_rooted_core_at(&tree, u), "{canon} at bicenter tail {u}");
                assert!(is_rooted_core_at(&tree, v), "{canon} at bicenter head {v}");
            }
        });
    }
}

/// core_of is idempotent and homomorphically equivalent to its input.
#[test]
fn core_of_is_an_idempotent_retraction() {
    let mut rng = oracle::Rng::new(0xc04e);
    let mut trees: Vec<TreeDigraph> = oracle::all_oriented_trees(6);
    for _ in 0..60 {
        let n = 7 + rng.below(3);
        trees.push(oracle::random_tree(&mut rng, n));
    }
    for t in trees {
        let core = core_of(&t);
        assert!(is_core_tree(&core));
        let again = core_of(&core);
        assert_eq!(canonical_encoding(&core), canonical_encoding(&again));

        // homomorphisms both ways
        let forward = find_homomorphism(
            &t,
            &core,
            DomainLists::full(t.vertex_count(), core.vertex_count()),
            SearchOpts::default(),
        );
        assert!(matches!(forward, SearchResult::Found(_)));
        let backward = find_homomorphism(
            &core,
            &t,
            DomainLists::full(core.vertex_count(), t.vertex_count()),
            SearchOpts::default(),
        );
        assert!(matches!(backward, SearchResult::Found(_)));
    }
}

/// Isomorphic inputs produce identical core_of outputs (canonical order).
#[test]
fn core_of_is_relabeling_stable() {
    let mut rng = oracle::Rng::new(0xfade);
    for _ in 0..50 {
        let n = 3 + rng.below(6);
        let t = oracle::random_tree(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut perm);
        let relabeled = TreeDigraph::from_edges(
            t.edges()
                .iter()
                .map(|&(u, v)| (perm[u], perm[v]))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let a = core_of(&t);
        let b = core_of(&relabeled);
        assert_eq!(a.edges(), b.edges());
    }
}
