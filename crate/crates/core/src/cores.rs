//! Core and rooted-core tests for trees, and a core extractor.
//!
//! A finite digraph is a core if all of its endomorphisms are injective. For a
//! tree this is equivalent to arc consistency of the tree against itself
//! finishing with every list a self-singleton, which gives a polynomial-time
//! test. Rooted cores additionally pin the root's list before propagating.

use crate::consistency::{
    arc_consistency, arc_consistency_full, find_homomorphism, AcResult, DomainLists, Homomorphism,
    SearchOpts, SearchResult,
};
use crate::digraph::{canonical_form, Digraph, RootedTree, TreeDigraph};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// True iff the tree is a core, i.e. its only endomorphism is the identity.
pub fn is_core_tree(t: &TreeDigraph) -> bool {
    match arc_consistency_full(t, t) {
        AcResult::Consistent(lists) => lists.all_singletons(),
        // the identity homomorphism keeps every self-value alive
        AcResult::Reject => unreachable!("AC of a tree against itself cannot reject"),
    }
}

/// True iff every endomorphism fixing `root` is injective.
pub fn is_rooted_core_at(t: &TreeDigraph, root: usize) -> bool {
    let n = t.vertex_count();
    let mut init = DomainLists::full(n, n);
    init.pin(root, root);
    match arc_consistency(t, t, init) {
        AcResult::Consistent(lists) => lists.all_singletons(),
        AcResult::Reject => unreachable!("AC of a tree against itself cannot reject"),
    }
}

pub fn is_rooted_core(rt: &RootedTree) -> bool {
    is_rooted_core_at(rt.tree(), rt.root())
}

/// Bound guard for [`endomorphisms_bruteforce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundExceeded {
    pub size: usize,
    pub bound: usize,
}

impl fmt::Display for BoundExceeded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tree has {} vertices, exceeding the brute-force bound {}",
            self.size, self.bound
        )
    }
}

pub const DEFAULT_ENDOMORPHISM_BOUND: usize = 9;

/// All endomorphisms of a small tree by exhaustive enumeration with
/// edge-pruning, in a deterministic order.
pub fn endomorphisms_bruteforce(
    t: &TreeDigraph,
    bound: usize,
) -> Result<Vec<Homomorphism>, BoundExceeded> {
    let n = t.vertex_count();
    if n > bound {
        return Err(BoundExceeded { size: n, bound });
    }
    // assign vertices in BFS order so each new vertex touches an assigned one
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
    }

    let mut result = Vec::new();
    let mut image = vec![usize::MAX; n];
    fn extend(
        t: &TreeDigraph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        result: &mut Vec<Homomorphism>,
    ) {
        if depth == order.len() {
            result.push(Homomorphism::new(image.clone()));
            return;
        }
        let v = order[depth];
        'candidates: for w in 0..t.vertex_count() {
            for &u in t.out_neighbors(v) {
                if image[u] != usize::MAX && !t.has_edge(w, image[u]) {
                    continue 'candidates;
                }
            }
            for &u in t.in_neighbors(v) {
                if image[u] != usize::MAX && !t.has_edge(image[u], w) {
                    continue 'candidates;
                }
            }
            image[v] = w;
            extend(t, order, depth + 1, image, result);
            image[v] = usize::MAX;
        }
    }
    extend(t, &order, 0, &mut image, &mut result);
    Ok(result)
}

/// Connected components of the tree after deleting `root`, each listed with
/// the unique neighbor of `root` it contains.
fn components_without(t: &TreeDigraph, root: usize) -> Vec<(usize, Vec<usize>)> {
    let mut comps = Vec::new();
    let mut seen = vec![false; t.vertex_count()];
    seen[root] = true;
    for r in t.neighbors(root) {
        if seen[r] {
            continue;
        }
        let mut comp = vec![r];
        seen[r] = true;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for w in t.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comps.push((r, comp));
    }
    comps
}

/// Turns a non-identity automorphism into a non-injective endomorphism,
/// following the fixed-point descent used to prove that trees with nontrivial
/// automorphisms are not cores. `fixed` must be a fixed point of `auto_map`.
fn non_injective_from_automorphism(
    t: &TreeDigraph,
    auto_map: &[usize],
    fixed: usize,
) -> Vec<usize> {
    let comps = components_without(t, fixed);
    let mut membership = vec![usize::MAX; t.vertex_count()];
    for (idx, (_, comp)) in comps.iter().enumerate() {
        for &v in comp {
            membership[v] = idx;
        }
    }
    for (idx, (attach, comp)) in comps.iter().enumerate() {
        if membership[auto_map[*attach]] != idx {
            // the component moves: map it along, fix everything else
            let mut map: Vec<usize> = (0..t.vertex_count()).collect();
            for &v in comp {
                map[v] = auto_map[v];
            }
            return map;
        }
    }
    for (attach, comp) in &comps {
        if comp.iter().any(|&v| auto_map[v] != v) {
            // recurse into a component fixed setwise but not pointwise; its
            // attachment vertex is fixed because it is the unique neighbor of
            // `fixed` inside the component
            let mut local_of = vec![usize::MAX; t.vertex_count()];
            for (i, &v) in comp.iter().enumerate() {
                local_of[v] = i;
            }
            let mut edges = Vec::new();
            for &(u, v) in t.edges() {
                if local_of[u] != usize::MAX && local_of[v] != usize::MAX {
                    edges.push((local_of[u], local_of[v]));
                }
            }
            let sub = TreeDigraph::new(Digraph::new(comp.len(), edges).unwrap()).unwrap();
            let sub_auto: Vec<usize> = comp.iter().map(|&v| local_of[auto_map[v]]).collect();
            let sub_map = non_injective_from_automorphism(&sub, &sub_auto, local_of[*attach]);
            let mut map: Vec<usize> = (0..t.vertex_count()).collect();
            for (i, &v) in comp.iter().enumerate() {
                map[v] = comp[sub_map[i]];
            }
            return map;
        }
    }
    unreachable!("automorphism is not the identity")
}

/// A non-injective endomorphism of a non-core tree. Searches with each
/// vertex's own value excluded from its list, in vertex order; a hit that
/// turns out to be an automorphism is converted via the fixed-point descent.
fn non_injective_endomorphism(t: &TreeDigraph) -> Option<Vec<usize>> {
    let n = t.vertex_count();
    for v in 0..n {
        let mut init = DomainLists::full(n, n);
        init.remove(v, v);
        if let SearchResult::Found(h) = find_homomorphism(t, t, init, SearchOpts::default()) {
            if !h.is_injective() {
                return Some(h.into_vec());
            }
            let auto_map = h.into_vec();
            // an automorphism of a tree fixes its center, or both endpoints
            // of its bicenter (the edge orientation cannot flip)
            let fixed = match crate::digraph::center_or_bicenter(t) {
                crate::digraph::Middle::Center(c) => c,
                crate::digraph::Middle::Bicenter((a, _)) => a,
            };
            debug_assert_eq!(auto_map[fixed], fixed);
            return Some(non_injective_from_automorphism(t, &auto_map, fixed));
        }
    }
    None
}

/// The core of a tree: repeatedly replaces the tree by the subtree induced on
/// the image of a non-injective endomorphism until the core test holds. The
/// result is relabeled into canonical order, so isomorphic inputs produce
/// identical outputs.
pub fn core_of(t: &TreeDigraph) -> TreeDigraph {
    let mut current = t.clone();
    loop {
        if is_core_tree(&current) {
            return canonical_form(&current).0;
        }
        let endo = non_injective_endomorphism(&current).expect("non-core tree has one");
        let mut in_image = vec![false; current.vertex_count()];
        for &w in &endo {
            in_image[w] = true;
        }
        let mut relabel = vec![usize::MAX; current.vertex_count()];
        let mut size = 0;
        for v in 0..current.vertex_count() {
            if in_image[v] {
                relabel[v] = size;
                size += 1;
            }
        }
        debug_assert!(size < current.vertex_count());
        let edges: Vec<(usize, usize)> = current
            .edges()
            .iter()
            .filter(|&&(u, v)| in_image[u] && in_image[v])
            .map(|&(u, v)| (relabel[u], relabel[v]))
            .collect();
        current = TreeDigraph::new(Digraph::new(size, edges).unwrap())
            .expect("induced image of a tree endomorphism is a tree");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::canonical_encoding;

    fn tree(edges: &[(usize, usize)]) -> TreeDigraph {
        TreeDigraph::from_edges(edges.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge_is_core() {
        assert!(is_core_tree(&tree(&[(0, 1)])));
    }

    #[test]
    fn exactly_one_three_vertex_orientation_is_core() {
        assert!(is_core_tree(&tree(&[(0, 1), (1, 2)])));
        assert!(!is_core_tree(&tree(&[(1, 0), (1, 2)])));
        assert!(!is_core_tree(&tree(&[(0, 1), (2, 1)])));
    }

    #[test]
    fn rooted_core_examples() {
        let single = TreeDigraph::single_vertex();
        assert!(is_rooted_core(&RootedTree::new(single, 0)));

        let path = tree(&[(0, 1), (1, 2)]);
        assert!(is_rooted_core_at(&path, 1));

        // leaves of the out-star collapse while the root stays fixed
        let out_star = tree(&[(1, 0), (1, 2)]);
        assert!(!is_rooted_core_at(&out_star, 1));
    }

    #[test]
    fn core_of_fixpoint_on_cores() {
        let path = tree(&[(0, 1), (1, 2)]);
        let c = core_of(&path);
        assert_eq!(canonical_encoding(&c), canonical_encoding(&path));
    }

    #[test]
    fn core_of_out_star_is_single_edge() {
        let out_star = tree(&[(1, 0), (1, 2)]);
        let c = core_of(&out_star);
        assert_eq!(canonical_encoding(&c), canonical_encoding(&tree(&[(0, 1)])));
    }

    #[test]
    fn core_of_zigzag_is_single_edge() {
        let zigzag = tree(&[(0, 1), (2, 1), (2, 3)]);
        let c = core_of(&zigzag);
        assert_eq!(canonical_encoding(&c), canonical_encoding(&tree(&[(0, 1)])));
    }

    #[test]
    fn endomorphisms_of_small_trees() {
        let single = TreeDigraph::single_vertex();
        assert_eq!(endomorphisms_bruteforce(&single, 9).unwrap().len(), 1);

        let edge = tree(&[(0, 1)]);
        let endos = endomorphisms_bruteforce(&edge, 9).unwrap();
        assert_eq!(endos.len(), 1);
        assert!(endos[0].is_identity());

        // 0<-1->2: identity, leaf swap, two leaf collapses
        let out_star = tree(&[(1, 0), (1, 2)]);
        let endos = endomorphisms_bruteforce(&out_star, 9).unwrap();
        assert_eq!(endos.len(), 4);
        assert!(endos.iter().any(|h| h.is_identity()));
        assert!(endos.iter().any(|h| !h.is_injective()));
    }

    #[test]
    fn endomorphism_bound_enforced() {
        let path = tree(&[(0, 1), (1, 2)]);
        assert!(endomorphisms_bruteforce(&path, 2).is_err());
    }

    #[test]
    fn core_is_core_under_reversal() {
        let t = tree(&[(0, 1), (1, 2), (3, 1)]);
        assert_eq!(is_core_tree(&t), is_core_tree(&t.reverse()));
    }
}
