//! Exactly-once enumeration of unlabeled core trees.
//!
//! Rooted cores are cataloged per (size, depth) and assembled bottom-up: a
//! rooted tree is a root joined to a non-increasing sequence of smaller
//! rooted trees (by a total order extending depth), each with an edge
//! orientation bit. Unrooted trees split by their Jordan middle: a bicentered
//! tree is an ordered pair of equal-depth rooted trees joined root-to-root,
//! and a centered tree is a root over a sequence whose two deepest children
//! tie. Only rooted cores enter the catalog (children of a rooted core are
//! rooted cores), and every assembled candidate still passes the final core
//! test, so each core tree is emitted exactly once with no isomorphism
//! checks.
//!
//! Triads are enumerated separately from triples of distinct directed-path
//! words hanging off the degree-3 vertex.

use crate::cores::{is_core_tree, is_rooted_core_at};
use crate::digraph::{parse_canonical, Digraph, RootedTree, TreeDigraph};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::cmp::Ordering;
use core::fmt;

/// The total order on rooted trees driving sequence enumeration: by depth,
/// then by canonical encoding bytes. Any total order linearly extending
/// depth works; this one makes catalog output stable.
pub fn rooted_tree_order(a: &RootedTree, b: &RootedTree) -> Ordering {
    (a.depth(), a.canon().as_bytes()).cmp(&(b.depth(), b.canon().as_bytes()))
}

/// A catalog entry staged for sequence enumeration: canonical rooted
/// encoding, size/depth key, one orientation bit, and a lazily parsed tree.
/// Catalogs themselves store only encodings; edges for the multi-million
/// entry catalogs of large sizes would dominate memory.
struct Candidate {
    canon: Arc<str>,
    size: usize,
    depth: usize,
    /// s=1: edge child-root -> root; s=0: root -> child-root.
    incoming: bool,
    parsed: OnceCell<TreeDigraph>,
}

impl Candidate {
    fn tree(&self) -> &TreeDigraph {
        self.parsed.get_or_init(|| {
            let (tree, root) = parse_canonical(&self.canon).expect("catalog encodings parse");
            debug_assert_eq!(root, Some(0));
            tree
        })
    }
}

/// One child picked during sequence enumeration.
struct PickedChild<'a> {
    candidate: &'a Candidate,
}

/// Candidates in descending total order (depth, encoding; bit 0 before 1),
/// with per-size index lists so enumeration can jump straight to candidates
/// that still fit the remaining size budget.
struct Pool {
    candidates: Vec<Candidate>,
    by_size: Vec<Vec<u32>>,
}

impl Pool {
    fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }
}

/// Rooted-core catalogs per (size, depth), built incrementally.
#[derive(Default)]
pub struct Generator {
    catalogs: BTreeMap<(usize, usize), Vec<Arc<str>>>,
    built_through: usize,
}

impl Generator {
    pub fn new() -> Generator {
        Generator::default()
    }

    /// Canonical encodings of all rooted cores with `n` vertices and depth
    /// exactly `d`, sorted.
    pub fn rooted_core_encodings(&mut self, n: usize, d: usize) -> &[Arc<str>] {
        self.ensure_built(n);
        self.catalogs
            .get(&(n, d))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Number of rooted cores with `n` vertices over all depths.
    pub fn rooted_core_count(&mut self, n: usize) -> usize {
        self.ensure_built(n);
        self.catalogs
            .range((n, 0)..(n + 1, 0))
            .map(|(_, v)| v.len())
            .sum()
    }

    fn ensure_built(&mut self, n: usize) {
        while self.built_through < n {
            let next = self.built_through + 1;
            self.build_size(next);
            self.built_through = next;
        }
    }

    /// Builds every (n, d) catalog in one sweep over child sequences.
    fn build_size(&mut self, n: usize) {
        if n == 1 {
            self.catalogs.insert((1, 0), vec![Arc::from("[]")]);
            return;
        }
        let pool = self.candidate_pool(n - 1);
        let mut buckets: BTreeMap<usize, Vec<Arc<str>>> = BTreeMap::new();
        enumerate_sequences(&pool, n - 1, 1, false, &mut |children| {
            let tree = assemble_at_root(children);
            if is_rooted_core_at(&tree, 0) {
                let depth = 1 + children[0].candidate.depth;
                buckets
                    .entry(depth)
                    .or_default()
                    .push(compose_rooted_canon(children));
            }
        });
        for (depth, mut canons) in buckets {
            canons.sort_unstable();
            self.catalogs.insert((n, depth), canons);
        }
    }

    /// Stages all catalog entries of size <= budget, both orientation bits.
    fn candidate_pool(&self, budget: usize) -> Pool {
        let mut candidates = Vec::new();
        for (&(size, depth), canons) in &self.catalogs {
            if size > budget {
                continue;
            }
            for canon in canons {
                for incoming in [false, true] {
                    candidates.push(Candidate {
                        canon: canon.clone(),
                        size,
                        depth,
                        incoming,
                        parsed: OnceCell::new(),
                    });
                }
            }
        }
        candidates.sort_unstable_by(|a, b| {
            (b.depth, b.canon.as_bytes(), a.incoming).cmp(&(
                a.depth,
                a.canon.as_bytes(),
                b.incoming,
            ))
        });
        let mut by_size = vec![Vec::new(); budget + 1];
        for (idx, c) in candidates.iter().enumerate() {
            by_size[c.size].push(idx as u32);
        }
        Pool {
            candidates,
            by_size,
        }
    }

    /// Streams every unlabeled core tree with `n` vertices exactly once, in a
    /// deterministic order, as `(tree, canonical encoding)`.
    pub fn core_trees(&mut self, n: usize, sink: &mut dyn FnMut(TreeDigraph, &str)) {
        assert!(n >= 1);
        if n == 1 {
            sink(TreeDigraph::single_vertex(), "C[]");
            return;
        }
        self.ensure_built(n - 1);

        // bicenter: ordered pairs of equal-depth rooted cores joined by an
        // edge from the first root to the second
        let keys: Vec<(usize, usize)> = self
            .catalogs
            .range((1, 0)..(n, 0))
            .map(|(&k, _)| k)
            .filter(|&(s1, d)| {
                let s2 = n - s1;
                s2 >= 1 && s2 < n && self.catalogs.contains_key(&(s2, d))
            })
            .collect();
        for (s1, d) in keys {
            let s2 = n - s1;
            let lefts = &self.catalogs[&(s1, d)];
            let rights = &self.catalogs[&(s2, d)];
            let parsed_rights: Vec<TreeDigraph> = rights
                .iter()
                .map(|r| parse_canonical(r).expect("catalog encodings parse").0)
                .collect();
            for left in lefts {
                let (lt, _) = parse_canonical(left).expect("catalog encodings parse");
                for (right, rt) in rights.iter().zip(&parsed_rights) {
                    let tree = join_bicenter(&lt, rt);
                    if is_core_tree(&tree) {
                        let mut canon = String::with_capacity(2 + left.len() + right.len());
                        canon.push('B');
                        canon.push_str(left);
                        canon.push('|');
                        canon.push_str(right);
                        sink(tree, &canon);
                    }
                }
            }
        }

        // center: a fresh root over >= 2 children whose two deepest tie
        let pool = self.candidate_pool(n - 1);
        enumerate_sequences(&pool, n - 1, 2, true, &mut |children| {
            let tree = assemble_at_root(children);
            if is_core_tree(&tree) {
                let mut canon = String::from("C");
                canon.push_str(&compose_rooted_canon(children));
                sink(tree, &canon);
            }
        });
    }
}

/// Enumerates non-increasing child sequences (with orientation bits ordered
/// within runs of equal trees) whose sizes sum to `total`, visiting at each
/// step only the candidates that fit the remaining budget.
///
/// `second_matches_first` forces the second child's depth to equal the
/// first's (the center constraint).
fn enumerate_sequences(
    pool: &Pool,
    total: usize,
    min_children: usize,
    second_matches_first: bool,
    emit: &mut dyn FnMut(&[PickedChild<'_>]),
) {
    let mut picked: Vec<PickedChild<'_>> = Vec::new();
    recurse(
        pool,
        0,
        total,
        min_children,
        second_matches_first,
        &mut picked,
        emit,
    );

    fn recurse<'a>(
        pool: &'a Pool,
        start: usize,
        remaining: usize,
        min_children: usize,
        second_matches_first: bool,
        picked: &mut Vec<PickedChild<'a>>,
        emit: &mut dyn FnMut(&[PickedChild<'a>]),
    ) {
        if remaining == 0 {
            if picked.len() >= min_children {
                emit(picked);
            }
            return;
        }
        // merge the per-size index lists, ascending candidate index
        let cap = remaining.min(pool.max_size());
        let mut ptr = [0usize; 64];
        debug_assert!(cap < 64);
        for size in 1..=cap {
            ptr[size] = pool.by_size[size].partition_point(|&i| (i as usize) < start);
        }
        let depth_needed = if picked.len() == 1 && second_matches_first {
            Some(picked[0].candidate.depth)
        } else {
            None
        };
        loop {
            let mut best = usize::MAX;
            let mut best_size = 0;
            for size in 1..=cap {
                if let Some(&idx) = pool.by_size[size].get(ptr[size]) {
                    if (idx as usize) < best {
                        best = idx as usize;
                        best_size = size;
                    }
                }
            }
            if best == usize::MAX {
                return;
            }
            ptr[best_size] += 1;
            let candidate = &pool.candidates[best];
            if let Some(d) = depth_needed {
                if candidate.depth != d {
                    // candidates are depth-descending: past d, nothing matches
                    if candidate.depth < d {
                        return;
                    }
                    continue;
                }
            }
            picked.push(PickedChild { candidate });
            recurse(
                pool,
                best,
                remaining - candidate.size,
                min_children,
                second_matches_first,
                picked,
                emit,
            );
            picked.pop();
        }
    }
}

/// Joins children under a fresh root (vertex 0), blocks in sequence order.
fn assemble_at_root(children: &[PickedChild<'_>]) -> TreeDigraph {
    let n = 1 + children.iter().map(|c| c.candidate.size).sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut offset = 1;
    for child in children {
        let tree = child.candidate.tree();
        if child.candidate.incoming {
            edges.push((offset, 0));
        } else {
            edges.push((0, offset));
        }
        for &(u, v) in tree.edges() {
            edges.push((u + offset, v + offset));
        }
        offset += tree.vertex_count();
    }
    TreeDigraph::new_unchecked(Digraph::new(n, edges).unwrap())
}

/// Disjoint union with the edge root1 -> root2 (roots are vertex 0 of each).
fn join_bicenter(t1: &TreeDigraph, t2: &TreeDigraph) -> TreeDigraph {
    let off = t1.vertex_count();
    let n = off + t2.vertex_count();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n - 1);
    edges.extend_from_slice(t1.edges());
    edges.push((0, off));
    edges.extend(t2.edges().iter().map(|&(u, v)| (u + off, v + off)));
    TreeDigraph::new_unchecked(Digraph::new(n, edges).unwrap())
}

/// The rooted canonical encoding of a root over these children, composed
/// directly from the children's encodings.
fn compose_rooted_canon(children: &[PickedChild<'_>]) -> Arc<str> {
    let mut tokens: Vec<String> = children
        .iter()
        .map(|c| {
            let mut tok = String::with_capacity(c.candidate.canon.len() + 1);
            tok.push(if c.candidate.incoming { '-' } else { '+' });
            tok.push_str(&c.candidate.canon);
            tok
        })
        .collect();
    tokens.sort_unstable();
    let mut out = String::with_capacity(2 + tokens.iter().map(String::len).sum::<usize>());
    out.push('[');
    for tok in tokens {
        out.push_str(&tok);
    }
    out.push(']');
    Arc::from(out)
}

/// Mismatched arguments to an assembly operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssembleError {
    LengthMismatch { children: usize, bits: usize },
    DepthMismatch { left: usize, right: usize },
    TooFewChildren,
}

impl fmt::Display for AssembleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AssembleError::LengthMismatch { children, bits } => {
                write!(f, "{children} children but {bits} orientation bits")
            }
            AssembleError::DepthMismatch { left, right } => {
                write!(f, "halves have depths {left} and {right}")
            }
            AssembleError::TooFewChildren => write!(f, "center assembly needs >= 2 children"),
        }
    }
}

/// Joins rooted trees under a fresh root; `s[i] = true` orients the i-th root
/// edge child-to-root. Vertex ids are relabeled contiguously (root first,
/// then child blocks).
pub fn assemble_center(children: &[RootedTree], s: &[bool]) -> Result<TreeDigraph, AssembleError> {
    if children.len() != s.len() {
        return Err(AssembleError::LengthMismatch {
            children: children.len(),
            bits: s.len(),
        });
    }
    if children.len() < 2 {
        return Err(AssembleError::TooFewChildren);
    }
    let n = 1 + children
        .iter()
        .map(|c| c.tree().vertex_count())
        .sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut offset = 1;
    for (child, &incoming) in children.iter().zip(s) {
        let root = child.root() + offset;
        if incoming {
            edges.push((root, 0));
        } else {
            edges.push((0, root));
        }
        for &(u, v) in child.tree().edges() {
            edges.push((u + offset, v + offset));
        }
        offset += child.tree().vertex_count();
    }
    Ok(TreeDigraph::new(Digraph::new(n, edges).unwrap()).expect("center assembly is a tree"))
}

/// Disjoint union of two equal-depth rooted trees plus the edge
/// root1 -> root2.
pub fn assemble_bicenter(t1: &RootedTree, t2: &RootedTree) -> Result<TreeDigraph, AssembleError> {
    if t1.depth() != t2.depth() {
        return Err(AssembleError::DepthMismatch {
            left: t1.depth(),
            right: t2.depth(),
        });
    }
    let off = t1.tree().vertex_count();
    let n = off + t2.tree().vertex_count();
    let mut edges: Vec<(usize, usize)> = t1.tree().edges().to_vec();
    edges.push((t1.root(), t2.root() + off));
    edges.extend(t2.tree().edges().iter().map(|&(u, v)| (u + off, v + off)));
    Ok(TreeDigraph::new(Digraph::new(n, edges).unwrap()).expect("joined halves form a tree"))
}

/// All rooted cores with `n` vertices and depth exactly `d`, in catalog
/// order.
pub fn generate_rooted_cores(n: usize, d: usize) -> Vec<RootedTree> {
    let mut generator = Generator::new();
    generator
        .rooted_core_encodings(n, d)
        .iter()
        .map(|canon| {
            let (tree, root) = parse_canonical(canon).expect("catalog encodings parse");
            RootedTree::new(tree, root.unwrap())
        })
        .collect()
}

/// All unlabeled core trees with `n` vertices, with canonical encodings.
pub fn generate_core_trees(n: usize) -> Vec<(TreeDigraph, String)> {
    let mut generator = Generator::new();
    let mut out = Vec::new();
    generator.core_trees(n, &mut |tree, canon| out.push((tree, String::from(canon))));
    out
}

// ---------------------------------------------------------------------------
// triads

/// Builds the triad with three directed-path legs hanging off vertex 0; each
/// word is read outward from the shared vertex, `true` meaning the edge
/// points away from it.
fn assemble_triad(legs: [&[bool]; 3]) -> TreeDigraph {
    let n = 1 + legs.iter().map(|l| l.len()).sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for leg in legs {
        let mut prev = 0;
        for &away in leg.iter() {
            if away {
                edges.push((prev, next));
            } else {
                edges.push((next, prev));
            }
            prev = next;
            next += 1;
        }
    }
    TreeDigraph::new_unchecked(Digraph::new(n, edges).unwrap())
}

/// The directed path spelled by `word`, rooted at its first vertex.
fn word_path(word: &[bool]) -> TreeDigraph {
    if word.is_empty() {
        return TreeDigraph::single_vertex();
    }
    let mut edges = Vec::with_capacity(word.len());
    for (i, &away) in word.iter().enumerate() {
        if away {
            edges.push((i, i + 1));
        } else {
            edges.push((i + 1, i));
        }
    }
    TreeDigraph::new_unchecked(Digraph::new(word.len() + 1, edges).unwrap())
}

/// Streams every unlabeled core triad with `n` vertices exactly once.
///
/// Legs are enumerated as words over {away, toward}; a core has no repeated
/// leg (swapping equal legs is a non-identity endomorphism), so multisets
/// reduce to strictly decreasing triples. Legs whose tail path is not a
/// rooted core cannot occur in a core triad and are pruned before assembly.
pub fn generate_core_triads(n: usize, sink: &mut dyn FnMut(TreeDigraph, &str)) {
    assert!(n >= 4, "a triad needs at least 4 vertices");
    let total = n - 1;
    let max_len = total - 2;
    // legs[len] = admissible words of that length, descending order
    let mut legs: Vec<Vec<Vec<bool>>> = vec![Vec::new(); max_len + 1];
    for len in 1..=max_len {
        let mut word = vec![false; len];
        loop {
            if is_rooted_core_at(&word_path(&word[1..]), 0) {
                legs[len].push(word.clone());
            }
            // binary increment, least-significant last
            let mut i = len;
            let mut carried = true;
            while i > 0 {
                i -= 1;
                if !word[i] {
                    word[i] = true;
                    carried = false;
                    break;
                }
                word[i] = false;
            }
            if carried {
                break;
            }
        }
        legs[len].sort_unstable_by(|a, b| b.cmp(a));
    }

    for l1 in (1..=max_len).rev() {
        for l2 in (1..=l1).rev() {
            let l3 = match total.checked_sub(l1 + l2) {
                Some(l3) if l3 >= 1 && l3 <= l2 => l3,
                _ => continue,
            };
            for w1 in &legs[l1] {
                for w2 in &legs[l2] {
                    if l1 == l2 && w2 >= w1 {
                        continue;
                    }
                    for w3 in &legs[l3] {
                        if l2 == l3 && w3 >= w2 {
                            continue;
                        }
                        let tree = assemble_triad([w1, w2, w3]);
                        if is_core_tree(&tree) {
                            let canon = crate::digraph::canonical_encoding(&tree);
                            sink(tree, &canon);
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{canonical_encoding, is_triad};
    use std::collections::HashSet;
    use std::string::ToString;

    #[test]
    fn rooted_core_counts_small() {
        let mut generator = Generator::new();
        for (n, expect) in [(1, 1), (2, 2), (3, 3), (4, 6), (5, 11), (6, 28), (7, 63)] {
            assert_eq!(generator.rooted_core_count(n), expect, "n={n}");
        }
    }

    #[test]
    fn core_tree_counts_small() {
        let mut generator = Generator::new();
        for (n, expect) in [
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 1),
            (5, 1),
            (6, 2),
            (7, 3),
            (8, 7),
            (9, 15),
        ] {
            let mut count = 0;
            generator.core_trees(n, &mut |_, _| count += 1);
            assert_eq!(count, expect, "n={n}");
        }
    }

    #[test]
    fn stream_is_duplicate_free_and_core() {
        let mut generator = Generator::new();
        for n in 1..=9 {
            let mut seen = HashSet::new();
            generator.core_trees(n, &mut |tree, canon| {
                assert!(is_core_tree(&tree));
                assert_eq!(canonical_encoding(&tree), canon);
                assert_eq!(tree.vertex_count(), n);
                assert!(seen.insert(canon.to_string()), "duplicate {canon}");
            });
        }
    }

    #[test]
    fn stream_is_closed_under_reversal() {
        let mut generator = Generator::new();
        for n in 1..=9 {
            let mut seen = HashSet::new();
            let mut reversed = Vec::new();
            generator.core_trees(n, &mut |tree, canon| {
                seen.insert(canon.to_string());
                reversed.push(canonical_encoding(&tree.reverse()));
            });
            for r in reversed {
                assert!(seen.contains(&r), "reverse missing for n={n}");
            }
        }
    }

    #[test]
    fn catalog_members_are_rooted_cores() {
        let mut generator = Generator::new();
        for n in 1..=7 {
            for d in 0..n {
                for canon in generator.rooted_core_encodings(n, d).to_vec() {
                    let (tree, root) = parse_canonical(&canon).unwrap();
                    assert!(is_rooted_core_at(&tree, root.unwrap()));
                    let rt = RootedTree::new(tree, root.unwrap());
                    assert_eq!(rt.depth(), d);
                    assert_eq!(rt.canon(), &*canon);
                }
            }
        }
    }

    #[test]
    fn assemble_center_examples() {
        let single = || RootedTree::new(TreeDigraph::single_vertex(), 0);
        let out = assemble_center(&[single(), single()], &[false, false]).unwrap();
        assert_eq!(
            canonical_encoding(&out),
            canonical_encoding(&TreeDigraph::from_edges([(0, 1), (0, 2)]).unwrap())
        );
        let path = assemble_center(&[single(), single()], &[false, true]).unwrap();
        assert_eq!(
            canonical_encoding(&path),
            canonical_encoding(&TreeDigraph::from_edges([(0, 1), (2, 0)]).unwrap())
        );
        // the raw assembler still accepts the mirror of (0,1)
        let mirror = assemble_center(&[single(), single()], &[true, false]).unwrap();
        assert_eq!(canonical_encoding(&mirror), canonical_encoding(&path));
        assert!(assemble_center(&[single()], &[false]).is_err());
        assert!(assemble_center(&[single(), single()], &[false]).is_err());
    }

    #[test]
    fn assemble_bicenter_examples() {
        let single = || RootedTree::new(TreeDigraph::single_vertex(), 0);
        let edge = assemble_bicenter(&single(), &single()).unwrap();
        assert_eq!(canonical_encoding(&edge), "B[]|[]");

        let tail = || RootedTree::new(TreeDigraph::from_edges([(0, 1)]).unwrap(), 0);
        let four = assemble_bicenter(&tail(), &tail()).unwrap();
        assert_eq!(four.vertex_count(), 4);
        assert_eq!(canonical_encoding(&four), "B[+[]]|[+[]]");

        let deep = RootedTree::new(TreeDigraph::from_edges([(0, 1)]).unwrap(), 0);
        let shallow = single();
        assert!(assemble_bicenter(&deep, &shallow).is_err());
    }

    #[test]
    fn four_vertex_triads() {
        let mut out = Vec::new();
        generate_core_triads(4, &mut |t, canon| out.push((t, canon.to_string())));
        for (t, _) in &out {
            assert!(is_triad(t));
            assert!(is_core_tree(t));
        }
        // cross-check against the full generator filtered to triads
        let mut generator = Generator::new();
        let mut expected = HashSet::new();
        generator.core_trees(4, &mut |tree, canon| {
            if is_triad(&tree) {
                expected.insert(canon.to_string());
            }
        });
        let got: HashSet<String> = out.iter().map(|(_, c)| c.clone()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn triads_match_filtered_generator_up_to_ten() {
        let mut generator = Generator::new();
        for n in 4..=10 {
            let mut expected = HashSet::new();
            generator.core_trees(n, &mut |tree, canon| {
                if is_triad(&tree) {
                    expected.insert(canon.to_string());
                }
            });
            let mut got = HashSet::new();
            generate_core_triads(n, &mut |tree, canon| {
                assert!(is_triad(&tree));
                assert!(got.insert(canon.to_string()), "duplicate triad {canon}");
            });
            assert_eq!(got, expected, "n={n}");
        }
    }

    #[test]
    fn total_order_extends_depth() {
        let deep = RootedTree::new(TreeDigraph::from_edges([(0, 1), (1, 2)]).unwrap(), 0);
        let shallow = RootedTree::new(TreeDigraph::from_edges([(0, 1), (0, 2)]).unwrap(), 0);
        assert_eq!(rooted_tree_order(&deep, &shallow), core::cmp::Ordering::Greater);
        assert_eq!(rooted_tree_order(&shallow, &deep), core::cmp::Ordering::Less);
        assert_eq!(rooted_tree_order(&deep, &deep), core::cmp::Ordering::Equal);
        // antisymmetric on encodings: equal order implies equal encoding
        let other = RootedTree::new(TreeDigraph::from_edges([(1, 0), (0, 2)]).unwrap(), 0);
        assert_ne!(rooted_tree_order(&shallow, &other), core::cmp::Ordering::Equal);
    }

    #[test]
    fn rooted_cores_of_depth_zero() {
        assert_eq!(generate_rooted_cores(1, 0).len(), 1);
        assert_eq!(generate_rooted_cores(2, 0).len(), 0);
        assert_eq!(generate_rooted_cores(2, 1).len(), 2);
    }
}
