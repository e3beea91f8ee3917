//! Exhaustive-search reference implementations backing the treecsp test
//! suites.
//!
//! Everything here trades efficiency for obviousness and stays independent of
//! the implementation paths it cross-checks: homomorphisms are enumerated as
//! raw vertex maps, polymorphism conditions by enumerating whole operation
//! tables, tree isomorphism by root-minimized AHU codes rather than the
//! center-anchored encoding of the main crate.

use treecsp_core::conditions::{LinearCondition, Term};
use treecsp_core::digraph::{Digraph, TreeDigraph};

/// SplitMix64: small deterministic RNG for randomized test instances.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}

/// A random digraph on `n` vertices with roughly `edge_percent`% of all
/// ordered pairs present (no loops).
pub fn random_digraph(rng: &mut Rng, n: usize, edge_percent: usize) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.below(100) < edge_percent {
                edges.push((u, v));
            }
        }
    }
    Digraph::new(n, edges).unwrap()
}

/// A random oriented tree: each vertex i >= 1 attaches to a random earlier
/// vertex with a random edge orientation.
pub fn random_tree(rng: &mut Rng, n: usize) -> TreeDigraph {
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.below(i);
        if rng.below(2) == 0 {
            edges.push((j, i));
        } else {
            edges.push((i, j));
        }
    }
    TreeDigraph::new(Digraph::new(n, edges).unwrap()).unwrap()
}

// ---------------------------------------------------------------------------
// homomorphism enumeration

/// Visits every homomorphism `g -> h` whose image respects `lists` (when
/// given), as a plain vertex map. Stops early when the visitor returns false.
/// Assignment follows a BFS forest of `g` so each step is pruned against
/// already-assigned neighbors.
pub fn for_each_homomorphism(
    g: &Digraph,
    h: &Digraph,
    lists: Option<&[Vec<usize>]>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let n = g.vertex_count();
    if n == 0 {
        visit(&[]);
        return;
    }
    // BFS forest order
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        order.push(start);
        let mut head = order.len() - 1;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.out_neighbors(v).iter().chain(g.in_neighbors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }

    let allowed = |x: usize, u: usize| lists.map_or(true, |l| l[x].contains(&u));
    let mut image = vec![usize::MAX; n];
    let mut stop = false;
    extend(g, h, &order, 0, &mut image, &allowed, visit, &mut stop);

    #[allow(clippy::too_many_arguments)]
    fn extend(
        g: &Digraph,
        h: &Digraph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        allowed: &dyn Fn(usize, usize) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
        stop: &mut bool,
    ) {
        if *stop {
            return;
        }
        if depth == order.len() {
            if !visit(image) {
                *stop = true;
            }
            return;
        }
        let x = order[depth];
        'candidates: for u in 0..h.vertex_count() {
            if !allowed(x, u) {
                continue;
            }
            for &y in g.out_neighbors(x) {
                if image[y] != usize::MAX && !h.has_edge(u, image[y]) {
                    continue 'candidates;
                }
            }
            for &y in g.in_neighbors(x) {
                if image[y] != usize::MAX && !h.has_edge(image[y], u) {
                    continue 'candidates;
                }
            }
            image[x] = u;
            extend(g, h, order, depth + 1, image, allowed, visit, stop);
            image[x] = usize::MAX;
            if *stop {
                return;
            }
        }
    }
}

pub fn homomorphism_exists(g: &Digraph, h: &Digraph, lists: Option<&[Vec<usize>]>) -> bool {
    let mut found = false;
    for_each_homomorphism(g, h, lists, &mut |_| {
        found = true;
        false
    });
    found
}

pub fn all_homomorphisms(g: &Digraph, h: &Digraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_homomorphism(g, h, None, &mut |map| {
        out.push(map.to_vec());
        true
    });
    out
}

/// `supported[x][u]`: some homomorphism respecting `lists` maps x to u.
pub fn supported_pairs(g: &Digraph, h: &Digraph, lists: Option<&[Vec<usize>]>) -> Vec<Vec<bool>> {
    let mut supported = vec![vec![false; h.vertex_count()]; g.vertex_count()];
    for_each_homomorphism(g, h, lists, &mut |map| {
        for (x, &u) in map.iter().enumerate() {
            supported[x][u] = true;
        }
        true
    });
    supported
}

// ---------------------------------------------------------------------------
// tree isomorphism and enumeration

fn ahu_code(t: &TreeDigraph, v: usize, parent: Option<usize>) -> String {
    let mut parts: Vec<String> = Vec::new();
    for w in t.neighbors(v) {
        if Some(w) == parent {
            continue;
        }
        let dir = if t.has_edge(v, w) { 'd' } else { 'u' };
        parts.push(format!("{dir}{}", ahu_code(t, w, Some(v))));
    }
    parts.sort();
    format!("({})", parts.concat())
}

/// An isomorphism key: the minimum AHU code over all choices of root. Slower
/// but structurally unrelated to the main crate's center-anchored encoding.
pub fn tree_key(t: &TreeDigraph) -> String {
    (0..t.vertex_count())
        .map(|r| ahu_code(t, r, None))
        .min()
        .unwrap()
}

pub fn trees_isomorphic(a: &TreeDigraph, b: &TreeDigraph) -> bool {
    a.vertex_count() == b.vertex_count() && tree_key(a) == tree_key(b)
}

/// All unlabeled oriented trees with `n` vertices, one representative per
/// isomorphism class, grown by attaching leaves in both orientations.
pub fn all_oriented_trees(n: usize) -> Vec<TreeDigraph> {
    assert!(n >= 1);
    let mut current = vec![TreeDigraph::single_vertex()];
    for size in 2..=n {
        let mut next: Vec<TreeDigraph> = Vec::new();
        let mut keys = std::collections::HashSet::new();
        for tree in &current {
            for v in 0..tree.vertex_count() {
                for outgoing in [false, true] {
                    let mut edges = tree.edges().to_vec();
                    if outgoing {
                        edges.push((v, size - 1));
                    } else {
                        edges.push((size - 1, v));
                    }
                    let grown = TreeDigraph::new(Digraph::new(size, edges).unwrap()).unwrap();
                    if keys.insert(tree_key(&grown)) {
                        next.push(grown);
                    }
                }
            }
        }
        current = next;
    }
    current
}

// ---------------------------------------------------------------------------
// brute-force condition satisfaction

/// Calls `visit` with every function table `H^arity -> H` (row-major index),
/// optionally restricted to idempotent tables. Stops on false.
fn for_each_table(
    h_n: usize,
    arity: usize,
    idempotent: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let size = h_n.pow(arity as u32);
    let mut diag = vec![usize::MAX; size];
    if idempotent {
        for u in 0..h_n {
            let mut idx = 0;
            for _ in 0..arity {
                idx = idx * h_n + u;
            }
            diag[idx] = u;
        }
    }
    let mut table = vec![0usize; size];
    for (i, &d) in diag.iter().enumerate() {
        if d != usize::MAX {
            table[i] = d;
        }
    }
    let mut stop = false;
    fill(h_n, &diag, &mut table, 0, visit, &mut stop);

    fn fill(
        h_n: usize,
        diag: &[usize],
        table: &mut Vec<usize>,
        pos: usize,
        visit: &mut dyn FnMut(&[usize]) -> bool,
        stop: &mut bool,
    ) {
        if *stop {
            return;
        }
        if pos == table.len() {
            if !visit(table) {
                *stop = true;
            }
            return;
        }
        if diag[pos] != usize::MAX {
            fill(h_n, diag, table, pos + 1, visit, stop);
            return;
        }
        for v in 0..h_n {
            table[pos] = v;
            fill(h_n, diag, table, pos + 1, visit, stop);
            if *stop {
                return;
            }
        }
        table[pos] = 0;
    }
}

fn tuple_index(h_n: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * h_n + t)
}

fn table_is_polymorphism(h: &Digraph, arity: usize, table: &[usize]) -> bool {
    let edges = h.edges();
    if edges.is_empty() {
        return true;
    }
    let mut pick = vec![0usize; arity];
    loop {
        let mut u = 0;
        let mut v = 0;
        for &p in &pick {
            u = u * h.vertex_count() + edges[p].0;
            v = v * h.vertex_count() + edges[p].1;
        }
        if !h.has_edge(table[u], table[v]) {
            return false;
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < edges.len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

fn eval_term(
    h_n: usize,
    term: &Term,
    vars: &[usize],
    assignment: &[usize],
    tables: &[Vec<usize>],
) -> usize {
    match term {
        Term::Var(v) => assignment[vars.iter().position(|x| x == v).unwrap()],
        Term::App { symbol, args } => {
            let tuple: Vec<usize> = args
                .iter()
                .map(|a| assignment[vars.iter().position(|x| x == a).unwrap()])
                .collect();
            tables[*symbol][tuple_index(h_n, &tuple)]
        }
    }
}

fn identity_holds(h_n: usize, c: &LinearCondition, idx: usize, tables: &[Vec<usize>]) -> bool {
    let identity = &c.identities[idx];
    let vars = identity.variables();
    let mut assignment = vec![0usize; vars.len()];
    loop {
        if eval_term(h_n, &identity.lhs, &vars, &assignment, tables)
            != eval_term(h_n, &identity.rhs, &vars, &assignment, tables)
        {
            return false;
        }
        let mut i = vars.len();
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < h_n {
                break;
            }
            assignment[i] = 0;
        }
    }
}

fn term_symbol(t: &Term) -> Option<usize> {
    match t {
        Term::Var(_) => None,
        Term::App { symbol, .. } => Some(*symbol),
    }
}

/// Whether `h` has polymorphisms satisfying an explicit condition, by
/// enumerating operation tables symbol by symbol. Identities are checked as
/// soon as all their symbols are assigned, pruning the product space.
pub fn condition_satisfiable_bruteforce(
    h: &Digraph,
    c: &LinearCondition,
    idempotent: bool,
) -> bool {
    assert!(!c.is_totally_symmetric(), "use ts_satisfiable_bruteforce");
    let h_n = h.vertex_count();
    // an identity becomes checkable once its last symbol is assigned
    let mut due_at: Vec<Vec<usize>> = vec![Vec::new(); c.symbols.len() + 1];
    for (i, identity) in c.identities.iter().enumerate() {
        let last = [&identity.lhs, &identity.rhs]
            .iter()
            .filter_map(|t| term_symbol(t))
            .max()
            .expect("validated conditions apply a symbol");
        due_at[last + 1].push(i);
    }

    let mut tables: Vec<Vec<usize>> = Vec::new();
    search(h, c, h_n, idempotent, &due_at, &mut tables)
}

fn search(
    h: &Digraph,
    c: &LinearCondition,
    h_n: usize,
    idempotent: bool,
    due_at: &[Vec<usize>],
    tables: &mut Vec<Vec<usize>>,
) -> bool {
    let sym = tables.len();
    if sym == c.symbols.len() {
        return true;
    }
    let mut found = false;
    for_each_table(h_n, c.symbols[sym].arity, idempotent, &mut |table| {
        if !table_is_polymorphism(h, c.symbols[sym].arity, table) {
            return true;
        }
        tables.push(table.to_vec());
        let ok = due_at[sym + 1]
            .iter()
            .all(|&i| identity_holds(h_n, c, i, tables));
        if ok && search(h, c, h_n, idempotent, due_at, tables) {
            found = true;
        }
        tables.pop();
        !found
    });
    found
}

/// Whether `h` has a totally symmetric polymorphism of the given arity, by
/// enumerating whole tables and checking invariance under argument-set
/// equality.
pub fn ts_satisfiable_bruteforce(h: &Digraph, arity: usize, idempotent: bool) -> bool {
    let h_n = h.vertex_count();
    let mut found = false;
    for_each_table(h_n, arity, idempotent, &mut |table| {
        if table_is_polymorphism(h, arity, table) && table_is_totally_symmetric(h_n, arity, table) {
            found = true;
            return false;
        }
        true
    });
    found
}

fn table_is_totally_symmetric(h_n: usize, arity: usize, table: &[usize]) -> bool {
    // the value must agree with the canonical tuple of the argument set
    let mut tuple = vec![0usize; arity];
    loop {
        let mut set: Vec<usize> = tuple.clone();
        set.sort_unstable();
        set.dedup();
        let mut canonical = vec![set[set.len() - 1]; arity];
        canonical[..set.len()].copy_from_slice(&set);
        if table[tuple_index(h_n, &tuple)] != table[tuple_index(h_n, &canonical)] {
            return false;
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < h_n {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Known extremal witness trees, shared by the test suites.
pub mod fixtures {
    use treecsp_core::digraph::TreeDigraph;

    /// 19 vertices; has a majority but no binary symmetric polymorphism, so
    /// its CSP is not solved by arc consistency.
    pub fn tree_c() -> TreeDigraph {
        TreeDigraph::from_edges([
            (0, 1),
            (0, 9),
            (2, 1),
            (3, 2),
            (4, 3),
            (5, 0),
            (5, 6),
            (6, 7),
            (7, 8),
            (10, 9),
            (10, 12),
            (11, 10),
            (12, 13),
            (14, 0),
            (14, 15),
            (15, 16),
            (18, 17),
            (17, 15),
        ])
        .unwrap()
    }

    /// 16 vertices; the smallest tree without a majority polymorphism
    /// (unique up to edge reversal). Satisfies KK(5) and HMcK(2) but no
    /// level-wise Jónsson chain.
    pub fn tree_d() -> TreeDigraph {
        TreeDigraph::from_edges([
            (1, 2),
            (1, 0),
            (2, 3),
            (3, 4),
            (4, 5),
            (0, 6),
            (7, 6),
            (7, 8),
            (10, 7),
            (8, 9),
            (11, 0),
            (11, 13),
            (12, 11),
            (13, 14),
            (14, 15),
        ])
        .unwrap()
    }

    /// 12 vertices; one of the eight smallest trees failing every
    /// Hagemann-Mitschke length (it still has a majority).
    pub fn tree_b1() -> TreeDigraph {
        TreeDigraph::from_edges([
            (8, 7),
            (0, 7),
            (9, 8),
            (3, 0),
            (1, 0),
            (4, 5),
            (3, 4),
            (2, 1),
            (10, 11),
            (8, 10),
            (5, 6),
        ])
        .unwrap()
    }

    /// 20 vertices; one of the smallest trees without Kearnes-Markovič-
    /// McKenzie polymorphisms. Not a triad (two vertices of degree three).
    pub fn tree_a1() -> TreeDigraph {
        TreeDigraph::from_edges([
            (9, 8),
            (9, 10),
            (8, 7),
            (3, 4),
            (6, 5),
            (5, 3),
            (10, 11),
            (13, 0),
            (13, 15),
            (0, 7),
            (0, 1),
            (16, 15),
            (16, 17),
            (17, 18),
            (11, 12),
            (18, 19),
            (2, 3),
            (2, 1),
            (14, 13),
        ])
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use treecsp_core::conditions;

    #[test]
    fn tree_counts_match_known_sequence() {
        // unlabeled oriented trees: 1, 1, 3, 8, 27, 91
        for (n, expect) in [(1, 1), (2, 1), (3, 3), (4, 8), (5, 27), (6, 91)] {
            assert_eq!(all_oriented_trees(n).len(), expect, "n={n}");
        }
    }

    #[test]
    fn homomorphism_enumeration_on_edge() {
        let e = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(all_homomorphisms(&e, &e).len(), 1);
        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!homomorphism_exists(&path, &e, None));
    }

    #[test]
    fn single_edge_conditions() {
        let e = Digraph::new(2, [(0, 1)]).unwrap();
        assert!(condition_satisfiable_bruteforce(
            &e,
            &conditions::kmm(),
            false
        ));
        assert!(condition_satisfiable_bruteforce(
            &e,
            &conditions::majority(),
            false
        ));
        assert!(condition_satisfiable_bruteforce(
            &e,
            &conditions::hm(1).unwrap(),
            false
        ));
        assert!(ts_satisfiable_bruteforce(&e, 2, false));
    }

    #[test]
    fn k3_has_no_binary_symmetric_polymorphism() {
        // ternary tables on 3 vertices are out of brute-force reach; the
        // binary conditions stay inside the feasible grid
        let k3 = Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap();
        assert!(!condition_satisfiable_bruteforce(
            &k3,
            &conditions::wnu(2).unwrap(),
            false
        ));
        assert!(ts_satisfiable_bruteforce(&k3, 2, false) == false);
    }

    #[test]
    fn isomorphism_key_ignores_labels() {
        let a = TreeDigraph::new(Digraph::new(3, [(0, 1), (2, 1)]).unwrap()).unwrap();
        let b = TreeDigraph::new(Digraph::new(3, [(2, 0), (1, 0)]).unwrap()).unwrap();
        assert!(trees_isomorphic(&a, &b));
        let c = TreeDigraph::new(Digraph::new(3, [(0, 1), (1, 2)]).unwrap()).unwrap();
        assert!(!trees_isomorphic(&a, &c));
    }
}
