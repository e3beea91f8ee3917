//! Finite digraphs and orientations of trees.
//!
//! Vertices are `0..vertex_count`. Edges are ordered pairs; loops are allowed
//! on general digraphs and forbidden on trees. The insertion order of edges is
//! preserved (tests exploit this to randomize arc-processing order), while all
//! derived structure (adjacency, encodings) is order-independent.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Error building a [`Digraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphError {
    /// An edge endpoint is `>= vertex_count`.
    VertexOutOfRange {
        edge: (usize, usize),
        vertex_count: usize,
    },
    /// The same ordered pair occurs twice.
    DuplicateEdge((usize, usize)),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::VertexOutOfRange { edge, vertex_count } => write!(
                f,
                "edge ({}, {}) references a vertex >= {}",
                edge.0, edge.1, vertex_count
            ),
            GraphError::DuplicateEdge((u, v)) => write!(f, "duplicate edge ({u}, {v})"),
        }
    }
}

/// A finite directed graph with vertex set `0..vertex_count`.
#[derive(Clone, Debug)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    out_index: Vec<usize>,
    out_list: Vec<usize>,
    in_index: Vec<usize>,
    in_list: Vec<usize>,
}

impl Digraph {
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph, GraphError> {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &e in &edges {
            if e.0 >= vertex_count || e.1 >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    edge: e,
                    vertex_count,
                });
            }
        }
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::DuplicateEdge(w[0]));
            }
        }
        Ok(Digraph::build(vertex_count, edges))
    }

    /// Builds a digraph with `vertex_count = max endpoint + 1`.
    pub fn from_edges(
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Digraph, GraphError> {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Digraph::new(n, edges)
    }

    fn build(vertex_count: usize, edges: Vec<(usize, usize)>) -> Digraph {
        let mut out_deg = vec![0usize; vertex_count];
        let mut in_deg = vec![0usize; vertex_count];
        for &(u, v) in &edges {
            out_deg[u] += 1;
            in_deg[v] += 1;
        }
        let mut out_index = Vec::with_capacity(vertex_count + 1);
        let mut in_index = Vec::with_capacity(vertex_count + 1);
        let mut acc = 0;
        for v in 0..vertex_count {
            out_index.push(acc);
            acc += out_deg[v];
        }
        out_index.push(acc);
        acc = 0;
        for v in 0..vertex_count {
            in_index.push(acc);
            acc += in_deg[v];
        }
        in_index.push(acc);

        let mut out_list = vec![0usize; edges.len()];
        let mut in_list = vec![0usize; edges.len()];
        let mut out_pos = out_index[..vertex_count].to_vec();
        let mut in_pos = in_index[..vertex_count].to_vec();
        for &(u, v) in &edges {
            out_list[out_pos[u]] = v;
            out_pos[u] += 1;
            in_list[in_pos[v]] = u;
            in_pos[v] += 1;
        }
        for v in 0..vertex_count {
            out_list[out_index[v]..out_index[v + 1]].sort_unstable();
            in_list[in_index[v]..in_index[v + 1]].sort_unstable();
        }
        Digraph {
            vertex_count,
            edges,
            out_index,
            out_list,
            in_index,
            in_list,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Out-neighbors of `v`, sorted ascending.
    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out_list[self.out_index[v]..self.out_index[v + 1]]
    }

    /// In-neighbors of `v`, sorted ascending.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.in_list[self.in_index[v]..self.in_index[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out_neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected degree of `v` (loops count once).
    pub fn degree(&self, v: usize) -> usize {
        let loops = if self.has_edge(v, v) { 1 } else { 0 };
        self.out_neighbors(v).len() + self.in_neighbors(v).len() - loops
    }

    /// The digraph with every edge flipped. An involution.
    pub fn reverse(&self) -> Digraph {
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (v, u)).collect();
        Digraph::build(self.vertex_count, edges)
    }

    /// Whether the underlying undirected graph is connected (true for n <= 1).
    pub fn is_connected(&self) -> bool {
        if self.vertex_count <= 1 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.out_neighbors(v).iter().chain(self.in_neighbors(v)) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// The k-th categorical power: vertices are k-tuples over this digraph's
    /// vertices in row-major order (first coordinate most significant), and
    /// `(u, v)` is an edge iff every coordinate pair is an edge.
    pub fn categorical_power(
        &self,
        k: usize,
        max_vertices: usize,
    ) -> Result<Digraph, PowerTooLarge> {
        assert!(k >= 1, "power exponent must be >= 1");
        let n = self.vertex_count;
        let mut vertices = 1usize;
        for _ in 0..k {
            vertices = vertices
                .checked_mul(n)
                .filter(|&m| m <= max_vertices)
                .ok_or(PowerTooLarge {
                    base: n,
                    exponent: k,
                    limit: max_vertices,
                })?;
        }
        let mut edge_total = 1usize;
        for _ in 0..k {
            edge_total = edge_total
                .checked_mul(self.edges.len())
                .filter(|&m| m <= max_vertices)
                .ok_or(PowerTooLarge {
                    base: n,
                    exponent: k,
                    limit: max_vertices,
                })?;
        }

        let mut edges = Vec::with_capacity(edge_total);
        let mut pick = vec![0usize; k];
        if !self.edges.is_empty() {
            loop {
                let mut u = 0;
                let mut v = 0;
                for &e in pick.iter() {
                    let (a, b) = self.edges[e];
                    u = u * n + a;
                    v = v * n + b;
                }
                edges.push((u, v));
                // odometer over edge indices
                let mut i = k;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    pick[i] += 1;
                    if pick[i] < self.edges.len() {
                        break;
                    }
                    pick[i] = 0;
                }
                if pick.iter().all(|&e| e == 0) {
                    break;
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Digraph::build(vertices, edges))
    }
}

/// Resource error from [`Digraph::categorical_power`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerTooLarge {
    pub base: usize,
    pub exponent: usize,
    pub limit: usize,
}

impl fmt::Display for PowerTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "categorical power {}^{} exceeds the configured budget of {}",
            self.base, self.exponent, self.limit
        )
    }
}

/// A level function: `level(v) = level(u) + 1` for every edge `(u, v)`, with
/// minimum level 0 in every connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment {
    level: Vec<usize>,
    height: usize,
}

impl LevelAssignment {
    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    /// The maximum level.
    pub fn height(&self) -> usize {
        self.height
    }

    /// Vertices grouped by level, each group sorted ascending.
    pub fn groups(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.height + 1];
        for (v, &l) in self.level.iter().enumerate() {
            groups[l].push(v);
        }
        groups
    }
}

/// Witness that a digraph is unbalanced: some undirected cycle has a nonzero
/// algebraic orientation sum, so no level function exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnbalancedError;

impl fmt::Display for UnbalancedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "digraph is unbalanced: no level function exists")
    }
}

/// Computes the unique level assignment of a balanced digraph. On disconnected
/// inputs every component is normalized to minimum level 0 separately.
pub fn levels(h: &Digraph) -> Result<LevelAssignment, UnbalancedError> {
    let n = h.vertex_count();
    let mut raw = vec![i64::MIN; n];
    let mut level = vec![0usize; n];
    let mut height = 0usize;
    let mut stack = Vec::new();
    for start in 0..n {
        if raw[start] != i64::MIN {
            continue;
        }
        raw[start] = 0;
        stack.push(start);
        let mut component = vec![start];
        while let Some(v) = stack.pop() {
            for &w in h.out_neighbors(v) {
                let expect = raw[v] + 1;
                if raw[w] == i64::MIN {
                    raw[w] = expect;
                    component.push(w);
                    stack.push(w);
                } else if raw[w] != expect {
                    return Err(UnbalancedError);
                }
            }
            for &w in h.in_neighbors(v) {
                let expect = raw[v] - 1;
                if raw[w] == i64::MIN {
                    raw[w] = expect;
                    component.push(w);
                    stack.push(w);
                } else if raw[w] != expect {
                    return Err(UnbalancedError);
                }
            }
        }
        let min = component.iter().map(|&v| raw[v]).min().unwrap();
        for &v in &component {
            level[v] = (raw[v] - min) as usize;
            height = height.max(level[v]);
        }
    }
    Ok(LevelAssignment { level, height })
}

/// Error building a [`TreeDigraph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeError {
    Graph(GraphError),
    /// Loops are forbidden on trees.
    Loop(usize),
    /// Edge count differs from `vertex_count - 1`.
    WrongEdgeCount {
        vertices: usize,
        edges: usize,
    },
    NotConnected,
    Empty,
}

impl fmt::Display for TreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeError::Graph(e) => write!(f, "{e}"),
            TreeError::Loop(v) => write!(f, "loop at vertex {v} is not allowed in a tree"),
            TreeError::WrongEdgeCount { vertices, edges } => {
                write!(
                    f,
                    "a tree on {vertices} vertices must have {} edges, got {edges}",
                    vertices - 1
                )
            }
            TreeError::NotConnected => write!(f, "underlying undirected graph is not connected"),
            TreeError::Empty => write!(f, "a tree must have at least one vertex"),
        }
    }
}

impl From<GraphError> for TreeError {
    fn from(e: GraphError) -> TreeError {
        TreeError::Graph(e)
    }
}

/// An orientation of a finite tree.
#[derive(Clone, Debug)]
pub struct TreeDigraph {
    graph: Digraph,
}

impl TreeDigraph {
    pub fn new(graph: Digraph) -> Result<TreeDigraph, TreeError> {
        if graph.vertex_count() == 0 {
            return Err(TreeError::Empty);
        }
        for &(u, v) in graph.edges() {
            if u == v {
                return Err(TreeError::Loop(u));
            }
        }
        if graph.edge_count() != graph.vertex_count() - 1 {
            return Err(TreeError::WrongEdgeCount {
                vertices: graph.vertex_count(),
                edges: graph.edge_count(),
            });
        }
        if !graph.is_connected() {
            return Err(TreeError::NotConnected);
        }
        Ok(TreeDigraph { graph })
    }

    pub fn from_edges(
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<TreeDigraph, TreeError> {
        TreeDigraph::new(Digraph::from_edges(edges)?)
    }

    /// The one-vertex tree.
    pub fn single_vertex() -> TreeDigraph {
        TreeDigraph {
            graph: Digraph::new(1, []).unwrap(),
        }
    }

    /// Wraps a digraph known by construction to be a tree (generator
    /// assembly paths). Checked in debug builds.
    pub(crate) fn new_unchecked(graph: Digraph) -> TreeDigraph {
        debug_assert!(TreeDigraph::new(graph.clone()).is_ok());
        TreeDigraph { graph }
    }

    pub fn as_digraph(&self) -> &Digraph {
        &self.graph
    }

    pub fn into_digraph(self) -> Digraph {
        self.graph
    }

    pub fn reverse(&self) -> TreeDigraph {
        TreeDigraph {
            graph: self.graph.reverse(),
        }
    }

    /// Undirected neighbors of `v`, sorted ascending.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut ns: Vec<usize> = self
            .graph
            .out_neighbors(v)
            .iter()
            .chain(self.graph.in_neighbors(v))
            .copied()
            .collect();
        ns.sort_unstable();
        ns
    }
}

impl core::ops::Deref for TreeDigraph {
    type Target = Digraph;

    fn deref(&self) -> &Digraph {
        &self.graph
    }
}

/// The middle of a longest undirected path: a single vertex or a single edge
/// (oriented as it appears in the tree).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Middle {
    Center(usize),
    Bicenter((usize, usize)),
}

fn bfs_farthest(t: &TreeDigraph, start: usize) -> (usize, Vec<usize>, Vec<usize>) {
    let n = t.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = alloc::collections::VecDeque::new();
    dist[start] = 0;
    queue.push_back(start);
    let mut far = start;
    while let Some(v) = queue.pop_front() {
        if dist[v] > dist[far] || (dist[v] == dist[far] && v < far) {
            far = v;
        }
        for w in t.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (far, dist, parent)
}

/// Locates the unique center or bicenter (Jordan). The result does not depend
/// on which longest path the double BFS sweep happens to find.
pub fn center_or_bicenter(t: &TreeDigraph) -> Middle {
    let (a, _, _) = bfs_farthest(t, 0);
    let (b, dist, parent) = bfs_farthest(t, a);
    let len = dist[b];
    // walk from b halfway up towards a
    let mut v = b;
    for _ in 0..len / 2 {
        v = parent[v];
    }
    if len % 2 == 0 {
        Middle::Center(v)
    } else {
        let u = parent[v];
        // orient the middle edge as it appears in the tree
        if t.has_edge(u, v) {
            Middle::Bicenter((u, v))
        } else {
            Middle::Bicenter((v, u))
        }
    }
}

/// Distance (in the underlying undirected tree) from `root` to every vertex.
pub fn distances_from(t: &TreeDigraph, root: usize) -> Vec<usize> {
    let (_, dist, _) = bfs_farthest(t, root);
    dist
}

/// True iff exactly one vertex has undirected degree 3 and none exceeds 3.
pub fn is_triad(t: &TreeDigraph) -> bool {
    let mut threes = 0;
    for v in 0..t.vertex_count() {
        match t.degree(v) {
            d if d > 3 => return false,
            3 => threes += 1,
            _ => {}
        }
    }
    threes == 1
}

fn encode_subtree(t: &TreeDigraph, v: usize, parent: Option<usize>, out: &mut String) {
    let mut tokens: Vec<String> = Vec::new();
    for w in t.neighbors(v) {
        if Some(w) == parent {
            continue;
        }
        let mut tok = String::new();
        // '+' for an edge directed parent -> child, '-' for child -> parent;
        // '+' (0x2b) sorts before '-' (0x2d) in byte order
        tok.push(if t.has_edge(v, w) { '+' } else { '-' });
        encode_subtree(t, w, Some(v), &mut tok);
        tokens.push(tok);
    }
    tokens.sort_unstable();
    out.push('[');
    for tok in tokens {
        out.push_str(&tok);
    }
    out.push(']');
}

/// Canonical encoding of a rooted tree. Equal strings iff the rooted trees are
/// isomorphic (respecting edge orientation).
pub fn canonical_encoding_rooted(t: &TreeDigraph, root: usize) -> String {
    let mut out = String::new();
    encode_subtree(t, root, None, &mut out);
    out
}

/// Canonical encoding of an unrooted tree, anchored at the Jordan center
/// (`C...`) or bicenter (`B...|...`). Equal strings iff isomorphic.
pub fn canonical_encoding(t: &TreeDigraph) -> String {
    match center_or_bicenter(t) {
        Middle::Center(c) => {
            let mut out = String::from("C");
            encode_subtree(t, c, None, &mut out);
            out
        }
        Middle::Bicenter((u, v)) => {
            let mut out = String::from("B");
            encode_subtree(t, u, Some(v), &mut out);
            out.push('|');
            encode_subtree(t, v, Some(u), &mut out);
            out
        }
    }
}

/// Error parsing a canonical tree encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonParseError {
    pub position: usize,
    pub message: &'static str,
}

impl fmt::Display for CanonParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid canonical encoding at byte {}: {}",
            self.position, self.message
        )
    }
}

struct CanonParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    edges: Vec<(usize, usize)>,
    next_id: usize,
}

impl<'a> CanonParser<'a> {
    fn err(&self, message: &'static str) -> CanonParseError {
        CanonParseError {
            position: self.pos,
            message,
        }
    }

    /// Parses `[ token* ]` where token = ('+'|'-') body; returns the id of the
    /// subtree root. Ids are assigned in pre-order.
    fn parse_body(&mut self) -> Result<usize, CanonParseError> {
        if self.bytes.get(self.pos) != Some(&b'[') {
            return Err(self.err("expected '['"));
        }
        self.pos += 1;
        let v = self.next_id;
        self.next_id += 1;
        loop {
            match self.bytes.get(self.pos) {
                Some(b']') => {
                    self.pos += 1;
                    return Ok(v);
                }
                Some(&sign @ (b'+' | b'-')) => {
                    self.pos += 1;
                    let child = self.parse_body()?;
                    if sign == b'+' {
                        self.edges.push((v, child));
                    } else {
                        self.edges.push((child, v));
                    }
                }
                _ => return Err(self.err("expected '+', '-' or ']'")),
            }
        }
    }
}

/// Parses a canonical encoding back into a tree. Accepts the unrooted forms
/// `C...` and `B...|...` as well as the bare rooted form `[...]`; the returned
/// root is the encoding anchor (`None` only for the bicenter form). Vertex ids
/// follow the encoding in pre-order, so re-encoding reproduces the input.
pub fn parse_canonical(s: &str) -> Result<(TreeDigraph, Option<usize>), CanonParseError> {
    let s = s.trim();
    let mut p = CanonParser {
        bytes: s.as_bytes(),
        pos: 0,
        edges: Vec::new(),
        next_id: 0,
    };
    let (root, expect_end) = match p.bytes.first() {
        Some(b'C') => {
            p.pos = 1;
            let r = p.parse_body()?;
            (Some(r), true)
        }
        Some(b'B') => {
            p.pos = 1;
            let r1 = p.parse_body()?;
            if p.bytes.get(p.pos) != Some(&b'|') {
                return Err(p.err("expected '|'"));
            }
            p.pos += 1;
            let r2 = p.parse_body()?;
            p.edges.push((r1, r2));
            (None, true)
        }
        Some(b'[') => {
            let r = p.parse_body()?;
            (Some(r), true)
        }
        _ => return Err(p.err("expected 'C', 'B' or '['")),
    };
    if expect_end && p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    let n = p.next_id;
    let graph = Digraph::new(n, p.edges).map_err(|_| CanonParseError {
        position: 0,
        message: "internal: parsed edges invalid",
    })?;
    let tree = TreeDigraph::new(graph).map_err(|_| CanonParseError {
        position: 0,
        message: "encoding does not describe a tree",
    })?;
    Ok((tree, root))
}

/// Relabels a tree into canonical order (pre-order of its canonical encoding)
/// and returns it with the encoding. Isomorphic trees map to identical
/// results.
pub fn canonical_form(t: &TreeDigraph) -> (TreeDigraph, String) {
    let canon = canonical_encoding(t);
    let (tree, _) = parse_canonical(&canon).expect("own encoding must parse");
    (tree, canon)
}

/// A tree together with a distinguished root and its canonical encoding.
#[derive(Clone, Debug)]
pub struct RootedTree {
    tree: TreeDigraph,
    root: usize,
    canon: String,
    depth: usize,
}

impl RootedTree {
    pub fn new(tree: TreeDigraph, root: usize) -> RootedTree {
        assert!(root < tree.vertex_count(), "root out of range");
        let canon = canonical_encoding_rooted(&tree, root);
        let depth = distances_from(&tree, root).into_iter().max().unwrap_or(0);
        RootedTree {
            tree,
            root,
            canon,
            depth,
        }
    }

    pub fn tree(&self) -> &TreeDigraph {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn canon(&self) -> &str {
        &self.canon
    }

    /// Maximum distance from the root.
    pub fn depth(&self) -> usize {
        self.depth
    }
}

/// Error parsing an edge-list file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for EdgeListParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge list line {}: {}", self.line, self.message)
    }
}

/// Parses the edge-list text format: one `u v` pair per line, `#` comments
/// ignored, vertex count implied by the maximum endpoint unless a comment of
/// the form `# n=<count>` raises it (for isolated vertices).
pub fn parse_edge_list(text: &str) -> Result<Digraph, EdgeListParseError> {
    let mut edges = Vec::new();
    let mut declared_n: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(count) = comment.strip_prefix("n=") {
                let n = count
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| EdgeListParseError {
                        line: idx + 1,
                        message: format!("invalid vertex count {comment:?}"),
                    })?;
                declared_n = Some(declared_n.map_or(n, |m: usize| m.max(n)));
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(EdgeListParseError {
                    line: idx + 1,
                    message: format!("expected \"u v\", got {line:?}"),
                })
            }
        };
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| EdgeListParseError {
                line: idx + 1,
                message: format!("invalid vertex id {s:?}"),
            })
        };
        edges.push((parse(u)?, parse(v)?));
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared_n.unwrap_or(implied).max(implied);
    Digraph::new(n, edges).map_err(|e| EdgeListParseError {
        line: 0,
        message: e.to_string(),
    })
}

/// Serializes a digraph to the edge-list text format. A `# n=` header is
/// emitted whenever the edge set alone does not determine the vertex count.
pub fn to_edge_list(h: &Digraph) -> String {
    let implied = h
        .edges()
        .iter()
        .map(|&(u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    if implied < h.vertex_count() {
        out.push_str(&format!("# n={}\n", h.vertex_count()));
    }
    for &(u, v) in h.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> TreeDigraph {
        TreeDigraph::from_edges([(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn power_of_single_edge() {
        let h = Digraph::new(2, [(0, 1)]).unwrap();
        let p = h.categorical_power(2, 1 << 20).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edges(), &[(0, 3)]); // (a,a) -> (b,b)
    }

    #[test]
    fn power_of_k2() {
        let k2 = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let p = k2.categorical_power(2, 1 << 20).unwrap();
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 4);
    }

    #[test]
    fn power_of_path() {
        let h = path3();
        let p = h.categorical_power(2, 1 << 20).unwrap();
        assert_eq!(p.vertex_count(), 9);
        assert_eq!(p.edge_count(), 4);
    }

    #[test]
    fn power_budget_is_enforced() {
        let h = path3();
        assert!(h.as_digraph().categorical_power(8, 100).is_err());
    }

    #[test]
    fn reverse_involution() {
        let h = Digraph::new(3, [(0, 1), (2, 1), (0, 0)]).unwrap();
        let mut e1 = h.reverse().reverse().edges().to_vec();
        let mut e2 = h.edges().to_vec();
        e1.sort_unstable();
        e2.sort_unstable();
        assert_eq!(e1, e2);
    }

    #[test]
    fn levels_of_path() {
        let l = levels(path3().as_digraph()).unwrap();
        assert_eq!(l.levels(), &[0, 1, 2]);
        assert_eq!(l.height(), 2);
    }

    #[test]
    fn levels_of_single_vertex() {
        let h = Digraph::new(1, []).unwrap();
        assert_eq!(levels(&h).unwrap().levels(), &[0]);
    }

    #[test]
    fn directed_two_cycle_is_unbalanced() {
        let h = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(levels(&h), Err(UnbalancedError));
    }

    #[test]
    fn levels_normalize_per_component() {
        // two components: 0->1 and 3->2
        let h = Digraph::new(4, [(0, 1), (3, 2)]).unwrap();
        let l = levels(&h).unwrap();
        assert_eq!(l.level(0), 0);
        assert_eq!(l.level(1), 1);
        assert_eq!(l.level(3), 0);
        assert_eq!(l.level(2), 1);
    }

    #[test]
    fn center_of_short_path() {
        assert_eq!(center_or_bicenter(&path3()), Middle::Center(1));
    }

    #[test]
    fn bicenter_of_single_edge() {
        let t = TreeDigraph::from_edges([(0, 1)]).unwrap();
        assert_eq!(center_or_bicenter(&t), Middle::Bicenter((0, 1)));
    }

    #[test]
    fn canonical_encoding_examples() {
        let single = TreeDigraph::single_vertex();
        assert_eq!(canonical_encoding_rooted(&single, 0), "[]");

        let edge = TreeDigraph::from_edges([(0, 1)]).unwrap();
        assert_eq!(canonical_encoding(&edge), "B[]|[]");

        assert_eq!(canonical_encoding(&path3()), "C[+[]-[]]");
    }

    #[test]
    fn canonical_roundtrip() {
        for t in [
            path3(),
            TreeDigraph::from_edges([(0, 1), (2, 1), (1, 3)]).unwrap(),
        ] {
            let canon = canonical_encoding(&t);
            let (parsed, _) = parse_canonical(&canon).unwrap();
            assert_eq!(canonical_encoding(&parsed), canon);
            assert_eq!(parsed.vertex_count(), t.vertex_count());
        }
    }

    #[test]
    fn canonical_is_relabeling_invariant() {
        // same tree with two labelings
        let a = TreeDigraph::from_edges([(0, 1), (1, 2), (3, 1)]).unwrap();
        let b = TreeDigraph::from_edges([(3, 2), (2, 0), (1, 2)]).unwrap();
        assert_eq!(canonical_encoding(&a), canonical_encoding(&b));
    }

    #[test]
    fn triad_predicate() {
        let path4 = TreeDigraph::from_edges([(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(!is_triad(&path4));
        let star = TreeDigraph::from_edges([(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(is_triad(&star));
    }

    #[test]
    fn tree_rejects_cycles_and_loops() {
        assert!(TreeDigraph::from_edges([(0, 0)]).is_err());
        assert!(TreeDigraph::from_edges([(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(TreeDigraph::from_edges([(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn edge_list_roundtrip() {
        let h = Digraph::new(4, [(0, 1), (2, 1)]).unwrap();
        let text = to_edge_list(&h);
        assert!(text.starts_with("# n=4\n"));
        let parsed = parse_edge_list(&text).unwrap();
        assert_eq!(parsed.vertex_count(), 4);
        assert_eq!(parsed.edges(), h.edges());
    }

    #[test]
    fn edge_list_ignores_comments() {
        let h = parse_edge_list("# a comment\n0 1\n\n1 2\n").unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn rooted_tree_depth() {
        let rt = RootedTree::new(path3(), 0);
        assert_eq!(rt.depth(), 2);
        assert_eq!(rt.canon(), "[+[+[]]]");
    }
}
