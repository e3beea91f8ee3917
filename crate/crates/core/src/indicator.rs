//! The indicator construction and the polymorphism decision procedure.
//!
//! For a template digraph H and a linear condition, the indicator instance is
//! the disjoint union of one categorical power of H per function symbol,
//! quotiented by the merges forced by the height-one identities, with
//! candidate lists precolored by the non-height-one identities and (for core
//! templates) idempotence. Homomorphisms from the quotient to H are exactly
//! the interpretations witnessing the condition.
//!
//! In level-wise mode only same-level tuples are materialized; witnesses are
//! extended off the same-level components by projecting to the argument of
//! minimum level with smallest index, which is a polymorphism on any balanced
//! template. Total symmetry bypasses tuples entirely and works on the digraph
//! of nonempty vertex subsets.

use crate::conditions::{ConditionKind, LinearCondition, Term};
use crate::consistency::{find_homomorphism, DomainLists, SearchOpts, SearchResult};
use crate::digraph::{levels, Digraph, LevelAssignment, UnbalancedError};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Resource budgets for indicator construction.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum total tuple count across all symbol powers.
    pub max_indicator_vertices: usize,
    /// Maximum vertex count of a subset digraph (total symmetry).
    pub max_subset_vertices: usize,
    /// Maximum edge tuples projected (or subset pairs examined).
    pub max_edge_work: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_indicator_vertices: 1 << 23,
            max_subset_vertices: 1 << 20,
            max_edge_work: 1 << 27,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecideOpts {
    /// Pin every diagonal tuple `(u,…,u)` to `u`. Sound when the template is
    /// a core (or when the condition forces idempotence); callers clear it
    /// knowingly for other templates.
    pub idempotent: bool,
    pub step_budget: Option<u64>,
    pub limits: Limits,
}

impl Default for DecideOpts {
    fn default() -> DecideOpts {
        DecideOpts {
            idempotent: true,
            step_budget: None,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Full,
    Levelwise,
    /// Level-wise first; escalate to full only when level-wise returns Sat
    /// for a condition that is not levelwise-safe.
    Auto,
}

/// Outcome of [`decide`]. For levelwise-safe conditions the level-wise pass
/// is conclusive, so level-wise runs of those report plain `Sat`/`Unsat`.
#[derive(Clone, Debug)]
pub enum DecisionResult {
    Sat(PolymorphismWitness),
    Unsat,
    LevelwiseSat(PolymorphismWitness),
    LevelwiseUnsat,
    Timeout,
}

/// The Sat/Unsat flavor of a [`DecisionResult`], for comparisons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    LwSat,
    LwUnsat,
    Timeout,
}

impl DecisionResult {
    pub fn verdict(&self) -> Verdict {
        match self {
            DecisionResult::Sat(_) => Verdict::Sat,
            DecisionResult::Unsat => Verdict::Unsat,
            DecisionResult::LevelwiseSat(_) => Verdict::LwSat,
            DecisionResult::LevelwiseUnsat => Verdict::LwUnsat,
            DecisionResult::Timeout => Verdict::Timeout,
        }
    }

    pub fn witness(&self) -> Option<&PolymorphismWitness> {
        match self {
            DecisionResult::Sat(w) | DecisionResult::LevelwiseSat(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::LwSat => "lw-sat",
            Verdict::LwUnsat => "lw-unsat",
            Verdict::Timeout => "timeout",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub enum IndicatorError {
    /// Level-wise mode on an unbalanced template.
    Unbalanced(UnbalancedError),
    /// A resource budget would be exceeded.
    TooLarge {
        required: usize,
        limit: usize,
        what: &'static str,
    },
    /// Subset masks carry one bit per scope vertex and are capped at 63.
    ScopeTooWide { width: usize },
    /// The condition failed validation.
    InvalidCondition(String),
    /// A freshly extracted witness failed verification (an internal bug).
    WitnessRejected(String),
}

impl fmt::Display for IndicatorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndicatorError::Unbalanced(e) => write!(f, "{e}"),
            IndicatorError::TooLarge {
                required,
                limit,
                what,
            } => {
                write!(
                    f,
                    "{what} needs {required} vertices, over the budget of {limit}"
                )
            }
            IndicatorError::ScopeTooWide { width } => {
                write!(
                    f,
                    "subset construction limited to 63 vertices per scope, got {width}"
                )
            }
            IndicatorError::InvalidCondition(msg) => write!(f, "invalid condition: {msg}"),
            IndicatorError::WitnessRejected(msg) => write!(f, "internal: witness rejected: {msg}"),
        }
    }
}

// ---------------------------------------------------------------------------
// union-find with minimum-element representatives

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Keeps the smaller id as representative, making quotient ids
    /// deterministic (lexicographically smallest tuple per class).
    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

// ---------------------------------------------------------------------------
// tuple scopes

/// Level structure of the template, shared by construction and witnesses.
#[derive(Clone, Debug)]
struct LevelInfo {
    assignment: LevelAssignment,
    members: Vec<Vec<usize>>,
    rank: Vec<usize>,
}

impl LevelInfo {
    fn new(h: &Digraph) -> Result<LevelInfo, UnbalancedError> {
        let assignment = levels(h)?;
        let members = assignment.groups();
        let mut rank = vec![0usize; h.vertex_count()];
        for group in &members {
            for (i, &v) in group.iter().enumerate() {
                rank[v] = i;
            }
        }
        Ok(LevelInfo {
            assignment,
            members,
            rank,
        })
    }
}

/// Indexing of one symbol's tuple set into a contiguous pre-id range.
/// Full mode: row-major over vertex ids. Level-wise: per-level blocks,
/// row-major over within-level ranks.
#[derive(Clone, Debug)]
struct SymbolScope {
    arity: usize,
    offset: usize,
    count: usize,
    level_offsets: Vec<usize>,
}

impl SymbolScope {
    fn tuple_to_pre_full(&self, h_n: usize, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for &t in tuple {
            idx = idx * h_n + t;
        }
        self.offset + idx
    }

    fn tuple_to_pre_level(&self, info: &LevelInfo, level: usize, tuple: &[usize]) -> usize {
        let width = info.members[level].len();
        let mut idx = 0;
        for &t in tuple {
            debug_assert_eq!(info.assignment.level(t), level);
            idx = idx * width + info.rank[t];
        }
        self.offset + self.level_offsets[level] + idx
    }

    fn pre_to_tuple_full(&self, h_n: usize, pre: usize) -> Vec<usize> {
        let mut idx = pre - self.offset;
        let mut tuple = vec![0usize; self.arity];
        for slot in tuple.iter_mut().rev() {
            *slot = idx % h_n;
            idx /= h_n;
        }
        tuple
    }

    fn pre_to_tuple_level(&self, info: &LevelInfo, pre: usize) -> Vec<usize> {
        let mut rel = pre - self.offset;
        let mut level = 0;
        for (l, &off) in self.level_offsets.iter().enumerate() {
            if rel >= off {
                level = l;
            }
        }
        rel -= self.level_offsets[level];
        let width = info.members[level].len();
        let mut tuple = vec![0usize; self.arity];
        for slot in tuple.iter_mut().rev() {
            *slot = info.members[level][rel % width];
            rel /= width;
        }
        tuple
    }
}

/// The mode an instance was built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltMode {
    Full,
    Levelwise,
}

/// A quotiented indicator ready for homomorphism search.
#[derive(Clone, Debug)]
pub struct IndicatorInstance {
    pub quotient: Digraph,
    pub lists: DomainLists,
    pub mode: BuiltMode,
    h_n: usize,
    scopes: Vec<SymbolScope>,
    class_of_pre: Vec<usize>,
    level_info: Option<LevelInfo>,
}

impl IndicatorInstance {
    /// Quotient class of a symbol's tuple, if the tuple is in scope.
    pub fn class_of(&self, symbol: usize, tuple: &[usize]) -> Option<usize> {
        let scope = &self.scopes[symbol];
        debug_assert_eq!(tuple.len(), scope.arity);
        let pre = match self.mode {
            BuiltMode::Full => scope.tuple_to_pre_full(self.h_n, tuple),
            BuiltMode::Levelwise => {
                let info = self.level_info.as_ref().unwrap();
                let level = info.assignment.level(tuple[0]);
                if tuple.iter().any(|&t| info.assignment.level(t) != level) {
                    return None;
                }
                scope.tuple_to_pre_level(info, level, tuple)
            }
        };
        Some(self.class_of_pre[pre])
    }
}

/// Construction outcome: an instance, or a pin conflict that already refutes
/// the condition.
#[derive(Clone, Debug)]
pub enum BuildOutcome {
    Instance(IndicatorInstance),
    ImmediateUnsat,
}

fn scope_counts(
    c: &LinearCondition,
    h_n: usize,
    info: Option<&LevelInfo>,
) -> (Vec<SymbolScope>, usize) {
    let mut scopes = Vec::with_capacity(c.symbols.len());
    let mut offset = 0usize;
    for sym in &c.symbols {
        let k = sym.arity;
        match info {
            None => {
                let count = h_n.pow(k as u32);
                scopes.push(SymbolScope {
                    arity: k,
                    offset,
                    count,
                    level_offsets: Vec::new(),
                });
                offset += count;
            }
            Some(info) => {
                let mut level_offsets = Vec::with_capacity(info.members.len());
                let mut count = 0usize;
                for group in &info.members {
                    level_offsets.push(count);
                    count += group.len().pow(k as u32);
                }
                scopes.push(SymbolScope {
                    arity: k,
                    offset,
                    count,
                    level_offsets,
                });
                offset += count;
            }
        }
    }
    (scopes, offset)
}

/// Calls `f` with every assignment of `arity` slots over `values`.
fn for_each_assignment(values: &[usize], arity: usize, mut f: impl FnMut(&[usize])) {
    if arity == 0 {
        f(&[]);
        return;
    }
    if values.is_empty() {
        return;
    }
    let mut pick = vec![0usize; arity];
    let mut assignment = vec![values[0]; arity];
    loop {
        f(&assignment);
        let mut i = arity;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < values.len() {
                assignment[i] = values[pick[i]];
                break;
            }
            pick[i] = 0;
            assignment[i] = values[0];
        }
    }
}

fn term_tuple(term: &Term, vars: &[usize], assignment: &[usize]) -> Vec<usize> {
    match term {
        Term::Var(_) => unreachable!("height-one sides are applications"),
        Term::App { args, .. } => args
            .iter()
            .map(|a| assignment[vars.iter().position(|v| v == a).unwrap()])
            .collect(),
    }
}

/// Builds the indicator instance for an explicit linear condition.
///
/// `ImmediateUnsat` is returned when two precoloring pins of one class demand
/// different template vertices.
pub fn build_indicator(
    h: &Digraph,
    c: &LinearCondition,
    mode: BuiltMode,
    opts: &DecideOpts,
) -> Result<BuildOutcome, IndicatorError> {
    let report = crate::conditions::validate(c);
    if !report.is_ok() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(IndicatorError::InvalidCondition(msgs.join("; ")));
    }
    if c.is_totally_symmetric() {
        return Err(IndicatorError::InvalidCondition(
            "total symmetry is decided by the subset construction, not by tuple powers".into(),
        ));
    }
    let h_n = h.vertex_count();
    let info = match mode {
        BuiltMode::Full => None,
        BuiltMode::Levelwise => Some(LevelInfo::new(h).map_err(IndicatorError::Unbalanced)?),
    };

    let (scopes, pre_total) = scope_counts(c, h_n, info.as_ref());
    if pre_total > opts.limits.max_indicator_vertices {
        return Err(IndicatorError::TooLarge {
            required: pre_total,
            limit: opts.limits.max_indicator_vertices,
            what: "indicator",
        });
    }

    let mut uf = UnionFind::new(pre_total);
    let all_vertices: Vec<usize> = (0..h_n).collect();
    for identity in c.identities.iter().filter(|i| i.is_height_one()) {
        let vars = identity.variables();
        let (lsym, rsym) = match (&identity.lhs, &identity.rhs) {
            (Term::App { symbol: a, .. }, Term::App { symbol: b, .. }) => (*a, *b),
            _ => unreachable!(),
        };
        let mut merge = |values: &[usize]| {
            for_each_assignment(values, vars.len(), |assignment| {
                let lt = term_tuple(&identity.lhs, &vars, assignment);
                let rt = term_tuple(&identity.rhs, &vars, assignment);
                let (lp, rp) = match &info {
                    None => (
                        scopes[lsym].tuple_to_pre_full(h_n, &lt),
                        scopes[rsym].tuple_to_pre_full(h_n, &rt),
                    ),
                    Some(info) => {
                        let level = info.assignment.level(assignment[0]);
                        (
                            scopes[lsym].tuple_to_pre_level(info, level, &lt),
                            scopes[rsym].tuple_to_pre_level(info, level, &rt),
                        )
                    }
                };
                uf.union(lp, rp);
            });
        };
        match &info {
            None => merge(&all_vertices),
            Some(info) => {
                for group in &info.members {
                    merge(group);
                }
            }
        }
    }

    // dense class ids in order of smallest member pre-id
    let mut class_of_pre = vec![usize::MAX; pre_total];
    let mut classes = 0usize;
    for pre in 0..pre_total {
        let root = uf.find(pre);
        if class_of_pre[root] == usize::MAX {
            class_of_pre[root] = classes;
            classes += 1;
        }
        class_of_pre[pre] = class_of_pre[root];
    }

    // project power edges through the quotient
    let mut edge_work = 0usize;
    for sym in &c.symbols {
        let per_symbol: usize = match &info {
            None => h.edge_count().pow(sym.arity as u32),
            Some(info) => {
                let mut counts = vec![0usize; info.members.len()];
                for &(u, _) in h.edges() {
                    counts[info.assignment.level(u)] += 1;
                }
                counts.iter().map(|&c| c.pow(sym.arity as u32)).sum()
            }
        };
        edge_work = edge_work.saturating_add(per_symbol);
    }
    if edge_work > opts.limits.max_edge_work {
        return Err(IndicatorError::TooLarge {
            required: edge_work,
            limit: opts.limits.max_edge_work,
            what: "indicator edge projection",
        });
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (sym_idx, sym) in c.symbols.iter().enumerate() {
        let k = sym.arity;
        let scope = &scopes[sym_idx];
        let mut project = |edge_pool: &[(usize, usize)], level: Option<usize>| {
            if edge_pool.is_empty() {
                return;
            }
            let mut pick = vec![0usize; k];
            let mut tails = vec![0usize; k];
            let mut heads = vec![0usize; k];
            'outer: loop {
                for (slot, &p) in pick.iter().enumerate() {
                    tails[slot] = edge_pool[p].0;
                    heads[slot] = edge_pool[p].1;
                }
                let (tp, hp) = match &info {
                    None => (
                        scope.tuple_to_pre_full(h_n, &tails),
                        scope.tuple_to_pre_full(h_n, &heads),
                    ),
                    Some(info) => {
                        let l = level.unwrap();
                        (
                            scope.tuple_to_pre_level(info, l, &tails),
                            scope.tuple_to_pre_level(info, l + 1, &heads),
                        )
                    }
                };
                edges.push((class_of_pre[tp], class_of_pre[hp]));
                let mut i = k;
                loop {
                    if i == 0 {
                        break 'outer;
                    }
                    i -= 1;
                    pick[i] += 1;
                    if pick[i] < edge_pool.len() {
                        break;
                    }
                    pick[i] = 0;
                }
            }
        };
        match &info {
            None => project(h.edges(), None),
            Some(info) => {
                let height = info.members.len() - 1;
                for level in 0..height {
                    let pool: Vec<(usize, usize)> = h
                        .edges()
                        .iter()
                        .copied()
                        .filter(|&(u, _)| info.assignment.level(u) == level)
                        .collect();
                    project(&pool, Some(level));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let quotient = Digraph::new(classes, edges).expect("quotient edges are in range");

    // precoloring
    let mut lists = DomainLists::full(classes, h_n);

    if opts.idempotent {
        for (sym_idx, sym) in c.symbols.iter().enumerate() {
            for u in 0..h_n {
                let tuple = vec![u; sym.arity];
                let pre = match &info {
                    None => scopes[sym_idx].tuple_to_pre_full(h_n, &tuple),
                    Some(info) => {
                        scopes[sym_idx].tuple_to_pre_level(info, info.assignment.level(u), &tuple)
                    }
                };
                if !lists.pin(class_of_pre[pre], u) {
                    return Ok(BuildOutcome::ImmediateUnsat);
                }
            }
        }
    }

    for identity in c.identities.iter().filter(|i| !i.is_height_one()) {
        let vars = identity.variables();
        let (app, var) = match (&identity.lhs, &identity.rhs) {
            (Term::App { .. }, Term::Var(v)) => (&identity.lhs, *v),
            (Term::Var(v), Term::App { .. }) => (&identity.rhs, *v),
            _ => unreachable!("validated"),
        };
        let sym = match app {
            Term::App { symbol, .. } => *symbol,
            _ => unreachable!(),
        };
        let var_pos = vars.iter().position(|&v| v == var).unwrap();
        let mut conflict = false;
        let mut apply = |values: &[usize]| {
            for_each_assignment(values, vars.len(), |assignment| {
                if conflict {
                    return;
                }
                let tuple = term_tuple(app, &vars, assignment);
                let pre = match &info {
                    None => scopes[sym].tuple_to_pre_full(h_n, &tuple),
                    Some(info) => scopes[sym].tuple_to_pre_level(
                        info,
                        info.assignment.level(assignment[0]),
                        &tuple,
                    ),
                };
                if !lists.pin(class_of_pre[pre], assignment[var_pos]) {
                    conflict = true;
                }
            });
        };
        match &info {
            None => apply(&all_vertices),
            Some(info) => {
                for group in &info.members {
                    apply(group);
                }
            }
        }
        if conflict {
            return Ok(BuildOutcome::ImmediateUnsat);
        }
    }

    Ok(BuildOutcome::Instance(IndicatorInstance {
        quotient,
        lists,
        mode,
        h_n,
        scopes,
        class_of_pre,
        level_info: info,
    }))
}

// ---------------------------------------------------------------------------
// witnesses

/// One interpreted operation: a value per tuple in the instance's scope.
#[derive(Clone, Debug)]
pub struct OpTable {
    pub symbol: String,
    pub arity: usize,
    values: Vec<usize>,
}

/// Whether tables cover all tuples or only same-level tuples (extended
/// elsewhere by the minimum-level smallest-index projection).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessScope {
    Full,
    LevelwiseExtended,
}

#[derive(Clone, Debug)]
pub struct OpsWitness {
    pub scope: WitnessScope,
    h_n: usize,
    scopes: Vec<SymbolScope>,
    level_info: Option<LevelInfo>,
    pub tables: Vec<OpTable>,
}

impl OpsWitness {
    /// Evaluates a symbol on any tuple, applying the level-wise extension
    /// where the tables do not cover it.
    pub fn evaluate(&self, symbol: usize, tuple: &[usize]) -> usize {
        let scope = &self.scopes[symbol];
        match self.scope {
            WitnessScope::Full => {
                let pre = scope.tuple_to_pre_full(self.h_n, tuple) - scope.offset;
                self.tables[symbol].values[pre]
            }
            WitnessScope::LevelwiseExtended => {
                let info = self.level_info.as_ref().unwrap();
                let l0 = info.assignment.level(tuple[0]);
                if tuple.iter().all(|&t| info.assignment.level(t) == l0) {
                    let pre = scope.tuple_to_pre_level(info, l0, tuple) - scope.offset;
                    self.tables[symbol].values[pre]
                } else {
                    let min = tuple
                        .iter()
                        .map(|&t| info.assignment.level(t))
                        .min()
                        .unwrap();
                    let j = tuple
                        .iter()
                        .position(|&t| info.assignment.level(t) == min)
                        .unwrap();
                    tuple[j]
                }
            }
        }
    }

    /// Tuples and values of one table, in deterministic order (full: row
    /// major; level-wise: by level, then row-major within the level).
    pub fn entries(&self, symbol: usize) -> Vec<(Vec<usize>, usize)> {
        let scope = &self.scopes[symbol];
        (0..scope.count)
            .map(|rel| {
                let pre = scope.offset + rel;
                let tuple = match self.scope {
                    WitnessScope::Full => scope.pre_to_tuple_full(self.h_n, pre),
                    WitnessScope::LevelwiseExtended => {
                        scope.pre_to_tuple_level(self.level_info.as_ref().unwrap(), pre)
                    }
                };
                (tuple, self.tables[symbol].values[rel])
            })
            .collect()
    }
}

/// A totally symmetric witness: a value per nonempty vertex subset in scope.
/// Mixed-level sets evaluate through their minimum-level part.
#[derive(Clone, Debug)]
pub struct SetWitness {
    pub levelwise: bool,
    pub arity: usize,
    /// whether singleton sets were pinned to their own vertex
    pub idempotent: bool,
    /// sorted by mask; bit i stands for template vertex i
    pub entries: Vec<(u64, usize)>,
}

impl SetWitness {
    pub fn lookup(&self, mask: u64) -> Option<usize> {
        self.entries
            .binary_search_by_key(&mask, |&(m, _)| m)
            .ok()
            .map(|i| self.entries[i].1)
    }
}

#[derive(Clone, Debug)]
pub enum PolymorphismWitness {
    Operations(OpsWitness),
    SetFunction(SetWitness),
}

/// Why a witness was rejected, with the offending data in the message.
#[derive(Clone, Debug)]
pub struct WitnessViolation {
    pub message: String,
}

impl fmt::Display for WitnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

fn violation(message: String) -> Result<(), WitnessViolation> {
    Err(WitnessViolation { message })
}

/// Checks a witness against the template and condition: the polymorphism
/// property on every edge tuple of every power in scope (including the
/// level-wise extension), every identity under every in-scope variable
/// assignment, and the subset semantics for set witnesses.
pub fn verify_witness(
    h: &Digraph,
    c: &LinearCondition,
    w: &PolymorphismWitness,
) -> Result<(), WitnessViolation> {
    match (w, c.is_totally_symmetric()) {
        (PolymorphismWitness::Operations(ops), false) => verify_ops_witness(h, c, ops),
        (PolymorphismWitness::SetFunction(set), true) => verify_set_witness(h, c, set),
        _ => violation("witness shape does not match the condition".into()),
    }
}

fn verify_symbol_edges(
    h: &Digraph,
    w: &OpsWitness,
    sym_idx: usize,
    name: &str,
    arity: usize,
) -> Result<(), WitnessViolation> {
    if h.edge_count() == 0 {
        return Ok(());
    }
    let mut pick = vec![0usize; arity];
    let mut tails = vec![0usize; arity];
    let mut heads = vec![0usize; arity];
    loop {
        for (slot, &p) in pick.iter().enumerate() {
            tails[slot] = h.edges()[p].0;
            heads[slot] = h.edges()[p].1;
        }
        let a = w.evaluate(sym_idx, &tails);
        let b = w.evaluate(sym_idx, &heads);
        if !h.has_edge(a, b) {
            return violation(format!(
                "{name} breaks the edge tuple {tails:?} -> {heads:?}: ({a}, {b}) is not an edge"
            ));
        }
        let mut i = arity;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < h.edge_count() {
                break;
            }
            pick[i] = 0;
        }
    }
}

fn verify_ops_witness(
    h: &Digraph,
    c: &LinearCondition,
    w: &OpsWitness,
) -> Result<(), WitnessViolation> {
    if w.tables.len() != c.symbols.len() {
        return violation("table count differs from symbol count".into());
    }
    for table in &w.tables {
        if table.values.iter().any(|&v| v >= h.vertex_count()) {
            return violation(format!(
                "table for {} maps outside the template",
                table.symbol
            ));
        }
    }
    for (sym_idx, sym) in c.symbols.iter().enumerate() {
        verify_symbol_edges(h, w, sym_idx, &sym.name, sym.arity)?;
    }
    verify_ops_identities(h, c, w)
}

fn verify_ops_identities(
    h: &Digraph,
    c: &LinearCondition,
    w: &OpsWitness,
) -> Result<(), WitnessViolation> {
    // level-wise witnesses of non-safe conditions promise the identities on
    // same-level evaluations only
    let same_level_only = w.scope == WitnessScope::LevelwiseExtended && !c.levelwise_safe;
    let all_vertices: Vec<usize> = (0..h.vertex_count()).collect();
    for (idx, identity) in c.identities.iter().enumerate() {
        let vars = identity.variables();
        let eval = |term: &Term, assignment: &[usize]| -> usize {
            match term {
                Term::Var(v) => assignment[vars.iter().position(|x| x == v).unwrap()],
                Term::App { symbol, args } => {
                    let tuple: Vec<usize> = args
                        .iter()
                        .map(|a| assignment[vars.iter().position(|x| x == a).unwrap()])
                        .collect();
                    w.evaluate(*symbol, &tuple)
                }
            }
        };
        let mut failure: Option<Vec<usize>> = None;
        let mut run = |values: &[usize]| {
            for_each_assignment(values, vars.len(), |assignment| {
                if failure.is_some() {
                    return;
                }
                if eval(&identity.lhs, assignment) != eval(&identity.rhs, assignment) {
                    failure = Some(assignment.to_vec());
                }
            });
        };
        if same_level_only {
            for group in &w.level_info.as_ref().unwrap().members {
                run(group);
            }
        } else {
            run(&all_vertices);
        }
        if let Some(assignment) = failure {
            return violation(format!(
                "identity {} fails under assignment {:?}",
                c.identity_to_string(idx),
                assignment
            ));
        }
    }
    Ok(())
}

/// The subset-digraph edge relation: every member of A has an out-neighbor in
/// B and every member of B has an in-neighbor in A.
fn subset_edge(h: &Digraph, a_mask: u64, b_mask: u64) -> bool {
    let mut a = a_mask;
    while a != 0 {
        let v = a.trailing_zeros() as usize;
        a &= a - 1;
        if h.out_neighbors(v).iter().all(|&w| b_mask >> w & 1 == 0) {
            return false;
        }
    }
    let mut b = b_mask;
    while b != 0 {
        let v = b.trailing_zeros() as usize;
        b &= b - 1;
        if h.in_neighbors(v).iter().all(|&w| a_mask >> w & 1 == 0) {
            return false;
        }
    }
    true
}

fn mask_members(mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// Smallest number of edges of `E(H) ∩ (A × B)` covering all of A and all of
/// B (|A| + |B| − maximum matching), or None when some vertex is uncovered.
/// Bounds the arity needed to realize a class edge for TS(n).
fn min_edge_cover(h: &Digraph, a_mask: u64, b_mask: u64) -> Option<usize> {
    if !subset_edge(h, a_mask, b_mask) {
        return None;
    }
    let a = mask_members(a_mask);
    let b = mask_members(b_mask);
    let mut match_b = vec![usize::MAX; b.len()];
    let mut matched = 0usize;
    for ai in 0..a.len() {
        let mut seen = vec![false; b.len()];
        if try_augment(h, &a, &b, ai, &mut seen, &mut match_b) {
            matched += 1;
        }
    }
    Some(a.len() + b.len() - matched)
}

fn try_augment(
    h: &Digraph,
    a: &[usize],
    b: &[usize],
    ai: usize,
    seen: &mut [bool],
    match_b: &mut [usize],
) -> bool {
    for (bi, &v) in b.iter().enumerate() {
        if seen[bi] || !h.has_edge(a[ai], v) {
            continue;
        }
        seen[bi] = true;
        if match_b[bi] == usize::MAX || try_augment(h, a, b, match_b[bi], seen, match_b) {
            match_b[bi] = ai;
            return true;
        }
    }
    false
}

/// True iff the TS(arity) indicator has an edge between the classes of the
/// two argument sets.
fn ts_class_edge(h: &Digraph, arity: usize, a_mask: u64, b_mask: u64) -> bool {
    if (a_mask.count_ones() + b_mask.count_ones()) as usize <= arity {
        subset_edge(h, a_mask, b_mask)
    } else {
        matches!(min_edge_cover(h, a_mask, b_mask), Some(cover) if cover <= arity)
    }
}

fn verify_set_witness(
    h: &Digraph,
    c: &LinearCondition,
    w: &SetWitness,
) -> Result<(), WitnessViolation> {
    let arity = match c.kind {
        ConditionKind::TotallySymmetric { arity } => {
            arity.unwrap_or_else(|| (2 * h.edge_count()).max(1))
        }
        ConditionKind::Explicit => return violation("set witness for a non-TS condition".into()),
    };
    if arity != w.arity {
        return violation("witness arity differs from the condition".into());
    }
    for &(mask, value) in &w.entries {
        if mask == 0 || value >= h.vertex_count() {
            return violation("set witness entry out of range".into());
        }
        if w.idempotent && mask.count_ones() == 1 {
            let u = mask.trailing_zeros() as usize;
            if value != u {
                return violation(format!("singleton {{{u}}} must map to {u}, got {value}"));
            }
        }
    }
    for &(a_mask, a_val) in &w.entries {
        for &(b_mask, b_val) in &w.entries {
            if ts_class_edge(h, w.arity, a_mask, b_mask) && !h.has_edge(a_val, b_val) {
                return violation(format!(
                    "subset edge {a_mask:#b} -> {b_mask:#b} maps to non-edge ({a_val}, {b_val})"
                ));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// decision procedure

fn extract_ops_witness(
    c: &LinearCondition,
    instance: &IndicatorInstance,
    hom: &crate::consistency::Homomorphism,
) -> OpsWitness {
    let tables: Vec<OpTable> = c
        .symbols
        .iter()
        .enumerate()
        .map(|(sym_idx, sym)| {
            let scope = &instance.scopes[sym_idx];
            let values: Vec<usize> = (0..scope.count)
                .map(|rel| hom.get(instance.class_of_pre[scope.offset + rel]))
                .collect();
            OpTable {
                symbol: sym.name.clone(),
                arity: sym.arity,
                values,
            }
        })
        .collect();
    OpsWitness {
        scope: match instance.mode {
            BuiltMode::Full => WitnessScope::Full,
            BuiltMode::Levelwise => WitnessScope::LevelwiseExtended,
        },
        h_n: instance.h_n,
        scopes: instance.scopes.clone(),
        level_info: instance.level_info.clone(),
        tables,
    }
}

fn decide_explicit(
    h: &Digraph,
    c: &LinearCondition,
    mode: BuiltMode,
    opts: &DecideOpts,
) -> Result<DecisionResult, IndicatorError> {
    // for levelwise-safe conditions the level-wise verdict is the verdict
    let unsat = || match mode {
        BuiltMode::Full => DecisionResult::Unsat,
        BuiltMode::Levelwise if c.levelwise_safe => DecisionResult::Unsat,
        BuiltMode::Levelwise => DecisionResult::LevelwiseUnsat,
    };
    let instance = match build_indicator(h, c, mode, opts)? {
        BuildOutcome::ImmediateUnsat => return Ok(unsat()),
        BuildOutcome::Instance(i) => i,
    };
    let search = find_homomorphism(
        &instance.quotient,
        h,
        instance.lists.clone(),
        SearchOpts {
            step_budget: opts.step_budget,
        },
    );
    match search {
        SearchResult::NoSolution => Ok(unsat()),
        SearchResult::Timeout => Ok(DecisionResult::Timeout),
        SearchResult::Found(hom) => {
            let witness = PolymorphismWitness::Operations(extract_ops_witness(c, &instance, &hom));
            if let Err(e) = verify_witness(h, c, &witness) {
                return Err(IndicatorError::WitnessRejected(e.message));
            }
            Ok(match mode {
                BuiltMode::Full => DecisionResult::Sat(witness),
                BuiltMode::Levelwise if c.levelwise_safe => DecisionResult::Sat(witness),
                BuiltMode::Levelwise => DecisionResult::LevelwiseSat(witness),
            })
        }
    }
}

/// Advances `comb` to the next k-combination of `0..n` in lexicographic
/// order; returns false after the last one.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] != i + n - k {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Enumerates the nonempty subsets of `scope` with at most `arity` members,
/// as sorted masks; respects the budget by failing early.
fn subset_masks(
    scope: &[usize],
    arity: usize,
    already: usize,
    budget: usize,
) -> Result<Vec<u64>, IndicatorError> {
    let len = scope.len();
    let take = arity.min(len);
    let mut masks = Vec::new();
    for size in 1..=take {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            if already + masks.len() + 1 > budget {
                return Err(IndicatorError::TooLarge {
                    required: already + masks.len() + 1,
                    limit: budget,
                    what: "subset digraph",
                });
            }
            let mask: u64 = comb.iter().map(|&i| 1u64 << scope[i]).sum();
            masks.push(mask);
            if !next_combination(&mut comb, len) {
                break;
            }
        }
    }
    masks.sort_unstable();
    masks.dedup();
    Ok(masks)
}

fn decide_ts(
    h: &Digraph,
    c: &LinearCondition,
    mode: BuiltMode,
    opts: &DecideOpts,
) -> Result<DecisionResult, IndicatorError> {
    let arity = match c.kind {
        ConditionKind::TotallySymmetric { arity } => {
            arity.unwrap_or_else(|| (2 * h.edge_count()).max(1))
        }
        ConditionKind::Explicit => unreachable!(),
    };
    let info = match mode {
        BuiltMode::Full => None,
        BuiltMode::Levelwise => Some(LevelInfo::new(h).map_err(IndicatorError::Unbalanced)?),
    };
    let scopes: Vec<Vec<usize>> = match &info {
        None => vec![(0..h.vertex_count()).collect()],
        Some(info) => info.members.clone(),
    };
    for scope in &scopes {
        if scope.len() > 63 {
            return Err(IndicatorError::ScopeTooWide { width: scope.len() });
        }
    }

    let mut masks: Vec<u64> = Vec::new();
    let mut scope_of_mask: Vec<usize> = Vec::new();
    for (scope_idx, scope) in scopes.iter().enumerate() {
        let collected = subset_masks(scope, arity, masks.len(), opts.limits.max_subset_vertices)?;
        scope_of_mask.extend(core::iter::repeat(scope_idx).take(collected.len()));
        masks.extend(collected);
    }

    let pair_work: usize = match &info {
        None => masks.len().saturating_mul(masks.len()),
        Some(_) => {
            let mut per_scope = vec![0usize; scopes.len()];
            for &s in &scope_of_mask {
                per_scope[s] += 1;
            }
            per_scope
                .windows(2)
                .map(|w| w[0].saturating_mul(w[1]))
                .sum()
        }
    };
    if pair_work > opts.limits.max_edge_work {
        return Err(IndicatorError::TooLarge {
            required: pair_work,
            limit: opts.limits.max_edge_work,
            what: "subset edge enumeration",
        });
    }
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (ai, &a_mask) in masks.iter().enumerate() {
        for (bi, &b_mask) in masks.iter().enumerate() {
            // level-wise: subset edges only connect consecutive levels
            if info.is_some() && scope_of_mask[bi] != scope_of_mask[ai] + 1 {
                continue;
            }
            if ts_class_edge(h, arity, a_mask, b_mask) {
                edges.push((ai, bi));
            }
        }
    }
    let quotient = Digraph::new(masks.len(), edges).expect("subset edges in range");
    let mut lists = DomainLists::full(masks.len(), h.vertex_count());
    if opts.idempotent {
        for (i, &mask) in masks.iter().enumerate() {
            if mask.count_ones() == 1 {
                let u = mask.trailing_zeros() as usize;
                if !lists.pin(i, u) {
                    // cannot happen with full initial lists
                    return Ok(DecisionResult::Unsat);
                }
            }
        }
    }

    match find_homomorphism(
        &quotient,
        h,
        lists,
        SearchOpts {
            step_budget: opts.step_budget,
        },
    ) {
        // total symmetry is levelwise-safe, so both modes report globally
        SearchResult::NoSolution => Ok(DecisionResult::Unsat),
        SearchResult::Timeout => Ok(DecisionResult::Timeout),
        SearchResult::Found(hom) => {
            let mut entries: Vec<(u64, usize)> = masks
                .iter()
                .enumerate()
                .map(|(i, &m)| (m, hom.get(i)))
                .collect();
            entries.sort_unstable();
            let witness = PolymorphismWitness::SetFunction(SetWitness {
                levelwise: matches!(mode, BuiltMode::Levelwise),
                arity,
                idempotent: opts.idempotent,
                entries,
            });
            if let Err(e) = verify_witness(h, c, &witness) {
                return Err(IndicatorError::WitnessRejected(e.message));
            }
            Ok(DecisionResult::Sat(witness))
        }
    }
}

/// Decides whether `h` has polymorphisms satisfying the condition.
///
/// `Sat` results always carry a witness that passed [`verify_witness`].
/// `Auto` runs level-wise first (conclusive for levelwise-safe conditions and
/// for any Unsat) and escalates to full mode only when level-wise reports Sat
/// for an unsafe condition; unbalanced templates go straight to full mode.
pub fn decide(
    h: &Digraph,
    c: &LinearCondition,
    mode: Mode,
    opts: &DecideOpts,
) -> Result<DecisionResult, IndicatorError> {
    let dispatch = |built: BuiltMode| -> Result<DecisionResult, IndicatorError> {
        if c.is_totally_symmetric() {
            decide_ts(h, c, built, opts)
        } else {
            decide_explicit(h, c, built, opts)
        }
    };
    match mode {
        Mode::Full => dispatch(BuiltMode::Full),
        Mode::Levelwise => dispatch(BuiltMode::Levelwise),
        Mode::Auto => {
            if levels(h).is_err() {
                return dispatch(BuiltMode::Full);
            }
            match dispatch(BuiltMode::Levelwise)? {
                DecisionResult::LevelwiseUnsat => Ok(DecisionResult::Unsat),
                DecisionResult::LevelwiseSat(_) => dispatch(BuiltMode::Full),
                conclusive => Ok(conclusive),
            }
        }
    }
}

/// Decides total symmetry of all arities at once via the subset construction:
/// `Sat` iff `h` has totally symmetric polymorphisms of every arity, i.e. iff
/// CSP(h) is solved by arc consistency (for core templates with idempotent
/// pinning; see [`DecideOpts`]).
pub fn check_total_symmetry_all(
    h: &Digraph,
    opts: &DecideOpts,
) -> Result<DecisionResult, IndicatorError> {
    decide(h, &crate::conditions::ts_all(), Mode::Auto, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions;
    use crate::digraph::TreeDigraph;

    fn single_edge() -> Digraph {
        Digraph::new(2, [(0, 1)]).unwrap()
    }

    fn path3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn k3() -> Digraph {
        Digraph::new(3, [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn wnu2_indicator_on_single_edge() {
        let c = conditions::wnu(2).unwrap();
        let out =
            build_indicator(&single_edge(), &c, BuiltMode::Full, &DecideOpts::default()).unwrap();
        let instance = match out {
            BuildOutcome::Instance(i) => i,
            BuildOutcome::ImmediateUnsat => panic!(),
        };
        // classes: {(a,a)}, {(a,b) ~ (b,a)}, {(b,b)}
        assert_eq!(instance.quotient.vertex_count(), 3);
        assert_eq!(instance.quotient.edge_count(), 1);
        assert_eq!(instance.class_of(0, &[0, 1]), instance.class_of(0, &[1, 0]));
        let sets = instance.lists.to_sets();
        assert_eq!(sets[instance.class_of(0, &[0, 0]).unwrap()], alloc::vec![0]);
        assert_eq!(sets[instance.class_of(0, &[1, 1]).unwrap()], alloc::vec![1]);
    }

    #[test]
    fn wnu2_levelwise_on_path_is_diagonal() {
        let c = conditions::wnu(2).unwrap();
        let out =
            build_indicator(&path3(), &c, BuiltMode::Levelwise, &DecideOpts::default()).unwrap();
        let instance = match out {
            BuildOutcome::Instance(i) => i,
            BuildOutcome::ImmediateUnsat => panic!(),
        };
        assert_eq!(instance.quotient.vertex_count(), 3);
        assert_eq!(instance.quotient.edge_count(), 2);
        assert!(instance.lists.all_singletons());
    }

    #[test]
    fn kmm_on_single_vertex_is_sat() {
        let h = Digraph::new(1, []).unwrap();
        let r = decide(&h, &conditions::kmm(), Mode::Full, &DecideOpts::default()).unwrap();
        assert_eq!(r.verdict(), Verdict::Sat);
    }

    #[test]
    fn single_edge_has_symmetric_polymorphism() {
        let r = decide(
            &single_edge(),
            &conditions::wnu(2).unwrap(),
            Mode::Full,
            &DecideOpts::default(),
        )
        .unwrap();
        assert_eq!(r.verdict(), Verdict::Sat);
    }

    #[test]
    fn k3_has_no_kmm() {
        let r = decide(
            &k3(),
            &conditions::kmm(),
            Mode::Full,
            &DecideOpts::default(),
        )
        .unwrap();
        assert_eq!(r.verdict(), Verdict::Unsat);
    }

    #[test]
    fn path_has_majority_and_maltsev() {
        let opts = DecideOpts::default();
        assert_eq!(
            decide(&path3(), &conditions::majority(), Mode::Full, &opts)
                .unwrap()
                .verdict(),
            Verdict::Sat
        );
        assert_eq!(
            decide(&path3(), &conditions::hm(1).unwrap(), Mode::Auto, &opts)
                .unwrap()
                .verdict(),
            Verdict::Sat
        );
    }

    #[test]
    fn levelwise_agrees_with_full_for_safe_conditions() {
        let t = TreeDigraph::from_edges([(0, 1), (2, 1), (2, 3)]).unwrap();
        let opts = DecideOpts::default();
        for c in [
            conditions::kmm(),
            conditions::wnu(2).unwrap(),
            conditions::wnu34(),
        ] {
            let full = decide(&t, &c, Mode::Full, &opts).unwrap().verdict();
            let lw = decide(&t, &c, Mode::Levelwise, &opts).unwrap().verdict();
            assert_eq!(full, lw, "{}", c.name);
        }
    }

    #[test]
    fn levelwise_mode_requires_balanced() {
        let cyc = Digraph::new(2, [(0, 1), (1, 0)]).unwrap();
        let r = decide(
            &cyc,
            &conditions::kmm(),
            Mode::Levelwise,
            &DecideOpts::default(),
        );
        assert!(matches!(r, Err(IndicatorError::Unbalanced(_))));
        // auto falls back to full mode
        let r = decide(&cyc, &conditions::kmm(), Mode::Auto, &DecideOpts::default()).unwrap();
        assert_eq!(r.verdict(), Verdict::Sat);
    }

    #[test]
    fn ts_on_paths_is_sat() {
        let opts = DecideOpts::default();
        assert_eq!(
            check_total_symmetry_all(&path3(), &opts).unwrap().verdict(),
            Verdict::Sat
        );
        assert_eq!(
            check_total_symmetry_all(&single_edge(), &opts)
                .unwrap()
                .verdict(),
            Verdict::Sat
        );
    }

    #[test]
    fn witness_roundtrip_on_sat() {
        let opts = DecideOpts::default();
        let t = TreeDigraph::from_edges([(0, 1), (1, 2)]).unwrap();
        for c in [
            conditions::kmm(),
            conditions::majority(),
            conditions::wnu(3).unwrap(),
        ] {
            let r = decide(&t, &c, Mode::Auto, &opts).unwrap();
            if let Some(w) = r.witness() {
                assert!(verify_witness(&t, &c, w).is_ok(), "{}", c.name);
            } else {
                panic!(
                    "{} should be sat on the directed path, got {:?}",
                    c.name,
                    r.verdict()
                );
            }
        }
    }

    #[test]
    fn first_projection_fails_wnu2() {
        // hand-built witness: f = first projection on the single edge
        let h = single_edge();
        let c = conditions::wnu(2).unwrap();
        let (scopes, _) = scope_counts(&c, 2, None);
        let w = PolymorphismWitness::Operations(OpsWitness {
            scope: WitnessScope::Full,
            h_n: 2,
            scopes,
            level_info: None,
            tables: alloc::vec![OpTable {
                symbol: "f".into(),
                arity: 2,
                values: alloc::vec![0, 0, 1, 1],
            }],
        });
        let err = verify_witness(&h, &c, &w).unwrap_err();
        assert!(err.message.contains("fails"), "{}", err.message);
    }

    #[test]
    fn first_projection_satisfies_its_own_identity() {
        let c = conditions::parse_condition("d(x,y,z) = x").unwrap();
        let h = single_edge();
        let (scopes, _) = scope_counts(&c, 2, None);
        let values: Vec<usize> = (0..8).map(|i| i >> 2).collect();
        let w = PolymorphismWitness::Operations(OpsWitness {
            scope: WitnessScope::Full,
            h_n: 2,
            scopes,
            level_info: None,
            tables: alloc::vec![OpTable {
                symbol: "d".into(),
                arity: 3,
                values
            }],
        });
        assert!(verify_witness(&h, &c, &w).is_ok());
    }

    #[test]
    fn subset_mask_enumeration() {
        let masks = subset_masks(&[0, 1, 2], 2, 0, 1 << 10).unwrap();
        assert_eq!(masks, alloc::vec![0b001, 0b010, 0b011, 0b100, 0b101, 0b110]);
        let masks = subset_masks(&[0, 1, 2], 5, 0, 1 << 10).unwrap();
        assert_eq!(masks.len(), 7);
        assert!(subset_masks(&[0, 1, 2, 3], 4, 0, 10).is_err());
    }
}
