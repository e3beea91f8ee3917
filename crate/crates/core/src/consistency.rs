//! Arc consistency (AC-3) and homomorphism search with maintained arc
//! consistency (MAC).
//!
//! Candidate lists are bitsets over the template's vertex set. The worklist is
//! a queue of directed arcs, one per edge per pruning direction; an arc is
//! re-enqueued only when the list it reads from has shrunk. Search removals
//! are logged on a trail so backtracking restores lists in O(1) per removal.

use crate::digraph::Digraph;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Candidate lists `L : G -> subsets of H`, stored as fixed-width bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainLists {
    n_vars: usize,
    domain: usize,
    width: usize,
    words: Vec<u64>,
    sizes: Vec<u32>,
}

/// A list value outside `0..domain`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidListValue {
    pub var: usize,
    pub value: usize,
    pub domain: usize,
}

impl fmt::Display for InvalidListValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "list for vertex {} contains {} outside the template domain 0..{}",
            self.var, self.value, self.domain
        )
    }
}

impl DomainLists {
    /// Every list equal to the full template vertex set.
    pub fn full(n_vars: usize, domain: usize) -> DomainLists {
        let width = domain.div_ceil(64).max(1);
        let mut words = vec![0u64; n_vars * width];
        for var in 0..n_vars {
            for d in 0..domain {
                words[var * width + d / 64] |= 1 << (d % 64);
            }
        }
        DomainLists {
            n_vars,
            domain,
            width,
            words,
            sizes: vec![domain as u32; n_vars],
        }
    }

    /// Builds lists from explicit sets, validating every member.
    pub fn from_sets(domain: usize, sets: &[Vec<usize>]) -> Result<DomainLists, InvalidListValue> {
        let mut lists = DomainLists::full(sets.len(), domain);
        for words in lists.words.iter_mut() {
            *words = 0;
        }
        lists.sizes.iter_mut().for_each(|s| *s = 0);
        for (var, set) in sets.iter().enumerate() {
            for &value in set {
                if value >= domain {
                    return Err(InvalidListValue { var, value, domain });
                }
                if !lists.contains(var, value) {
                    lists.words[var * lists.width + value / 64] |= 1 << (value % 64);
                    lists.sizes[var] += 1;
                }
            }
        }
        Ok(lists)
    }

    pub fn var_count(&self) -> usize {
        self.n_vars
    }

    pub fn domain_size(&self) -> usize {
        self.domain
    }

    pub fn size(&self, var: usize) -> usize {
        self.sizes[var] as usize
    }

    pub fn contains(&self, var: usize, value: usize) -> bool {
        self.words[var * self.width + value / 64] >> (value % 64) & 1 == 1
    }

    /// Removes `value`; returns whether it was present.
    pub fn remove(&mut self, var: usize, value: usize) -> bool {
        let w = &mut self.words[var * self.width + value / 64];
        let bit = 1u64 << (value % 64);
        if *w & bit == 0 {
            return false;
        }
        *w &= !bit;
        self.sizes[var] -= 1;
        true
    }

    /// Intersects the list with `{value}`; returns whether the result is
    /// nonempty (i.e. `value` was present).
    pub fn pin(&mut self, var: usize, value: usize) -> bool {
        if !self.contains(var, value) {
            for w in self.words_mut(var) {
                *w = 0;
            }
            self.sizes[var] = 0;
            return false;
        }
        for w in self.words_mut(var) {
            *w = 0;
        }
        self.words[var * self.width + value / 64] = 1 << (value % 64);
        self.sizes[var] = 1;
        true
    }

    pub fn values(&self, var: usize) -> impl Iterator<Item = usize> + '_ {
        let base = var * self.width;
        (0..self.width).flat_map(move |w| {
            let mut bits = self.words[base + w];
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    /// Smallest member, if any.
    pub fn first(&self, var: usize) -> Option<usize> {
        self.values(var).next()
    }

    pub fn to_sets(&self) -> Vec<Vec<usize>> {
        (0..self.n_vars).map(|v| self.values(v).collect()).collect()
    }

    pub fn all_singletons(&self) -> bool {
        self.sizes.iter().all(|&s| s == 1)
    }

    fn words_mut(&mut self, var: usize) -> &mut [u64] {
        &mut self.words[var * self.width..(var + 1) * self.width]
    }

    fn word(&self, var: usize, w: usize) -> u64 {
        self.words[var * self.width + w]
    }
}

/// A vertex map `G -> H` that preserves every edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(map: Vec<usize>) -> Homomorphism {
        Homomorphism { map }
    }

    pub fn get(&self, v: usize) -> usize {
        self.map[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        for &w in &self.map {
            if seen[w] {
                return false;
            }
            seen[w] = true;
        }
        true
    }

    /// Checks the homomorphism property on every edge of `g`.
    pub fn verify(&self, g: &Digraph, h: &Digraph) -> bool {
        self.map.len() == g.vertex_count()
            && self.map.iter().all(|&w| w < h.vertex_count())
            && g.edges()
                .iter()
                .all(|&(x, y)| h.has_edge(self.map[x], self.map[y]))
    }
}

/// Outcome of arc-consistency propagation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AcResult {
    /// The unique maximal arc-consistent sublists of the input lists.
    Consistent(DomainLists),
    /// Some list emptied; no homomorphism respects the input lists.
    Reject,
}

impl AcResult {
    pub fn is_reject(&self) -> bool {
        matches!(self, AcResult::Reject)
    }
}

/// Outcome of the MAC search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchResult {
    Found(Homomorphism),
    NoSolution,
    /// The step budget (counted in list-removal operations) ran out.
    Timeout,
}

impl SearchResult {
    pub fn found(&self) -> Option<&Homomorphism> {
        match self {
            SearchResult::Found(h) => Some(h),
            _ => None,
        }
    }
}

/// Search options. The step budget counts list-removal operations across
/// propagation and search combined.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOpts {
    pub step_budget: Option<u64>,
}

enum Propagation {
    Consistent,
    Reject,
    Budget,
}

/// AC-3 engine with a removal trail for incremental backtracking.
struct Engine<'a> {
    g: &'a Digraph,
    width: usize,
    out_masks: Vec<u64>,
    in_masks: Vec<u64>,
    lists: DomainLists,
    queue: VecDeque<u32>,
    in_queue: Vec<bool>,
    /// tasks to enqueue when the list of a given variable shrinks
    on_change: Vec<Vec<u32>>,
    trail: Vec<(u32, u32, u64)>,
    steps: u64,
    budget: Option<u64>,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Digraph, h: &'a Digraph, init: DomainLists, budget: Option<u64>) -> Engine<'a> {
        debug_assert_eq!(init.var_count(), g.vertex_count());
        debug_assert_eq!(init.domain_size(), h.vertex_count());
        let width = init.width;
        let mut out_masks = vec![0u64; h.vertex_count() * width];
        let mut in_masks = vec![0u64; h.vertex_count() * width];
        for u in 0..h.vertex_count() {
            for &v in h.out_neighbors(u) {
                out_masks[u * width + v / 64] |= 1 << (v % 64);
            }
            for &v in h.in_neighbors(u) {
                in_masks[u * width + v / 64] |= 1 << (v % 64);
            }
        }
        // task 2e prunes the tail of edge e (reads the head's list),
        // task 2e+1 prunes the head (reads the tail's list)
        let mut on_change = vec![Vec::new(); g.vertex_count()];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            on_change[b].push(2 * e as u32);
            on_change[a].push(2 * e as u32 + 1);
        }
        Engine {
            g,
            width,
            out_masks,
            in_masks,
            lists: init,
            queue: VecDeque::new(),
            in_queue: vec![false; 2 * g.edge_count()],
            on_change,
            trail: Vec::new(),
            steps: 0,
            budget,
        }
    }

    fn enqueue(&mut self, task: u32) {
        if !self.in_queue[task as usize] {
            self.in_queue[task as usize] = true;
            self.queue.push_back(task);
        }
    }

    fn enqueue_all(&mut self) {
        for task in 0..2 * self.g.edge_count() as u32 {
            self.enqueue(task);
        }
    }

    fn enqueue_incident(&mut self, var: usize) {
        for i in 0..self.on_change[var].len() {
            let task = self.on_change[var][i];
            if !self.in_queue[task as usize] {
                self.in_queue[task as usize] = true;
                self.queue.push_back(task);
            }
        }
    }

    /// Removes from `prune`'s list every value whose support mask misses
    /// `support`'s list. Returns false if the list emptied.
    fn revise(&mut self, prune: usize, support: usize, masks_out: bool) -> bool {
        let mut changed = false;
        for w in 0..self.width {
            let mut bits = self.lists.word(prune, w);
            let mut removed = 0u64;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let value = w * 64 + b;
                let masks = if masks_out {
                    &self.out_masks
                } else {
                    &self.in_masks
                };
                let base = value * self.width;
                let mut supported = false;
                for sw in 0..self.width {
                    if masks[base + sw] & self.lists.word(support, sw) != 0 {
                        supported = true;
                        break;
                    }
                }
                if !supported {
                    removed |= 1 << b;
                }
            }
            if removed != 0 {
                self.lists.words[prune * self.width + w] &= !removed;
                self.lists.sizes[prune] -= removed.count_ones();
                self.trail.push((prune as u32, w as u32, removed));
                self.steps += removed.count_ones() as u64;
                changed = true;
            }
        }
        if changed {
            if self.lists.sizes[prune] == 0 {
                return false;
            }
            self.enqueue_incident(prune);
        }
        true
    }

    fn propagate(&mut self) -> Propagation {
        while let Some(task) = self.queue.pop_front() {
            self.in_queue[task as usize] = false;
            let e = (task / 2) as usize;
            let (a, b) = self.g.edges()[e];
            let ok = if task % 2 == 0 {
                // values of a need an out-neighbor in L(b)
                self.revise(a, b, true)
            } else {
                // values of b need an in-neighbor in L(a)
                self.revise(b, a, false)
            };
            if !ok {
                self.queue.clear();
                self.in_queue.iter_mut().for_each(|q| *q = false);
                return Propagation::Reject;
            }
            if let Some(budget) = self.budget {
                if self.steps > budget {
                    return Propagation::Budget;
                }
            }
        }
        Propagation::Consistent
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (var, w, removed) = self.trail.pop().unwrap();
            self.lists.words[var as usize * self.width + w as usize] |= removed;
            self.lists.sizes[var as usize] += removed.count_ones();
        }
    }

    /// Removes a single value during search, logging it on the trail.
    fn remove_logged(&mut self, var: usize, value: usize) {
        if self.lists.remove(var, value) {
            self.trail
                .push((var as u32, (value / 64) as u32, 1 << (value % 64)));
            self.steps += 1;
            self.enqueue_incident(var);
        }
    }

    /// Pins `var` to `value`, logging every removal.
    fn assign(&mut self, var: usize, value: usize) {
        debug_assert!(self.lists.contains(var, value));
        let mut changed = false;
        for w in 0..self.width {
            let keep = if value / 64 == w {
                1u64 << (value % 64)
            } else {
                0
            };
            let removed = self.lists.word(var, w) & !keep;
            if removed != 0 {
                self.lists.words[var * self.width + w] &= keep;
                self.lists.sizes[var] -= removed.count_ones();
                self.trail.push((var as u32, w as u32, removed));
                self.steps += removed.count_ones() as u64;
                changed = true;
            }
        }
        if changed {
            self.enqueue_incident(var);
        }
    }

    /// Min-domain variable with list size > 1, ties broken by smallest id.
    fn pick_var(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.lists.n_vars {
            let s = self.lists.size(v);
            if s > 1 && best.map_or(true, |(bs, _)| s < bs) {
                best = Some((s, v));
                if s == 2 {
                    break;
                }
            }
        }
        best.map(|(_, v)| v)
    }
}

/// Runs arc consistency to its unique fixed point. `Reject` is a result, not a
/// failure: it certifies that no homomorphism respects the initial lists.
pub fn arc_consistency(g: &Digraph, h: &Digraph, init: DomainLists) -> AcResult {
    let mut engine = Engine::new(g, h, init, None);
    engine.enqueue_all();
    match engine.propagate() {
        Propagation::Consistent => AcResult::Consistent(engine.lists),
        Propagation::Reject => AcResult::Reject,
        Propagation::Budget => unreachable!("no budget configured"),
    }
}

/// Convenience: arc consistency from full lists.
pub fn arc_consistency_full(g: &Digraph, h: &Digraph) -> AcResult {
    arc_consistency(g, h, DomainLists::full(g.vertex_count(), h.vertex_count()))
}

struct Frame {
    var: usize,
    frame_mark: usize,
    value_mark: usize,
    active: usize,
}

/// MAC search: propagate, pick a min-domain variable, try its values in
/// ascending order with incremental propagation, and remove a value on
/// backtrack. Returns a homomorphism respecting `init` iff one exists.
pub fn find_homomorphism(
    g: &Digraph,
    h: &Digraph,
    init: DomainLists,
    opts: SearchOpts,
) -> SearchResult {
    let mut engine = Engine::new(g, h, init, opts.step_budget);
    engine.enqueue_all();
    match engine.propagate() {
        Propagation::Reject => return SearchResult::NoSolution,
        Propagation::Budget => return SearchResult::Timeout,
        Propagation::Consistent => {}
    }

    let mut stack: Vec<Frame> = Vec::new();
    'select: loop {
        let var = match engine.pick_var() {
            None => {
                let map: Vec<usize> = (0..g.vertex_count())
                    .map(|v| engine.lists.first(v).unwrap())
                    .collect();
                let hom = Homomorphism::new(map);
                assert!(
                    hom.verify(g, h),
                    "arc-consistent singleton lists must form a homomorphism"
                );
                return SearchResult::Found(hom);
            }
            Some(v) => v,
        };
        let mark = engine.trail.len();
        stack.push(Frame {
            var,
            frame_mark: mark,
            value_mark: mark,
            active: 0,
        });

        'try_value: loop {
            let top = stack.len() - 1;
            let var = stack[top].var;
            match engine.lists.first(var) {
                Some(value) => {
                    stack[top].value_mark = engine.trail.len();
                    stack[top].active = value;
                    engine.assign(var, value);
                    match engine.propagate() {
                        Propagation::Consistent => continue 'select,
                        Propagation::Budget => return SearchResult::Timeout,
                        Propagation::Reject => {
                            let mark = stack[top].value_mark;
                            engine.undo_to(mark);
                            engine.remove_logged(var, value);
                            match engine.propagate() {
                                Propagation::Consistent => continue 'try_value,
                                Propagation::Budget => return SearchResult::Timeout,
                                Propagation::Reject => {}
                            }
                            // context inconsistent: fall through to frame failure
                        }
                    }
                }
                None => {}
            }
            // frame exhausted: backtrack
            loop {
                let failed = stack.pop().expect("frame present");
                engine.undo_to(failed.frame_mark);
                let Some(parent) = stack.last() else {
                    return SearchResult::NoSolution;
                };
                let (pvar, pvalue, pmark) = (parent.var, parent.active, parent.value_mark);
                engine.undo_to(pmark);
                engine.remove_logged(pvar, pvalue);
                match engine.propagate() {
                    Propagation::Consistent => continue 'try_value,
                    Propagation::Budget => return SearchResult::Timeout,
                    Propagation::Reject => {}
                }
            }
        }
    }
}
