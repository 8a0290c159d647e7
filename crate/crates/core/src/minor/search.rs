//! Exact minor containment by branch-set partition search.
//!
//! For a connected host, `pattern ≼ host` iff the host vertices split into
//! `|V(pattern)|` connected parts whose quotient contains the pattern as a
//! spanning subgraph: any model can be grown until its branch sets cover the
//! host. Host vertices are labelled in DFS preorder, so each vertex after
//! a root already has a labelled neighbour.
//!
//! Edge accounting drives the main prune. A complete partition uses exactly
//! `n_h - n_p` edges as part spanning trees and `|E(pattern)|` edges to
//! realise the pattern, so `slack = |E(host)| - n_h + n_p - |E(pattern)|`
//! other edges remain. Every cycle edge inside a part and every edge between
//! parts that does not realise a new pattern edge is waste; once waste
//! exceeds slack the branch is dead.
//!
//! For a disconnected host, whole components may be left out. Each such
//! component raises the slack by one and contributes its edges to the waste.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use super::levels;
use super::quotient::{self, Budget};
use super::witness::MinorWitness;
use crate::error::{Error, Result};
use crate::graph::{automorphism_orbits, Graph};

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;
pub const MAX_SEARCH_ORDER: usize = 128;

const NONE: usize = usize::MAX;
const MEMO_CAPACITY: usize = 1 << 22;
const GROWTH_CHECK_LIMIT: usize = 4;
/// Largest `n_h - n_p` handled by contracting edge sets directly.
const QUOTIENT_LIMIT: usize = 3;
/// Partition-search nodes spent before switching to the contraction search.
const PARTITION_FIRST: u64 = 20_000;

#[derive(Clone, Debug)]
pub struct MinorSearch {
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
}

impl Default for MinorSearch {
    fn default() -> Self {
        MinorSearch {
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
        }
    }
}

/// Result of a search plus the number of search nodes it visited.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub witness: Option<MinorWitness>,
    pub nodes: u64,
}

impl MinorSearch {
    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn with_time_budget(mut self, limit: Duration) -> Self {
        self.time_budget = Some(limit);
        self
    }

    pub fn find(&self, host: &Graph, pattern: &Graph) -> Result<Option<MinorWitness>> {
        self.run(host, pattern).map(|r| r.witness)
    }

    pub fn run(&self, host: &Graph, pattern: &Graph) -> Result<SearchReport> {
        let none = |nodes| Ok(SearchReport { witness: None, nodes });
        if host.n() > MAX_SEARCH_ORDER || pattern.n() > MAX_SEARCH_ORDER {
            return Err(Error::TooLarge(format!(
                "minor search supports graphs up to {MAX_SEARCH_ORDER} vertices"
            )));
        }
        if pattern.n() == 0 {
            return Ok(SearchReport {
                witness: Some(MinorWitness::default()),
                nodes: 0,
            });
        }
        if pattern.n() > host.n()
            || pattern.edge_count() > host.edge_count()
            || pattern.cycle_rank() > host.cycle_rank()
        {
            return none(0);
        }
        let deadline = self.time_budget.map(|d| Instant::now() + d);
        if host.is_connected() && host.n() - pattern.n() <= QUOTIENT_LIMIT {
            let mut budget = Budget {
                nodes: 0,
                limit: self.node_budget,
                deadline,
            };
            return match quotient::search(host, pattern, &mut budget) {
                Ok(sets) => Ok(SearchReport {
                    witness: sets.map(|sets| {
                        MinorWitness::from_branch_sets(host, pattern, sets).expect("quotient model realises every edge")
                    }),
                    nodes: budget.nodes,
                }),
                Err(()) => Err(Error::Undecided { nodes: budget.nodes }),
            };
        }
        // Positive answers usually come quickly from the partition search;
        // a connected host small enough for the contraction search gets only
        // a short partition run before switching.
        let fallback = host.is_connected() && host.n() <= levels::MAX_ORDER;
        let first = if fallback {
            self.node_budget.min(PARTITION_FIRST)
        } else {
            self.node_budget
        };
        let mut s = State::new(host, pattern, first, deadline);
        if !s.allow_unused && s.slack < 0 {
            return none(0);
        }
        let found = match s.dfs(0) {
            Err(Error::Undecided { nodes }) if fallback && nodes > first && first < self.node_budget => {
                let mut budget = Budget {
                    nodes,
                    limit: self.node_budget,
                    deadline,
                };
                return match levels::search(host, pattern, &mut budget) {
                    Ok(sets) => Ok(SearchReport {
                        witness: sets.map(|sets| {
                            MinorWitness::from_branch_sets(host, pattern, sets)
                                .expect("contraction model realises every edge")
                        }),
                        nodes: budget.nodes,
                    }),
                    Err(()) => Err(Error::Undecided { nodes: budget.nodes }),
                };
            }
            other => other?,
        };
        let nodes = s.nodes;
        if !found {
            return none(nodes);
        }
        let sets = s.part.iter().map(|&bits| ones(bits).collect::<Vec<_>>()).collect();
        let witness = MinorWitness::from_branch_sets(host, pattern, sets).expect("search realises every pattern edge");
        Ok(SearchReport {
            witness: Some(witness),
            nodes,
        })
    }
}

/// `Some(witness)` iff `pattern ≼ host`, with the default budget.
pub fn has_minor(host: &Graph, pattern: &Graph) -> Result<Option<MinorWitness>> {
    MinorSearch::default().find(host, pattern)
}

pub fn is_minor(host: &Graph, pattern: &Graph) -> Result<bool> {
    has_minor(host, pattern).map(|w| w.is_some())
}

fn bit(v: usize) -> u128 {
    1u128 << v
}

fn ones(mut bits: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            return None;
        }
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        Some(v)
    })
}

fn count(bits: u128) -> i64 {
    bits.count_ones() as i64
}

/// Union-find with undo, used to count cycle edges inside parts.
struct RollbackUf {
    parent: Vec<usize>,
    size: Vec<usize>,
    history: Vec<(usize, usize)>,
}

impl RollbackUf {
    fn new(n: usize) -> Self {
        RollbackUf {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push((b, a));
        true
    }

    fn mark(&self) -> usize {
        self.history.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.history.len() > mark {
            let (b, a) = self.history.pop().expect("non-empty history");
            self.parent[b] = b;
            self.size[a] -= self.size[b];
        }
    }
}

/// Whether at most `k` vertices touch every edge in `edges`.
fn has_cover(edges: &[(usize, usize)], k: usize) -> bool {
    let Some(&(a, b)) = edges.first() else {
        return true;
    };
    if k == 0 {
        return false;
    }
    [a, b].iter().any(|&x| {
        let rest: Vec<_> = edges.iter().copied().filter(|&(u, v)| u != x && v != x).collect();
        has_cover(&rest, k - 1)
    })
}

/// Vertex order for one component in which every vertex after the first has
/// an earlier neighbour, chosen greedily to keep the set of labelled
/// vertices with unlabelled neighbours small.
fn narrow_order(hadj: &[u128], comp: &[usize]) -> Vec<usize> {
    let comp_mask = comp.iter().fold(0u128, |m, &v| m | bit(v));
    let width = |placed: u128| ones(placed).filter(|&x| hadj[x] & comp_mask & !placed != 0).count();
    let mut roots = comp.to_vec();
    roots.sort_by_key(|&v| (count(hadj[v]), v));
    roots.truncate(12);
    let mut best: Option<((usize, usize), Vec<usize>)> = None;
    for root in roots {
        let mut placed = bit(root);
        let mut order = vec![root];
        let (mut widest, mut total) = (0, 0);
        while placed != comp_mask {
            let reach = ones(placed).fold(0u128, |m, x| m | hadj[x]) & comp_mask & !placed;
            let (w, _, v) = ones(reach)
                .map(|c| (width(placed | bit(c)), std::cmp::Reverse(count(hadj[c] & placed)), c))
                .min()
                .expect("component is connected");
            placed |= bit(v);
            order.push(v);
            widest = widest.max(w);
            total += w;
        }
        if best.as_ref().is_none_or(|(score, _)| (widest, total) < *score) {
            best = Some(((widest, total), order));
        }
    }
    best.expect("component is nonempty").1
}

struct Undo {
    uf_mark: usize,
    waste: i64,
    comps: i64,
    realized: Vec<usize>,
}

struct State {
    np: usize,
    unused: usize,
    hadj: Vec<u128>,
    padj: Vec<u128>,
    order: Vec<usize>,
    pos: Vec<usize>,
    /// Labelled vertices that still have unlabelled neighbours, per depth.
    frontier: Vec<Vec<usize>>,
    pattern_edge_list: Vec<(usize, usize)>,
    /// Signatures of partial assignments known to have no completion.
    memo: HashSet<Vec<u64>>,
    /// Number of host components whose root comes after each position.
    later_roots: Vec<i64>,
    is_root: Vec<bool>,
    label: Vec<usize>,
    part: Vec<u128>,
    unassigned: u128,
    realized: Vec<u128>,
    realized_count: usize,
    pattern_edges: usize,
    waste: i64,
    slack: i64,
    comps: Vec<i64>,
    /// Pairs (member, unassigned neighbour) per part.
    open: Vec<i64>,
    empty_parts: usize,
    uf: RollbackUf,
    allow_unused: bool,
    twins_before: Vec<u128>,
    root_labels: Vec<usize>,
    by_degree: Vec<usize>,
    nodes: u64,
    budget: u64,
    deadline: Option<Instant>,
}

impl State {
    fn new(host: &Graph, pattern: &Graph, budget: u64, deadline: Option<Instant>) -> Self {
        let nh = host.n();
        let np = pattern.n();
        let mask = |g: &Graph, v: usize| g.neighbors(v).iter().fold(0u128, |m, &w| m | bit(w));
        let hadj: Vec<u128> = (0..nh).map(|v| mask(host, v)).collect();
        let padj: Vec<u128> = (0..np).map(|v| mask(pattern, v)).collect();

        // Components largest first, each in a small-frontier order.
        let mut components = host.components();
        components.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let mut order = Vec::with_capacity(nh);
        let mut is_root = Vec::with_capacity(nh);
        for comp in &components {
            for (i, v) in narrow_order(&hadj, comp).into_iter().enumerate() {
                order.push(v);
                is_root.push(i == 0);
            }
        }
        let mut pos = vec![0; nh];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut later_roots = vec![0i64; nh];
        let mut acc = 0;
        for pos in (0..nh).rev() {
            later_roots[pos] = acc;
            if is_root[pos] {
                acc += 1;
            }
        }

        let frontier = (0..=nh)
            .map(|d| {
                let later = order[d..].iter().fold(0u128, |m, &v| m | bit(v));
                order[..d].iter().copied().filter(|&v| hadj[v] & later != 0).collect()
            })
            .collect();

        let twins_before = (0..np)
            .map(|p| {
                (0..p)
                    .filter(|&q| padj[p] & !bit(q) == padj[q] & !bit(p))
                    .fold(0u128, |m, q| m | bit(q))
            })
            .collect();
        let orbits = automorphism_orbits(pattern);
        let mut root_labels: Vec<usize> = (0..np).filter(|&p| orbits[p] == p).collect();
        root_labels.sort_by_key(|&p| (std::cmp::Reverse(pattern.degree(p)), p));
        let mut by_degree: Vec<usize> = (0..np).collect();
        by_degree.sort_by_key(|&p| (std::cmp::Reverse(pattern.degree(p)), p));

        let all = if nh == 128 { u128::MAX } else { bit(nh) - 1 };
        State {
            np,
            unused: np,
            hadj,
            padj,
            order,
            pos,
            frontier,
            pattern_edge_list: pattern.edges(),
            memo: HashSet::new(),
            later_roots,
            is_root,
            label: vec![NONE; nh],
            part: vec![0; np],
            unassigned: all,
            realized: vec![0; np],
            realized_count: 0,
            pattern_edges: pattern.edge_count(),
            waste: 0,
            slack: host.edge_count() as i64 - nh as i64 + np as i64 - pattern.edge_count() as i64,
            comps: vec![0; np],
            open: vec![0; np],
            empty_parts: np,
            uf: RollbackUf::new(nh),
            allow_unused: components.len() > 1,
            twins_before,
            root_labels,
            by_degree,
            nodes: 0,
            budget,
            deadline,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        let over_time = self.nodes & 0xfff == 0 && self.deadline.is_some_and(|d| Instant::now() > d);
        if self.nodes > self.budget || over_time {
            return Err(Error::Undecided { nodes: self.nodes });
        }
        Ok(())
    }

    fn candidates(&self, depth: usize) -> Vec<usize> {
        let v = self.order[depth];
        let mut out = Vec::new();
        if self.empty_parts == self.np {
            out.extend(self.root_labels.iter().copied());
            if self.allow_unused && self.is_root[depth] {
                out.push(self.unused);
            }
            return out;
        }
        let mut earlier: Vec<usize> = ones(self.hadj[v] & !self.unassigned).collect();
        earlier.sort_by_key(|&u| std::cmp::Reverse(self.pos[u]));
        if let Some(&parent) = earlier.first() {
            if self.label[parent] == self.unused {
                return vec![self.unused];
            }
        }
        for &u in &earlier {
            let q = self.label[u];
            if !out.contains(&q) {
                out.push(q);
            }
        }
        for &p in &self.by_degree {
            // Among interchangeable pattern vertices, open the smallest first.
            let twin_free = ones(self.twins_before[p]).any(|q| self.part[q] == 0);
            if self.part[p] == 0 && !twin_free {
                out.push(p);
            }
        }
        for p in 0..self.np {
            if self.part[p] != 0 && !out.contains(&p) && self.open[p] > 0 {
                out.push(p);
            }
        }
        if self.allow_unused && self.is_root[depth] {
            out.push(self.unused);
        }
        out
    }

    fn assign(&mut self, v: usize, p: usize) -> Undo {
        let b = bit(v);
        self.unassigned &= !b;
        self.label[v] = p;
        let nb = self.hadj[v];
        let earlier = nb & !self.unassigned;
        for u in ones(earlier) {
            let q = self.label[u];
            if q != self.unused {
                self.open[q] -= 1;
            }
        }
        let mut undo = Undo {
            uf_mark: self.uf.mark(),
            waste: 0,
            comps: 0,
            realized: Vec::new(),
        };
        if p == self.unused {
            self.slack += 1;
            undo.waste = count(earlier);
            self.waste += undo.waste;
            return undo;
        }
        if self.part[p] == 0 {
            self.empty_parts -= 1;
        }
        self.part[p] |= b;
        self.open[p] += count(nb & self.unassigned);
        let same = earlier & self.part[p];
        let mut merged = 0;
        for u in ones(same) {
            if self.uf.union(v, u) {
                merged += 1;
            }
        }
        undo.waste += count(same) - merged;
        undo.comps = 1 - merged;
        self.comps[p] += undo.comps;
        for u in ones(earlier & !self.part[p]) {
            let q = self.label[u];
            if q != self.unused && self.padj[p] & bit(q) != 0 && self.realized[p] & bit(q) == 0 {
                self.realized[p] |= bit(q);
                self.realized[q] |= bit(p);
                self.realized_count += 1;
                undo.realized.push(q);
            } else {
                undo.waste += 1;
            }
        }
        self.waste += undo.waste;
        undo
    }

    fn unassign(&mut self, v: usize, p: usize, undo: Undo) {
        let b = bit(v);
        let nb = self.hadj[v];
        let earlier = nb & !self.unassigned;
        self.waste -= undo.waste;
        if p == self.unused {
            self.slack -= 1;
        } else {
            for q in undo.realized {
                self.realized[p] &= !bit(q);
                self.realized[q] &= !bit(p);
                self.realized_count -= 1;
            }
            self.comps[p] -= undo.comps;
            self.uf.rollback(undo.uf_mark);
            self.open[p] -= count(nb & self.unassigned);
            self.part[p] &= !b;
            if self.part[p] == 0 {
                self.empty_parts += 1;
            }
        }
        for u in ones(earlier) {
            let q = self.label[u];
            if q != self.unused {
                self.open[q] += 1;
            }
        }
        self.label[v] = NONE;
        self.unassigned |= b;
    }

    /// A part with no unassigned neighbours can never change again, so it
    /// must already be connected with all its pattern edges realised.
    fn demand_ok(&self, q: usize) -> bool {
        self.open[q] > 0 || (self.comps[q] == 1 && self.padj[q] & !self.realized[q] == 0)
    }

    /// Only `growth` more vertices can join parts that already exist (the
    /// rest must start the empty ones). A split part needs one join per
    /// extra component, and every unrealised pattern edge between two
    /// existing parts needs a join into one of its ends, so those edges must
    /// have a small vertex cover.
    fn growth_ok(&self, growth: usize) -> bool {
        if growth > GROWTH_CHECK_LIMIT {
            return true;
        }
        let nonempty = (0..self.np).fold(0u128, |m, q| if self.part[q] != 0 { m | bit(q) } else { m });
        let mut budget = growth as i64;
        let mut growing = 0u128;
        for q in ones(nonempty) {
            if self.comps[q] > 1 {
                budget -= self.comps[q] - 1;
                growing |= bit(q);
            }
        }
        if budget < 0 {
            return false;
        }
        let mut missing = Vec::new();
        for q in ones(nonempty & !growing) {
            for r in ones(self.padj[q] & nonempty & !growing & !self.realized[q]) {
                if q < r {
                    missing.push((q, r));
                }
            }
        }
        has_cover(&missing, budget as usize)
    }

    fn reconnectable(&self, q: usize) -> bool {
        let allowed = self.part[q] | self.unassigned;
        let start = self.part[q].trailing_zeros() as usize;
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for x in ones(frontier) {
                next |= self.hadj[x];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        self.part[q] & !seen == 0
    }

    fn feasible(&self, depth: usize, v: usize, p: usize) -> bool {
        if self.waste > self.slack + self.later_roots[depth] {
            return false;
        }
        let remaining = self.order.len() - depth - 1;
        if self.empty_parts > remaining {
            return false;
        }
        if !self.growth_ok(remaining - self.empty_parts) {
            return false;
        }
        if p != self.unused && !self.demand_ok(p) {
            return false;
        }
        for u in ones(self.hadj[v] & !self.unassigned) {
            let q = self.label[u];
            if q != self.unused && q != p && !self.demand_ok(q) {
                return false;
            }
        }
        (0..self.np).all(|q| self.comps[q] < 2 || self.reconnectable(q))
    }

    fn complete(&self) -> bool {
        self.empty_parts == 0 && self.realized_count == self.pattern_edges && self.comps.iter().all(|&c| c == 1)
    }

    /// Everything the rest of the search can observe: the labels and part
    /// connectivity on the frontier, which parts are open, which pattern
    /// edges are realised and the spare edge budget.
    fn signature(&self, depth: usize) -> Vec<u64> {
        let mut key = Vec::with_capacity(8);
        key.push(depth as u64 | ((self.waste - self.slack + (1 << 20)) as u64) << 16);
        let nonempty = (0..self.np).fold(0u128, |m, q| if self.part[q] != 0 { m | bit(q) } else { m });
        key.push(nonempty as u64);
        key.push((nonempty >> 64) as u64);
        let mut word = 0u64;
        for (i, &(a, b)) in self.pattern_edge_list.iter().enumerate() {
            if self.realized[a] & bit(b) != 0 {
                word |= 1 << (i % 64);
            }
            if i % 64 == 63 {
                key.push(word);
                word = 0;
            }
        }
        key.push(word);
        let front = &self.frontier[depth];
        let roots: Vec<usize> = front.iter().map(|&x| self.uf.find(x)).collect();
        let mut word = 0u64;
        for (i, &x) in front.iter().enumerate() {
            let class = roots.iter().position(|&r| r == roots[i]).expect("own root");
            let entry = (self.label[x] as u64) << 8 | class as u64;
            word |= entry << (16 * (i % 4));
            if i % 4 == 3 {
                key.push(word);
                word = 0;
            }
        }
        key.push(word);
        key
    }

    fn dfs(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(self.complete());
        }
        let key = (depth > 0).then(|| self.signature(depth));
        if key.as_ref().is_some_and(|k| self.memo.contains(k)) {
            return Ok(false);
        }
        let v = self.order[depth];
        for p in self.candidates(depth) {
            self.tick()?;
            let undo = self.assign(v, p);
            if self.feasible(depth, v, p) && self.dfs(depth + 1)? {
                return Ok(true);
            }
            self.unassign(v, p, undo);
        }
        if let Some(k) = key {
            if self.memo.len() < MEMO_CAPACITY {
                self.memo.insert(k);
            }
        }
        Ok(false)
    }
}
