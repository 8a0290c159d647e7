//! Minor search for a connected host only slightly larger than the pattern.
//!
//! With `k = n_h - n_p` small, a model is a choice of `k` host edges whose
//! contraction leaves a graph containing the pattern as a spanning subgraph.
//! The contracted edge sets are enumerated as forests, quotients are
//! deduplicated up to isomorphism, and each is tested by a bitset
//! monomorphism search.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use crate::graph::{are_isomorphic, invariant_hash, Graph};

pub(crate) struct Budget {
    pub nodes: u64,
    pub limit: u64,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub(crate) fn tick(&mut self) -> bool {
        self.nodes += 1;
        let late = self.nodes & 0xfff == 0 && self.deadline.is_some_and(|d| Instant::now() > d);
        self.nodes <= self.limit && !late
    }
}

/// Outcome of the search: `Ok(Some(branch sets))`, `Ok(None)` for no
/// model, `Err(())` when the budget ran out.
pub(crate) fn search(host: &Graph, pattern: &Graph, budget: &mut Budget) -> Result<Option<Vec<Vec<usize>>>, ()> {
    let k = host.n() - pattern.n();
    let edges = host.edges();
    let mut seen_partitions = HashSet::new();
    let mut quotients: HashMap<u64, Vec<Graph>> = HashMap::new();
    let mut chosen = Vec::with_capacity(k);
    let mut found = None;
    forests(host, &edges, k, 0, &mut chosen, &mut |chosen: &[usize]| {
        if !budget.tick() {
            return Err(());
        }
        let owner = parts(host.n(), &edges, chosen);
        if !seen_partitions.insert(owner.clone()) {
            return Ok(false);
        }
        let q = quotient(host, &owner, pattern.n());
        let bucket = quotients.entry(invariant_hash(&q)).or_default();
        if bucket.iter().any(|r| are_isomorphic(r, &q)) {
            return Ok(false);
        }
        bucket.push(q.clone());
        if let Some(map) = spanning_monomorphism(&q, pattern, budget)? {
            let mut sets = vec![Vec::new(); pattern.n()];
            for (x, &class) in owner.iter().enumerate() {
                let p = map.iter().position(|&c| c == class).expect("bijection");
                sets[p].push(x);
            }
            found = Some(sets);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok(found)
}

/// Calls `visit` on every set of `k` edges (ascending indices) that forms
/// a forest. Stops early when `visit` returns `Ok(true)`.
fn forests(
    host: &Graph,
    edges: &[(usize, usize)],
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> Result<bool, ()>,
) -> Result<bool, ()> {
    if chosen.len() == k {
        return visit(chosen);
    }
    for i in start..edges.len() {
        chosen.push(i);
        if acyclic(host.n(), edges, chosen) && forests(host, edges, k, i + 1, chosen, visit)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

fn acyclic(n: usize, edges: &[(usize, usize)], chosen: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &i in chosen {
        let (a, b) = (find(&mut parent, edges[i].0), find(&mut parent, edges[i].1));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Class id per host vertex, numbered by first occurrence.
fn parts(n: usize, edges: &[(usize, usize)], chosen: &[usize]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &i in chosen {
        let (a, b) = edges[i];
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut owner = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if owner[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        owner[s] = next;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if owner[y] == usize::MAX {
                    owner[y] = next;
                    stack.push(y);
                }
            }
        }
        next += 1;
    }
    owner
}

fn quotient(host: &Graph, owner: &[usize], classes: usize) -> Graph {
    let mut q = Graph::empty(classes);
    for (a, b) in host.edges() {
        if owner[a] != owner[b] {
            q.add_edge(owner[a], owner[b]).expect("classes are in range");
        }
    }
    q
}

/// Bijection `map[p] = q-vertex` carrying every pattern edge onto an edge of
/// `q`, for graphs of equal order.
pub(crate) fn spanning_monomorphism(q: &Graph, pattern: &Graph, budget: &mut Budget) -> Result<Option<Vec<usize>>, ()> {
    let n = q.n();
    debug_assert_eq!(n, pattern.n());
    let mut qd = q.degree_sequence();
    let pd = pattern.degree_sequence();
    if qd.iter().zip(&pd).any(|(a, b)| a < b) {
        return Ok(None);
    }
    qd.clear();
    let qadj: Vec<u128> = (0..n)
        .map(|v| q.neighbors(v).iter().fold(0u128, |m, &w| m | 1 << w))
        .collect();

    // Pattern order: highest degree first, then always the vertex with the
    // most already-ordered neighbours.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&p| !placed[p])
            .max_by_key(|&p| {
                let linked = pattern.neighbors(p).iter().filter(|&&w| placed[w]).count();
                (linked, pattern.degree(p), std::cmp::Reverse(p))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    let by_degree: Vec<u128> = (0..=n)
        .map(|d| (0..n).filter(|&v| q.degree(v) >= d).fold(0u128, |m, v| m | 1 << v))
        .collect();

    let mut map = vec![usize::MAX; n];
    #[allow(clippy::too_many_arguments)]
    fn extend(
        depth: usize,
        order: &[usize],
        pattern: &Graph,
        qadj: &[u128],
        by_degree: &[u128],
        used: u128,
        map: &mut [usize],
        budget: &mut Budget,
    ) -> Result<bool, ()> {
        if depth == order.len() {
            return Ok(true);
        }
        let p = order[depth];
        let mut cand = by_degree[pattern.degree(p).min(by_degree.len() - 1)] & !used;
        for &w in pattern.neighbors(p) {
            if map[w] != usize::MAX {
                cand &= qadj[map[w]];
            }
        }
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if !budget.tick() {
                return Err(());
            }
            map[p] = x;
            if extend(depth + 1, order, pattern, qadj, by_degree, used | 1 << x, map, budget)? {
                return Ok(true);
            }
        }
        map[p] = usize::MAX;
        Ok(false)
    }
    if extend(0, &order, pattern, &qadj, &by_degree, 0, &mut map, budget)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}
