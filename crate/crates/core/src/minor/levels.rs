//! Exhaustive contraction search for connected hosts of at most 32 vertices.
//!
//! A connected host has the pattern as a minor iff contracting some
//! `k = n_h - n_p` edges leaves a graph with the pattern as a spanning
//! subgraph. The contractions are explored depth first, expanding a single
//! representative of each isomorphism class per level (colour refinement,
//! then an isomorphism test), so symmetric hosts collapse quickly. This is the fallback for negative
//! answers that the partition search cannot settle cheaply.

use std::collections::HashMap;

use super::quotient::{spanning_monomorphism, Budget};
use crate::graph::Graph;

pub(crate) const MAX_ORDER: usize = 32;

#[derive(Clone)]
struct Node {
    adj: Vec<u32>,
    /// Host vertices merged into each vertex.
    members: Vec<u32>,
}

pub(crate) fn search(host: &Graph, pattern: &Graph, budget: &mut Budget) -> Result<Option<Vec<Vec<usize>>>, ()> {
    debug_assert!(host.n() <= MAX_ORDER && host.is_connected());
    let start = Node {
        adj: (0..host.n())
            .map(|v| host.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
            .collect(),
        members: (0..host.n()).map(|v| 1u32 << v).collect(),
    };
    let mut walk = Walk {
        pattern,
        k: host.n() - pattern.n(),
        min_degree: (0..pattern.n()).map(|p| pattern.degree(p)).min().unwrap_or(0),
        seen: vec![HashMap::new(); host.n() - pattern.n() + 1],
        budget,
    };
    walk.dfs(&start, 0)
}

type Bucket = Vec<(Vec<u32>, Vec<u64>)>;

/// Depth-first over contraction levels. Each level keeps every class it has
/// met (bucketed by refined colours), so a class is expanded once.
struct Walk<'a, 'b> {
    pattern: &'a Graph,
    k: usize,
    min_degree: usize,
    seen: Vec<HashMap<Vec<u64>, Bucket>>,
    budget: &'b mut Budget,
}

impl Walk<'_, '_> {
    fn dfs(&mut self, node: &Node, j: usize) -> Result<Option<Vec<Vec<usize>>>, ()> {
        if j == self.k {
            let mut q = Graph::empty(node.adj.len());
            for v in 0..node.adj.len() {
                for w in ones(node.adj[v]).filter(|&w| w > v) {
                    q.add_edge(v, w).expect("in range");
                }
            }
            return Ok(spanning_monomorphism(&q, self.pattern, self.budget)?
                .map(|map| map.iter().map(|&x| ones(node.members[x]).collect()).collect()));
        }
        let left = self.k - j - 1;
        // A vertex of degree below both 3 and the pattern's minimum degree
        // can always join its first neighbour, so that is the only child.
        let forced = (0..node.adj.len())
            .find(|&v| {
                let d = node.adj[v].count_ones() as usize;
                d < self.min_degree && d <= 2
            })
            .map(|v| (v, node.adj[v].trailing_zeros() as usize));
        let mut moves: Vec<(usize, usize)> = match forced {
            Some((v, w)) => vec![(v.min(w), v.max(w))],
            None => (0..node.adj.len())
                .flat_map(|a| ones(node.adj[a]).filter(move |&b| b > a).map(move |b| (a, b)))
                .collect(),
        };
        // Contractions that lose fewer edges first.
        moves.sort_by_key(|&(a, b)| (node.adj[a] & node.adj[b]).count_ones());
        for (a, b) in moves {
            if !self.budget.tick() {
                return Err(());
            }
            let child = contract(node, a, b);
            if !promising(&child.adj, left, self.pattern.edge_count(), self.min_degree) {
                continue;
            }
            let colors = stable_colors(&child.adj);
            let mut key = colors.clone();
            key.sort_unstable();
            let bucket = self.seen[j + 1].entry(key).or_default();
            if bucket.iter().any(|(adj, c)| isomorphic(adj, c, &child.adj, &colors)) {
                continue;
            }
            bucket.push((child.adj.clone(), colors));
            if let Some(sets) = self.dfs(&child, j + 1)? {
                return Ok(Some(sets));
            }
        }
        Ok(None)
    }
}

fn ones(mut bits: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            return None;
        }
        let v = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        Some(v)
    })
}

/// Drops bit `b` and shifts the higher bits down.
fn squeeze(row: u32, b: usize) -> u32 {
    let low = (1u32 << b) - 1;
    (row & low) | ((row >> 1) & !low)
}

/// Merges `b` into `a` (`a < b`) and removes index `b`.
fn contract(node: &Node, a: usize, b: usize) -> Node {
    let n = node.adj.len();
    let mut adj = Vec::with_capacity(n - 1);
    let mut members = Vec::with_capacity(n - 1);
    for v in 0..n {
        if v == b {
            continue;
        }
        let mut row = node.adj[v];
        if v == a {
            row = (row | node.adj[b]) & !(1 << a | 1 << b);
        } else if row >> b & 1 == 1 {
            row = (row & !(1 << b)) | 1 << a;
        }
        adj.push(squeeze(row, b));
        members.push(if v == a {
            node.members[a] | node.members[b]
        } else {
            node.members[v]
        });
    }
    Node { adj, members }
}

/// Cheap necessary conditions for reaching the pattern in `left` more
/// contractions: each contraction costs at least one edge, and every vertex
/// below the pattern's minimum degree has to take part in one.
fn promising(adj: &[u32], left: usize, pattern_edges: usize, min_degree: usize) -> bool {
    let edges: usize = adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
    if edges < pattern_edges + left {
        return false;
    }
    let low = adj.iter().filter(|r| (r.count_ones() as usize) < min_degree).count();
    low <= 2 * left
}

fn mix(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn class_count(colors: &[u64]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Colour refinement with label-free hash colours, run until the number of
/// classes stops growing. Isomorphic graphs get equal colour multisets.
fn stable_colors(adj: &[u32]) -> Vec<u64> {
    let mut colors: Vec<u64> = adj.iter().map(|r| mix(r.count_ones() as u64)).collect();
    let mut classes = class_count(&colors);
    loop {
        let next: Vec<u64> = (0..adj.len())
            .map(|v| {
                let nb = ones(adj[v]).fold(0u64, |s, w| s.wrapping_add(mix(colors[w])));
                mix(colors[v] ^ mix(nb))
            })
            .collect();
        let c = class_count(&next);
        colors = next;
        if c == classes {
            return colors;
        }
        classes = c;
    }
}

/// Backtracking isomorphism test that respects the refined colours.
fn isomorphic(a: &[u32], ca: &[u64], b: &[u32], cb: &[u64]) -> bool {
    let n = a.len();
    if b.len() != n {
        return false;
    }
    // Map rare colours first, then vertices adjacent to mapped ones.
    let rarity = |c: u64| ca.iter().filter(|&&x| x == c).count();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u32;
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .min_by_key(|&v| (a[v] & placed == 0, rarity(ca[v]), v))
            .expect("unplaced vertex");
        order.push(v);
        placed |= 1 << v;
    }
    let mut map = vec![usize::MAX; n];
    extend(a, ca, b, cb, &order, 0, &mut map, 0)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &[u32],
    ca: &[u64],
    b: &[u32],
    cb: &[u64],
    order: &[usize],
    k: usize,
    map: &mut [usize],
    used: u32,
) -> bool {
    if k == order.len() {
        return true;
    }
    let v = order[k];
    // Image of v's already-mapped neighbourhood.
    let mut want = 0u32;
    let mut image = 0u32;
    for &u in &order[..k] {
        image |= 1 << map[u];
        if a[v] >> u & 1 == 1 {
            want |= 1 << map[u];
        }
    }
    for w in 0..b.len() {
        if used >> w & 1 == 1 || cb[w] != ca[v] || b[w] & image != want {
            continue;
        }
        map[v] = w;
        if extend(a, ca, b, cb, order, k + 1, map, used | 1 << w) {
            return true;
        }
    }
    map[v] = usize::MAX;
    false
}
