//! Connected graphs on `n <= 7` vertices, one per isomorphism class.

use std::collections::HashMap;

use super::iso::{are_isomorphic, invariant_hash};
use super::Graph;
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Isomorphism classes bucketed by invariant hash.
#[derive(Default)]
struct ClassSet {
    buckets: HashMap<u64, Vec<usize>>,
    graphs: Vec<Graph>,
}

impl ClassSet {
    fn insert(&mut self, g: Graph) {
        let key = invariant_hash(&g);
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| are_isomorphic(&self.graphs[i], &g)) {
            return;
        }
        bucket.push(self.graphs.len());
        self.graphs.push(g);
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidParameter(format!(
            "enumeration supports n <= {MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    Ok(())
}

/// Every connected graph on `n + 1` vertices arises from one on `n` vertices
/// by attaching a new vertex to a nonempty neighbour set (delete a leaf of a
/// spanning tree to see this), so classes are grown one vertex at a time.
///
/// Output is sorted by edge count, then by graph6 string.
pub fn enumerate_connected(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::empty(1)];
    for k in 1..n {
        let mut next = ClassSet::default();
        for g in &level {
            for mask in 1u32..(1 << k) {
                let mut h = g.clone();
                let v = h.add_vertex(None);
                for u in (0..k).filter(|u| mask >> u & 1 == 1) {
                    h.add_edge(u, v)?;
                }
                next.insert(h);
            }
        }
        level = next.graphs;
    }
    sort_canonically(&mut level);
    Ok(level)
}

/// Labelled brute force: all `2^(n(n-1)/2)` graphs, filtered to connected
/// ones and deduplicated by isomorphism. Independent of
/// [`enumerate_connected`]; practical up to `n = 6`.
pub fn enumerate_connected_bruteforce(n: usize) -> Result<Vec<Graph>> {
    check_order(n)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut classes = ClassSet::default();
    for mask in 0u64..(1u64 << pairs.len()) {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edge_list(n, &edges)?;
        if g.is_connected() {
            classes.insert(g);
        }
    }
    let mut out = classes.graphs;
    sort_canonically(&mut out);
    Ok(out)
}

fn sort_canonically(graphs: &mut [Graph]) {
    graphs.sort_by_cached_key(|g| (g.edge_count(), super::emit_graph6(g)));
}
