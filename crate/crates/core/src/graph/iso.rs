//! Isomorphism by colour refinement plus individualisation.
//!
//! Both graphs are refined as one disjoint union so colour ids are directly
//! comparable. Intended for graphs of a few dozen vertices; highly regular
//! inputs can degrade towards factorial time.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use super::Graph;

/// Refines `colors` over the adjacency `adj` to the coarsest equitable
/// partition. New colour ids are ranks of sorted signatures, so the result
/// is isomorphism-invariant.
fn refine(adj: &[&[usize]], colors: &mut Vec<u32>) {
    let mut distinct = count_distinct(colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<u32> = adj[v].iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(u32, Vec<u32>), u32> = BTreeMap::new();
        for s in &sigs {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i as u32;
        }
        let next: Vec<u32> = sigs.iter().map(|s| ranks[s]).collect();
        let d = ranks.len();
        *colors = next;
        if d == distinct {
            return;
        }
        distinct = d;
    }
}

fn count_distinct(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Isomorphism-invariant fingerprint (equal for isomorphic graphs).
pub fn invariant_hash(g: &Graph) -> u64 {
    let adj: Vec<&[usize]> = (0..g.n()).map(|v| g.neighbors(v)).collect();
    let mut colors: Vec<u32> = (0..g.n()).map(|v| g.degree(v) as u32).collect();
    refine(&adj, &mut colors);
    let mut sig: Vec<(u32, Vec<u32>)> = (0..g.n())
        .map(|v| {
            let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
            nb.sort_unstable();
            (colors[v], nb)
        })
        .collect();
    sig.sort();
    let mut h = DefaultHasher::new();
    (g.n(), g.edge_count(), sig).hash(&mut h);
    h.finish()
}

struct Union<'a> {
    adj: Vec<&'a [usize]>,
    offset: usize,
    shifted: Vec<Vec<usize>>,
}

impl<'a> Union<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        let offset = g.n();
        let shifted: Vec<Vec<usize>> = (0..h.n())
            .map(|v| h.neighbors(v).iter().map(|&w| w + offset).collect())
            .collect();
        Union {
            adj: (0..g.n()).map(|v| g.neighbors(v)).collect(),
            offset,
            shifted,
        }
    }

    fn adjacency(&self) -> Vec<&[usize]> {
        let mut out = self.adj.clone();
        out.extend(self.shifted.iter().map(Vec::as_slice));
        out
    }
}

/// Colour classes must have equal size on both sides.
fn balanced(colors: &[u32], offset: usize) -> bool {
    let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
    for (v, &c) in colors.iter().enumerate() {
        *counts.entry(c).or_default() += if v < offset { 1 } else { -1 };
    }
    counts.values().all(|&c| c == 0)
}

fn search(g: &Graph, h: &Graph, adj: &[&[usize]], offset: usize, colors: Vec<u32>) -> Option<Vec<usize>> {
    if !balanced(&colors, offset) {
        return None;
    }
    // Smallest non-singleton class on the g side.
    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in &colors[..offset] {
        *sizes.entry(c).or_default() += 1;
    }
    let target = sizes
        .iter()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(&c, &s)| (s, c))
        .map(|(&c, _)| c);

    let Some(target) = target else {
        // Discrete: the colouring is the bijection.
        let mut by_color = BTreeMap::new();
        for (i, &c) in colors[offset..].iter().enumerate() {
            by_color.insert(c, i);
        }
        let map: Vec<usize> = (0..offset).map(|v| by_color[&colors[v]]).collect();
        let ok = g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]));
        return ok.then_some(map);
    };

    let v = (0..offset).find(|&v| colors[v] == target).expect("class is nonempty");
    let fresh = colors.iter().copied().max().unwrap_or(0) + 1;
    for w in offset..colors.len() {
        if colors[w] != target {
            continue;
        }
        let mut next = colors.clone();
        next[v] = fresh;
        next[w] = fresh;
        refine(adj, &mut next);
        if let Some(map) = search(g, h, adj, offset, next) {
            return Some(map);
        }
    }
    None
}

fn initial_colors(g: &Graph, h: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.degree(v) as u32)
        .chain((0..h.n()).map(|v| h.degree(v) as u32))
        .collect()
}

/// An edge-preserving bijection `g -> h` (as `map[v_g] = v_h`), if any.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() || g.degree_sequence() != h.degree_sequence() {
        return None;
    }
    let union = Union::new(g, h);
    let adj = union.adjacency();
    let mut colors = initial_colors(g, h);
    refine(&adj, &mut colors);
    search(g, h, &adj, union.offset, colors)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    find_isomorphism(g, h).is_some()
}

/// Orbit representative (smallest member) for each vertex under Aut(g).
pub fn automorphism_orbits(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let union = Union::new(g, g);
    let adj = union.adjacency();
    let mut base = initial_colors(g, g);
    refine(&adj, &mut base);

    for u in 0..n {
        for v in (u + 1)..n {
            if base[u] != base[v + n] || find(&mut parent, u) == find(&mut parent, v) {
                continue;
            }
            let fresh = base.iter().copied().max().unwrap_or(0) + 1;
            let mut colors = base.clone();
            colors[u] = fresh;
            colors[v + n] = fresh;
            refine(&adj, &mut colors);
            if let Some(sigma) = search(g, g, &adj, n, colors) {
                for (x, &y) in sigma.iter().enumerate() {
                    let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

/// Whether `pattern` is isomorphic to a (not necessarily induced) subgraph of
/// `host`.
pub fn has_subgraph(host: &Graph, pattern: &Graph) -> bool {
    if pattern.n() > host.n() || pattern.edge_count() > host.edge_count() {
        return false;
    }
    // Pattern vertices in BFS order from the highest-degree vertex of each
    // component so that each vertex after a root has an already-mapped
    // neighbour.
    let mut order = Vec::with_capacity(pattern.n());
    let mut seen = vec![false; pattern.n()];
    let mut roots: Vec<usize> = (0..pattern.n()).collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut queue = std::collections::VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in pattern.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; host.n()];
    fn extend(
        host: &Graph,
        pattern: &Graph,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let p = order[depth];
        for x in 0..host.n() {
            if used[x] || host.degree(x) < pattern.degree(p) {
                continue;
            }
            let fits = pattern
                .neighbors(p)
                .iter()
                .all(|&q| map[q] == usize::MAX || host.has_edge(x, map[q]));
            if !fits {
                continue;
            }
            map[p] = x;
            used[x] = true;
            if extend(host, pattern, order, depth + 1, map, used) {
                return true;
            }
            map[p] = usize::MAX;
            used[x] = false;
        }
        false
    }
    extend(host, pattern, &order, 0, &mut map, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn cycle_is_not_path() {
        assert!(!are_isomorphic(&cycle(4), &path(4)));
    }

    #[test]
    fn returned_bijection_verifies() {
        let g = Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let h = g.permuted(&[3, 5, 1, 0, 2, 4]);
        let map = find_isomorphism(&g, &h).unwrap();
        for (u, v) in g.edges() {
            assert!(h.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn regular_graphs_are_distinguished() {
        // K_{3,3} against the triangular prism: both 3-regular on 6 vertices.
        let k33 = Graph::from_edge_list(
            6,
            &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
        )
        .unwrap();
        let prism = Graph::from_edge_list(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(!are_isomorphic(&k33, &prism));
        assert!(are_isomorphic(&cycle(7), &cycle(7).permuted(&[6, 0, 5, 1, 4, 2, 3])));
        assert!(!are_isomorphic(
            &cycle(6),
            &Graph::from_edge_list(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap()
        ));
    }

    #[test]
    fn orbits_of_a_path() {
        let orbits = automorphism_orbits(&path(5));
        assert_eq!(orbits, vec![0, 1, 2, 1, 0]);
        assert_eq!(automorphism_orbits(&cycle(5)), vec![0; 5]);
    }

    #[test]
    fn subgraph_containment() {
        assert!(has_subgraph(&cycle(5), &path(4)));
        assert!(!has_subgraph(&path(6), &cycle(3)));
        let k14 = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!(!has_subgraph(&cycle(6), &k14));
    }
}
