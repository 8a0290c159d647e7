//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is a plain value: adjacency lists are kept sorted and
//! deduplicated, loops are rejected at construction, and optional text labels
//! ride along as metadata. Connectivity is deliberately *not* an invariant,
//! since minor operations pass through disconnected intermediate states.

mod enumerate;
mod graph6;
mod iso;
mod text;

pub use enumerate::{enumerate_connected, enumerate_connected_bruteforce};
pub use graph6::{emit_graph6, parse_graph6};
pub use iso::{are_isomorphic, automorphism_orbits, find_isomorphism, has_subgraph, invariant_hash};
pub use text::{emit_dot, emit_edge_list, parse_edge_list};

use std::borrow::Cow;
use std::collections::VecDeque;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: None,
        }
    }

    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Attaches vertex labels; `labels.len()` must equal the vertex count.
    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.n() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// Inserts edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    /// Copy of `self` with edge `uv` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(u, v)?;
        Ok(g)
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("symmetric adjacency");
                self.adj[v].remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Appends an isolated vertex and returns its id.
    pub fn add_vertex(&mut self, label: Option<String>) -> usize {
        let id = self.n();
        self.adj.push(Vec::new());
        match (&mut self.labels, label) {
            (Some(labels), Some(l)) => labels.push(l),
            (Some(labels), None) => labels.push(id.to_string()),
            (None, Some(l)) => {
                let mut labels: Vec<String> = (0..id).map(|v| v.to_string()).collect();
                labels.push(l);
                self.labels = Some(labels);
            }
            (None, None) => {}
        }
        id
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Position of `(min(u,v), max(u,v))` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if !self.has_edge(a, b) {
            return None;
        }
        let before: usize = (0..a).map(|w| self.adj[w].iter().filter(|&&x| x > w).count()).sum();
        let within = self.adj[a].iter().filter(|&&x| x > a && x < b).count();
        Some(before + within)
    }

    pub fn label(&self, v: usize) -> Cow<'_, str> {
        match &self.labels {
            Some(labels) => Cow::Borrowed(labels[v].as_str()),
            None => Cow::Owned(v.to_string()),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.n()).map(|v| self.label(v).into_owned()).collect()
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == label),
            None => label.parse::<usize>().ok().filter(|&v| v < self.n()),
        }
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff a BFS from vertex 0 reaches everything (vacuous for `n <= 1`).
    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        seen[0] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n()
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.is_connected() && self.edge_count() + 1 == self.n()
    }

    pub fn is_path(&self) -> bool {
        match self.n() {
            0 => false,
            1 => true,
            2 => self.edge_count() == 1,
            _ => {
                self.is_connected()
                    && self.adj.iter().filter(|a| a.len() == 1).count() == 2
                    && self.adj.iter().all(|a| a.len() <= 2)
            }
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.n() >= 3 && self.is_connected() && self.adj.iter().all(|a| a.len() == 2)
    }

    /// `|E| - |V| + c`, the dimension of the cycle space. Never increases
    /// under taking minors.
    pub fn cycle_rank(&self) -> usize {
        self.edge_count() + self.components().len() - self.n()
    }

    /// Subgraph induced by `vertices` (in the given order), labels preserved.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    g.add_edge(i, j).expect("valid induced edge");
                }
            }
        }
        if self.labels.is_some() {
            g.labels = Some(vertices.iter().map(|&v| self.label(v).into_owned()).collect());
        }
        g
    }

    /// Renames vertex `v` to `perm[v]`. Labels follow their vertices.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation is a bijection");
        }
        if let Some(labels) = &self.labels {
            let mut out = vec![String::new(); self.n()];
            for (v, l) in labels.iter().enumerate() {
                out[perm[v]] = l.clone();
            }
            g.labels = Some(out);
        }
        g
    }

    /// Same vertex count and edge set, ignoring labels.
    pub fn same_adjacency(&self, other: &Graph) -> bool {
        self.adj == other.adj
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn star(k: usize) -> Graph {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edge_list(k + 1, &edges).unwrap()
    }

    #[test]
    fn builds_small_graphs() {
        let p2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(p2.edge_count(), 1);
        let c3 = Graph::from_edge_list(3, &[(0, 1), (1, 2), (0, 2), (2, 0)]).unwrap();
        assert_eq!(c3.edge_count(), 3);
        assert_eq!(star(3).degree_sequence(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edge_list(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn connectivity_and_degrees() {
        let c5 = cycle(5);
        assert!(c5.is_connected());
        assert_eq!(c5.degree_sequence(), vec![2; 5]);
        let two_edges = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.components().len(), 2);
        assert_eq!(star(5).max_degree(), 5);
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
    }

    #[test]
    fn shape_predicates() {
        let p4 = path(4);
        assert!(p4.is_path() && !p4.is_cycle() && p4.is_tree());
        let c3 = cycle(3);
        assert!(c3.is_cycle() && !c3.is_path() && !c3.is_tree());
        let k13 = star(3);
        assert!(k13.is_tree() && !k13.is_path());
        assert!(path(1).is_path() && path(2).is_path());
        assert_eq!(cycle(6).cycle_rank(), 1);
    }

    #[test]
    fn edge_index_matches_edges() {
        let g = Graph::from_edge_list(5, &[(0, 3), (1, 2), (2, 4), (0, 1), (3, 4)]).unwrap();
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            assert_eq!(g.edge_index(u, v), Some(i));
            assert_eq!(g.edge_index(v, u), Some(i));
        }
        assert_eq!(g.edge_index(0, 4), None);
    }

    #[test]
    fn labels_follow_permutation() {
        let g = path(3).with_labels(["a", "b", "c"]).unwrap();
        let h = g.permuted(&[2, 0, 1]);
        assert_eq!(h.label(0), "b");
        assert!(h.has_edge(2, 0) && h.has_edge(0, 1));
        assert_eq!(h.find_label("c"), Some(1));
    }
}
