//! Deletions and contractions that carry a scheme along.

use std::collections::HashMap;

use super::Embedding;
use crate::error::{Error, Result};
use crate::minor::{MinorOp, MinorScript, WorkGraph};

/// Scheme over the slots of a [`WorkGraph`]; slots never move, dead ones
/// keep an empty rotation.
struct Work {
    rotation: Vec<Vec<usize>>,
    alive: Vec<bool>,
    signs: HashMap<(usize, usize), i8>,
    index: HashMap<String, usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Work {
    fn new(e: &Embedding) -> Self {
        let g = e.graph();
        let signs = g.edges().into_iter().zip(e.signs().iter().copied()).collect();
        Work {
            rotation: (0..g.n()).map(|v| e.rotation(v).to_vec()).collect(),
            alive: vec![true; g.n()],
            signs,
            index: g.labels().into_iter().enumerate().map(|(v, l)| (l, v)).collect(),
        }
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.rotation[a].retain(|&x| x != b);
        self.rotation[b].retain(|&x| x != a);
        self.signs.remove(&key(a, b));
    }

    fn flip(&mut self, v: usize) {
        self.rotation[v].reverse();
        for &w in &self.rotation[v] {
            let s = self.signs.get_mut(&key(v, w)).expect("edge has a sign");
            *s = -*s;
        }
    }

    /// Merges `b` into `a`. The caller has checked that the edge exists.
    fn contract(&mut self, a: usize, b: usize) {
        if self.signs[&key(a, b)] < 0 {
            let w = if self.rotation[a].len() < self.rotation[b].len() {
                a
            } else {
                b
            };
            self.flip(w);
        }
        let after = |rot: &[usize], x: usize| -> Vec<usize> {
            let i = rot.iter().position(|&y| y == x).expect("edge in rotation");
            rot[i + 1..].iter().chain(&rot[..i]).copied().collect()
        };
        let from_a = after(&self.rotation[a], b);
        let from_b = after(&self.rotation[b], a);
        self.signs.remove(&key(a, b));
        let mut merged = from_a.clone();
        for y in from_b {
            let s = self.signs.remove(&key(b, y)).expect("edge has a sign");
            if from_a.contains(&y) {
                // Parallel to an existing edge: drop the copy.
                self.rotation[y].retain(|&x| x != b);
            } else {
                for x in self.rotation[y].iter_mut() {
                    if *x == b {
                        *x = a;
                    }
                }
                self.signs.insert(key(a, y), s);
                merged.push(y);
            }
        }
        self.rotation[a] = merged;
        self.rotation[b].clear();
        self.alive[b] = false;
    }

    fn slot(&self, label: &str) -> usize {
        self.index[label]
    }

    /// Mirrors an op the work graph has already accepted.
    fn apply(&mut self, op: &MinorOp) {
        match op {
            MinorOp::DeleteVertex { v } => {
                let x = self.slot(v);
                for y in self.rotation[x].clone() {
                    self.unlink(x, y);
                }
                self.alive[x] = false;
                self.index.remove(v);
            }
            MinorOp::DeleteEdge { u, v } => {
                let (a, b) = (self.slot(u), self.slot(v));
                self.unlink(a, b);
            }
            MinorOp::ContractEdge { u, v, into } => {
                let (a, b) = (self.slot(u), self.slot(v));
                self.contract(a, b);
                self.index.remove(v);
                if let Some(name) = into {
                    self.index.remove(u);
                    self.index.insert(name.clone(), a);
                }
            }
        }
    }
}

/// Applies `script` to the graph of `host`, carrying the scheme. The result
/// has the same graph and labels as [`crate::minor::apply_script`], and its
/// Euler genus is at most the host's.
pub fn embed_minor(host: &Embedding, script: &MinorScript) -> Result<Embedding> {
    let mut graph = WorkGraph::new(host.graph())?;
    let mut work = Work::new(host);
    for (index, op) in script.ops.iter().enumerate() {
        graph.apply(op).map_err(|reason| Error::InvalidScript {
            index,
            op: op.to_string(),
            reason,
        })?;
        work.apply(op);
    }
    let (g, _) = graph.finish();
    let slots: Vec<usize> = (0..work.alive.len()).filter(|&s| work.alive[s]).collect();
    let mut pos = vec![usize::MAX; work.alive.len()];
    for (i, &s) in slots.iter().enumerate() {
        pos[s] = i;
    }
    let rotation = slots
        .iter()
        .map(|&s| work.rotation[s].iter().map(|&t| pos[t]).collect())
        .collect();
    let signs = g
        .edges()
        .into_iter()
        .map(|(u, v)| work.signs[&key(slots[u], slots[v])])
        .collect();
    Embedding::new(g, rotation, signs)
}

fn single(e: &Embedding, op: MinorOp) -> Result<Embedding> {
    embed_minor(e, &MinorScript::new("").with([op]))
}

pub fn delete_vertex_embedded(e: &Embedding, v: usize) -> Result<Embedding> {
    let g = e.graph();
    check(g.n(), v)?;
    single(e, MinorOp::delete_vertex(g.label(v)))
}

pub fn delete_edge_embedded(e: &Embedding, u: usize, v: usize) -> Result<Embedding> {
    let g = e.graph();
    check(g.n(), u)?;
    check(g.n(), v)?;
    single(e, MinorOp::delete_edge(g.label(u), g.label(v)))
}

/// Contracts edge `uv` into `u`'s slot. A `-1` edge first has its
/// lower-degree endpoint flipped.
pub fn contract_edge_embedded(e: &Embedding, u: usize, v: usize) -> Result<Embedding> {
    let g = e.graph();
    check(g.n(), u)?;
    check(g.n(), v)?;
    single(e, MinorOp::contract_keep(g.label(u), g.label(v)))
}

fn check(n: usize, v: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn c4() -> Embedding {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        Embedding::orientable(g, vec![vec![1, 3], vec![0, 2], vec![1, 3], vec![0, 2]]).unwrap()
    }

    #[test]
    fn contracting_c4_gives_c3() {
        let c3 = contract_edge_embedded(&c4(), 0, 1).unwrap();
        assert!(c3.graph().is_cycle() && c3.graph().n() == 3);
        assert_eq!(c3.euler_genus().unwrap(), 0);
        assert_eq!(c3.graph().labels(), vec!["0", "2", "3"]);
    }

    #[test]
    fn contracting_a_twisted_edge() {
        let mut e = c4();
        e.flip(1);
        let t = contract_edge_embedded(&e, 0, 1).unwrap();
        assert_eq!(t.euler_genus().unwrap(), 0);
    }

    #[test]
    fn deleting_keeps_labels() {
        let p = delete_vertex_embedded(&c4(), 2).unwrap();
        assert_eq!(p.graph().labels(), vec!["0", "1", "3"]);
        assert!(p.graph().is_path());
        assert_eq!(p.face_count().unwrap(), 1);
        assert!(delete_edge_embedded(&c4(), 0, 2).is_err());
    }
}
