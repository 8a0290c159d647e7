//! Explicit delete/contract scripts addressed by vertex label.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::witness::MinorWitness;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase")]
pub enum MinorOp {
    DeleteVertex {
        v: String,
    },
    DeleteEdge {
        u: String,
        v: String,
    },
    /// Merges `v` into `u`. The merged vertex is named `into`, or keeps `u`'s
    /// label when absent.
    ContractEdge {
        u: String,
        v: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
}

impl MinorOp {
    pub fn delete_vertex(v: impl Into<String>) -> Self {
        MinorOp::DeleteVertex { v: v.into() }
    }

    pub fn delete_edge(u: impl Into<String>, v: impl Into<String>) -> Self {
        MinorOp::DeleteEdge {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn contract(u: impl Into<String>, v: impl Into<String>, into: impl Into<String>) -> Self {
        MinorOp::ContractEdge {
            u: u.into(),
            v: v.into(),
            into: Some(into.into()),
        }
    }

    pub fn contract_keep(u: impl Into<String>, v: impl Into<String>) -> Self {
        MinorOp::ContractEdge {
            u: u.into(),
            v: v.into(),
            into: None,
        }
    }
}

impl fmt::Display for MinorOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorOp::DeleteVertex { v } => write!(f, "delete vertex {v}"),
            MinorOp::DeleteEdge { u, v } => write!(f, "delete edge [{u}, {v}]"),
            MinorOp::ContractEdge { u, v, into } => match into {
                Some(w) => write!(f, "contract [{u}, {v}] into {w}"),
                None => write!(f, "contract [{u}, {v}]"),
            },
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorScript {
    /// Name or graph6 string of the graph the script starts from.
    pub base: String,
    pub ops: Vec<MinorOp>,
}

impl MinorScript {
    pub fn new(base: impl Into<String>) -> Self {
        MinorScript {
            base: base.into(),
            ops: Vec::new(),
        }
    }

    pub fn push(&mut self, op: MinorOp) -> &mut Self {
        self.ops.push(op);
        self
    }

    pub fn with(mut self, ops: impl IntoIterator<Item = MinorOp>) -> Self {
        self.ops.extend(ops);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("script serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Mutable labelled graph that remembers which base vertices each current
/// vertex absorbed.
#[derive(Clone, Debug)]
pub(crate) struct WorkGraph {
    labels: Vec<String>,
    alive: Vec<bool>,
    adj: Vec<BTreeSet<usize>>,
    members: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl WorkGraph {
    pub(crate) fn new(base: &Graph) -> Result<Self> {
        let labels = base.labels();
        let mut index = HashMap::with_capacity(labels.len());
        for (v, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), v).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate vertex label `{l}`")));
            }
        }
        Ok(WorkGraph {
            adj: (0..base.n())
                .map(|v| base.neighbors(v).iter().copied().collect())
                .collect(),
            alive: vec![true; base.n()],
            members: (0..base.n()).map(|v| vec![v]).collect(),
            labels,
            index,
        })
    }

    fn lookup(&self, label: &str) -> std::result::Result<usize, String> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| format!("no vertex `{label}`"))
    }

    fn edge(&self, u: &str, v: &str) -> std::result::Result<(usize, usize), String> {
        let (a, b) = (self.lookup(u)?, self.lookup(v)?);
        if !self.adj[a].contains(&b) {
            return Err(format!("no edge [{u}, {v}]"));
        }
        Ok((a, b))
    }

    pub(crate) fn apply(&mut self, op: &MinorOp) -> std::result::Result<(), String> {
        match op {
            MinorOp::DeleteVertex { v } => {
                let x = self.lookup(v)?;
                for y in std::mem::take(&mut self.adj[x]) {
                    self.adj[y].remove(&x);
                }
                self.alive[x] = false;
                self.index.remove(v);
            }
            MinorOp::DeleteEdge { u, v } => {
                let (a, b) = self.edge(u, v)?;
                self.adj[a].remove(&b);
                self.adj[b].remove(&a);
            }
            MinorOp::ContractEdge { u, v, into } => {
                let (a, b) = self.edge(u, v)?;
                if let Some(name) = into {
                    if let Some(&w) = self.index.get(name) {
                        if w != a && w != b {
                            return Err(format!("label `{name}` already names another vertex"));
                        }
                    }
                }
                for y in std::mem::take(&mut self.adj[b]) {
                    self.adj[y].remove(&b);
                    if y != a {
                        self.adj[y].insert(a);
                        self.adj[a].insert(y);
                    }
                }
                let absorbed = std::mem::take(&mut self.members[b]);
                self.members[a].extend(absorbed);
                self.alive[b] = false;
                self.index.remove(v);
                if let Some(name) = into {
                    self.index.remove(u);
                    self.labels[a] = name.clone();
                    self.index.insert(name.clone(), a);
                }
            }
        }
        Ok(())
    }

    /// Current graph (surviving vertices in slot order) plus, per vertex,
    /// the sorted base vertices it absorbed.
    pub(crate) fn finish(&self) -> (Graph, Vec<Vec<usize>>) {
        let slots: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        let mut pos = vec![usize::MAX; self.alive.len()];
        for (i, &s) in slots.iter().enumerate() {
            pos[s] = i;
        }
        let mut g = Graph::empty(slots.len());
        for (i, &s) in slots.iter().enumerate() {
            for &t in &self.adj[s] {
                if pos[t] > i {
                    g.add_edge(i, pos[t]).expect("work graph stays simple");
                }
            }
        }
        let g = g
            .with_labels(slots.iter().map(|&s| self.labels[s].clone()))
            .expect("one label per vertex");
        let members = slots
            .iter()
            .map(|&s| {
                let mut m = self.members[s].clone();
                m.sort_unstable();
                m
            })
            .collect();
        (g, members)
    }
}

fn run(base: &Graph, script: &MinorScript) -> Result<(Graph, Vec<Vec<usize>>)> {
    let mut work = WorkGraph::new(base)?;
    for (index, op) in script.ops.iter().enumerate() {
        work.apply(op).map_err(|reason| Error::InvalidScript {
            index,
            op: op.to_string(),
            reason,
        })?;
    }
    Ok(work.finish())
}

/// Executes `script` on `base`. Contractions drop loops and parallel edges.
pub fn apply_script(base: &Graph, script: &MinorScript) -> Result<Graph> {
    run(base, script).map(|(g, _)| g)
}

/// Executes `script` and returns the resulting graph together with a
/// branch-set model of it inside `base`.
pub fn script_to_witness(base: &Graph, script: &MinorScript) -> Result<(Graph, MinorWitness)> {
    let (result, members) = run(base, script)?;
    let witness = MinorWitness::from_branch_sets(base, &result, members)
        .expect("script contractions only merge adjacent vertices");
    Ok((result, witness))
}
