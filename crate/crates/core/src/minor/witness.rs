//! Branch-set models and their checker.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use serde_json::Map;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeAssignment {
    pub pattern: (usize, usize),
    pub host: (usize, usize),
}

/// `branch_sets[p]` are the host vertices standing in for pattern vertex `p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MinorWitness {
    pub branch_sets: Vec<Vec<usize>>,
    pub edges: Vec<EdgeAssignment>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct WitnessJson {
    branch_sets: Map<String, serde_json::Value>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    pattern: [String; 2],
    host: [String; 2],
}

impl MinorWitness {
    /// Fills in the edge assignment by picking, for every pattern edge, the
    /// smallest host edge between the two branch sets. `None` when some
    /// pattern edge has no such host edge.
    pub fn from_branch_sets(host: &Graph, pattern: &Graph, branch_sets: Vec<Vec<usize>>) -> Option<Self> {
        let mut owner = vec![usize::MAX; host.n()];
        for (p, set) in branch_sets.iter().enumerate() {
            for &x in set {
                owner[x] = p;
            }
        }
        let mut edges = Vec::with_capacity(pattern.edge_count());
        for (a, b) in pattern.edges() {
            let hit = branch_sets[a].iter().find_map(|&x| {
                host.neighbors(x)
                    .iter()
                    .find(|&&y| owner[y] == b)
                    .map(|&y| (x.min(y), x.max(y)))
            })?;
            edges.push(EdgeAssignment {
                pattern: (a, b),
                host: hit,
            });
        }
        Some(MinorWitness { branch_sets, edges })
    }

    /// Witness mapping every vertex of `g` to itself.
    pub fn identity(g: &Graph) -> Self {
        MinorWitness::from_branch_sets(g, g, (0..g.n()).map(|v| vec![v]).collect())
            .expect("identity model realises every edge")
    }

    pub fn size(&self) -> usize {
        self.branch_sets.iter().map(Vec::len).sum()
    }

    /// Composes `self: middle ≼ host` with `inner: pattern ≼ middle` into a
    /// model of `pattern` in `host`.
    pub fn compose(&self, host: &Graph, inner: &MinorWitness, pattern: &Graph) -> Option<Self> {
        let sets = inner
            .branch_sets
            .iter()
            .map(|set| {
                let mut out: Vec<usize> = set.iter().flat_map(|&m| self.branch_sets[m].iter().copied()).collect();
                out.sort_unstable();
                out
            })
            .collect();
        MinorWitness::from_branch_sets(host, pattern, sets)
    }

    pub fn to_json(&self, host: &Graph, pattern: &Graph) -> serde_json::Value {
        let mut sets = Map::new();
        for (p, set) in self.branch_sets.iter().enumerate() {
            let labels: Vec<String> = set.iter().map(|&x| host.label(x).into_owned()).collect();
            sets.insert(pattern.label(p).into_owned(), labels.into());
        }
        let edges = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                pattern: [
                    pattern.label(e.pattern.0).into_owned(),
                    pattern.label(e.pattern.1).into_owned(),
                ],
                host: [host.label(e.host.0).into_owned(), host.label(e.host.1).into_owned()],
            })
            .collect();
        serde_json::to_value(WitnessJson {
            branch_sets: sets,
            edges,
        })
        .expect("witness serialises")
    }

    /// Reads the JSON form, resolving labels against `host` and `pattern`.
    /// Structural validity is left to [`verify_witness`].
    pub fn from_json(value: &serde_json::Value, host: &Graph, pattern: &Graph) -> Result<Self> {
        let raw: WitnessJson = serde_json::from_value(value.clone())?;
        let find = |g: &Graph, l: &str, what: &str| {
            g.find_label(l)
                .ok_or_else(|| Error::Json(format!("unknown {what} vertex `{l}`")))
        };
        let mut branch_sets = vec![Vec::new(); pattern.n()];
        for (p, set) in &raw.branch_sets {
            let p = find(pattern, p, "pattern")?;
            let labels: Vec<String> = serde_json::from_value(set.clone())?;
            branch_sets[p] = labels.iter().map(|l| find(host, l, "host")).collect::<Result<_>>()?;
        }
        let edges = raw
            .edges
            .iter()
            .map(|e| {
                Ok(EdgeAssignment {
                    pattern: (
                        find(pattern, &e.pattern[0], "pattern")?,
                        find(pattern, &e.pattern[1], "pattern")?,
                    ),
                    host: (find(host, &e.host[0], "host")?, find(host, &e.host[1], "host")?),
                })
            })
            .collect::<Result<_>>()?;
        Ok(MinorWitness { branch_sets, edges })
    }
}

/// Checks a branch-set model from scratch: nonempty, disjoint, connected
/// branch sets and a valid host edge for every pattern edge.
pub fn verify_witness(host: &Graph, pattern: &Graph, witness: &MinorWitness) -> bool {
    if witness.branch_sets.len() != pattern.n() {
        return false;
    }
    let mut owner = vec![None; host.n()];
    for (p, set) in witness.branch_sets.iter().enumerate() {
        if set.is_empty() {
            return false;
        }
        for &x in set {
            if x >= host.n() || owner[x].is_some() {
                return false;
            }
            owner[x] = Some(p);
        }
    }
    for (p, set) in witness.branch_sets.iter().enumerate() {
        let mut seen = vec![false; host.n()];
        let mut queue = VecDeque::from([set[0]]);
        seen[set[0]] = true;
        let mut reached = 1;
        while let Some(x) = queue.pop_front() {
            for &y in host.neighbors(x) {
                if !seen[y] && owner[y] == Some(p) {
                    seen[y] = true;
                    reached += 1;
                    queue.push_back(y);
                }
            }
        }
        if reached != set.len() {
            return false;
        }
    }
    let mut covered = vec![false; pattern.edge_count()];
    for e in &witness.edges {
        let (a, b) = e.pattern;
        let (x, y) = e.host;
        let Some(i) = pattern.edge_index(a, b) else {
            return false;
        };
        if x >= host.n() || y >= host.n() || !host.has_edge(x, y) {
            return false;
        }
        let ok = (owner[x] == Some(a) && owner[y] == Some(b)) || (owner[x] == Some(b) && owner[y] == Some(a));
        if !ok {
            return false;
        }
        covered[i] = true;
    }
    covered.into_iter().all(|c| c)
}
