//! Signed rotation systems (embedding schemes) and their faces.
//!
//! A scheme gives each vertex a cyclic order of its neighbours and each edge
//! a sign. Faces are traced over (dart, flag) states; a `-1` edge flips the
//! flag, and the flag decides whether the walk continues with the rotation
//! successor or predecessor. For a connected graph the Euler genus is
//! `2 - V + E - F`, so genus at most one means the graph embeds in the
//! projective plane.

mod extend;
mod ops;
mod search;

pub use extend::{
    base_embedding, base_graph, embed_family_product, extend_quad_insertion, extend_triangle_nesting, BASE_NAMES,
};
pub use ops::{contract_edge_embedded, delete_edge_embedded, delete_vertex_embedded, embed_minor};
pub use search::{from_faces, search_embedding, search_face_cover, EmbeddingSearch, DEFAULT_EMBEDDING_BUDGET};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    graph: Graph,
    /// Neighbours of each vertex in cyclic order.
    rotation: Vec<Vec<usize>>,
    /// `+1` or `-1` per edge, indexed like [`Graph::edges`].
    signs: Vec<i8>,
    edge_ids: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl Embedding {
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>, signs: Vec<i8>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidEmbedding(m));
        if rotation.len() != graph.n() {
            return bad(format!("{} rotations for {} vertices", rotation.len(), graph.n()));
        }
        for (v, rot) in rotation.iter().enumerate() {
            let mut sorted = rot.clone();
            sorted.sort_unstable();
            if sorted != graph.neighbors(v) {
                return bad(format!(
                    "rotation at {} is not a permutation of its neighbours",
                    graph.label(v)
                ));
            }
        }
        let edges = graph.edges();
        if signs.len() != edges.len() {
            return bad(format!("{} signs for {} edges", signs.len(), edges.len()));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return bad("signs must be 1 or -1".into());
        }
        let edge_ids = edges.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(Embedding {
            graph,
            rotation,
            signs,
            edge_ids,
        })
    }

    /// Scheme with every sign `+1`.
    pub fn orientable(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self> {
        let signs = vec![1; graph.edge_count()];
        Embedding::new(graph, rotation, signs)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn sign(&self, u: usize, v: usize) -> Option<i8> {
        self.edge_ids.get(&key(u, v)).map(|&i| self.signs[i])
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    fn next(&self, v: usize, from: usize, forward: bool) -> usize {
        let rot = &self.rotation[v];
        let i = rot
            .iter()
            .position(|&w| w == from)
            .expect("rotation lists every neighbour");
        let d = rot.len();
        if forward {
            rot[(i + 1) % d]
        } else {
            rot[(i + d - 1) % d]
        }
    }

    /// Facial walks as vertex sequences, one per face, in a deterministic
    /// order. Requires a connected graph.
    pub fn trace_faces(&self) -> Result<Vec<Vec<usize>>> {
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        if self.graph.edge_count() == 0 {
            return Ok(vec![vec![0]]);
        }
        let edges = self.graph.edges();
        let mut seen = vec![false; 4 * edges.len()];
        let mut faces = Vec::new();
        for &(a, b) in &edges {
            for (u, v) in [(a, b), (b, a)] {
                for flag in [1i8, -1] {
                    if seen[self.state(u, v, flag)] {
                        continue;
                    }
                    // Walk the orbit and retire its mirror, which is the same
                    // face read backwards.
                    let mut walk = Vec::new();
                    let (mut x, mut y, mut f) = (u, v, flag);
                    loop {
                        let s = self.sign(x, y).expect("edge");
                        seen[self.state(x, y, f)] = true;
                        seen[self.state(y, x, -f * s)] = true;
                        walk.push(x);
                        (x, y, f) = self.step(x, y, f);
                        if (x, y, f) == (u, v, flag) {
                            break;
                        }
                    }
                    faces.push(walk);
                }
            }
        }
        Ok(faces)
    }

    fn state(&self, u: usize, v: usize, flag: i8) -> usize {
        let i = self.edge_ids[&key(u, v)];
        4 * i + 2 * usize::from(u > v) + usize::from(flag < 0)
    }

    /// Follows dart `u -> v` carrying `flag` to the next dart of its face.
    fn step(&self, u: usize, v: usize, flag: i8) -> (usize, usize, i8) {
        let g = flag * self.sign(u, v).expect("edge");
        (v, self.next(v, u, g > 0), g)
    }

    pub fn face_count(&self) -> Result<usize> {
        self.trace_faces().map(|f| f.len())
    }

    /// `2 - V + E - F` for a connected graph.
    pub fn euler_genus(&self) -> Result<usize> {
        let f = self.face_count()? as i64;
        let g = 2 - self.graph.n() as i64 + self.graph.edge_count() as i64 - f;
        usize::try_from(g).map_err(|_| Error::InvalidEmbedding(format!("negative Euler genus {g}")))
    }

    /// Whether the scheme lies on the sphere or the projective plane.
    pub fn verify_projective(&self) -> bool {
        self.euler_genus().is_ok_and(|g| g <= 1)
    }

    /// Local switch at `v`: reverses its rotation and negates its edges.
    /// The faces, and so the genus, are unchanged.
    pub fn flip(&mut self, v: usize) {
        self.rotation[v].reverse();
        for &w in &self.graph.neighbors(v).to_vec() {
            let i = self.edge_ids[&key(v, w)];
            self.signs[i] = -self.signs[i];
        }
    }

    pub fn to_json(&self) -> Value {
        let g = &self.graph;
        let mut rotations = Map::new();
        for v in 0..g.n() {
            let entries: Vec<Value> = self.rotation[v]
                .iter()
                .map(|&w| {
                    Value::from(vec![
                        Value::from(g.label(w).into_owned()),
                        Value::from(self.edge_ids[&key(v, w)]),
                    ])
                })
                .collect();
            rotations.insert(g.label(v).into_owned(), Value::Array(entries));
        }
        let mut signs = Map::new();
        for (i, &s) in self.signs.iter().enumerate() {
            signs.insert(i.to_string(), Value::from(s));
        }
        let faces: Vec<Value> = self
            .trace_faces()
            .map(|faces| {
                faces
                    .iter()
                    .map(|f| Value::from(f.iter().map(|&v| g.label(v).into_owned()).collect::<Vec<_>>()))
                    .collect()
            })
            .unwrap_or_default();
        let doc = EmbeddingJson {
            rotations,
            signs,
            genus: self.euler_genus().ok(),
            faces,
        };
        serde_json::to_value(doc).expect("embedding serialises")
    }

    /// Reads the JSON written by [`Embedding::to_json`] against `graph`.
    /// Edge ids must match [`Graph::edges`] order; `genus` and `faces` are
    /// ignored and recomputed.
    pub fn from_json(graph: &Graph, text: &str) -> Result<Self> {
        let doc: EmbeddingJson = serde_json::from_str(text)?;
        let bad = |m: String| Error::InvalidEmbedding(m);
        let find = |l: &str| graph.find_label(l).ok_or_else(|| bad(format!("unknown vertex `{l}`")));
        let edges = graph.edges();
        let mut rotation = vec![Vec::new(); graph.n()];
        for (label, entries) in &doc.rotations {
            let v = find(label)?;
            let entries = entries
                .as_array()
                .ok_or_else(|| bad(format!("rotation of `{label}` is not a list")))?;
            for entry in entries {
                let pair = entry.as_array().filter(|p| p.len() == 2);
                let (w, id) = match pair {
                    Some(p) => (p[0].as_str(), p[1].as_u64()),
                    None => (None, None),
                };
                let (Some(w), Some(id)) = (w, id) else {
                    return Err(bad(format!("rotation entry of `{label}` must be [vertex, edgeId]")));
                };
                let w = find(w)?;
                if edges.get(id as usize) != Some(&key(v, w)) {
                    return Err(bad(format!(
                        "edge id {id} does not join `{label}` and `{}`",
                        graph.label(w)
                    )));
                }
                rotation[v].push(w);
            }
        }
        let mut signs = vec![0i8; edges.len()];
        for (id, s) in &doc.signs {
            let i: usize = id.parse().map_err(|_| bad(format!("bad edge id `{id}`")))?;
            let s = s
                .as_i64()
                .ok_or_else(|| bad(format!("sign of edge {id} is not a number")))?;
            if i >= signs.len() {
                return Err(bad(format!("edge id {i} out of range")));
            }
            signs[i] = s as i8;
        }
        Embedding::new(graph.clone(), rotation, signs)
    }
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    rotations: Map<String, Value>,
    signs: Map<String, Value>,
    #[serde(default)]
    genus: Option<usize>,
    #[serde(default)]
    faces: Vec<Value>,
}

/// Euler genus of a scheme on a connected graph.
pub fn euler_genus(e: &Embedding) -> Result<usize> {
    e.euler_genus()
}

pub fn verify_projective(e: &Embedding) -> bool {
    e.verify_projective()
}
