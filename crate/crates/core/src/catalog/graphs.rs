//! Named graphs and the four extremal families.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::product::cartesian_product;

/// Graph on the given labels with edges written as label pairs.
pub(crate) fn labelled(labels: &[&str], edges: &[(&str, &str)]) -> Graph {
    let idx = |l: &str| labels.iter().position(|&x| x == l).expect("edge label is listed");
    let pairs: Vec<_> = edges.iter().map(|&(a, b)| (idx(a), idx(b))).collect();
    Graph::from_edge_list(labels.len(), &pairs)
        .and_then(|g| g.with_labels(labels.iter().copied()))
        .expect("catalog graphs are well formed")
}

fn numbered(n: usize, edges: &[(usize, usize)]) -> Graph {
    let pairs: Vec<_> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    Graph::from_edge_list(n, &pairs)
        .and_then(|g| g.with_labels((1..=n).map(|i| i.to_string())))
        .expect("catalog graphs are well formed")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (2..=n).map(|i| (i - 1, i)).collect();
    numbered(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    let mut edges: Vec<_> = (2..=n).map(|i| (i - 1, i)).collect();
    edges.push((n, 1));
    numbered(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
    numbered(n, &edges)
}

/// `K_{a,b}` with the `a` side labelled `1..=a`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (1..=a).flat_map(|i| (a + 1..=a + b).map(move |j| (i, j))).collect();
    numbered(a + b, &edges)
}

/// Two adjacent branch vertices `c`, `d`, each with two leaves.
pub fn graph_i() -> Graph {
    labelled(
        &["a", "b", "c", "d", "e", "f"],
        &[("a", "c"), ("b", "c"), ("c", "d"), ("d", "e"), ("d", "f")],
    )
}

/// Diamond on the 4-cycle `1234` with chord `13`, plus a pendant `5` at `3`.
pub fn graph_l() -> Graph {
    numbered(5, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (3, 5)])
}

/// 4-cycle `1234` with pendants `5` at `1` and `6` at `3`.
pub fn graph_s() -> Graph {
    numbered(6, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 5), (3, 6)])
}

/// Triangle `123` with pendants `4` and `5` at `3`.
pub fn graph_r() -> Graph {
    numbered(5, &[(1, 2), (2, 3), (3, 1), (3, 4), (3, 5)])
}

pub fn paw() -> Graph {
    numbered(4, &[(1, 2), (2, 3), (3, 1), (3, 4)])
}

pub fn diamond() -> Graph {
    numbered(4, &[(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    X,
    B,
    Q,
    W,
}

impl FamilyId {
    pub const ALL: [FamilyId; 4] = [FamilyId::X, FamilyId::B, FamilyId::Q, FamilyId::W];
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyId::X => "X",
            FamilyId::B => "B",
            FamilyId::Q => "Q",
            FamilyId::W => "W",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(FamilyId::X),
            "B" | "b" => Ok(FamilyId::B),
            "Q" | "q" => Ok(FamilyId::Q),
            "W" | "w" => Ok(FamilyId::W),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Labelled graph grown one step at a time; new vertices get the next
/// integer label.
struct Grower {
    g: Graph,
}

impl Grower {
    fn v(&self, label: &str) -> usize {
        self.g.find_label(label).expect("family vertex exists")
    }

    fn fresh(&mut self) -> usize {
        let label = (self.g.n() + 1).to_string();
        self.g.add_vertex(Some(label))
    }

    /// Subdivides the edge from `at` to its unique neighbour outside `avoid`.
    fn subdivide_from(&mut self, at: &str, avoid: &[&str]) {
        let a = self.v(at);
        let avoid: Vec<usize> = avoid.iter().map(|l| self.v(l)).collect();
        let b = *self
            .g
            .neighbors(a)
            .iter()
            .find(|w| !avoid.contains(w))
            .expect("edge to subdivide exists");
        self.g.remove_edge(a, b);
        let s = self.fresh();
        self.g.add_edge(a, s).expect("fresh vertex");
        self.g.add_edge(s, b).expect("fresh vertex");
    }

    fn pendant(&mut self, at: usize) -> usize {
        let s = self.fresh();
        self.g.add_edge(at, s).expect("fresh vertex");
        s
    }
}

/// Family member `m >= 1`.
///
/// * `B_1` has centre `3` and triangles `123`, `345`; each step lengthens
///   both cycles next to `1` and `4`.
/// * `Q_1` has leaf `1`, apex `2` and triangle `345` with `{a, b} = {3, 5}`;
///   each step lengthens the odd cycle next to `3` and `5` and the pendant
///   path next to `1`.
/// * `X_1 = K_{1,3}` with centre `1`; each step extends all four legs, the
///   fourth starting at the centre.
/// * `W_1` is the net: triangle `123` with pendants `4`, `5`, `6`; each step
///   extends all three pendant paths.
pub fn family(id: FamilyId, m: usize) -> Result<Graph> {
    if m == 0 {
        return Err(Error::InvalidParameter("family index m must be at least 1".into()));
    }
    let base = match id {
        FamilyId::B => numbered(5, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5)]),
        FamilyId::Q => numbered(5, &[(1, 2), (2, 3), (2, 5), (3, 4), (4, 5), (3, 5)]),
        FamilyId::X => complete_bipartite(1, 3),
        FamilyId::W => numbered(6, &[(1, 2), (2, 3), (1, 3), (1, 4), (2, 5), (3, 6)]),
    };
    let mut gr = Grower { g: base };
    let mut tips: Vec<usize> = match id {
        FamilyId::X => vec![1, 2, 3, 0],
        FamilyId::W => vec![3, 4, 5],
        _ => Vec::new(),
    };
    for _ in 1..m {
        match id {
            FamilyId::B => {
                gr.subdivide_from("1", &["3"]);
                gr.subdivide_from("4", &["3"]);
            }
            FamilyId::Q => {
                gr.subdivide_from("3", &["2", "5"]);
                gr.subdivide_from("5", &["2", "3"]);
                gr.subdivide_from("1", &[]);
            }
            FamilyId::X | FamilyId::W => {
                for t in tips.iter_mut() {
                    *t = gr.pendant(*t);
                }
            }
        }
    }
    Ok(gr.g)
}

/// Builds a product and keeps only its graph.
pub(crate) fn product(g: &Graph, h: &Graph) -> Graph {
    cartesian_product(g, h).expect("catalog factors are nonempty").graph
}
