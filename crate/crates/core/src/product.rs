//! Cartesian products with fiber bookkeeping.

use crate::error::{Error, Result};
use crate::graph::{emit_graph6, Graph};
use crate::minor::{apply_script, MinorOp, MinorScript};

/// Which factor a fiber copies, or which factor a script acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    G,
    H,
}

/// `G□H` with vertex `(g, h)` stored at id `g * hn + h` and labelled `"g:h"`
/// from the factor labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGraph {
    pub graph: Graph,
    pub gn: usize,
    pub hn: usize,
}

impl ProductGraph {
    pub fn id(&self, g: usize, h: usize) -> usize {
        g * self.hn + h
    }

    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / self.hn, v % self.hn)
    }

    /// `Side::G` gives the G-fiber `G × {index}`; `Side::H` gives
    /// `{index} × H`.
    pub fn fiber(&self, side: Side, index: usize) -> Result<Vec<usize>> {
        let limit = match side {
            Side::G => self.hn,
            Side::H => self.gn,
        };
        if index >= limit {
            return Err(Error::IndexOutOfRange { index, limit });
        }
        Ok(match side {
            Side::G => (0..self.gn).map(|g| self.id(g, index)).collect(),
            Side::H => (0..self.hn).map(|h| self.id(index, h)).collect(),
        })
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

pub fn product_label(g: &str, h: &str) -> String {
    format!("{g}:{h}")
}

pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<ProductGraph> {
    if g.n() == 0 || h.n() == 0 {
        return Err(Error::InvalidParameter("product factors must be nonempty".into()));
    }
    let (gn, hn) = (g.n(), h.n());
    let mut edges = Vec::with_capacity(gn * h.edge_count() + g.edge_count() * hn);
    for x in 0..gn {
        for (a, b) in h.edges() {
            edges.push((x * hn + a, x * hn + b));
        }
    }
    for (a, b) in g.edges() {
        for y in 0..hn {
            edges.push((a * hn + y, b * hn + y));
        }
    }
    let gl = g.labels();
    let hl = h.labels();
    let labels = gl.iter().flat_map(|a| hl.iter().map(move |b| product_label(a, b)));
    let graph = Graph::from_edge_list(gn * hn, &edges)?.with_labels(labels)?;
    Ok(ProductGraph { graph, gn, hn })
}

/// Turns a script on one factor into the script on the product that repeats
/// every operation in each fiber. `side` says which coordinate `factor`
/// occupies; `other` is the remaining factor.
pub fn lift_script(factor: &Graph, script: &MinorScript, other: &Graph, side: Side) -> Result<MinorScript> {
    apply_script(factor, script)?;
    let others = other.labels();
    let at = |x: &str, y: &str| match side {
        Side::G => product_label(x, y),
        Side::H => product_label(y, x),
    };
    let base = match side {
        Side::G => format!("{}x{}", script.base, emit_graph6(other)),
        Side::H => format!("{}x{}", emit_graph6(other), script.base),
    };
    let mut lifted = MinorScript::new(base);
    for op in &script.ops {
        for y in &others {
            lifted.push(match op {
                MinorOp::DeleteVertex { v } => MinorOp::delete_vertex(at(v, y)),
                MinorOp::DeleteEdge { u, v } => MinorOp::delete_edge(at(u, y), at(v, y)),
                MinorOp::ContractEdge { u, v, into } => MinorOp::ContractEdge {
                    u: at(u, y),
                    v: at(v, y),
                    into: into.as_ref().map(|w| at(w, y)),
                },
            });
        }
    }
    Ok(lifted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_isomorphic;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edge_list(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn square_of_p2_is_c4() {
        let p = cartesian_product(&path(2), &path(2)).unwrap();
        assert!(p.graph.is_cycle());
        assert_eq!(p.graph.labels(), vec!["0:0", "0:1", "1:0", "1:1"]);
    }

    #[test]
    fn star_square_counts() {
        let p = cartesian_product(&star(3), &star(3)).unwrap();
        assert_eq!((p.graph.n(), p.graph.edge_count()), (16, 24));
        let f = p.fiber(Side::G, 0).unwrap();
        assert!(are_isomorphic(&p.graph.induced_subgraph(&f), &star(3)));
        assert!(p.fiber(Side::H, 4).is_err());
    }

    #[test]
    fn lifted_leaf_deletion() {
        let k13 = star(3);
        let script = MinorScript::new("K13").with([MinorOp::delete_vertex("3")]);
        let lifted = lift_script(&k13, &script, &path(2), Side::G).unwrap();
        let prod = cartesian_product(&k13, &path(2)).unwrap();
        let out = apply_script(&prod.graph, &lifted).unwrap();
        assert!(are_isomorphic(
            &out,
            &cartesian_product(&path(3), &path(2)).unwrap().graph
        ));
    }

    #[test]
    fn lifted_contraction_on_right_factor() {
        let script = MinorScript::new("P3").with([MinorOp::contract("0", "1", "m")]);
        let lifted = lift_script(&path(3), &script, &path(2), Side::H).unwrap();
        let prod = cartesian_product(&path(2), &path(3)).unwrap();
        let out = apply_script(&prod.graph, &lifted).unwrap();
        assert!(out.is_cycle() && out.n() == 4);
        assert!(out.find_label("1:m").is_some());
    }
}
