//! The eight explicit reductions from products to obstructions.

use super::graphs::{complete_bipartite, cycle, graph_i, graph_l, graph_r, graph_s, path, product};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minor::{apply_script, MinorOp, MinorScript};

#[derive(Clone, Debug)]
pub struct LemmaScript {
    pub id: &'static str,
    pub g_name: &'static str,
    pub h_name: &'static str,
    pub g: Graph,
    pub h: Graph,
    pub script: MinorScript,
    /// Catalog name of the obstruction the script produces.
    pub expected: &'static str,
}

impl LemmaScript {
    pub fn base(&self) -> Graph {
        product(&self.g, &self.h)
    }

    pub fn run(&self) -> Result<Graph> {
        apply_script(&self.base(), &self.script)
    }
}

pub const LEMMA_IDS: [&str; 8] = ["IxP3", "K15xP3", "SxP3", "LxP3", "RxC3", "C4xC3", "P4xK13", "K14xK13"];

fn at(g: &str, h: &str) -> String {
    format!("{g}:{h}")
}

fn del(ops: &mut Vec<MinorOp>, u: &str, v: &str) {
    ops.push(MinorOp::delete_edge(u, v));
}

/// Contracts the path or star `first, rest...` (each adjacent to the growing
/// vertex) into one vertex called `into`.
fn merge(ops: &mut Vec<MinorOp>, first: &str, rest: &[&str], into: &str) {
    let mut cur = first.to_string();
    for v in rest {
        ops.push(MinorOp::contract(cur.as_str(), *v, into));
        cur = into.to_string();
    }
}

/// Contracts the whole `h`-fiber over factor vertex `g` (labels `h_labels`
/// in path order) into `into`.
fn merge_fiber(ops: &mut Vec<MinorOp>, g: &str, h_labels: &[&str], into: &str) {
    let labels: Vec<String> = h_labels.iter().map(|h| at(g, h)).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    merge(ops, refs[0], &refs[1..], into);
}

/// The four edges at the contracted fiber vertex that the C4□C3 reduction
/// deletes. Several choices work; this one was found by trying
/// all 70 four-edge subsets against the S□P3 output.
pub const C4XC3_DELETED: [&str; 4] = ["1:3", "2:2", "3:3", "4:2"];

pub fn lemma_script(id: &str) -> Result<LemmaScript> {
    let p3 = ["1", "2", "3"];
    let mut ops = Vec::new();
    let (g_name, h_name, g, h, expected) = match id {
        "IxP3" => {
            for c in ["c", "d"] {
                del(&mut ops, &at(c, "1"), &at(c, "2"));
                del(&mut ops, &at(c, "2"), &at(c, "3"));
            }
            for leaf in ["a", "b", "e", "f"] {
                merge_fiber(&mut ops, leaf, &p3, &format!("v{leaf}"));
            }
            ("I", "P3", graph_i(), path(3), "G1")
        }
        "K15xP3" => {
            del(&mut ops, "1:1", "1:2");
            del(&mut ops, "1:2", "1:3");
            for leaf in ["2", "3", "4", "5", "6"] {
                merge_fiber(&mut ops, leaf, &p3, &format!("v{leaf}"));
            }
            ("K1,5", "P3", complete_bipartite(1, 5), path(3), "E3")
        }
        "SxP3" => {
            del(&mut ops, "1:2", "1:3");
            del(&mut ops, "3:2", "3:3");
            merge_fiber(&mut ops, "5", &p3, "v5");
            merge_fiber(&mut ops, "6", &p3, "v6");
            merge(&mut ops, "1:3", &["2:3", "3:3", "4:3", "v5", "v6"], "v7");
            del(&mut ops, "1:2", "v7");
            del(&mut ops, "3:2", "v7");
            ("S", "P3", graph_s(), path(3), "E22")
        }
        "LxP3" => {
            del(&mut ops, "3:1", "3:2");
            del(&mut ops, "3:2", "3:3");
            del(&mut ops, "1:2", "2:2");
            del(&mut ops, "1:2", "4:2");
            del(&mut ops, "1:1", "3:1");
            del(&mut ops, "1:3", "3:3");
            merge_fiber(&mut ops, "5", &p3, "v5");
            merge_fiber(&mut ops, "2", &p3, "v2");
            merge_fiber(&mut ops, "4", &p3, "v4");
            ("L", "P3", graph_l(), path(3), "E5")
        }
        "RxC3" => {
            del(&mut ops, "3:1", "3:2");
            del(&mut ops, "3:2", "3:3");
            del(&mut ops, "3:1", "3:3");
            merge_fiber(&mut ops, "4", &p3, "v4");
            merge_fiber(&mut ops, "5", &p3, "v5");
            del(&mut ops, "2:1", "2:2");
            del(&mut ops, "1:1", "1:3");
            merge(&mut ops, "1:1", &["1:2"], "v1");
            del(&mut ops, "v1", "3:1");
            del(&mut ops, "v1", "3:2");
            del(&mut ops, "2:3", "3:3");
            ("R", "C3", graph_r(), cycle(3), "G1")
        }
        "C4xC3" => {
            merge(&mut ops, "1:1", &["2:1", "3:1", "4:1"], "v0");
            for w in C4XC3_DELETED {
                del(&mut ops, "v0", w);
            }
            ("C4", "C3", cycle(4), cycle(3), "E22")
        }
        "P4xK13" => {
            del(&mut ops, "1:1", "2:1");
            del(&mut ops, "2:1", "3:1");
            del(&mut ops, "3:1", "4:1");
            for leaf in ["2", "3", "4"] {
                ops.push(MinorOp::contract_keep(at("2", leaf), at("1", leaf)));
                ops.push(MinorOp::contract_keep(at("3", leaf), at("4", leaf)));
            }
            ("P4", "K1,3", path(4), complete_bipartite(1, 3), "G1")
        }
        "K14xK13" => {
            for leaf in ["2", "3", "4"] {
                del(&mut ops, "1:1", &at("1", leaf));
            }
            for g in ["2", "3", "4", "5"] {
                // Star fiber: centre first, each leaf adjacent to it.
                merge_fiber(&mut ops, g, &["1", "2", "3", "4"], &format!("v{g}"));
            }
            del(&mut ops, "1:1", "v2");
            (
                "K1,4",
                "K1,3",
                complete_bipartite(1, 4),
                complete_bipartite(1, 3),
                "E18",
            )
        }
        _ => return Err(Error::UnknownName(id.to_string())),
    };
    let id = LEMMA_IDS.iter().copied().find(|&x| x == id).expect("matched above");
    Ok(LemmaScript {
        id,
        g_name,
        h_name,
        g,
        h,
        script: MinorScript::new(format!("{g_name}x{h_name}")).with(ops),
        expected,
    })
}
