//! Every named graph, family, obstruction list and reduction script.

mod graphs;
mod lemmas;

pub use graphs::{
    complete, complete_bipartite, cycle, diamond, family, graph_i, graph_l, graph_r, graph_s, path, paw, FamilyId,
};
pub use lemmas::{lemma_script, LemmaScript, C4XC3_DELETED, LEMMA_IDS};

use graphs::product;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Names accepted by [`named`] without parameters.
pub const FIXED_NAMES: [&str; 16] = [
    "I",
    "L",
    "S",
    "R",
    "paw",
    "diamond",
    "bowtie",
    "net",
    "D17",
    "E3",
    "E5",
    "E18",
    "E22",
    "G1",
    "K1,3xK1,3",
    "C3xC3",
];

pub const FORBIDDEN_KEYS: [&str; 5] = [
    "N1_six",
    "CP_plane",
    "CP_N1",
    "P3_factor_obstructions",
    "C3_factor_obstructions",
];

/// `(K_{2,3} □ P_2)` minus the two edges joining the degree-four vertices of
/// the two `K_{2,3}` fibers.
pub fn g1() -> Graph {
    let mut g = product(&complete_bipartite(2, 3), &path(2));
    for a in ["1", "2"] {
        let u = g.find_label(&format!("{a}:1")).expect("fiber vertex");
        let v = g.find_label(&format!("{a}:2")).expect("fiber vertex");
        g.remove_edge(u, v);
    }
    g
}

/// `K_{4,4}` minus one edge.
pub fn e18() -> Graph {
    let mut g = complete_bipartite(4, 4);
    g.remove_edge(0, 4);
    g
}

fn lemma_output(id: &str) -> Graph {
    lemma_script(id)
        .and_then(|l| l.run())
        .expect("catalog scripts are valid")
}

fn parse_family(s: &str) -> Option<(FamilyId, usize)> {
    let mut chars = s.chars();
    let id: FamilyId = chars.next()?.to_string().parse().ok()?;
    let rest = chars.as_str();
    let rest = rest.strip_prefix(':').unwrap_or(rest);
    let m = rest.parse().ok()?;
    Some((id, m))
}

fn parse_size(s: &str, prefix: char) -> Option<usize> {
    s.strip_prefix(prefix)?.parse().ok()
}

fn parse_bipartite(s: &str) -> Option<(usize, usize)> {
    let (a, b) = s.strip_prefix('K')?.split_once(',')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// Strips TeX decoration so `K_{1,3}`, `K1,3` and `K_1,3` all agree.
fn normalise(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | '{' | '}' | '$' | ' ' | '\\' | '(' | ')'))
        .collect::<String>()
        .replace('□', "x")
        .replace("box", "x")
}

fn single(name: &str) -> Result<Graph> {
    let unknown = || Error::UnknownName(name.to_string());
    let g = match name {
        "I" => graph_i(),
        "L" => graph_l(),
        "S" => graph_s(),
        "R" => graph_r(),
        "paw" => paw(),
        "diamond" | "K4-e" => diamond(),
        "bowtie" => family(FamilyId::B, 1)?,
        "net" => family(FamilyId::W, 1)?,
        "D17" => product(&complete(4), &path(2)),
        "E3" => complete_bipartite(3, 5),
        "E5" => lemma_output("LxP3"),
        "E18" => e18(),
        "E22" => lemma_output("SxP3"),
        "G1" => g1(),
        _ => {
            if let Some((a, b)) = parse_bipartite(name) {
                if a == 0 || b == 0 {
                    return Err(unknown());
                }
                complete_bipartite(a, b)
            } else if let Some(n) = parse_size(name, 'P').filter(|&n| n >= 1) {
                path(n)
            } else if let Some(n) = parse_size(name, 'C').filter(|&n| n >= 3) {
                cycle(n)
            } else if let Some(n) = parse_size(name, 'K').filter(|&n| n >= 1) {
                complete(n)
            } else if let Some((id, m)) = parse_family(name) {
                family(id, m)?
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(g)
}

/// Looks up a graph by name: `P5`, `C_4`, `K_{2,3}`, `K4`, `I`, `L`, `S`,
/// `R`, `paw`, `diamond`, `bowtie`, `net`, `D17`, `E3`, `E5`, `E18`, `E22`,
/// `G1`, family members `B:3` or `X_2`, and products such as `C3xC3` or
/// `K_{1,3}□P_3`.
pub fn named(name: &str) -> Result<Graph> {
    let norm = normalise(name);
    if let Some((a, b)) = norm.split_once('x') {
        let (g, h) = (single(a), single(b));
        return match (g, h) {
            (Ok(g), Ok(h)) => Ok(product(&g, &h)),
            _ => Err(Error::UnknownName(name.to_string())),
        };
    }
    single(&norm).map_err(|e| match e {
        Error::UnknownName(_) => Error::UnknownName(name.to_string()),
        other => other,
    })
}

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

fn entries(names: &[&str]) -> Vec<NamedGraph> {
    names
        .iter()
        .map(|&n| NamedGraph {
            name: n.to_string(),
            graph: named(n).expect("catalog names resolve"),
        })
        .collect()
}

pub fn forbidden_set(key: &str) -> Result<Vec<NamedGraph>> {
    let names: &[&str] = match key {
        "N1_six" => &["D17", "E3", "E5", "E18", "E22", "G1"],
        "CP_plane" => &["C3xC3", "K1,3xP3", "K2,3xP2", "K4xP2"],
        "CP_N1" => &[
            "K2,3xP2",
            "K4xP2",
            "IxP3",
            "K1,5xP3",
            "LxP3",
            "SxP3",
            "RxC3",
            "P4xK1,3",
            "K1,4xK1,3",
        ],
        "P3_factor_obstructions" => &["K4", "K2,3", "I", "K1,5", "S", "L"],
        "C3_factor_obstructions" => &["I", "K1,5", "C4", "R"],
        _ => return Err(Error::UnknownName(key.to_string())),
    };
    Ok(entries(names))
}
