//! Stored base schemes and the two ways of growing them along a family.

use super::search::from_faces;
use super::Embedding;
use crate::catalog::{cycle, family, named, path, FamilyId};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::product::{cartesian_product, product_label};

pub const BASE_NAMES: [&str; 5] = ["B1xP3", "Q1xP3", "X1xC3", "W1xC3", "K13xK13"];

fn data(name: &str) -> Option<&'static str> {
    Some(match name {
        "B1xP3" => include_str!("../../data/B1xP3.json"),
        "Q1xP3" => include_str!("../../data/Q1xP3.json"),
        "X1xC3" => include_str!("../../data/X1xC3.json"),
        "W1xC3" => include_str!("../../data/W1xC3.json"),
        "K13xK13" => include_str!("../../data/K13xK13.json"),
        _ => return None,
    })
}

fn canonical_name(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | '{' | '}' | ' ' | ','))
        .collect::<String>()
        .replace('□', "x")
}

/// Graph of a base scheme, e.g. `B1xP3` or `K13xK13`.
pub fn base_graph(name: &str) -> Result<Graph> {
    let name = canonical_name(name);
    match name.as_str() {
        "K13xK13" => named("K1,3xK1,3"),
        n if BASE_NAMES.contains(&n) => named(n),
        _ => Err(Error::UnknownName(name)),
    }
}

/// One of the stored schemes `B1xP3`, `Q1xP3`, `X1xC3`, `W1xC3`,
/// `K13xK13` (the box symbol and `K_{1,3}` spellings are accepted). The
/// data is checked against its graph on every load.
pub fn base_embedding(name: &str) -> Result<Embedding> {
    let key = canonical_name(name);
    let text = data(&key).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let e = Embedding::from_json(&base_graph(&key)?, text)?;
    if !e.verify_projective() {
        return Err(Error::InvalidEmbedding(format!(
            "stored scheme {key} has genus above one"
        )));
    }
    Ok(e)
}

fn face_of(faces: &[Vec<usize>], cycle: &[usize]) -> Option<usize> {
    let mut want = cycle.to_vec();
    want.sort_unstable();
    faces.iter().position(|f| {
        let mut f = f.clone();
        f.sort_unstable();
        f == want && f.len() == cycle.len()
    })
}

/// Inserts `new` between consecutive `a`, `b` (either order) in a closed walk.
fn subdivide_in(face: &mut Vec<usize>, a: usize, b: usize, new: usize) {
    let l = face.len();
    let mut out = Vec::with_capacity(l + 1);
    for i in 0..l {
        let (x, y) = (face[i], face[(i + 1) % l]);
        out.push(x);
        if (x, y) == (a, b) || (x, y) == (b, a) {
            out.push(new);
        }
    }
    *face = out;
}

fn add_labelled(g: &mut Graph, label: &str) -> Result<usize> {
    if g.find_label(label).is_some() {
        return Err(Error::InvalidParameter(format!("label `{label}` already in use")));
    }
    Ok(g.add_vertex(Some(label.to_string())))
}

/// Subdivides the three rungs `x[i] y[i]` of a ladder whose two quads
/// `x0 y0 y1 x1` and `x1 y1 y2 x2` are faces, and runs a new path through
/// the subdivision vertices inside those quads. New vertices are appended
/// with the given labels. The Euler genus is unchanged.
pub fn extend_quad_insertion(e: &Embedding, x: [usize; 3], y: [usize; 3], labels: [&str; 3]) -> Result<Embedding> {
    let g = e.graph();
    for i in 0..3 {
        if !g.has_edge(x[i], y[i]) {
            return Err(Error::Precondition(format!("rung {i} is not an edge")));
        }
    }
    let mut faces = e.trace_faces()?;
    let quads = [[x[0], y[0], y[1], x[1]], [x[1], y[1], y[2], x[2]]];
    let mut at = Vec::new();
    for q in &quads {
        let i = face_of(&faces, q).ok_or_else(|| Error::Precondition(format!("{q:?} is not a face")))?;
        at.push(i);
    }
    let mut h = g.clone();
    let mut s = [0usize; 3];
    for i in 0..3 {
        s[i] = add_labelled(&mut h, labels[i])?;
        h.remove_edge(x[i], y[i]);
        h.add_edge(x[i], s[i])?;
        h.add_edge(s[i], y[i])?;
    }
    h.add_edge(s[0], s[1])?;
    h.add_edge(s[1], s[2])?;
    let mut kept: Vec<Vec<usize>> = faces
        .drain(..)
        .enumerate()
        .filter(|(i, _)| !at.contains(i))
        .map(|(_, f)| f)
        .collect();
    for f in kept.iter_mut() {
        for i in 0..3 {
            subdivide_in(f, x[i], y[i], s[i]);
        }
    }
    for i in 0..2 {
        kept.push(vec![x[i], s[i], s[i + 1], x[i + 1]]);
        kept.push(vec![s[i], y[i], y[i + 1], s[i + 1]]);
    }
    rebuild(&h, &kept, e)
}

/// Nests a new triangle inside the triangular face `t`, matching `t[i]` to
/// the new vertex labelled `labels[i]`. The Euler genus is unchanged.
pub fn extend_triangle_nesting(e: &Embedding, t: [usize; 3], labels: [&str; 3]) -> Result<Embedding> {
    let g = e.graph();
    let mut faces = e.trace_faces()?;
    let at = face_of(&faces, &t)
        .filter(|&i| faces[i].len() == 3)
        .ok_or_else(|| Error::Precondition(format!("{t:?} is not a triangular face")))?;
    faces.remove(at);
    let mut h = g.clone();
    let mut s = [0usize; 3];
    for i in 0..3 {
        s[i] = add_labelled(&mut h, labels[i])?;
        h.add_edge(t[i], s[i])?;
    }
    for i in 0..3 {
        h.add_edge(s[i], s[(i + 1) % 3])?;
        faces.push(vec![t[i], t[(i + 1) % 3], s[(i + 1) % 3], s[i]]);
    }
    faces.push(s.to_vec());
    rebuild(&h, &faces, e)
}

fn rebuild(h: &Graph, faces: &[Vec<usize>], from: &Embedding) -> Result<Embedding> {
    let out = from_faces(h, faces)?;
    if out.face_count()? != faces.len() || out.euler_genus()? != from.euler_genus()? {
        return Err(Error::InvalidEmbedding("extension changed the genus".into()));
    }
    Ok(out)
}

/// Moves a scheme onto an isomorphic copy of its graph with the same labels.
fn relabel_onto(e: &Embedding, target: &Graph) -> Result<Embedding> {
    let g = e.graph();
    let map: Vec<usize> = (0..g.n())
        .map(|v| {
            target
                .find_label(&g.label(v))
                .ok_or_else(|| Error::InvalidEmbedding(format!("no vertex `{}` in the target", g.label(v))))
        })
        .collect::<Result<_>>()?;
    if target.n() != g.n()
        || target.edge_count() != g.edge_count()
        || g.edges().iter().any(|&(u, v)| !target.has_edge(map[u], map[v]))
    {
        return Err(Error::InvalidEmbedding("target graph differs".into()));
    }
    let faces: Vec<Vec<usize>> = e
        .trace_faces()?
        .into_iter()
        .map(|f| f.into_iter().map(|v| map[v]).collect())
        .collect();
    from_faces(target, &faces)
}

fn second_factor(id: FamilyId) -> Graph {
    match id {
        FamilyId::B | FamilyId::Q => path(3),
        FamilyId::X | FamilyId::W => cycle(3),
    }
}

/// A genus-one scheme of `family(id, m)` times `P3` (for B, Q) or `C3`
/// (for X, W), grown from the stored base scheme one member at a time. The
/// graph is exactly the one [`cartesian_product`] builds.
pub fn embed_family_product(id: FamilyId, m: usize) -> Result<Embedding> {
    let h = second_factor(id);
    let hl = h.labels();
    let mut e = base_embedding(&format!("{id}1x{}", if h.is_cycle() { "C3" } else { "P3" }))?;
    let mut cur = family(id, 1)?;
    for k in 2..=m {
        let next = family(id, k)?;
        let old = cur.labels();
        for s in (0..next.n()).filter(|&v| !old.contains(&next.label(v).into_owned())) {
            let sl = next.label(s).into_owned();
            let nbs: Vec<String> = next.neighbors(s).iter().map(|&w| next.label(w).into_owned()).collect();
            let at = |gl: &str, hv: &str| -> Result<usize> {
                let l = product_label(gl, hv);
                e.graph()
                    .find_label(&l)
                    .ok_or_else(|| Error::InvalidEmbedding(format!("missing vertex `{l}`")))
            };
            let new_labels: Vec<String> = hl.iter().map(|hv| product_label(&sl, hv)).collect();
            let nl = [new_labels[0].as_str(), new_labels[1].as_str(), new_labels[2].as_str()];
            e = match nbs.as_slice() {
                [a, b] => {
                    let x = [at(a, &hl[0])?, at(a, &hl[1])?, at(a, &hl[2])?];
                    let y = [at(b, &hl[0])?, at(b, &hl[1])?, at(b, &hl[2])?];
                    extend_quad_insertion(&e, x, y, nl)?
                }
                [a] => {
                    let t = [at(a, &hl[0])?, at(a, &hl[1])?, at(a, &hl[2])?];
                    extend_triangle_nesting(&e, t, nl)?
                }
                _ => unreachable!("family steps add subdivision or pendant vertices"),
            };
        }
        cur = next;
    }
    let target = cartesian_product(&cur, &h)?.graph;
    let out = if e.graph() == &target {
        e
    } else {
        relabel_onto(&e, &target)?
    };
    if out.euler_genus()? != 1 {
        return Err(Error::InvalidEmbedding(format!(
            "{id}{m} scheme does not have genus one"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_insertion_counts() {
        let e = embed_family_product(FamilyId::B, 2).unwrap();
        let g = e.graph();
        assert_eq!((g.n(), g.edge_count(), e.face_count().unwrap()), (21, 38, 18));
    }

    #[test]
    fn triangle_nesting_counts() {
        let e = embed_family_product(FamilyId::X, 2).unwrap();
        let g = e.graph();
        assert_eq!((g.n(), g.edge_count(), e.face_count().unwrap()), (24, 45, 22));
    }

    #[test]
    fn unknown_base() {
        assert!(matches!(base_embedding("K5xP2"), Err(Error::UnknownName(_))));
    }
}
