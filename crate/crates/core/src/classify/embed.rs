//! Schemes of genus zero or one for the products that have them.

use std::collections::{HashMap, VecDeque};

use crate::catalog::{cycle, family, path, FamilyId};
use crate::embedding::{base_embedding, embed_family_product, embed_minor, from_faces, Embedding};
use crate::error::{Error, Result};
use crate::graph::{find_isomorphism, Graph};
use crate::minor::{MinorOp, MinorScript, MinorWitness};
use crate::product::{cartesian_product, lift_script, Side};

use super::FamilyMembership;

/// Moves `e` onto `target` along the vertex bijection `map`.
fn transport(e: &Embedding, map: &[usize], target: &Graph) -> Result<Embedding> {
    let faces: Vec<Vec<usize>> = e
        .trace_faces()?
        .into_iter()
        .map(|f| f.into_iter().map(|v| map[v]).collect())
        .collect();
    let out = from_faces(target, &faces)?;
    if out.euler_genus()? != e.euler_genus()? {
        return Err(Error::InvalidEmbedding("transport changed the genus".into()));
    }
    Ok(out)
}

/// The stored `K_{1,3}□K_{1,3}` scheme on the user's product.
pub(super) fn k13_square(product: &Graph) -> Result<Embedding> {
    let base = base_embedding("K13xK13")?;
    let map = find_isomorphism(base.graph(), product)
        .ok_or_else(|| Error::Precondition("product is not K1,3 x K1,3".into()))?;
    transport(&base, &map, product)
}

/// Script on `host` that turns it into the pattern of `w`: unused vertices
/// go, each branch set collapses onto its first vertex along a BFS tree,
/// and quotient edges the pattern lacks are deleted. Returns the script and
/// the host vertex left for each pattern vertex.
fn witness_script(host: &Graph, pattern: &Graph, w: &MinorWitness) -> (MinorScript, Vec<usize>) {
    let mut owner = vec![usize::MAX; host.n()];
    for (p, set) in w.branch_sets.iter().enumerate() {
        for &x in set {
            owner[x] = p;
        }
    }
    let mut script = MinorScript::new("host");
    for v in (0..host.n()).filter(|&v| owner[v] == usize::MAX) {
        script.push(MinorOp::delete_vertex(host.label(v)));
    }
    let roots: Vec<usize> = w.branch_sets.iter().map(|s| s[0]).collect();
    for (p, &root) in roots.iter().enumerate() {
        let mut seen = vec![false; host.n()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in host.neighbors(x) {
                if owner[y] == p && !seen[y] {
                    seen[y] = true;
                    script.push(MinorOp::contract_keep(host.label(root), host.label(y)));
                    queue.push_back(y);
                }
            }
        }
    }
    let mut quotient = std::collections::BTreeSet::new();
    for (a, b) in host.edges() {
        let (p, q) = (owner[a], owner[b]);
        if p != usize::MAX && q != usize::MAX && p != q {
            quotient.insert((p.min(q), p.max(q)));
        }
    }
    for (p, q) in quotient {
        if !pattern.has_edge(p, q) {
            script.push(MinorOp::delete_edge(host.label(roots[p]), host.label(roots[q])));
        }
    }
    (script, roots)
}

/// A genus-one scheme of the user's product from a family witness for the
/// factor on `side`: embed `family(id, m)□H0` (with `H0` the standard P3
/// or C3), apply the witness script lifted to every fiber, then rename the
/// vertices onto the user's graph.
pub(super) fn family_scheme(
    fm: &FamilyMembership,
    factor: &Graph,
    other: &Graph,
    side: Side,
    product: &Graph,
) -> Result<Embedding> {
    let member = family(fm.family, fm.m)?;
    let h0 = match fm.family {
        FamilyId::B | FamilyId::Q => path(3),
        FamilyId::X | FamilyId::W => cycle(3),
    };
    let h_map = find_isomorphism(&h0, other)
        .ok_or_else(|| Error::Precondition("second factor does not match the family case".into()))?;
    let (script, roots) = witness_script(&member, factor, &fm.witness);
    let lifted = lift_script(&member, &script, &h0, Side::G)?;
    let e = embed_minor(&embed_family_product(fm.family, fm.m)?, &lifted)?;
    let root_of: HashMap<String, usize> = roots
        .iter()
        .enumerate()
        .map(|(p, &r)| (member.label(r).into_owned(), p))
        .collect();
    let (gn, hn) = (factor.n(), other.n());
    let g = e.graph();
    let mut map = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        let label = g.label(v);
        let (a, b) = label
            .split_once(':')
            .ok_or_else(|| Error::InvalidEmbedding(format!("unexpected vertex `{label}`")))?;
        let p = *root_of
            .get(a)
            .ok_or_else(|| Error::InvalidEmbedding(format!("unexpected vertex `{label}`")))?;
        let y = h_map[h0
            .find_label(b)
            .ok_or_else(|| Error::InvalidEmbedding(format!("unexpected vertex `{label}`")))?];
        map.push(match side {
            Side::G => p * hn + y,
            Side::H => y * gn + p,
        });
    }
    if g.n() != product.n() || g.edge_count() != product.edge_count() {
        return Err(Error::InvalidEmbedding("reduced product has the wrong size".into()));
    }
    if g.edges().into_iter().any(|(u, v)| !product.has_edge(map[u], map[v])) {
        return Err(Error::InvalidEmbedding("reduced product does not match".into()));
    }
    let out = transport(&e, &map, product)?;
    if out.euler_genus()? != 1 {
        return Err(Error::InvalidEmbedding("scheme does not have genus one".into()));
    }
    Ok(out)
}

/// Vertices of a path from one end, or of a cycle from vertex 0.
fn walk_order(g: &Graph) -> Vec<usize> {
    let start = (0..g.n()).find(|&v| g.degree(v) <= 1).unwrap_or(0);
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.neighbors(cur).iter().find(|&&w| w != prev && w != start) {
        if order.contains(&next) {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// Rotations read off a straight-line drawing with the given positions.
fn from_drawing(g: &Graph, at: &[(f64, f64)]) -> Result<Embedding> {
    let rotation = (0..g.n())
        .map(|v| {
            let mut nb = g.neighbors(v).to_vec();
            let angle = |w: usize| (at[w].1 - at[v].1).atan2(at[w].0 - at[v].0);
            nb.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
            nb
        })
        .collect();
    Embedding::orientable(g.clone(), rotation)
}

/// Grid and cylinder products drawn with straight lines: a path factor runs
/// along one axis (or outward as radius), a cycle factor around a circle.
fn grid_or_cylinder(g: &Graph, h: &Graph, product: &Graph) -> Result<Embedding> {
    let hn = h.n();
    let mut at = vec![(0.0, 0.0); product.n()];
    let (og, oh) = (walk_order(g), walk_order(h));
    for (i, &x) in og.iter().enumerate() {
        for (j, &y) in oh.iter().enumerate() {
            let (i, j) = (i as f64, j as f64);
            at[x * hn + y] = if h.is_cycle() {
                let t = std::f64::consts::TAU * j / hn as f64;
                ((i + 1.0) * t.cos(), (i + 1.0) * t.sin())
            } else if g.is_cycle() {
                let t = std::f64::consts::TAU * i / g.n() as f64;
                ((j + 1.0) * t.cos(), (j + 1.0) * t.sin())
            } else {
                (i, j)
            };
        }
    }
    from_drawing(product, &at)
}

/// Edge sets of the blocks (biconnected components) of a connected graph.
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct Dfs<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, u: usize, parent: usize) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            for &w in self.g.neighbors(u) {
                if self.disc[w] == 0 {
                    self.stack.push((u, w));
                    self.visit(w, u);
                    self.low[u] = self.low[u].min(self.low[w]);
                    if self.low[w] >= self.disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = self.stack.pop() {
                            block.push(e);
                            if e == (u, w) {
                                break;
                            }
                        }
                        self.out.push(block);
                    }
                } else if w != parent && self.disc[w] < self.disc[u] {
                    self.stack.push((u, w));
                    self.low[u] = self.low[u].min(self.disc[w]);
                }
            }
        }
    }
    let mut d = Dfs {
        g,
        disc: vec![0; g.n()],
        low: vec![0; g.n()],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    if g.n() > 0 {
        d.visit(0, usize::MAX);
    }
    d.out
}

/// Hamiltonian cycle of a 2-connected outerplanar block: its outer edges are
/// the ones whose endpoints do not separate the block.
fn outer_cycle(edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut verts: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    verts.sort_unstable();
    verts.dedup();
    let rest_connected = |u: usize, v: usize| {
        let keep: Vec<usize> = verts.iter().copied().filter(|&x| x != u && x != v).collect();
        let Some(&start) = keep.first() else { return true };
        let mut seen = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &(a, b) in edges {
                for (p, q) in [(a, b), (b, a)] {
                    if p == x && q != u && q != v && !seen.contains(&q) {
                        seen.push(q);
                        stack.push(q);
                    }
                }
            }
        }
        seen.len() == keep.len()
    };
    let outer: Vec<(usize, usize)> = edges.iter().copied().filter(|&(u, v)| rest_connected(u, v)).collect();
    let next = |x: usize, prev: usize| {
        outer
            .iter()
            .filter_map(|&(a, b)| {
                if a == x {
                    Some(b)
                } else if b == x {
                    Some(a)
                } else {
                    None
                }
            })
            .find(|&y| y != prev)
    };
    let mut cycle = vec![verts[0]];
    let mut prev = usize::MAX;
    while cycle.len() < verts.len() {
        let cur = *cycle.last()?;
        let y = next(cur, prev)?;
        if cycle.contains(&y) {
            return None;
        }
        prev = cur;
        cycle.push(y);
    }
    (outer.len() == verts.len()).then_some(cycle)
}

/// For each vertex, its neighbours counterclockwise in an outerplanar
/// drawing, starting just after an angle on the outer face. Each block is
/// drawn as a convex polygon with chords.
fn outer_rotation(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let not_outerplanar = || Error::Precondition("factor is not outerplanar".into());
    let mut rotation = vec![Vec::new(); g.n()];
    for block in blocks(g) {
        if let [(u, v)] = block[..] {
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        let cycle = outer_cycle(&block).ok_or_else(not_outerplanar)?;
        let k = cycle.len() as f64;
        let angle_of = |x: usize| {
            let i = cycle.iter().position(|&c| c == x).expect("block vertex") as f64;
            std::f64::consts::TAU * i / k
        };
        for &v in &cycle {
            let tv = angle_of(v);
            let mut nb: Vec<(f64, usize)> = block
                .iter()
                .filter_map(|&(a, b)| {
                    if a == v {
                        Some(b)
                    } else if b == v {
                        Some(a)
                    } else {
                        None
                    }
                })
                .map(|w| {
                    let tw = angle_of(w);
                    let dir = (tw.sin() - tv.sin()).atan2(tw.cos() - tv.cos());
                    // Measured counterclockwise from the outward direction.
                    ((dir - tv).rem_euclid(std::f64::consts::TAU), w)
                })
                .collect();
            nb.sort_by(|a, b| a.0.total_cmp(&b.0));
            rotation[v].extend(nb.into_iter().map(|(_, w)| w));
        }
    }
    Ok(rotation)
}

/// `G□P2` for outerplanar `G`: the first copy follows an outerplanar
/// drawing, the second is its mirror image, and each rung leaves through
/// an outer angle.
fn outerplanar_prism(g: &Graph, g_first: bool, product: &Graph) -> Result<Embedding> {
    let n = g.n();
    let base = outer_rotation(g)?;
    let id = |v: usize, copy: usize| if g_first { v * 2 + copy } else { copy * n + v };
    let mut rotation = vec![Vec::new(); product.n()];
    for v in 0..n {
        let mut first: Vec<usize> = base[v].iter().map(|&w| id(w, 0)).collect();
        first.push(id(v, 1));
        let mut second: Vec<usize> = base[v].iter().rev().map(|&w| id(w, 1)).collect();
        second.push(id(v, 0));
        rotation[id(v, 0)] = first;
        rotation[id(v, 1)] = second;
    }
    Embedding::orientable(product.clone(), rotation)
}

/// A genus-zero scheme of a planar product `G□H`.
pub fn planar_scheme(g: &Graph, h: &Graph) -> Result<Embedding> {
    let product = cartesian_product(g, h)?.graph;
    let e = if (g.is_path() || g.is_cycle()) && (h.is_path() || h.is_cycle()) && !(g.is_cycle() && h.is_cycle()) {
        grid_or_cylinder(g, h, &product)?
    } else if h.n() == 2 {
        outerplanar_prism(g, true, &product)?
    } else if g.n() == 2 {
        outerplanar_prism(h, false, &product)?
    } else {
        return Err(Error::Precondition("product is not one of the planar shapes".into()));
    };
    if e.euler_genus()? != 0 {
        return Err(Error::InvalidEmbedding("planar construction failed".into()));
    }
    Ok(e)
}
