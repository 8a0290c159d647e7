//! Exhaustive scheme search for small graphs, and a face-cover search that
//! builds a scheme from a prescribed number of short facial cycles.

use std::collections::HashMap;

use super::Embedding;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_EMBEDDING_BUDGET: u64 = 20_000_000;

#[derive(Clone, Debug)]
pub struct EmbeddingSearch {
    pub node_budget: u64,
}

impl Default for EmbeddingSearch {
    fn default() -> Self {
        EmbeddingSearch {
            node_budget: DEFAULT_EMBEDDING_BUDGET,
        }
    }
}

/// A scheme of Euler genus at most `genus` on a connected graph, if any.
/// Exhaustion of the default budget is reported as [`Error::Undecided`].
pub fn search_embedding(graph: &Graph, genus: usize) -> Result<Option<Embedding>> {
    EmbeddingSearch::default().find(graph, genus)
}

struct Partial<'a> {
    graph: &'a Graph,
    order: Vec<usize>,
    edge_ids: HashMap<(usize, usize), usize>,
    rotation: Vec<Option<Vec<usize>>>,
    signs: Vec<Option<i8>>,
    /// Edges whose sign is chosen once both ends have rotations.
    free: Vec<bool>,
    need: usize,
    girth: usize,
    nodes: u64,
    budget: u64,
    orientable_only: bool,
}

impl EmbeddingSearch {
    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn find(&self, graph: &Graph, genus: usize) -> Result<Option<Embedding>> {
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let (v, e) = (graph.n() as i64, graph.edge_count() as i64);
        let need = 2 - v + e - genus as i64;
        if graph.edge_count() == 0 {
            let rotation = vec![Vec::new(); graph.n()];
            return Embedding::new(graph.clone(), rotation, Vec::new()).map(Some);
        }
        if need <= 1 {
            // Any scheme has at least one face.
            let rotation = (0..graph.n()).map(|v| graph.neighbors(v).to_vec()).collect();
            return Embedding::orientable(graph.clone(), rotation).map(Some);
        }
        // BFS order; tree edges stay positive, since flips can fix any
        // spanning tree's signs.
        let mut order = vec![0];
        let mut seen = vec![false; graph.n()];
        seen[0] = true;
        let mut tree = vec![false; graph.edge_count()];
        let edges = graph.edges();
        let edge_ids: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for &y in graph.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    tree[edge_ids[&(x.min(y), x.max(y))]] = true;
                    order.push(y);
                }
            }
            i += 1;
        }
        let mut p = Partial {
            graph,
            order,
            signs: tree.iter().map(|&t| if t { Some(1) } else { None }).collect(),
            free: tree.iter().map(|&t| !t).collect(),
            edge_ids,
            rotation: vec![None; graph.n()],
            need: need as usize,
            girth: girth(graph).unwrap_or(3),
            nodes: 0,
            budget: self.node_budget,
            // Genus zero needs no twisted edges.
            orientable_only: genus == 0,
        };
        if p.orientable_only {
            for s in p.signs.iter_mut() {
                *s = Some(1);
            }
        }
        let found = p.descend(0)?;
        match found {
            Some(e) => {
                debug_assert!(e.euler_genus()? <= genus);
                Ok(Some(e))
            }
            None => Ok(None),
        }
    }
}

impl Partial<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Undecided { nodes: self.nodes });
        }
        Ok(())
    }

    fn descend(&mut self, depth: usize) -> Result<Option<Embedding>> {
        self.tick()?;
        if !self.can_reach() {
            return Ok(None);
        }
        if depth == self.order.len() {
            let rotation = self.rotation.iter().map(|r| r.clone().expect("assigned")).collect();
            let signs = self.signs.iter().map(|s| s.expect("assigned")).collect();
            let e = Embedding::new(self.graph.clone(), rotation, signs)?;
            return Ok((e.face_count()? >= self.need).then_some(e));
        }
        let v = self.order[depth];
        let nb = self.graph.neighbors(v).to_vec();
        let mut rest: Vec<usize> = nb[1..].to_vec();
        // Mirror symmetry: reversing every rotation keeps all faces.
        let mirror_free = depth == 0 && rest.len() >= 2;
        loop {
            if !mirror_free || rest[0] < rest[rest.len() - 1] {
                let mut rot = vec![nb[0]];
                rot.extend(&rest);
                self.rotation[v] = Some(rot);
                let pending: Vec<usize> = nb
                    .iter()
                    .filter(|&&w| self.rotation[w].is_some() && w != v)
                    .map(|&w| self.edge_ids[&(v.min(w), v.max(w))])
                    .filter(|&i| self.free[i] && !self.orientable_only)
                    .collect();
                if let Some(e) = self.signs_then_descend(&pending, 0, depth)? {
                    return Ok(Some(e));
                }
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        self.rotation[v] = None;
        Ok(None)
    }

    fn signs_then_descend(&mut self, pending: &[usize], k: usize, depth: usize) -> Result<Option<Embedding>> {
        if k == pending.len() {
            return self.descend(depth + 1);
        }
        for s in [1i8, -1] {
            self.signs[pending[k]] = Some(s);
            if let Some(e) = self.signs_then_descend(pending, k + 1, depth)? {
                return Ok(Some(e));
            }
        }
        self.signs[pending[k]] = None;
        Ok(None)
    }

    /// Upper bound on the final face count from the faces already closed.
    fn can_reach(&self) -> bool {
        let g = self.graph;
        let e = g.edge_count();
        let mut seen = vec![false; 4 * e];
        let state = |u: usize, v: usize, f: i8| {
            let i = self.edge_ids[&(u.min(v), u.max(v))];
            4 * i + 2 * usize::from(u > v) + usize::from(f < 0)
        };
        let mut closed = 0usize;
        let mut closed_len = 0usize;
        for &(a, b) in self.edge_ids.keys() {
            for (u, v) in [(a, b), (b, a)] {
                for flag in [1i8, -1] {
                    if seen[state(u, v, flag)] {
                        continue;
                    }
                    let (mut x, mut y, mut f) = (u, v, flag);
                    let mut len = 0;
                    let ok = loop {
                        let Some(s) = self.signs[self.edge_ids[&(x.min(y), x.max(y))]] else {
                            break false;
                        };
                        seen[state(x, y, f)] = true;
                        seen[state(y, x, -f * s)] = true;
                        len += 1;
                        let g2 = f * s;
                        let Some(rot) = &self.rotation[y] else {
                            break false;
                        };
                        let i = rot.iter().position(|&w| w == x).expect("neighbour");
                        let d = rot.len();
                        let z = if g2 > 0 { rot[(i + 1) % d] } else { rot[(i + d - 1) % d] };
                        (x, y, f) = (y, z, g2);
                        if (x, y, f) == (u, v, flag) {
                            break true;
                        }
                        if seen[state(x, y, f)] {
                            break false;
                        }
                    };
                    if ok {
                        closed += 1;
                        closed_len += len;
                    }
                }
            }
        }
        closed + (2 * e - closed_len) / self.girth >= self.need
    }
}

fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Length of a shortest cycle.
fn girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for s in 0..g.n() {
        let mut dist = vec![usize::MAX; g.n()];
        let mut parent = vec![usize::MAX; g.n()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    let c = dist[x] + dist[y] + 1;
                    best = Some(best.map_or(c, |b| b.min(c)));
                }
            }
        }
    }
    best
}

/// Simple cycles of length at most `max_len`, each listed once.
fn short_cycles(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, on: &mut [bool], max_len: usize, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let x = *path.last().expect("nonempty");
        for &y in g.neighbors(x) {
            if y == s && path.len() >= 3 && path[1] < x {
                out.push(path.clone());
            } else if y > s && !on[y] && path.len() < max_len {
                on[y] = true;
                path.push(y);
                extend(g, path, on, max_len, out);
                path.pop();
                on[y] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        on[s] = true;
        extend(g, &mut vec![s], &mut on, max_len, &mut out);
        on[s] = false;
    }
    out
}

struct Cover<'a> {
    graph: &'a Graph,
    cycles: Vec<Vec<usize>>,
    masks: Vec<u64>,
    /// Cycle indices through each edge.
    by_edge: Vec<Vec<usize>>,
    target: usize,
    min_len: usize,
    max_len: usize,
    nodes: u64,
    budget: u64,
}

#[derive(Clone)]
struct CoverState {
    count: Vec<u8>,
    /// Per vertex and neighbour slot, the neighbours it shares a corner with.
    corners: Vec<HashMap<usize, Vec<usize>>>,
    chosen: Vec<usize>,
    sides: usize,
}

/// Searches for `faces` distinct simple cycles of length at most `max_len`
/// that cover every edge twice and close up into a disc around every
/// vertex, starting from the `required` cycles. The result is converted to a
/// scheme and verified by tracing.
pub fn search_face_cover(
    graph: &Graph,
    faces: usize,
    max_len: usize,
    required: &[Vec<usize>],
    node_budget: u64,
) -> Result<Option<Embedding>> {
    let e = graph.edge_count();
    if e > 64 {
        return Err(Error::TooLarge(format!(
            "{e} edges; the face cover search handles at most 64"
        )));
    }
    if !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges = graph.edges();
    let edge_ids: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mask_of = |c: &[usize]| -> Option<u64> {
        let mut m = 0u64;
        for i in 0..c.len() {
            let (a, b) = (c[i], c[(i + 1) % c.len()]);
            m |= 1 << edge_ids.get(&(a.min(b), a.max(b)))?;
        }
        Some(m)
    };
    let cycles = short_cycles(graph, max_len);
    let masks: Vec<u64> = cycles.iter().map(|c| mask_of(c).expect("cycle edges")).collect();
    let mut by_edge = vec![Vec::new(); e];
    for (i, &m) in masks.iter().enumerate() {
        for (j, list) in by_edge.iter_mut().enumerate() {
            if m >> j & 1 == 1 {
                list.push(i);
            }
        }
    }
    let mut cover = Cover {
        graph,
        min_len: girth(graph).unwrap_or(3),
        cycles,
        masks,
        by_edge,
        target: faces,
        max_len,
        nodes: 0,
        budget: node_budget,
    };
    let mut state = CoverState {
        count: vec![0; e],
        corners: vec![HashMap::new(); graph.n()],
        chosen: Vec::new(),
        sides: 0,
    };
    for r in required {
        let m = mask_of(r).ok_or_else(|| Error::Precondition(format!("required face {r:?} is not a cycle")))?;
        let i = cover
            .masks
            .iter()
            .enumerate()
            .position(|(i, &x)| x == m && cover.cycles[i].len() == r.len())
            .ok_or_else(|| Error::Precondition(format!("required face {r:?} is not a short simple cycle")))?;
        if !cover.fits(&state, i) {
            return Err(Error::Precondition(format!(
                "required face {r:?} conflicts with the others"
            )));
        }
        cover.add(&mut state, i);
    }
    let Some(done) = cover.descend(state)? else {
        return Ok(None);
    };
    let faces: Vec<Vec<usize>> = done.chosen.iter().map(|&i| cover.cycles[i].clone()).collect();
    let emb = from_faces(graph, &faces)?;
    if emb.face_count()? != faces.len() {
        return Err(Error::InvalidEmbedding(
            "face cover does not trace back to itself".into(),
        ));
    }
    Ok(Some(emb))
}

impl Cover<'_> {
    fn corner(&self, c: usize, k: usize) -> (usize, usize, usize) {
        let cyc = &self.cycles[c];
        let l = cyc.len();
        (cyc[k], cyc[(k + l - 1) % l], cyc[(k + 1) % l])
    }

    fn fits(&self, st: &CoverState, c: usize) -> bool {
        if st.chosen.contains(&c) {
            return false;
        }
        let m = self.masks[c];
        if (0..st.count.len()).any(|j| m >> j & 1 == 1 && st.count[j] >= 2) {
            return false;
        }
        for k in 0..self.cycles[c].len() {
            let (v, a, b) = self.corner(c, k);
            let deg = self.graph.degree(v);
            let nb = &st.corners[v];
            let pa = nb.get(&a).map_or(&[][..], |x| &x[..]);
            if deg == 2 {
                continue;
            }
            if pa.contains(&b) {
                return false;
            }
            // Closing a cycle of corners is allowed only once it spans v.
            if let Some(len) = path_length(nb, a, b) {
                if len + 1 != deg {
                    return false;
                }
            }
        }
        true
    }

    fn add(&self, st: &mut CoverState, c: usize) {
        let m = self.masks[c];
        for j in 0..st.count.len() {
            if m >> j & 1 == 1 {
                st.count[j] += 1;
            }
        }
        for k in 0..self.cycles[c].len() {
            let (v, a, b) = self.corner(c, k);
            st.corners[v].entry(a).or_default().push(b);
            st.corners[v].entry(b).or_default().push(a);
        }
        st.chosen.push(c);
        st.sides += self.cycles[c].len();
    }

    fn descend(&mut self, st: CoverState) -> Result<Option<CoverState>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Undecided { nodes: self.nodes });
        }
        let left = self.target.saturating_sub(st.chosen.len());
        let rest = 2 * st.count.len() - st.sides;
        if st.chosen.len() > self.target || left * self.min_len > rest || rest > left * self.max_len {
            return Ok(None);
        }
        if rest == 0 {
            return Ok((left == 0).then_some(st));
        }
        // Branch on the edge with the fewest usable cycles.
        let mut best: Option<Vec<usize>> = None;
        for j in 0..st.count.len() {
            if st.count[j] >= 2 {
                continue;
            }
            let options: Vec<usize> = self.by_edge[j].iter().copied().filter(|&c| self.fits(&st, c)).collect();
            if (options.len() as u8) < 2 - st.count[j] {
                return Ok(None);
            }
            if best.as_ref().is_none_or(|b| options.len() < b.len()) {
                best = Some(options);
            }
        }
        for c in best.expect("some edge is open") {
            let mut next = st.clone();
            self.add(&mut next, c);
            if let Some(done) = self.descend(next)? {
                return Ok(Some(done));
            }
        }
        Ok(None)
    }
}

/// Edges on the corner path from `a` to `b`, when they are already joined.
fn path_length(nb: &HashMap<usize, Vec<usize>>, a: usize, b: usize) -> Option<usize> {
    let next = |x: usize, prev: Option<usize>| nb.get(&x).and_then(|ys| ys.iter().copied().find(|&y| Some(y) != prev));
    let (mut prev, mut x, mut len) = (None, a, 0);
    while let Some(y) = next(x, prev) {
        len += 1;
        if y == b {
            return Some(len);
        }
        if y == a {
            return None;
        }
        prev = Some(x);
        x = y;
    }
    None
}

/// Builds a scheme whose faces are the given closed walks, one corner
/// cycle per vertex. Each edge must lie on exactly two of the walks.
pub fn from_faces(graph: &Graph, faces: &[Vec<usize>]) -> Result<Embedding> {
    let bad = |m: String| Error::InvalidEmbedding(m);
    let n = graph.n();
    let mut partners: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new(); n];
    for (fi, f) in faces.iter().enumerate() {
        let l = f.len();
        for k in 0..l {
            let (v, a, b) = (f[k], f[(k + l - 1) % l], f[(k + 1) % l]);
            if !graph.has_edge(v, a) || !graph.has_edge(v, b) {
                return Err(bad(format!("face {fi} uses a missing edge")));
            }
            partners[v].entry(a).or_default().push(b);
            partners[v].entry(b).or_default().push(a);
        }
    }
    let mut rotation = Vec::with_capacity(n);
    for (v, corners) in partners.iter().enumerate() {
        let nb = graph.neighbors(v);
        if nb.len() <= 1 {
            rotation.push(nb.to_vec());
            continue;
        }
        let mut rot = vec![nb[0]];
        let mut prev = None;
        let mut x = nb[0];
        while rot.len() < nb.len() {
            let ys = corners.get(&x).ok_or_else(|| bad(format!("no corner at vertex {v}")))?;
            let Some(y) = ys
                .iter()
                .copied()
                .find(|&y| Some(y) != prev && !rot[1..].contains(&y) && y != nb[0])
            else {
                return Err(bad(format!("corners at vertex {v} do not form one cycle")));
            };
            rot.push(y);
            prev = Some(x);
            x = y;
        }
        rotation.push(rot);
    }
    // A face passing a vertex of degree at least three turns either with
    // the rotation or against it; an edge's sign is the product of the turns
    // at its ends. Runs through degree-two vertices carry the whole product
    // on the edge at their smaller end.
    let edge_ids: HashMap<(usize, usize), usize> = graph.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut signs = vec![1i8; edge_ids.len()];
    let branch = |v: usize| graph.degree(v) >= 3;
    for f in faces {
        let l = f.len();
        let turn = |i: usize| -> i8 {
            let (v, a, b) = (f[i % l], f[(i + l - 1) % l], f[(i + 1) % l]);
            let rot = &rotation[v];
            let d = rot.len();
            let at = rot.iter().position(|&y| y == a).expect("neighbour");
            if rot[(at + 1) % d] == b {
                1
            } else {
                -1
            }
        };
        for i in (0..l).filter(|&i| branch(f[i])) {
            let mut j = i + 1;
            while !branch(f[j % l]) {
                j += 1;
            }
            let (u, w) = (f[i], f[j % l]);
            let product = turn(i) * turn(j);
            let (x, y) = if u < w || (u == w && f[(i + 1) % l] < f[(j + l - 1) % l]) {
                (u, f[(i + 1) % l])
            } else {
                (w, f[(j + l - 1) % l])
            };
            signs[edge_ids[&(x.min(y), x.max(y))]] = product;
        }
    }
    Embedding::new(graph.clone(), rotation, signs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    #[test]
    fn k4_is_planar_k5_is_not() {
        let e = search_embedding(&complete(4), 0).unwrap().unwrap();
        assert_eq!(e.euler_genus().unwrap(), 0);
        assert!(search_embedding(&complete(5), 0).unwrap().is_none());
        let e = search_embedding(&complete(5), 1).unwrap().unwrap();
        assert_eq!((e.euler_genus().unwrap(), e.face_count().unwrap()), (1, 6));
    }

    #[test]
    fn k6_projective_by_face_cover() {
        // Ten triangles cover K6 twice in the projective plane.
        let e = search_face_cover(&complete(6), 10, 3, &[], 1_000_000).unwrap().unwrap();
        assert_eq!(e.euler_genus().unwrap(), 1);
    }

    #[test]
    fn grid_face_cover_with_corners_of_degree_two() {
        let mut g = Graph::empty(9);
        for r in 0..3 {
            for c in 0..3 {
                if c < 2 {
                    g.add_edge(3 * r + c, 3 * r + c + 1).unwrap();
                }
                if r < 2 {
                    g.add_edge(3 * r + c, 3 * r + c + 3).unwrap();
                }
            }
        }
        let e = search_face_cover(&g, 5, 8, &[], 1_000_000).unwrap().unwrap();
        assert_eq!(e.euler_genus().unwrap(), 0);
    }

    #[test]
    fn budget_is_reported() {
        let err = EmbeddingSearch::default()
            .with_node_budget(2)
            .find(&complete(5), 1)
            .unwrap_err();
        assert!(err.is_undecided());
    }

    #[test]
    fn short_cycles_of_k4() {
        let c = short_cycles(&complete(4), 4);
        assert_eq!(c.len(), 7);
        assert_eq!(girth(&complete(4)), Some(3));
    }
}
