use boxcap::catalog::{complete_bipartite, cycle, path};
use boxcap::graph::{are_isomorphic, enumerate_connected, Graph};
use boxcap::minor::{apply_script, MinorOp, MinorScript};
use boxcap::product::{cartesian_product, lift_script, Side};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Graph> {
    (1usize..=5).prop_flat_map(|n| {
        let list = enumerate_connected(n).unwrap();
        (0..list.len()).prop_map(move |i| list[i].clone())
    })
}

/// Adjacency straight from the definition.
fn product_adjacent(g: &Graph, h: &Graph, (a, x): (usize, usize), (b, y): (usize, usize)) -> bool {
    (a == b && h.has_edge(x, y)) || (x == y && g.has_edge(a, b))
}

#[test]
fn labels_and_fibers() {
    let p = cartesian_product(&path(3), &cycle(4)).unwrap();
    assert_eq!(p.graph.label(p.id(2, 3)), "3:4");
    assert_eq!(p.coords(7), (1, 3));
    assert_eq!(p.fiber(Side::G, 0).unwrap(), vec![0, 4, 8]);
    assert_eq!(p.fiber(Side::H, 1).unwrap(), vec![4, 5, 6, 7]);
    assert!(p.fiber(Side::H, 3).is_err());
    assert!(cartesian_product(&Graph::empty(0), &path(2)).is_err());
}

#[test]
fn lifted_deletion_matches_smaller_product() {
    let k13 = complete_bipartite(1, 3);
    let script = MinorScript::new("K1,3").with([MinorOp::delete_vertex("4")]);
    let lifted = lift_script(&k13, &script, &path(3), Side::G).unwrap();
    let out = apply_script(&cartesian_product(&k13, &path(3)).unwrap().graph, &lifted).unwrap();
    assert!(are_isomorphic(
        &out,
        &cartesian_product(&path(3), &path(3)).unwrap().graph
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_and_adjacency(g in small(), h in small()) {
        let p = cartesian_product(&g, &h).unwrap();
        prop_assert_eq!(p.graph.n(), g.n() * h.n());
        prop_assert_eq!(p.graph.edge_count(), g.n() * h.edge_count() + h.n() * g.edge_count());
        for u in 0..p.graph.n() {
            for v in 0..p.graph.n() {
                if u != v {
                    prop_assert_eq!(p.graph.has_edge(u, v), product_adjacent(&g, &h, p.coords(u), p.coords(v)));
                }
            }
        }
    }

    #[test]
    fn commutative_up_to_isomorphism(g in small(), h in small()) {
        let a = cartesian_product(&g, &h).unwrap().graph;
        let b = cartesian_product(&h, &g).unwrap().graph;
        prop_assert!(are_isomorphic(&a, &b));
    }

    #[test]
    fn lifting_commutes_with_the_product(g in small(), h in small(), pick in any::<prop::sample::Index>(), side_g in any::<bool>()) {
        let n = g.n();
        let g = g.with_labels((1..=n).map(|i| i.to_string())).unwrap();
        let edges = g.edges();
        prop_assume!(!edges.is_empty());
        let (u, v) = edges[pick.index(edges.len())];
        let op = MinorOp::contract_keep(g.label(u).into_owned(), g.label(v).into_owned());
        let script = MinorScript::new("g").with([op]);
        let reduced = apply_script(&g, &script).unwrap();
        let side = if side_g { Side::G } else { Side::H };
        let (full, expect) = match side {
            Side::G => (cartesian_product(&g, &h).unwrap().graph, cartesian_product(&reduced, &h).unwrap().graph),
            Side::H => (cartesian_product(&h, &g).unwrap().graph, cartesian_product(&h, &reduced).unwrap().graph),
        };
        let lifted = lift_script(&g, &script, &h, side).unwrap();
        prop_assert!(are_isomorphic(&apply_script(&full, &lifted).unwrap(), &expect));
    }
}
