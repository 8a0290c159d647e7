use boxcap::graph::{
    are_isomorphic, emit_edge_list, emit_graph6, enumerate_connected, enumerate_connected_bruteforce, find_isomorphism,
    invariant_hash, parse_edge_list, parse_graph6, Graph,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        g.add_edge(u, v).unwrap();
                    }
                    i += 1;
                }
            }
            g
        })
    })
}

fn arb_permuted(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

#[test]
fn known_graph6_strings() {
    // Standard encodings from the nauty documentation.
    let k4 = parse_graph6("C~").unwrap();
    assert_eq!((k4.n(), k4.edge_count()), (4, 6));
    assert_eq!(emit_graph6(&Graph::empty(1)), "@");
    let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(emit_graph6(&p3), "Bg");
    assert!(parse_graph6("C~~").is_err());
}

#[test]
fn connected_class_counts() {
    // Number of connected graphs on n unlabelled vertices.
    let known = [1, 1, 2, 6, 21, 112, 853];
    for (i, &count) in known.iter().enumerate() {
        assert_eq!(enumerate_connected(i + 1).unwrap().len(), count, "n = {}", i + 1);
    }
    for n in 1..=5 {
        let fast = enumerate_connected(n).unwrap();
        let slow = enumerate_connected_bruteforce(n).unwrap();
        assert_eq!(fast.len(), slow.len());
        assert!(slow.iter().all(|g| fast.iter().any(|f| are_isomorphic(f, g))));
    }
    assert!(enumerate_connected(8).is_err());
}

#[test]
fn labels_survive_edits() {
    let mut g = Graph::from_edge_list(3, &[(0, 1)])
        .unwrap()
        .with_labels(["a", "b", "c"])
        .unwrap();
    assert!(g.add_edge(1, 2).unwrap());
    assert!(!g.add_edge(2, 1).unwrap());
    assert!(g.add_edge(0, 0).is_err());
    assert_eq!(g.find_label("c"), Some(2));
    let d = g.add_vertex(Some("d".into()));
    assert_eq!(g.label(d), "d");
    assert!(!g.is_path() && !g.is_connected());
    assert!(Graph::empty(2).with_labels(["x"]).is_err());
}

proptest! {
    #[test]
    fn graph6_round_trips(g in arb_graph(40)) {
        let back = parse_graph6(&emit_graph6(&g)).unwrap();
        prop_assert!(back.same_adjacency(&g));
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph(12)) {
        let back = parse_edge_list(&emit_edge_list(&g)).unwrap();
        prop_assert!(back.same_adjacency(&g));
    }

    #[test]
    fn isomorphic_under_relabelling((g, perm) in arb_permuted(9)) {
        let p = g.permuted(&perm);
        prop_assert_eq!(invariant_hash(&g), invariant_hash(&p));
        let map = find_isomorphism(&g, &p).expect("a permutation is an isomorphism");
        for (u, v) in g.edges() {
            prop_assert!(p.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn an_extra_edge_breaks_isomorphism(g in arb_graph(8)) {
        let n = g.n();
        if let Some((u, v)) = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).find(|&(u, v)| !g.has_edge(u, v)) {
            prop_assert!(!are_isomorphic(&g, &g.with_edge(u, v).unwrap()));
        }
    }
}
