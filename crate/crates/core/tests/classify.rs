use std::sync::OnceLock;

use boxcap::catalog::{complete, complete_bipartite, cycle, family, graph_r, named, path, FamilyId};
use boxcap::classify::{
    certify, classify_product, crosscap, excludes_c3_obstructions, excludes_p3_obstructions, family_membership,
    is_outerplanar, is_planar_product, oracle_classify, planar_scheme, Case, Certificate, Crosscap, Level, Verdict,
};
use boxcap::graph::{enumerate_connected, Graph};
use boxcap::minor::{is_minor, verify_witness};
use boxcap::product::cartesian_product;
use boxcap::Error;
use proptest::prelude::*;

fn graphs(n: usize) -> &'static [Graph] {
    static ALL: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    &ALL.get_or_init(|| (0..=6).map(|n| enumerate_connected(n).unwrap()).collect())[n]
}

fn up_to(n: usize) -> impl Iterator<Item = &'static Graph> {
    (2..=n).flat_map(graphs)
}

/// Outerplanar iff the vertices can sit on a circle with no two edges
/// crossing. Tries every circular order.
fn outerplanar_by_circle(g: &Graph) -> bool {
    fn crosses(pos: &[usize], (a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
        let (a, b) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        let inside = |x: usize| a < pos[x] && pos[x] < b;
        let shared = [c, d].iter().any(|&x| pos[x] == a || pos[x] == b);
        !shared && inside(c) != inside(d)
    }
    fn orders(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 1..n {
            if !prefix.contains(&v) {
                prefix.push(v);
                orders(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut all = Vec::new();
    orders(&mut vec![0], g.n(), &mut all);
    let edges = g.edges();
    all.iter().any(|order| {
        let mut pos = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        edges
            .iter()
            .enumerate()
            .all(|(i, &e)| edges[i + 1..].iter().all(|&f| !crosses(&pos, e, f)))
    })
}

fn kuratowski_planar(g: &Graph) -> bool {
    !is_minor(g, &complete(5)).unwrap() && !is_minor(g, &complete_bipartite(3, 3)).unwrap()
}

fn chorded_c6() -> Graph {
    let mut g = cycle(6);
    g.add_edge(0, 3).unwrap();
    g
}

fn spider(legs: usize, len: usize) -> Graph {
    let mut g = Graph::empty(1 + legs * len);
    for l in 0..legs {
        for i in 0..len {
            let v = 1 + l * len + i;
            g.add_edge(if i == 0 { 0 } else { v - 1 }, v).unwrap();
        }
    }
    g
}

#[test]
fn outerplanarity() {
    assert!(is_outerplanar(&spider(3, 3)).unwrap());
    assert!(!is_outerplanar(&complete(4)).unwrap());
    assert!(is_outerplanar(&chorded_c6()).unwrap());
    for g in up_to(6) {
        assert_eq!(is_outerplanar(g).unwrap(), outerplanar_by_circle(g), "{g:?}");
    }
}

#[test]
fn planar_shapes() {
    assert_eq!(is_planar_product(&path(5), &cycle(7)).unwrap(), Some("path×cycle"));
    assert_eq!(is_planar_product(&cycle(3), &cycle(3)).unwrap(), None);
    assert_eq!(
        is_planar_product(&spider(3, 2), &path(2)).unwrap(),
        Some("outerplanar×P2")
    );
    assert_eq!(
        is_planar_product(&path(2), &spider(3, 2)).unwrap(),
        Some("outerplanar×P2")
    );
    assert_eq!(is_planar_product(&path(3), &path(4)).unwrap(), Some("path×path"));
    assert!(matches!(
        is_planar_product(&path(1), &path(3)),
        Err(Error::TrivialFactor { .. })
    ));
    let two_edges = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
    assert!(matches!(
        is_planar_product(&two_edges, &path(3)),
        Err(Error::Disconnected)
    ));
}

#[test]
fn factor_obstruction_sets() {
    assert!(excludes_p3_obstructions(&cycle(5)).unwrap());
    assert!(!excludes_p3_obstructions(&complete_bipartite(1, 5)).unwrap());
    assert!(!excludes_c3_obstructions(&named("bowtie").unwrap()).unwrap());
    assert!(excludes_c3_obstructions(&named("net").unwrap()).unwrap());
}

#[test]
fn family_members() {
    let k14 = complete_bipartite(1, 4);
    let fm = family_membership(&k14, Case::P3).unwrap().unwrap();
    assert_eq!(fm.family, FamilyId::B);
    assert!(verify_witness(&family(fm.family, fm.m).unwrap(), &k14, &fm.witness));

    let net = named("net").unwrap();
    let fm = family_membership(&net, Case::P3).unwrap().unwrap();
    assert_eq!(fm.family, FamilyId::Q);

    assert!(family_membership(&cycle(4), Case::C3).unwrap().is_none());
}

#[test]
fn worked_verdicts() {
    let k13 = complete_bipartite(1, 3);
    let cases = [
        (k13.clone(), k13.clone(), Crosscap::One),
        (complete(4), path(2), Crosscap::AtLeastTwo),
        (cycle(4), cycle(3), Crosscap::AtLeastTwo),
        (graph_r(), path(3), Crosscap::One),
        (path(4), k13.clone(), Crosscap::AtLeastTwo),
        (cycle(3), cycle(3), Crosscap::One),
        (path(9), path(9), Crosscap::Zero),
        (complete_bipartite(1, 5), path(3), Crosscap::AtLeastTwo),
    ];
    for (g, h, want) in cases {
        let v = classify_product(&g, &h).unwrap();
        assert_eq!(v.crosscap, want, "{g:?} {h:?}");
        assert!(v.verify(&g, &h));
        assert_eq!(crosscap(&g, &h).unwrap(), want);
    }
}

fn product_level(c: &Certificate) -> Vec<String> {
    match c {
        Certificate::Obstruction { witnesses } => witnesses
            .iter()
            .filter(|w| w.level == Level::Product)
            .map(|w| w.name.clone())
            .collect(),
        _ => Vec::new(),
    }
}

#[test]
fn certificates() {
    let c = certify(&complete(4), &path(2)).unwrap();
    assert_eq!(product_level(&c), ["D17"]);
    let c = certify(&cycle(4), &cycle(3)).unwrap();
    assert_eq!(product_level(&c), ["E22"]);
    let c = certify(&complete_bipartite(1, 5), &path(3)).unwrap();
    assert_eq!(product_level(&c), ["E3"]);
    let Certificate::Obstruction { witnesses } = &c else {
        panic!("{c:?}")
    };
    assert_eq!(witnesses[0].name, "K1,5");

    let c = certify(&cycle(3), &cycle(3)).unwrap();
    let Certificate::Embedding {
        embedding,
        nonplanarity,
    } = &c
    else {
        panic!("{c:?}")
    };
    assert_eq!(embedding.euler_genus().unwrap(), 1);
    assert_eq!(nonplanarity.name, "C3xC3");

    let c = certify(&path(6), &path(2)).unwrap();
    assert_eq!(
        c,
        Certificate::PlanarStructure {
            tag: "outerplanar×P2".into()
        }
    );

    // K2,3 as the factor of a prism goes through G1.
    let c = certify(&path(2), &complete_bipartite(2, 3)).unwrap();
    assert_eq!(product_level(&c), ["G1"]);
}

#[test]
fn oracle_examples() {
    assert_eq!(oracle_classify(&cycle(3), &cycle(3)).unwrap(), Crosscap::One);
    assert_eq!(
        oracle_classify(&complete_bipartite(2, 3), &path(2)).unwrap(),
        Crosscap::AtLeastTwo
    );
    assert_eq!(oracle_classify(&path(3), &path(3)).unwrap(), Crosscap::Zero);
    // One-vertex factors are allowed here only.
    assert_eq!(oracle_classify(&path(1), &cycle(3)).unwrap(), Crosscap::Zero);
    assert!(classify_product(&path(1), &cycle(3)).is_err());
}

#[test]
fn agreement_with_oracle_up_to_four() {
    for g in up_to(4) {
        for h in [path(2), path(3), cycle(3)] {
            let v = classify_product(g, &h).unwrap();
            assert_eq!(v.crosscap, oracle_classify(g, &h).unwrap(), "{g:?} x {h:?}");
            assert!(v.verify(g, &h));
        }
    }
}

#[test]
fn symmetric_in_the_factors() {
    for g in up_to(4) {
        for h in up_to(4) {
            let a = classify_product(g, h).unwrap();
            let b = classify_product(h, g).unwrap();
            assert_eq!(a.crosscap, b.crosscap, "{g:?} {h:?}");
            assert!(a.verify(g, h) && b.verify(h, g));
        }
    }
}

#[test]
fn obstruction_sets_match_families() {
    for n in 1..=6 {
        for g in graphs(n) {
            for case in [Case::P3, Case::C3] {
                let excludes = match case {
                    Case::P3 => excludes_p3_obstructions(g),
                    Case::C3 => excludes_c3_obstructions(g),
                }
                .unwrap();
                let fm = family_membership(g, case).unwrap();
                assert_eq!(excludes, fm.is_some(), "{g:?} {case:?}");
                if let Some(fm) = fm {
                    assert!(case.families().contains(&fm.family));
                    assert!(verify_witness(&family(fm.family, fm.m).unwrap(), g, &fm.witness));
                }
            }
        }
    }
}

#[test]
fn planar_branch_matches_kuratowski() {
    for g in up_to(5) {
        for h in up_to(5) {
            if g.n() * h.n() > 15 || g.n() < h.n() {
                continue;
            }
            let p = cartesian_product(g, h).unwrap().graph;
            let tag = is_planar_product(g, h).unwrap();
            assert_eq!(tag.is_some(), kuratowski_planar(&p), "{g:?} {h:?}");
            if tag.is_some() {
                assert_eq!(planar_scheme(g, h).unwrap().euler_genus().unwrap(), 0);
            }
        }
    }
}

#[test]
fn adding_edges_never_lowers_crosscap_two() {
    for g in up_to(5) {
        for h in [path(2), path(3), cycle(3)] {
            if classify_product(g, &h).unwrap().crosscap != Crosscap::AtLeastTwo {
                continue;
            }
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if !g.has_edge(u, v) {
                        let more = g.with_edge(u, v).unwrap();
                        assert_eq!(classify_product(&more, &h).unwrap().crosscap, Crosscap::AtLeastTwo);
                    }
                }
            }
        }
    }
}

#[test]
fn projective_products_get_schemes() {
    for g in up_to(5) {
        for h in [path(3), cycle(3)] {
            let v = classify_product(g, &h).unwrap();
            if v.crosscap != Crosscap::One {
                continue;
            }
            let c = certify(g, &h).unwrap();
            let Certificate::Embedding { embedding, .. } = &c else {
                panic!("no scheme for {g:?} x {h:?}")
            };
            assert_eq!(embedding.graph(), &cartesian_product(g, &h).unwrap().graph);
            assert_eq!(embedding.euler_genus().unwrap(), 1);
        }
    }
    // Larger family members, with the factors in the other order.
    for (id, m, h) in [
        (FamilyId::B, 3, path(3)),
        (FamilyId::Q, 2, path(3)),
        (FamilyId::W, 2, cycle(3)),
        (FamilyId::X, 3, cycle(3)),
    ] {
        let g = family(id, m).unwrap();
        let v = Verdict {
            crosscap: Crosscap::One,
            reason: String::new(),
            certificate: certify(&h, &g).unwrap(),
        };
        assert!(matches!(v.certificate, Certificate::Embedding { .. }), "{id}{m}");
        assert!(v.verify(&h, &g));
    }
}

#[test]
fn tampered_certificates_fail() {
    let (g, h) = (complete(4), path(3));
    let mut c = certify(&g, &h).unwrap();
    if let Certificate::Obstruction { witnesses } = &mut c {
        witnesses[0].witness.branch_sets[0].clear();
    }
    assert!(!boxcap::classify::verify_certificate(&g, &h, &c));
    let bad = Certificate::PlanarStructure {
        tag: "path×path".into(),
    };
    assert!(!boxcap::classify::verify_certificate(&cycle(3), &path(3), &bad));
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..=5).prop_flat_map(|n| {
        let list = graphs(n);
        (0..list.len()).prop_map(move |i| list[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_json_round_trips(g in small_graph(), pick in 0usize..3, certified in any::<bool>()) {
        let h = [path(2), path(3), cycle(3)][pick].clone();
        let v = if certified {
            boxcap::classify::Classifier::default().classify_certified(&g, &h).unwrap()
        } else {
            classify_product(&g, &h).unwrap()
        };
        let text = v.to_json(&g, &h).to_string();
        let back = Verdict::from_json(&serde_json::from_str(&text).unwrap(), &g, &h).unwrap();
        prop_assert_eq!(&back, &v);
        prop_assert!(back.verify(&g, &h));
    }

    #[test]
    fn swapping_factors_keeps_the_class(g in small_graph(), h in small_graph()) {
        prop_assert_eq!(crosscap(&g, &h).unwrap(), crosscap(&h, &g).unwrap());
    }
}
