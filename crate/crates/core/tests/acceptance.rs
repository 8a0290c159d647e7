//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines reach the terminal; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use boxcap::catalog::{
    complete, complete_bipartite, cycle, diamond, family, forbidden_set, g1, graph_r, lemma_script, named, path, paw,
    FamilyId, LEMMA_IDS,
};
use boxcap::classify::{
    classify_product, excludes_c3_obstructions, excludes_p3_obstructions, is_planar_product, oracle_classify,
    Certificate, Classifier, Crosscap,
};
use boxcap::embedding::{base_embedding, embed_family_product, verify_projective, BASE_NAMES};
use boxcap::graph::{are_isomorphic, emit_graph6, enumerate_connected, has_subgraph, Graph};
use boxcap::minor::{has_minor, is_minor};
use boxcap::product::cartesian_product;
use boxcap::Error;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, id: usize, ok: bool, detail: String, started: Instant) {
        let secs = started.elapsed().as_secs_f64();
        println!(
            "criterion {id}: {} ({detail}; {secs:.1}s)",
            if ok { "PASS" } else { "FAIL" }
        );
        self.failed += usize::from(!ok);
    }
}

/// Certificates checked so far and how many failed.
#[derive(Default)]
struct Certs {
    checked: usize,
    bad: Vec<String>,
}

impl Certs {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.bad.push(what());
        }
    }
}

fn factors() -> [(&'static str, Graph); 3] {
    [("P2", path(2)), ("P3", path(3)), ("C3", cycle(3))]
}

fn connected_up_to(n: usize) -> Vec<Graph> {
    (1..=n).flat_map(|k| enumerate_connected(k).unwrap()).collect()
}

fn lemma_suite(r: &mut Report) {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut outs = Vec::new();
    for id in LEMMA_IDS {
        let l = lemma_script(id).unwrap();
        match l.run() {
            Ok(out) if are_isomorphic(&out, &named(l.expected).unwrap()) => outs.push((l.expected, out)),
            Ok(_) => notes.push(format!("{id} not ≅ {}", l.expected)),
            Err(e) => notes.push(format!("{id}: {e}")),
        }
    }
    let matched = outs.len();
    let group = |name: &str| {
        outs.iter()
            .filter(|(e, _)| *e == name)
            .map(|(_, g)| g)
            .collect::<Vec<_>>()
    };
    // G1 built directly: two K2,3 with their degree-two vertices matched.
    let mut two = Graph::empty(10);
    for (a, b) in complete_bipartite(2, 3).edges() {
        two.add_edge(a, b).unwrap();
        two.add_edge(a + 5, b + 5).unwrap();
    }
    for v in 2..5 {
        two.add_edge(v, v + 5).unwrap();
    }
    let g1s = group("G1");
    if g1s.len() != 3 || !g1s.iter().all(|g| are_isomorphic(g, &two)) || !are_isomorphic(&g1(), &two) {
        notes.push("G1 outputs disagree".into());
    }
    let e22s = group("E22");
    if e22s.len() != 2 || !are_isomorphic(e22s[0], e22s[1]) {
        notes.push("E22 outputs disagree".into());
    }
    for name in ["E5", "E22"] {
        let g = named(name).unwrap();
        if (g.n(), g.edge_count()) != (9, 16) {
            notes.push(format!("{name} has {} vertices and {} edges", g.n(), g.edge_count()));
        }
    }
    let k35 = group("E3");
    if k35.len() != 1 || !are_isomorphic(k35[0], &complete_bipartite(3, 5)) {
        notes.push("K1,5xP3 output is not K3,5".into());
    }
    let detail = format!("{matched}/{} scripts match{}", LEMMA_IDS.len(), joined(&notes));
    r.line(1, notes.is_empty() && matched == LEMMA_IDS.len(), detail, t);
}

fn joined(notes: &[String]) -> String {
    if notes.is_empty() {
        String::new()
    } else {
        format!("; {}", notes.join(", "))
    }
}

fn agreement(r: &mut Report, certs: &mut Certs) {
    let t = Instant::now();
    let classifier = Classifier::default();
    let (mut agree, mut rejected, mut total) = (0, 0, 0);
    let mut notes = Vec::new();
    let mut downgraded = 0;
    for g in connected_up_to(6) {
        for (hn, h) in factors() {
            total += 1;
            let name = || format!("{} x {hn}", emit_graph6(&g));
            let oracle = match oracle_classify(&g, &h) {
                Ok(c) => c,
                Err(e) => {
                    notes.push(format!("{}: oracle {e}", name()));
                    continue;
                }
            };
            match classifier.classify_certified(&g, &h) {
                Ok(v) => {
                    if v.crosscap == oracle {
                        agree += 1;
                    } else {
                        notes.push(format!("{}: {} vs oracle {oracle}", name(), v.crosscap));
                    }
                    certs.check(v.verify(&g, &h), name);
                    if matches!(v.certificate, Certificate::FamilyWitness { .. }) {
                        downgraded += 1;
                    }
                }
                // One-vertex factors are outside the classifier's domain; the
                // oracle must still call those products planar.
                Err(Error::TrivialFactor { .. }) if g.n() == 1 && oracle == Crosscap::Zero => {
                    rejected += 1;
                    agree += 1;
                }
                Err(e) => notes.push(format!("{}: {e}", name())),
            }
        }
    }
    let mut detail = format!(
        "{agree}/{total} agree, {rejected} with a K1 factor rejected by the classifier and planar per the oracle"
    );
    if downgraded > 0 {
        detail.push_str(&format!(", {downgraded} schemes not built"));
    }
    detail.push_str(&joined(&notes));
    r.line(2, agree == total && notes.is_empty(), detail, t);
}

fn dichotomy(r: &mut Report) {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut checked = 0;
    for g in connected_up_to(6).into_iter().filter(|g| g.n() >= 2) {
        let m = g.n() + g.edge_count();
        let in_any = |ids: [FamilyId; 2]| ids.iter().any(|&id| is_minor(&family(id, m).unwrap(), &g).unwrap());
        let p3 = excludes_p3_obstructions(&g).unwrap();
        let c3 = excludes_c3_obstructions(&g).unwrap();
        if p3 != in_any([FamilyId::B, FamilyId::Q]) {
            notes.push(format!("{} P3", emit_graph6(&g)));
        }
        if c3 != in_any([FamilyId::W, FamilyId::X]) {
            notes.push(format!("{} C3", emit_graph6(&g)));
        }
        checked += 1;
    }
    r.line(
        3,
        notes.is_empty(),
        format!("{checked} graphs, {} exceptions{}", notes.len(), joined(&notes)),
        t,
    );
}

fn embeddings(r: &mut Report, certs: &mut Certs) {
    let t = Instant::now();
    let mut notes = Vec::new();
    let mut faces = Vec::new();
    for (name, want) in BASE_NAMES.iter().zip([14, 14, 10, 19, 9]) {
        let e = base_embedding(name).unwrap();
        let g = e.graph();
        let f = e.face_count().unwrap();
        // Genus one means F = 1 - V + E.
        let derived = 1 + g.edge_count() - g.n();
        faces.push(f.to_string());
        if f != want || f != derived || e.euler_genus().unwrap() != 1 {
            notes.push(format!("{name}: F = {f}"));
        }
        certs.check(verify_projective(&e), || name.to_string());
    }
    let mut built = 0;
    for (id, h) in [
        (FamilyId::B, path(3)),
        (FamilyId::Q, path(3)),
        (FamilyId::X, cycle(3)),
        (FamilyId::W, cycle(3)),
    ] {
        for m in 1..=5 {
            let e = embed_family_product(id, m).unwrap();
            let product = cartesian_product(&family(id, m).unwrap(), &h).unwrap().graph;
            let ok = are_isomorphic(e.graph(), &product) && e.euler_genus().unwrap() == 1;
            certs.check(ok && verify_projective(&e), || format!("{id}{m}"));
            if ok {
                built += 1;
            } else {
                notes.push(format!("{id}{m}"));
            }
        }
    }
    let detail = format!(
        "base faces {}; {built}/20 family schemes of genus 1{}",
        faces.join("/"),
        joined(&notes)
    );
    r.line(4, notes.is_empty(), detail, t);
}

fn non_containment(r: &mut Report) {
    let t = Instant::now();
    let set = forbidden_set("CP_plane").unwrap();
    let mut pairs = 0;
    let mut notes = Vec::new();
    for a in &set {
        for b in &set {
            if a.name == b.name {
                continue;
            }
            pairs += 1;
            match has_minor(&a.graph, &b.graph) {
                Ok(None) => {}
                Ok(Some(_)) => notes.push(format!("{} ≼ {}", b.name, a.name)),
                Err(e) => notes.push(format!("{} in {}: {e}", b.name, a.name)),
            }
        }
    }
    r.line(
        5,
        notes.is_empty() && pairs == 12,
        format!("{pairs} ordered pairs{}", joined(&notes)),
        t,
    );
}

fn four_vertex(r: &mut Report) {
    let t = Instant::now();
    let small = [
        path(4),
        cycle(4),
        complete_bipartite(1, 3),
        paw(),
        diamond(),
        complete(4),
    ];
    let mut notes = Vec::new();
    let mut checked = 0;
    for n in 4..=6 {
        for g in enumerate_connected(n).unwrap() {
            checked += 1;
            if !small.iter().any(|p| is_minor(&g, p).unwrap()) {
                notes.push(format!("{} has none of the six", emit_graph6(&g)));
            }
            if n >= 5
                && !g.is_path()
                && !g.is_cycle()
                && !has_subgraph(&g, &path(4))
                && !has_subgraph(&g, &complete_bipartite(1, 4))
            {
                notes.push(format!("{} lacks P4 and K1,4", emit_graph6(&g)));
            }
        }
    }
    r.line(6, notes.is_empty(), format!("{checked} graphs{}", joined(&notes)), t);
}

fn kuratowski(r: &mut Report) {
    let t = Instant::now();
    let all: Vec<Graph> = (2..=4).flat_map(|n| enumerate_connected(n).unwrap()).collect();
    let (k5, k33) = (complete(5), complete_bipartite(3, 3));
    let mut notes = Vec::new();
    let mut pairs = 0;
    for g in &all {
        for h in &all {
            pairs += 1;
            let p = cartesian_product(g, h).unwrap().graph;
            let planar = !is_minor(&p, &k5).unwrap() && !is_minor(&p, &k33).unwrap();
            if is_planar_product(g, h).unwrap().is_some() != planar {
                notes.push(format!("{} x {}", emit_graph6(g), emit_graph6(h)));
            }
        }
    }
    let detail = format!("{pairs} ordered factor pairs with 2 to 4 vertices{}", joined(&notes));
    r.line(7, notes.is_empty(), detail, t);
}

fn soundness(r: &mut Report, certs: &Certs) {
    let t = Instant::now();
    let detail = format!(
        "{}/{} verified{}",
        certs.checked - certs.bad.len(),
        certs.checked,
        joined(&certs.bad)
    );
    r.line(8, certs.bad.is_empty() && certs.checked > 0, detail, t);
}

fn spot_verdicts(r: &mut Report) {
    let t = Instant::now();
    let k13 = complete_bipartite(1, 3);
    let cases = [
        ("K1,3", k13.clone(), "K1,3", k13.clone(), Crosscap::One),
        ("K4", complete(4), "P2", path(2), Crosscap::AtLeastTwo),
        ("K2,3", complete_bipartite(2, 3), "P2", path(2), Crosscap::AtLeastTwo),
        ("C4", cycle(4), "C3", cycle(3), Crosscap::AtLeastTwo),
        ("P4", path(4), "K1,3", k13.clone(), Crosscap::AtLeastTwo),
        (
            "K1,4",
            complete_bipartite(1, 4),
            "K1,3",
            k13.clone(),
            Crosscap::AtLeastTwo,
        ),
        ("C3", cycle(3), "C3", cycle(3), Crosscap::One),
        ("P4", path(4), "C3", cycle(3), Crosscap::Zero),
        ("P5", path(5), "C7", cycle(7), Crosscap::Zero),
        ("K1,5", complete_bipartite(1, 5), "P3", path(3), Crosscap::AtLeastTwo),
        ("R", graph_r(), "P3", path(3), Crosscap::One),
    ];
    let classifier = Classifier::default();
    let mut notes = Vec::new();
    for (gn, g, hn, h, want) in &cases {
        match classifier.classify_certified(g, h) {
            Ok(v) => {
                if v.crosscap != *want {
                    notes.push(format!("{gn} x {hn}: {} not {want}", v.crosscap));
                }
                if !v.verify(g, h) {
                    notes.push(format!("{gn} x {hn}: certificate rejected"));
                }
            }
            Err(e) => notes.push(format!("{gn} x {hn}: {e}")),
        }
        if classify_product(h, g).map(|v| v.crosscap).ok() != Some(*want) {
            notes.push(format!("{hn} x {gn} differs"));
        }
    }
    r.line(
        9,
        notes.is_empty(),
        format!("{} pairs, both orders{}", cases.len(), joined(&notes)),
        t,
    );
}

fn main() -> ExitCode {
    let mut r = Report { failed: 0 };
    let mut certs = Certs::default();
    lemma_suite(&mut r);
    agreement(&mut r, &mut certs);
    dichotomy(&mut r);
    embeddings(&mut r, &mut certs);
    non_containment(&mut r);
    four_vertex(&mut r);
    kuratowski(&mut r);
    soundness(&mut r, &certs);
    spot_verdicts(&mut r);
    if r.failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
