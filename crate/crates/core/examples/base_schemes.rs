//! Regenerates `data/*.json`: searches each base product for a genus-one
//! face cover that contains the faces the family extensions rely on.

use boxcap::embedding::{base_graph, search_face_cover};
use boxcap::Graph;

fn ladder(g: &Graph, a: &str, b: &str) -> Vec<Vec<usize>> {
    let v = |x: &str, h: usize| g.find_label(&format!("{x}:{h}")).expect("product vertex");
    (1..=2)
        .map(|h| vec![v(a, h), v(b, h), v(b, h + 1), v(a, h + 1)])
        .collect()
}

fn fiber(g: &Graph, a: &str) -> Vec<usize> {
    (1..=3)
        .map(|h| g.find_label(&format!("{a}:{h}")).expect("product vertex"))
        .collect()
}

fn main() {
    let out = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let only: Vec<String> = std::env::args().skip(1).collect();
    for (name, max_len) in [("B1xP3", 6), ("Q1xP3", 10), ("X1xC3", 6), ("W1xC3", 8), ("K13xK13", 8)] {
        if !only.is_empty() && !only.iter().any(|o| o == name) {
            continue;
        }
        let g = base_graph(name).unwrap();
        let required: Vec<Vec<usize>> = match name {
            "B1xP3" => [ladder(&g, "1", "2"), ladder(&g, "4", "5")].concat(),
            "Q1xP3" => [ladder(&g, "3", "4"), ladder(&g, "5", "4"), ladder(&g, "1", "2")].concat(),
            "X1xC3" => ["1", "2", "3", "4"].iter().map(|a| fiber(&g, a)).collect(),
            "W1xC3" => ["4", "5", "6"].iter().map(|a| fiber(&g, a)).collect(),
            _ => Vec::new(),
        };
        let faces = 1 + g.edge_count() - g.n();
        let t = std::time::Instant::now();
        let e = search_face_cover(&g, faces, max_len, &required, 2_000_000_000)
            .unwrap()
            .expect("face cover exists");
        let text = serde_json::to_string_pretty(&e.to_json()).unwrap();
        std::fs::write(out.join(format!("{name}.json")), text + "\n").unwrap();
        println!(
            "{name}: F={} genus={} in {:?}",
            e.face_count().unwrap(),
            e.euler_genus().unwrap(),
            t.elapsed()
        );
    }
}
