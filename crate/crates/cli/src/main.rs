use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Duration;

use boxcap::catalog::{forbidden_set, lemma_script, named, FamilyId, FIXED_NAMES, FORBIDDEN_KEYS, LEMMA_IDS};
use boxcap::classify::{planar_scheme, Certificate, Classifier, Crosscap};
use boxcap::embedding::{base_embedding, Embedding, BASE_NAMES};
use boxcap::graph::{are_isomorphic, emit_dot, emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use boxcap::minor::MinorSearch;
use boxcap::product::cartesian_product;
use boxcap::{Error, Graph};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "boxcap", version, about = "Crosscap number of Cartesian products of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Search-node limit for each minor search.
    #[arg(long, global = true, env = "BOXCAP_BUDGET")]
    node_budget: Option<u64>,

    /// Wall-clock limit in seconds for each minor search.
    #[arg(long, global = true)]
    time_budget: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Graph6,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Crosscap class of G□H.
    Classify {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        /// Attach a genus-one scheme or a product-level obstruction.
        #[arg(long)]
        certify: bool,
    },
    /// Print G□H.
    Product {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Search for PATTERN as a minor of HOST.
    Minor {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// A scheme of G□H of Euler genus at most one.
    Embed {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Trace the faces of a stored scheme and report its genus.
    VerifyEmbedding {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        embedding: String,
    },
    /// Named graphs and obstruction sets.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the reduction scripts and the stored schemes.
    Selftest,
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Undecided { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

/// `@file` (graph6 or `n m` edge list), a catalog name, or a graph6 string.
fn read_graph(arg: &str) -> Result<Graph, Failure> {
    if let Some(path) = arg.strip_prefix('@') {
        let text = fs::read_to_string(path).map_err(|e| input_error(format!("{path}: {e}")))?;
        let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("").trim();
        return parse_graph6(first)
            .or_else(|_| parse_edge_list(&text))
            .map_err(|e| input_error(format!("{path}: {e}")));
    }
    match named(arg) {
        Ok(g) => Ok(g),
        Err(Error::UnknownName(_)) => {
            parse_graph6(arg).map_err(|e| input_error(format!("`{arg}` is neither a catalog name nor graph6 ({e})")))
        }
        Err(e) => Err(e.into()),
    }
}

fn connected(g: Graph, what: &str) -> Result<Graph, Failure> {
    if g.is_connected() {
        Ok(g)
    } else {
        Err(input_error(format!("{what} is disconnected")))
    }
}

fn search(cli: &Cli) -> MinorSearch {
    let mut s = MinorSearch::default();
    if let Some(n) = cli.node_budget {
        s = s.with_node_budget(n);
    }
    if let Some(t) = cli.time_budget {
        s = s.with_time_budget(Duration::from_secs_f64(t));
    }
    s
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("json values serialise")
    ));
}

fn print_graph(g: &Graph, format: Format) {
    match format {
        Format::Graph6 => emit(&format!("{}\n", emit_graph6(g))),
        Format::Dot => emit(&emit_dot(g, None)),
        Format::Text => emit(&emit_edge_list(g)),
        Format::Json => print_json(&json!({
            "graph6": emit_graph6(g),
            "labels": g.labels(),
            "edges": g.edges().iter().map(|&(u, v)| [g.label(u), g.label(v)]).collect::<Vec<_>>(),
        })),
    }
}

fn classify(cli: &Cli, g: &str, h: &str, certify: bool) -> Outcome {
    let g = connected(read_graph(g)?, "G")?;
    let h = connected(read_graph(h)?, "H")?;
    let c = Classifier::new(search(cli));
    let v = if certify {
        c.classify_certified(&g, &h)?
    } else {
        c.classify(&g, &h)?
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&v.to_json(&g, &h)),
        _ => println!("crosscap {} ({})", v.crosscap, v.reason),
    }
    Ok(0)
}

fn embed(cli: &Cli, g: &str, h: &str) -> Outcome {
    let g = connected(read_graph(g)?, "G")?;
    let h = connected(read_graph(h)?, "H")?;
    let c = Classifier::new(search(cli));
    let v = c.classify_certified(&g, &h)?;
    let e = match (v.crosscap, v.certificate) {
        (Crosscap::Zero, _) => planar_scheme(&g, &h)?,
        (Crosscap::One, Certificate::Embedding { embedding, .. }) => embedding,
        (Crosscap::One, Certificate::FamilyWitness { note, .. }) => {
            return Err(Failure {
                code: 3,
                message: note.unwrap_or_else(|| "no scheme built".into()),
            })
        }
        _ => {
            eprintln!("G□H has crosscap at least 2; no scheme of genus at most one exists");
            return Ok(1);
        }
    };
    print_json(&e.to_json());
    Ok(0)
}

fn verify_embedding(cli: &Cli, graph: &str, file: &str) -> Outcome {
    let g = read_graph(graph)?;
    let text = fs::read_to_string(file).map_err(|e| input_error(format!("{file}: {e}")))?;
    let e = Embedding::from_json(&g, &text)?;
    let faces = e.face_count()?;
    let genus = e.euler_genus()?;
    let projective = genus <= 1;
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&json!({
            "vertices": g.n(),
            "edges": g.edge_count(),
            "faces": faces,
            "eulerGenus": genus,
            "projective": projective,
        })),
        _ => println!("V={} E={} F={faces} Euler genus {genus}", g.n(), g.edge_count()),
    }
    Ok(if projective { 0 } else { 1 })
}

fn minor(cli: &Cli, host: &str, pattern: &str) -> Outcome {
    let host = read_graph(host)?;
    let pattern = read_graph(pattern)?;
    match search(cli).find(&host, &pattern)? {
        Some(w) => {
            print_json(&w.to_json(&host, &pattern));
            Ok(0)
        }
        None => {
            println!("none");
            Ok(1)
        }
    }
}

fn catalog(cli: &Cli, action: &CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            for name in FIXED_NAMES {
                println!("{name}");
            }
            println!("P<n> C<n> K<n> K<a>,<b>");
            for id in FamilyId::ALL {
                println!("{id}:<m>");
            }
            for key in FORBIDDEN_KEYS {
                let members: Vec<String> = forbidden_set(key)?.into_iter().map(|e| e.name).collect();
                println!("{key}: {}", members.join(" "));
            }
            Ok(0)
        }
        CatalogAction::Show { name } => {
            if FORBIDDEN_KEYS.contains(&name.as_str()) {
                for e in forbidden_set(name)? {
                    println!("{} {}", e.name, emit_graph6(&e.graph));
                }
                return Ok(0);
            }
            let g = named(name)?;
            print_graph(&g, cli.format.unwrap_or(Format::Text));
            Ok(0)
        }
    }
}

fn selftest() -> Outcome {
    let mut failed = 0;
    let mut matched = 0;
    let mut outputs = Vec::new();
    for id in LEMMA_IDS {
        let l = lemma_script(id)?;
        let out = l.run()?;
        let ok = are_isomorphic(&out, &named(l.expected)?);
        println!("{} {id} -> {}", if ok { "ok  " } else { "FAIL" }, l.expected);
        failed += usize::from(!ok);
        matched += usize::from(ok);
        outputs.push((l.expected, out));
    }
    let same = |name: &str| {
        let group: Vec<&Graph> = outputs.iter().filter(|(e, _)| *e == name).map(|(_, g)| g).collect();
        group.windows(2).all(|w| are_isomorphic(w[0], w[1]))
    };
    for name in ["G1", "E22"] {
        let ok = same(name);
        println!("{} {name} outputs agree", if ok { "ok  " } else { "FAIL" });
        failed += usize::from(!ok);
    }
    for name in BASE_NAMES {
        let ok = base_embedding(name).map(|e| e.euler_genus() == Ok(1)).unwrap_or(false);
        println!("{} {name} scheme has Euler genus 1", if ok { "ok  " } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("{matched}/{} lemma scripts match", LEMMA_IDS.len());
    Ok(if failed == 0 { 0 } else { 1 })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Classify { g, h, certify } => classify(cli, g, h, *certify),
        Command::Product { g, h } => {
            let p = cartesian_product(&read_graph(g)?, &read_graph(h)?)?;
            print_graph(&p.graph, cli.format.unwrap_or(Format::Graph6));
            Ok(0)
        }
        Command::Minor { host, pattern } => minor(cli, host, pattern),
        Command::Embed { g, h } => embed(cli, g, h),
        Command::VerifyEmbedding { graph, embedding } => verify_embedding(cli, graph, embedding),
        Command::Catalog { action } => catalog(cli, action),
        Command::Selftest => selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
