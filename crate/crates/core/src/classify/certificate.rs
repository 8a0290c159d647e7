//! Certificates, their JSON form and their checkers.

use serde_json::{json, Value};

use crate::catalog::{family, named, FamilyId};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, emit_graph6, parse_graph6, Graph};
use crate::minor::{verify_witness, MinorWitness};
use crate::product::{cartesian_product, Side};

use super::{Classifier, OUTERPLANAR_P2, PATH_CYCLE, PATH_PATH};

/// Where an obstruction witness lives: inside one factor or inside `G□H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Factor(Side),
    Product,
}

/// A model of the named catalog graph `pattern` (up to isomorphism) in a
/// factor or in the product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionWitness {
    pub name: String,
    pub level: Level,
    pub pattern: Graph,
    pub witness: MinorWitness,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    PlanarStructure {
        tag: String,
    },
    /// A genus-one scheme of `G□H` and a planar obstruction inside it.
    Embedding {
        embedding: Embedding,
        nonplanarity: ObstructionWitness,
    },
    /// The factor on `side` is a minor of `family(family, m)`.
    FamilyWitness {
        side: Side,
        family: FamilyId,
        m: usize,
        witness: MinorWitness,
        nonplanarity: ObstructionWitness,
        note: Option<String>,
    },
    Obstruction {
        witnesses: Vec<ObstructionWitness>,
    },
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::G => "g",
        Side::H => "h",
    }
}

fn parse_side(v: &Value) -> Result<Side> {
    match v.as_str() {
        Some("g") => Ok(Side::G),
        Some("h") => Ok(Side::H),
        _ => Err(Error::Json(format!("bad factor side {v}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Json(format!("missing `{key}`")))
}

fn text<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| Error::Json(format!("`{key}` is not a string")))
}

fn graph_json(g: &Graph) -> Value {
    json!({ "graph6": emit_graph6(g), "labels": g.labels() })
}

fn graph_from_json(v: &Value) -> Result<Graph> {
    let g = parse_graph6(text(v, "graph6")?)?;
    let labels: Vec<String> = serde_json::from_value(field(v, "labels")?.clone())?;
    g.with_labels(labels)
}

impl ObstructionWitness {
    fn host(&self, g: &Graph, h: &Graph) -> Result<Graph> {
        Ok(match self.level {
            Level::Factor(Side::G) => g.clone(),
            Level::Factor(Side::H) => h.clone(),
            Level::Product => cartesian_product(g, h)?.graph,
        })
    }

    pub fn to_json(&self, g: &Graph, h: &Graph) -> Value {
        let host = self
            .host(g, h)
            .expect("factors were checked when the witness was built");
        let mut v = json!({
            "name": self.name,
            "level": match self.level { Level::Product => "product", Level::Factor(_) => "factor" },
        });
        if let Level::Factor(s) = self.level {
            v["factor"] = json!(side_name(s));
        }
        v["pattern"] = graph_json(&self.pattern);
        v["witness"] = self.witness.to_json(&host, &self.pattern);
        v
    }

    pub fn from_json(v: &Value, g: &Graph, h: &Graph) -> Result<Self> {
        let level = match text(v, "level")? {
            "product" => Level::Product,
            "factor" => Level::Factor(parse_side(field(v, "factor")?)?),
            other => return Err(Error::Json(format!("bad level `{other}`"))),
        };
        let pattern = graph_from_json(field(v, "pattern")?)?;
        let mut w = ObstructionWitness {
            name: text(v, "name")?.to_string(),
            level,
            pattern,
            witness: MinorWitness::default(),
        };
        let host = w.host(g, h)?;
        w.witness = MinorWitness::from_json(field(v, "witness")?, &host, &w.pattern)?;
        Ok(w)
    }

    /// The model is valid and the pattern is the named catalog graph.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        let Ok(host) = self.host(g, h) else { return false };
        let Ok(expected) = named(&self.name) else { return false };
        verify_witness(&host, &self.pattern, &self.witness) && are_isomorphic(&self.pattern, &expected)
    }
}

impl Certificate {
    pub fn to_json(&self, g: &Graph, h: &Graph) -> Value {
        match self {
            Certificate::PlanarStructure { tag } => json!({ "type": "planarStructure", "tag": tag }),
            Certificate::Embedding {
                embedding,
                nonplanarity,
            } => json!({
                "type": "embedding",
                "embedding": embedding.to_json(),
                "nonplanarity": nonplanarity.to_json(g, h),
            }),
            Certificate::FamilyWitness {
                side,
                family: id,
                m,
                witness,
                nonplanarity,
                note,
            } => {
                let member = family(*id, *m).expect("family index is positive");
                let factor = match side {
                    Side::G => g,
                    Side::H => h,
                };
                let mut v = json!({
                    "type": "familyWitness",
                    "factor": side_name(*side),
                    "family": id.to_string(),
                    "m": m,
                    "witness": witness.to_json(&member, factor),
                    "nonplanarity": nonplanarity.to_json(g, h),
                });
                if let Some(note) = note {
                    v["note"] = json!(note);
                }
                v
            }
            Certificate::Obstruction { witnesses } => json!({
                "type": "obstruction",
                "witnesses": witnesses.iter().map(|w| w.to_json(g, h)).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(v: &Value, g: &Graph, h: &Graph) -> Result<Self> {
        Ok(match text(v, "type")? {
            "planarStructure" => Certificate::PlanarStructure {
                tag: text(v, "tag")?.to_string(),
            },
            "embedding" => {
                let product = cartesian_product(g, h)?.graph;
                Certificate::Embedding {
                    embedding: Embedding::from_json(&product, &field(v, "embedding")?.to_string())?,
                    nonplanarity: ObstructionWitness::from_json(field(v, "nonplanarity")?, g, h)?,
                }
            }
            "familyWitness" => {
                let side = parse_side(field(v, "factor")?)?;
                let id: FamilyId = text(v, "family")?.parse()?;
                let m = field(v, "m")?
                    .as_u64()
                    .ok_or_else(|| Error::Json("`m` is not a number".into()))? as usize;
                let member = family(id, m)?;
                let factor = match side {
                    Side::G => g,
                    Side::H => h,
                };
                Certificate::FamilyWitness {
                    side,
                    family: id,
                    m,
                    witness: MinorWitness::from_json(field(v, "witness")?, &member, factor)?,
                    nonplanarity: ObstructionWitness::from_json(field(v, "nonplanarity")?, g, h)?,
                    note: v.get("note").and_then(Value::as_str).map(str::to_string),
                }
            }
            "obstruction" => {
                let list = field(v, "witnesses")?
                    .as_array()
                    .ok_or_else(|| Error::Json("`witnesses` is not an array".into()))?;
                Certificate::Obstruction {
                    witnesses: list
                        .iter()
                        .map(|w| ObstructionWitness::from_json(w, g, h))
                        .collect::<Result<_>>()?,
                }
            }
            other => return Err(Error::Json(format!("unknown certificate type `{other}`"))),
        })
    }
}

fn planar_tag_holds(g: &Graph, h: &Graph, tag: &str) -> bool {
    let outer_p2 = |a: &Graph, b: &Graph| b.n() == 2 && Classifier::default().is_outerplanar(a).unwrap_or(false);
    match tag {
        PATH_PATH => g.is_path() && h.is_path(),
        PATH_CYCLE => (g.is_path() && h.is_cycle()) || (g.is_cycle() && h.is_path()),
        OUTERPLANAR_P2 => outer_p2(g, h) || outer_p2(h, g),
        _ => false,
    }
}

/// Checks a certificate for `G□H` from scratch: planar shapes are
/// re-derived, schemes are traced, and every minor model is verified.
pub fn verify_certificate(g: &Graph, h: &Graph, cert: &Certificate) -> bool {
    match cert {
        Certificate::PlanarStructure { tag } => planar_tag_holds(g, h, tag),
        Certificate::Embedding {
            embedding,
            nonplanarity,
        } => {
            let Ok(product) = cartesian_product(g, h) else {
                return false;
            };
            embedding.graph() == &product.graph
                && embedding.euler_genus().is_ok_and(|x| x == 1)
                && nonplanarity.level == Level::Product
                && nonplanarity.verify(g, h)
        }
        Certificate::FamilyWitness {
            side,
            family: id,
            m,
            witness,
            nonplanarity,
            ..
        } => {
            let Ok(member) = family(*id, *m) else { return false };
            let factor = match side {
                Side::G => g,
                Side::H => h,
            };
            verify_witness(&member, factor, witness)
                && nonplanarity.level == Level::Product
                && nonplanarity.verify(g, h)
        }
        Certificate::Obstruction { witnesses } => !witnesses.is_empty() && witnesses.iter().all(|w| w.verify(g, h)),
    }
}
