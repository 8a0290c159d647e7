//! Crosscap classification of Cartesian products `G□H` of connected graphs,
//! with certificates and a minor-based oracle to check against.
//!
//! The structural route normalises so that `|V(G)| >= |V(H)|` and then asks,
//! in order: is the product one of the planar shapes; is `H = P2`; is
//! `H = P3` or `C3` (decided by a factor obstruction set); otherwise both
//! factors have four or more vertices and only `K_{1,3}□K_{1,3}` is
//! projective.

mod certificate;
mod embed;
mod oracle;

pub use certificate::{verify_certificate, Certificate, Level, ObstructionWitness};
pub use embed::planar_scheme;
pub use oracle::{oracle_classify, oracle_classify_with};

use std::fmt;

use serde_json::{json, Value};

use crate::catalog::{family, forbidden_set, g1, lemma_script, named, FamilyId};
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, Graph};
use crate::minor::{script_to_witness, MinorSearch, MinorWitness};
use crate::product::{cartesian_product, Side};

pub const PATH_PATH: &str = "path×path";
pub const PATH_CYCLE: &str = "path×cycle";
pub const OUTERPLANAR_P2: &str = "outerplanar×P2";
pub const K13_K13: &str = "K13×K13";
pub const P3_FAMILY: &str = "P3-case family";
pub const C3_FAMILY: &str = "C3-case family";
pub const OBSTRUCTION: &str = "obstruction";

/// 0, 1, or "at least 2" crosscaps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Crosscap {
    Zero,
    One,
    AtLeastTwo,
}

impl Crosscap {
    pub fn to_json(self) -> Value {
        match self {
            Crosscap::Zero => json!(0),
            Crosscap::One => json!(1),
            Crosscap::AtLeastTwo => json!("at_least_2"),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) if n.as_u64() == Some(0) => Ok(Crosscap::Zero),
            Value::Number(n) if n.as_u64() == Some(1) => Ok(Crosscap::One),
            Value::String(s) if s == "at_least_2" => Ok(Crosscap::AtLeastTwo),
            other => Err(Error::Json(format!("bad crosscap value {other}"))),
        }
    }
}

impl fmt::Display for Crosscap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Crosscap::Zero => "0",
            Crosscap::One => "1",
            Crosscap::AtLeastTwo => "at_least_2",
        })
    }
}

/// The two three-vertex second factors with their own obstruction sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    P3,
    C3,
}

impl Case {
    pub fn families(self) -> [FamilyId; 2] {
        match self {
            Case::P3 => [FamilyId::B, FamilyId::Q],
            Case::C3 => [FamilyId::W, FamilyId::X],
        }
    }

    fn obstruction_key(self) -> &'static str {
        match self {
            Case::P3 => "P3_factor_obstructions",
            Case::C3 => "C3_factor_obstructions",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub crosscap: Crosscap,
    pub reason: String,
    pub certificate: Certificate,
}

impl Verdict {
    /// `{"crosscap": .., "reason": .., "certificate": {..}}`, with vertex
    /// labels taken from the factors and their product.
    pub fn to_json(&self, g: &Graph, h: &Graph) -> Value {
        json!({
            "crosscap": self.crosscap.to_json(),
            "reason": self.reason,
            "certificate": self.certificate.to_json(g, h),
        })
    }

    pub fn from_json(v: &Value, g: &Graph, h: &Graph) -> Result<Self> {
        let reason = v["reason"]
            .as_str()
            .ok_or_else(|| Error::Json("missing reason".into()))?
            .to_string();
        Ok(Verdict {
            crosscap: Crosscap::from_json(&v["crosscap"])?,
            reason,
            certificate: Certificate::from_json(&v["certificate"], g, h)?,
        })
    }

    /// The certificate checks out and supports the claimed class.
    pub fn verify(&self, g: &Graph, h: &Graph) -> bool {
        let kind_ok = matches!(
            (self.crosscap, &self.certificate),
            (Crosscap::Zero, Certificate::PlanarStructure { .. })
                | (
                    Crosscap::One,
                    Certificate::Embedding { .. } | Certificate::FamilyWitness { .. }
                )
                | (Crosscap::AtLeastTwo, Certificate::Obstruction { .. })
        );
        kind_ok && verify_certificate(g, h, &self.certificate)
    }
}

/// `G` in a member of one of the case's families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMembership {
    pub family: FamilyId,
    pub m: usize,
    pub witness: MinorWitness,
}

/// Classification with a configurable minor-search budget.
#[derive(Clone, Debug, Default)]
pub struct Classifier {
    pub search: MinorSearch,
}

/// Factor pair after ordering, remembering which user factor is which.
struct Norm<'a> {
    g: &'a Graph,
    h: &'a Graph,
    swapped: bool,
}

impl Norm<'_> {
    /// User side of the normalised first factor.
    fn side_of_g(&self) -> Side {
        if self.swapped {
            Side::H
        } else {
            Side::G
        }
    }
}

fn check_factor(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TrivialFactor { min: 2, got: g.n() });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

fn normalise<'a>(g: &'a Graph, h: &'a Graph) -> Result<Norm<'a>> {
    check_factor(g)?;
    check_factor(h)?;
    Ok(if g.n() < h.n() {
        Norm {
            g: h,
            h: g,
            swapped: true,
        }
    } else {
        Norm { g, h, swapped: false }
    })
}

fn is_k13(g: &Graph) -> bool {
    g.n() == 4 && g.edge_count() == 3 && g.max_degree() == 3
}

/// Factor pairs whose products make up the planar obstruction set.
const PLANE_PAIRS: [(&str, &str); 4] = [("C3", "C3"), ("K1,3", "P3"), ("K2,3", "P2"), ("K4", "P2")];
/// Factor pairs for two factors of order at least four, with the reduction
/// that turns each product into a projective-plane obstruction.
const LARGE_PAIRS: [(&str, &str, &str); 3] = [
    ("P4", "K1,3", "P4xK13"),
    ("K1,4", "K1,3", "K14xK13"),
    ("C4", "C3", "C4xC3"),
];

impl Classifier {
    pub fn new(search: MinorSearch) -> Self {
        Classifier { search }
    }

    fn minor(&self, host: &Graph, pattern: &Graph) -> Result<Option<MinorWitness>> {
        self.search.find(host, pattern)
    }

    /// First of `names` that is a minor of `host`.
    fn first_minor(&self, host: &Graph, names: &[&str]) -> Result<Option<(String, Graph, MinorWitness)>> {
        for &name in names {
            let p = named(name)?;
            if let Some(w) = self.minor(host, &p)? {
                return Ok(Some((name.to_string(), p, w)));
            }
        }
        Ok(None)
    }

    pub fn is_outerplanar(&self, g: &Graph) -> Result<bool> {
        Ok(self.first_minor(g, &["K4", "K2,3"])?.is_none())
    }

    /// The planar shape of `G□H`, if it has one.
    pub fn is_planar_product(&self, g: &Graph, h: &Graph) -> Result<Option<&'static str>> {
        let n = normalise(g, h)?;
        self.planar_tag(&n)
    }

    fn planar_tag(&self, n: &Norm) -> Result<Option<&'static str>> {
        let (g, h) = (n.g, n.h);
        // h is the smaller factor, so a P2 factor is h unless both are P2.
        if h.n() == 2 && self.is_outerplanar(g)? {
            return Ok(Some(OUTERPLANAR_P2));
        }
        if g.is_path() && h.is_path() {
            return Ok(Some(PATH_PATH));
        }
        if (g.is_path() && h.is_cycle()) || (g.is_cycle() && h.is_path()) {
            return Ok(Some(PATH_CYCLE));
        }
        Ok(None)
    }

    fn factor_obstruction(&self, g: &Graph, case: Case) -> Result<Option<(String, Graph, MinorWitness)>> {
        for e in forbidden_set(case.obstruction_key())? {
            if let Some(w) = self.minor(g, &e.graph)? {
                return Ok(Some((e.name, e.graph, w)));
            }
        }
        Ok(None)
    }

    /// No member of `{K4, K2,3, I, K1,5, S, L}` is a minor of `g`.
    pub fn excludes_p3_obstructions(&self, g: &Graph) -> Result<bool> {
        Ok(self.factor_obstruction(g, Case::P3)?.is_none())
    }

    /// No member of `{I, K1,5, C4, R}` is a minor of `g`.
    pub fn excludes_c3_obstructions(&self, g: &Graph) -> Result<bool> {
        Ok(self.factor_obstruction(g, Case::C3)?.is_none())
    }

    /// Looks for `g` in `B_m`/`Q_m` (P3 case) or `W_m`/`X_m` (C3 case) with
    /// `m <= |V(g)| + |E(g)|`, returning the smallest `m` that works and the
    /// first family at that `m`.
    pub fn family_membership(&self, g: &Graph, case: Case) -> Result<Option<FamilyMembership>> {
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let top = g.n() + g.edge_count();
        let ids = case.families();
        // Members grow by subdivision or pendant paths, so each contains the
        // previous one: a miss at the top index is a miss everywhere.
        let mut any = false;
        for id in ids {
            if self.minor(&family(id, top)?, g)?.is_some() {
                any = true;
                break;
            }
        }
        if !any {
            return Ok(None);
        }
        for m in 1..=top {
            for id in ids {
                if let Some(witness) = self.minor(&family(id, m)?, g)? {
                    return Ok(Some(FamilyMembership { family: id, m, witness }));
                }
            }
        }
        Err(Error::Precondition("family members are not nested".into()))
    }

    pub fn crosscap(&self, g: &Graph, h: &Graph) -> Result<Crosscap> {
        self.classify(g, h).map(|v| v.crosscap)
    }

    /// Decides the crosscap class of `G□H` and attaches a certificate: the
    /// planar shape, a family witness or stored scheme for crosscap one,
    /// or factor obstructions.
    pub fn classify(&self, g: &Graph, h: &Graph) -> Result<Verdict> {
        let n = normalise(g, h)?;
        if let Some(tag) = self.planar_tag(&n)? {
            return Ok(Verdict {
                crosscap: Crosscap::Zero,
                reason: tag.to_string(),
                certificate: Certificate::PlanarStructure { tag: tag.to_string() },
            });
        }
        let obstruction = |witnesses| Verdict {
            crosscap: Crosscap::AtLeastTwo,
            reason: OBSTRUCTION.to_string(),
            certificate: Certificate::Obstruction { witnesses },
        };
        if n.h.n() == 2 {
            let (name, pattern, witness) = self
                .first_minor(n.g, &["K4", "K2,3"])?
                .ok_or_else(|| Error::Precondition("non-outerplanar factor without K4 or K2,3 minor".into()))?;
            return Ok(obstruction(vec![ObstructionWitness {
                name,
                level: Level::Factor(n.side_of_g()),
                pattern,
                witness,
            }]));
        }
        if n.h.n() == 3 {
            let case = if n.h.is_cycle() { Case::C3 } else { Case::P3 };
            if let Some((name, pattern, witness)) = self.factor_obstruction(n.g, case)? {
                return Ok(obstruction(vec![ObstructionWitness {
                    name,
                    level: Level::Factor(n.side_of_g()),
                    pattern,
                    witness,
                }]));
            }
            let fm = self.family_membership(n.g, case)?.ok_or_else(|| {
                Error::Precondition("factor avoids every obstruction but lies in no family member".into())
            })?;
            return Ok(Verdict {
                crosscap: Crosscap::One,
                reason: match case {
                    Case::P3 => P3_FAMILY,
                    Case::C3 => C3_FAMILY,
                }
                .to_string(),
                certificate: Certificate::FamilyWitness {
                    side: n.side_of_g(),
                    family: fm.family,
                    m: fm.m,
                    witness: fm.witness,
                    nonplanarity: self.nonplanarity(g, h)?,
                    note: None,
                },
            });
        }
        if is_k13(n.g) && is_k13(n.h) {
            return Ok(Verdict {
                crosscap: Crosscap::One,
                reason: K13_K13.to_string(),
                certificate: Certificate::Embedding {
                    embedding: embed::k13_square(&cartesian_product(g, h)?.graph)?,
                    nonplanarity: self.nonplanarity(g, h)?,
                },
            });
        }
        let (hit, _) = self
            .large_pair(g, h)?
            .ok_or_else(|| Error::Precondition("no obstruction pair in two large factors".into()))?;
        Ok(obstruction(hit))
    }

    /// Factor witnesses `A ≼ one factor`, `B ≼ the other` for the first
    /// large pair found, in either orientation, plus the lemma id.
    fn large_pair(&self, g: &Graph, h: &Graph) -> Result<Option<(Vec<ObstructionWitness>, &'static str)>> {
        for (a, b, lemma) in LARGE_PAIRS {
            for (x, y, sx, sy) in [(g, h, Side::G, Side::H), (h, g, Side::H, Side::G)] {
                let Some((na, pa, wa)) = self.first_minor(x, &[a])? else {
                    continue;
                };
                let Some((nb, pb, wb)) = self.first_minor(y, &[b])? else {
                    continue;
                };
                let ws = vec![
                    ObstructionWitness {
                        name: na,
                        level: Level::Factor(sx),
                        pattern: pa,
                        witness: wa,
                    },
                    ObstructionWitness {
                        name: nb,
                        level: Level::Factor(sy),
                        pattern: pb,
                        witness: wb,
                    },
                ];
                return Ok(Some((ws, lemma)));
            }
        }
        Ok(None)
    }

    /// A member of the planar obstruction set inside the user's `G□H`,
    /// lifted from a pair of factor minors.
    fn nonplanarity(&self, g: &Graph, h: &Graph) -> Result<ObstructionWitness> {
        for (a, b) in PLANE_PAIRS {
            for swap in [false, true] {
                let (x, y) = if swap { (b, a) } else { (a, b) };
                let Some((_, px, wx)) = self.first_minor(g, &[x])? else {
                    continue;
                };
                let Some((_, py, wy)) = self.first_minor(h, &[y])? else {
                    continue;
                };
                let (pattern, witness) = lift_pair(g, &px, &wx, h, &py, &wy)?;
                return Ok(ObstructionWitness {
                    name: format!("{x}x{y}"),
                    level: Level::Product,
                    pattern,
                    witness,
                });
            }
        }
        Err(Error::Precondition(
            "nonplanar product without a planar obstruction".into(),
        ))
    }

    /// Classification with the strongest certificate available: a genus-one
    /// scheme for crosscap one and a product-level obstruction for two or
    /// more.
    pub fn classify_certified(&self, g: &Graph, h: &Graph) -> Result<Verdict> {
        let mut v = self.classify(g, h)?;
        v.certificate = self.upgrade(g, h, v.certificate)?;
        Ok(v)
    }

    pub fn certify(&self, g: &Graph, h: &Graph) -> Result<Certificate> {
        self.classify_certified(g, h).map(|v| v.certificate)
    }

    fn upgrade(&self, g: &Graph, h: &Graph, cert: Certificate) -> Result<Certificate> {
        match cert {
            Certificate::FamilyWitness {
                side,
                family: id,
                m,
                witness,
                nonplanarity,
                note: _,
            } => {
                let (factor, other) = match side {
                    Side::G => (g, h),
                    Side::H => (h, g),
                };
                let fm = FamilyMembership { family: id, m, witness };
                match embed::family_scheme(&fm, factor, other, side, &cartesian_product(g, h)?.graph) {
                    Ok(embedding) => Ok(Certificate::Embedding {
                        embedding,
                        nonplanarity,
                    }),
                    Err(e) => Ok(Certificate::FamilyWitness {
                        side,
                        family: fm.family,
                        m: fm.m,
                        witness: fm.witness,
                        nonplanarity,
                        note: Some(format!("embedding not built: {e}")),
                    }),
                }
            }
            Certificate::Obstruction { mut witnesses } => {
                witnesses.push(self.product_obstruction(g, h, &witnesses)?);
                Ok(Certificate::Obstruction { witnesses })
            }
            other => Ok(other),
        }
    }

    /// One of the six projective-plane obstructions inside `G□H`, from the
    /// factor witnesses of a crosscap-at-least-two verdict.
    fn product_obstruction(&self, g: &Graph, h: &Graph, factor: &[ObstructionWitness]) -> Result<ObstructionWitness> {
        let host = cartesian_product(g, h)?.graph;
        let oriented = |w: &ObstructionWitness| match w.level {
            Level::Factor(Side::H) => Ok((h, g, true)),
            Level::Factor(Side::G) => Ok((g, h, false)),
            Level::Product => Err(Error::Precondition("expected a factor witness".into())),
        };
        match factor {
            [a] => {
                let (fa, fb, swapped) = oriented(a)?;
                self.single_factor_product(&host, fa, a, fb, swapped)
            }
            [a, b] => {
                let lemma = LARGE_PAIRS
                    .iter()
                    .find(|(x, y, _)| *x == a.name && *y == b.name)
                    .map(|t| t.2)
                    .ok_or_else(|| Error::Precondition(format!("no reduction for {} and {}", a.name, b.name)))?;
                let (fa, fb, swapped) = oriented(a)?;
                let (pattern, lifted) = lift_pair(fa, &a.pattern, &a.witness, fb, &b.pattern, &b.witness)?;
                let lifted = to_user(&lifted, fa.n(), fb.n(), swapped, &host, &pattern)?;
                reduce_by_lemma(&host, &pattern, &lifted, lemma)
            }
            _ => Err(Error::Precondition("expected one or two factor witnesses".into())),
        }
    }

    /// Product obstruction for a single factor obstruction `a` in `fa`,
    /// where the other factor `fb` is P2, P3 or C3.
    fn single_factor_product(
        &self,
        host: &Graph,
        fa: &Graph,
        a: &ObstructionWitness,
        fb: &Graph,
        swapped: bool,
    ) -> Result<ObstructionWitness> {
        let lift_with = |b: &str| -> Result<(Graph, MinorWitness)> {
            let pb = named(b)?;
            let wb = self
                .minor(fb, &pb)?
                .ok_or_else(|| Error::Precondition(format!("second factor has no {b} minor")))?;
            let (pattern, w) = lift_pair(fa, &a.pattern, &a.witness, fb, &pb, &wb)?;
            let w = to_user(&w, fa.n(), fb.n(), swapped, host, &pattern)?;
            Ok((pattern, w))
        };
        match a.name.as_str() {
            "K4" => {
                let (pattern, witness) = lift_with("P2")?;
                Ok(ObstructionWitness {
                    name: "D17".into(),
                    level: Level::Product,
                    pattern,
                    witness,
                })
            }
            "K2,3" => {
                let (k23p2, w) = lift_with("P2")?;
                let target = g1();
                let inner = MinorWitness::from_branch_sets(&k23p2, &target, (0..target.n()).map(|v| vec![v]).collect())
                    .ok_or_else(|| Error::Precondition("G1 is not a subgraph of K2,3xP2".into()))?;
                let witness = w
                    .compose(host, &inner, &target)
                    .ok_or_else(|| Error::Precondition("composed model lost an edge".into()))?;
                Ok(ObstructionWitness {
                    name: "G1".into(),
                    level: Level::Product,
                    pattern: target,
                    witness,
                })
            }
            name => {
                let (lemma, b) = match (name, fb.is_cycle()) {
                    ("I", _) => ("IxP3", "P3"),
                    ("K1,5", _) => ("K15xP3", "P3"),
                    ("S", false) => ("SxP3", "P3"),
                    ("L", false) => ("LxP3", "P3"),
                    ("R", true) => ("RxC3", "C3"),
                    ("C4", true) => ("C4xC3", "C3"),
                    _ => {
                        return Err(Error::Precondition(format!(
                            "no reduction for factor obstruction {name}"
                        )))
                    }
                };
                let (pattern, w) = lift_with(b)?;
                reduce_by_lemma(host, &pattern, &w, lemma)
            }
        }
    }
}

/// Model of `A□B` in `G□H` from models of `A` in `G` and `B` in `H`. The
/// branch set of `(a, b)` is the product of the two branch sets.
fn lift_pair(
    g: &Graph,
    a: &Graph,
    wa: &MinorWitness,
    h: &Graph,
    b: &Graph,
    wb: &MinorWitness,
) -> Result<(Graph, MinorWitness)> {
    let host = cartesian_product(g, h)?;
    let pattern = cartesian_product(a, b)?.graph;
    let mut sets = Vec::with_capacity(pattern.n());
    for x in 0..a.n() {
        for y in 0..b.n() {
            let mut set: Vec<usize> = wa.branch_sets[x]
                .iter()
                .flat_map(|&gv| wb.branch_sets[y].iter().map(move |&hv| gv * h.n() + hv))
                .collect();
            set.sort_unstable();
            sets.push(set);
        }
    }
    let w = MinorWitness::from_branch_sets(&host.graph, &pattern, sets)
        .ok_or_else(|| Error::Precondition("lifted model lost an edge".into()))?;
    Ok((pattern, w))
}

/// Moves a model in `X□Y` to the user's product, which is `Y□X` when
/// `swapped`.
fn to_user(
    w: &MinorWitness,
    xn: usize,
    yn: usize,
    swapped: bool,
    user: &Graph,
    pattern: &Graph,
) -> Result<MinorWitness> {
    if !swapped {
        return Ok(w.clone());
    }
    let sets = w
        .branch_sets
        .iter()
        .map(|set| {
            let mut s: Vec<usize> = set.iter().map(|&v| (v % yn) * xn + v / yn).collect();
            s.sort_unstable();
            s
        })
        .collect();
    MinorWitness::from_branch_sets(user, pattern, sets)
        .ok_or_else(|| Error::Precondition("swapped model lost an edge".into()))
}

/// Composes a model of a lemma's base product with the lemma's own script.
fn reduce_by_lemma(host: &Graph, base: &Graph, w: &MinorWitness, lemma: &str) -> Result<ObstructionWitness> {
    let l = lemma_script(lemma)?;
    if &l.base() != base {
        return Err(Error::Precondition(format!(
            "{lemma} base differs from the lifted product"
        )));
    }
    let (out, inner) = script_to_witness(base, &l.script)?;
    let witness = w
        .compose(host, &inner, &out)
        .ok_or_else(|| Error::Precondition("composed model lost an edge".into()))?;
    debug_assert!(are_isomorphic(&out, &named(l.expected)?));
    Ok(ObstructionWitness {
        name: l.expected.to_string(),
        level: Level::Product,
        pattern: out,
        witness,
    })
}

pub fn is_outerplanar(g: &Graph) -> Result<bool> {
    Classifier::default().is_outerplanar(g)
}

pub fn is_planar_product(g: &Graph, h: &Graph) -> Result<Option<&'static str>> {
    Classifier::default().is_planar_product(g, h)
}

pub fn excludes_p3_obstructions(g: &Graph) -> Result<bool> {
    Classifier::default().excludes_p3_obstructions(g)
}

pub fn excludes_c3_obstructions(g: &Graph) -> Result<bool> {
    Classifier::default().excludes_c3_obstructions(g)
}

pub fn family_membership(g: &Graph, case: Case) -> Result<Option<FamilyMembership>> {
    Classifier::default().family_membership(g, case)
}

pub fn classify_product(g: &Graph, h: &Graph) -> Result<Verdict> {
    Classifier::default().classify(g, h)
}

pub fn crosscap(g: &Graph, h: &Graph) -> Result<Crosscap> {
    Classifier::default().crosscap(g, h)
}

pub fn certify(g: &Graph, h: &Graph) -> Result<Certificate> {
    Classifier::default().certify(g, h)
}
