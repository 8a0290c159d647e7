//! Crosscap class from the product obstruction sets alone.

use crate::catalog::{forbidden_set, NamedGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minor::MinorSearch;
use crate::product::cartesian_product;

use super::Crosscap;

fn sorted(key: &str) -> Result<Vec<NamedGraph>> {
    let mut set = forbidden_set(key)?;
    // Smaller patterns are cheaper to rule in or out.
    set.sort_by_key(|e| (e.graph.n(), e.graph.edge_count()));
    Ok(set)
}

/// Tests every planar obstruction product, then every projective one, as a
/// minor of `G□H`. Shares nothing with the structural classifier. Factors
/// with one vertex are accepted, in which case the answer is only as good
/// as the obstruction sets are for that graph.
pub fn oracle_classify(g: &Graph, h: &Graph) -> Result<Crosscap> {
    oracle_classify_with(g, h, &MinorSearch::default())
}

pub fn oracle_classify_with(g: &Graph, h: &Graph, search: &MinorSearch) -> Result<Crosscap> {
    if !g.is_connected() || !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let host = cartesian_product(g, h)?.graph;
    let contains_any = |key: &str| -> Result<bool> {
        for e in sorted(key)? {
            if search.find(&host, &e.graph)?.is_some() {
                return Ok(true);
            }
        }
        Ok(false)
    };
    if !contains_any("CP_plane")? {
        Ok(Crosscap::Zero)
    } else if contains_any("CP_N1")? {
        Ok(Crosscap::AtLeastTwo)
    } else {
        Ok(Crosscap::One)
    }
}
