//! Minor scripts, branch-set witnesses and exact containment search.

mod levels;
mod quotient;
mod script;
mod search;
mod witness;

pub(crate) use script::WorkGraph;
pub use script::{apply_script, script_to_witness, MinorOp, MinorScript};
pub use search::{has_minor, is_minor, MinorSearch, SearchReport, DEFAULT_NODE_BUDGET, MAX_SEARCH_ORDER};
pub use witness::{verify_witness, EdgeAssignment, MinorWitness};
