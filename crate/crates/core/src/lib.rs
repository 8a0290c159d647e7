pub mod catalog;
pub mod classify;
pub mod embedding;
pub mod error;
pub mod graph;
pub mod minor;
pub mod product;

pub use error::{Error, Result};
pub use graph::Graph;
