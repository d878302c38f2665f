//! Exact computation in right-angled Artin groups and their extension graphs.

pub mod cancel;
pub mod classify;
pub mod distance;
pub mod error;
pub mod extension;
pub mod graph;
pub mod link;
pub mod sample;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use word::{Element, Factorization, Letter, Raag};
