//! Conant's quotient `Ω` of one-tree graphs by the relations (C1), (C2), (C3),
//! the trace into it, and the map `Φ` from one-loop to two-loop classes.

pub mod cases;
pub mod factorization;
pub mod relations;

use hlg_core::graph::GraphError;
use hlg_core::linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum OmegaError {
    #[error("expected {0}")]
    Shape(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
