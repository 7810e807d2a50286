//! The two-loop part of the trace quotient: theta symbols, their relations,
//! and the comparison with two-loop graphs.

pub mod cores;
pub mod formal;
pub mod lambda4;
pub mod presentation;

use hlg_core::graph::GraphError;
use hlg_core::linalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum Omega2Error {
    #[error("cannot parse theta symbol {0:?}")]
    Parse(String),
    #[error("symbol {0} has letters outside the block")]
    Content(String),
    #[error("{0} is not in the span of theta graphs")]
    NotTheta(String),
    #[error("expected {0}")]
    Shape(String),
    #[error("parameters violate q+r+s+t+2v = 0")]
    Constraint,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
