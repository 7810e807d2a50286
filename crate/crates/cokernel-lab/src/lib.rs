//! Representation-theoretic checks on the two-loop quotient: GL tables of graph
//! spaces and quotients, dashed-line elements, and JSON reports.

pub mod dashed;
pub mod degree_six;
pub mod gl_table;
pub mod report;
pub mod suites;

use hlg_core::graph::GraphError;
use hlg_core::lie::LieError;
use hlg_core::linalg::LinalgError;
use hlg_core::tableaux::TableauxError;
use hlg_core::tensor::TensorError;
use hlg_omega2::Omega2Error;
use hlg_omega_conant::OmegaError;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("genus {genus} too small for partitions of {size}")]
    GenusTooSmall { genus: usize, size: usize },
    #[error("template: {0}")]
    Template(String),
    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Tableaux(#[from] TableauxError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Omega2(#[from] Omega2Error),
    #[error(transparent)]
    Omega(#[from] OmegaError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

impl LabError {
    /// Whether the run stopped at a configured size limit.
    pub fn is_resource(&self) -> bool {
        let graph = match self {
            LabError::Graph(e) => Some(e),
            LabError::Omega2(Omega2Error::Graph(e)) | LabError::Omega(OmegaError::Graph(e)) => Some(e),
            _ => None,
        };
        matches!(graph, Some(GraphError::Resource(_)))
    }
}
