//! Desk-scale experiments on windows: Bernoulli percolation reach
//! probabilities, Randić index maxima, greedy animals with their growth
//! experiment, and sphere growth against `q^N`.

mod growth;
mod greedy;
mod percolation;
mod randic;
mod rng;

pub use greedy::{
    chernoff_t, greedy_growth_experiment, greedy_score, sample_weights, GreedyRow, GreedyScore,
    GrowthExperiment, Law, WeightModel,
};
pub use growth::{ball_growth_check, BallGrowthRow};
pub use percolation::{
    percolation_envelope, percolation_run, EnvelopeRow, PercolationConfig, PercolationMode,
    PercolationRow, PercolationTable,
};
pub use randic::{
    randic_certificates, randic_index, randic_max, DegreeMode, RandicCertificate, RandicMax,
};
pub use rng::{substream, uniform};

use thiserror::Error;

use crate::enumeration::EnumerationError;
use crate::graph::GraphError;
use crate::temperedness::TemperedError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ApplicationError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("weight mean {mean} exceeds the bound {bound} (vertex {vertex:?})")]
    MeanBound {
        vertex: Option<crate::graph::VertexId>,
        mean: f64,
        bound: f64,
    },
    #[error("experiment refused: {0}")]
    Refused(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Tempered(#[from] TemperedError),
}
