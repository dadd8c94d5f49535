//! Repulsion profiles `φ`, certification of the repulsion condition on finite
//! windows, and a generator of spine-with-hubs graphs that satisfy it.

mod check;
mod hubs;
mod phi;

pub use check::{
    check_repulsion, classify_vertices, high_degree_vertices, Classification, Family,
    RepulsionReport, Violation,
};
pub use hubs::{generate_hub_graph, Hub, HubFamilySpec};
pub use phi::{meets, tie_guard, PhiFunction, PhiSpec};

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RepulsionError {
    #[error("invalid phi: {0}")]
    InvalidPhi(String),
    #[error("invalid hub spec: {0}")]
    InvalidHubSpec(String),
    #[error("hubs {first} and {second} are {distance} apart but need {required}")]
    HubSpacing {
        first: usize,
        second: usize,
        distance: u32,
        required: f64,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// `φ^{-1}(y) = max{n ∈ ℕ : φ(n) ≤ y}`, 0 when `φ(1) > y`.
pub fn phi_inverse(phi: &PhiFunction, y: f64) -> u64 {
    phi.inverse(y)
}
