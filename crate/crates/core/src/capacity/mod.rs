//! λ-admissible sets inside an animal, the exact λ-capacity, the
//! spanning-tree backbone decomposition and the capacity inequalities.

mod backbone;
mod exact;
mod verify;

pub use backbone::{backbone_decompose, BackboneDecomposition, BackboneViolation, Subtree};
pub use exact::{
    capacity_exact, capacity_exact_with_cap, greedy_admissible, spanning_subgraph_capacity,
    DEFAULT_EXACT_CAP, MAX_EXACT_CAP,
};
pub use verify::{optimality_witness, verify_capacity_bounds, CapacityVerdict, OptimalityWitness};

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Animal, GraphError, VertexId, UNREACHABLE};
use crate::repulsion::meets;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CapacityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("animal of order {order} exceeds the exact-solver cap {cap}; use the greedy lower bound")]
    Cap { order: usize, cap: usize },
    #[error("lambda must be a positive finite number, got {0}")]
    InvalidLambda(f64),
    #[error("edge {0}-{1} is not an edge of the animal")]
    ForeignEdge(VertexId, VertexId),
    #[error("subgraph does not span the animal")]
    NotSpanning,
    #[error("epsilon {epsilon} is too large for length {length}: need 2/length < epsilon")]
    EpsilonTooLarge { length: u32, epsilon: f64 },
    #[error("length must be at least 1")]
    ZeroLength,
}

/// A vertex set whose members are pairwise at animal distance `≥ lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleSet {
    pub vertices: Vec<VertexId>,
    pub lambda: f64,
}

impl AdmissibleSet {
    /// Re-checks admissibility with the animal's own metric.
    pub fn is_admissible_in(&self, a: &Animal<'_>) -> bool {
        let Some(local) = self
            .vertices
            .iter()
            .map(|&v| a.index_of(v))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let dist = local_distances(&a.local_adjacency());
        local.iter().enumerate().all(|(i, &u)| {
            local[i + 1..]
                .iter()
                .all(|&v| meets(dist[u][v], self.lambda))
        })
    }
}

/// `ρ_A(x, y)`: shortest-path length using only edges inside the animal.
pub fn animal_metric(a: &Animal<'_>, x: VertexId, y: VertexId) -> Result<u32, GraphError> {
    let ix = a.index_of(x).ok_or(GraphError::NotInAnimal(x))?;
    let iy = a.index_of(y).ok_or(GraphError::NotInAnimal(y))?;
    Ok(bfs(&a.local_adjacency(), ix)[iy])
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    let mut queue = VecDeque::from([s]);
    dist[s] = 0;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == UNREACHABLE {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// All-pairs BFS distances on a local adjacency list.
pub(crate) fn local_distances(adj: &[Vec<usize>]) -> Vec<Vec<u32>> {
    (0..adj.len()).map(|s| bfs(adj, s)).collect()
}

pub(crate) fn check_lambda(lambda: f64) -> Result<(), CapacityError> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(CapacityError::InvalidLambda(lambda))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::{grid, path_graph};
    use crate::graph::{induced_animal, path_distance};

    #[test]
    fn path_endpoints() {
        let w = path_graph(5);
        let a = induced_animal(&w, &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(animal_metric(&a, 0, 4).unwrap(), 4);
        assert_eq!(animal_metric(&a, 2, 2).unwrap(), 0);
    }

    #[test]
    fn c_shape_detour_is_longer_than_ambient() {
        // 3x3 board, animal is the C missing the centre and the right middle
        let w = grid(3, 3);
        let a = induced_animal(&w, &[0, 1, 2, 3, 6, 7, 8]).unwrap();
        // 2 and 8 are two apart on the board and six apart inside the C
        assert_eq!(path_distance(&w, 2, 8).unwrap(), Some(2));
        assert_eq!(animal_metric(&a, 2, 8).unwrap(), 6);
        for &x in a.vertices() {
            for &y in a.vertices() {
                let inside = animal_metric(&a, x, y).unwrap();
                assert!(inside >= path_distance(&w, x, y).unwrap().unwrap());
            }
        }
        assert!(animal_metric(&a, 0, 4).is_err());
    }
}
