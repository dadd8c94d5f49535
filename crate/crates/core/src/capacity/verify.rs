use super::backbone::backbone_decompose;
use super::exact::{capacity_exact_with_cap, spanning_subgraph_capacity, DEFAULT_EXACT_CAP};
use super::{check_lambda, CapacityError};
use crate::graph::builders::path_graph;
use crate::graph::{induced_animal, Animal, GraphWindow, VertexId};

/// Result of checking the capacity inequalities on one animal.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityVerdict {
    pub order: usize,
    pub lambda: f64,
    pub capacity: usize,
    /// `max{1, 2N/λ}`
    pub bound_15: f64,
    pub holds_15: bool,
    /// `1 + |θ|/λ`, present when the animal is a path.
    pub bound_14: Option<f64>,
    pub holds_14: Option<bool>,
    /// Capacities of the BFS and DFS spanning trees.
    pub spanning_capacities: Vec<usize>,
    pub holds_span: bool,
    /// `λ > 1`; smaller values are accepted but lie outside the definition.
    pub in_regime: bool,
}

impl CapacityVerdict {
    pub fn passed(&self) -> bool {
        self.holds_15 && self.holds_14.unwrap_or(true) && self.holds_span
    }
}

/// Checks `C(A;λ) ≤ max{1, 2N/λ}`, the path bound when `A` is a path, and
/// `C(A;λ) ≤ C(T;λ)` for two spanning trees `T`.
pub fn verify_capacity_bounds(a: &Animal<'_>, lambda: f64) -> Result<CapacityVerdict, CapacityError> {
    verify_with_cap(a, lambda, DEFAULT_EXACT_CAP)
}

pub(crate) fn verify_with_cap(
    a: &Animal<'_>,
    lambda: f64,
    cap: usize,
) -> Result<CapacityVerdict, CapacityError> {
    check_lambda(lambda)?;
    let (capacity, _) = capacity_exact_with_cap(a, lambda, cap)?;
    let n = a.order();
    let bound_15 = (2.0 * n as f64 / lambda).max(1.0);
    let (bound_14, holds_14) = if a.is_path() {
        let b = 1.0 + (n - 1) as f64 / lambda;
        (Some(b), Some(capacity as f64 <= b))
    } else {
        (None, None)
    };
    let trees = [backbone_decompose(a).spanning_tree, dfs_tree(a)];
    let spanning_capacities = trees
        .iter()
        .map(|t| spanning_subgraph_capacity(a, t, lambda, cap).map(|(c, _)| c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CapacityVerdict {
        order: n,
        lambda,
        capacity,
        bound_15,
        holds_15: capacity as f64 <= bound_15,
        bound_14,
        holds_14,
        holds_span: spanning_capacities.iter().all(|&c| capacity <= c),
        spanning_capacities,
        in_regime: lambda > 1.0,
    })
}

/// Depth-first spanning tree from the smallest member.
fn dfs_tree(a: &Animal<'_>) -> Vec<(VertexId, VertexId)> {
    let adj = a.local_adjacency();
    let ids = a.vertices();
    let mut seen = vec![false; adj.len()];
    let mut edges = Vec::new();
    let mut stack = vec![(0usize, usize::MAX)];
    while let Some((u, from)) = stack.pop() {
        if seen[u] {
            continue;
        }
        seen[u] = true;
        if from != usize::MAX {
            edges.push((ids[from], ids[u]));
        }
        for &v in adj[u].iter().rev() {
            if !seen[v] {
                stack.push((v, u));
            }
        }
    }
    edges
}

/// The path animal showing that the factor 2 in the capacity bound is sharp.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityWitness {
    /// Path graph with `length + 1` vertices.
    pub window: GraphWindow,
    pub length: u32,
    pub lambda: f64,
    pub capacity: usize,
    /// `2(|θ| + 1)/|θ| − ε`
    pub threshold: f64,
    pub holds: bool,
}

impl OptimalityWitness {
    pub fn animal(&self) -> Animal<'_> {
        let vs: Vec<VertexId> = self.window.vertices().collect();
        induced_animal(&self.window, &vs).expect("a path is connected")
    }
}

/// Path of length `length` with `λ = length`: its capacity is 2, which
/// exceeds `2(|θ|+1)/|θ| − ε` once `ε > 2/|θ|`.
pub fn optimality_witness(length: u32, epsilon: f64) -> Result<OptimalityWitness, CapacityError> {
    if length == 0 {
        return Err(CapacityError::ZeroLength);
    }
    let threshold = 2.0 * (length as f64 + 1.0) / length as f64 - epsilon;
    if !(threshold < 2.0) {
        return Err(CapacityError::EpsilonTooLarge { length, epsilon });
    }
    let window = path_graph(length as usize + 1);
    let lambda = length as f64;
    let vs: Vec<VertexId> = window.vertices().collect();
    let a = induced_animal(&window, &vs)?;
    let (capacity, _) = capacity_exact_with_cap(&a, lambda, length as usize + 1)?;
    Ok(OptimalityWitness {
        length,
        lambda,
        capacity,
        threshold,
        holds: capacity as f64 > threshold,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::grid;

    #[test]
    fn path_of_eleven_passes() {
        let w = path_graph(11);
        let vs: Vec<_> = w.vertices().collect();
        let a = induced_animal(&w, &vs).unwrap();
        let v = verify_capacity_bounds(&a, 3.0).unwrap();
        assert_eq!(v.capacity, 4);
        assert!((v.bound_15 - 22.0 / 3.0).abs() < 1e-12);
        assert_eq!(v.bound_14, Some(1.0 + 10.0 / 3.0));
        assert!(v.passed());
    }

    #[test]
    fn boundary_case_of_small_diameter() {
        let w = grid(2, 2);
        let a = induced_animal(&w, &[0, 1, 2, 3]).unwrap();
        let v = verify_capacity_bounds(&a, 8.0).unwrap();
        assert_eq!(v.capacity, 1);
        assert_eq!(v.bound_15, 1.0);
        assert!(v.passed());
    }

    #[test]
    fn low_lambda_is_flagged() {
        let w = grid(2, 3);
        let vs: Vec<_> = w.vertices().collect();
        let a = induced_animal(&w, &vs).unwrap();
        let v = verify_capacity_bounds(&a, 0.5).unwrap();
        assert!(!v.in_regime);
        assert_eq!(v.capacity, 6);
    }

    #[test]
    fn optimality_examples() {
        let w = optimality_witness(10, 0.5).unwrap();
        assert_eq!(w.capacity, 2);
        assert!((w.threshold - 1.7).abs() < 1e-12);
        assert!(w.holds);
        let w = optimality_witness(100, 0.05).unwrap();
        assert_eq!(w.capacity, 2);
        assert!(w.holds && w.threshold < 2.0);
        assert_eq!(w.animal().order(), 101);
        assert!(matches!(
            optimality_witness(10, 0.1),
            Err(CapacityError::EpsilonTooLarge { .. })
        ));
    }
}
