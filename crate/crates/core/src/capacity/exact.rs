use super::{check_lambda, local_distances, AdmissibleSet, CapacityError};
use crate::graph::{Animal, VertexId};
use crate::repulsion::meets;

/// Default largest animal handed to the exact solver.
pub const DEFAULT_EXACT_CAP: usize = 24;
/// Hard limit of the bitset representation.
pub const MAX_EXACT_CAP: usize = 128;

/// `C(A; λ)` with a witness, for animals of order at most [`DEFAULT_EXACT_CAP`].
pub fn capacity_exact(a: &Animal<'_>, lambda: f64) -> Result<(usize, AdmissibleSet), CapacityError> {
    capacity_exact_with_cap(a, lambda, DEFAULT_EXACT_CAP)
}

/// As [`capacity_exact`] with an explicit cap (at most [`MAX_EXACT_CAP`]).
pub fn capacity_exact_with_cap(
    a: &Animal<'_>,
    lambda: f64,
    cap: usize,
) -> Result<(usize, AdmissibleSet), CapacityError> {
    let adj = a.local_adjacency();
    solve(&adj, a.vertices(), lambda, cap)
}

/// Capacity of the connected spanning subgraph of `a` with edge set `edges`.
pub fn spanning_subgraph_capacity(
    a: &Animal<'_>,
    edges: &[(VertexId, VertexId)],
    lambda: f64,
    cap: usize,
) -> Result<(usize, AdmissibleSet), CapacityError> {
    let mut adj = vec![Vec::new(); a.order()];
    for &(u, v) in edges {
        let (Some(iu), Some(iv)) = (a.index_of(u), a.index_of(v)) else {
            return Err(CapacityError::ForeignEdge(u, v));
        };
        if !a.window().has_edge(u, v) {
            return Err(CapacityError::ForeignEdge(u, v));
        }
        adj[iu].push(iv);
        adj[iv].push(iu);
    }
    let dist = local_distances(&adj);
    if dist[0].iter().any(|&d| d == u32::MAX) {
        return Err(CapacityError::NotSpanning);
    }
    solve(&adj, a.vertices(), lambda, cap)
}

fn solve(
    adj: &[Vec<usize>],
    ids: &[VertexId],
    lambda: f64,
    cap: usize,
) -> Result<(usize, AdmissibleSet), CapacityError> {
    check_lambda(lambda)?;
    let n = adj.len();
    let cap = cap.min(MAX_EXACT_CAP);
    if n > cap {
        return Err(CapacityError::Cap { order: n, cap });
    }
    let dist = local_distances(adj);
    // compatibility graph: an admissible set is a clique here
    let compat: Vec<u128> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && meets(dist[i][j], lambda))
                .fold(0u128, |m, j| m | 1 << j)
        })
        .collect();
    let all = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    let mut best = (0usize, 0u128);
    expand(&compat, 0, 0, all, &mut best);
    let vertices = (0..n)
        .filter(|&i| best.1 >> i & 1 == 1)
        .map(|i| ids[i])
        .collect();
    Ok((best.0, AdmissibleSet { vertices, lambda }))
}

/// Maximum clique by branch and bound with a greedy colouring bound.
fn expand(adj: &[u128], current: u128, size: usize, mut candidates: u128, best: &mut (usize, u128)) {
    if candidates == 0 {
        if size > best.0 {
            *best = (size, current);
        }
        return;
    }
    let mut order = Vec::with_capacity(candidates.count_ones() as usize);
    let mut colours = Vec::with_capacity(order.capacity());
    let mut uncoloured = candidates;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u128 << v);
            q &= !adj[v];
            uncoloured &= !(1u128 << v);
            order.push(v);
            colours.push(colour);
        }
    }
    for i in (0..order.len()).rev() {
        if size + colours[i] <= best.0 {
            return;
        }
        let v = order[i];
        expand(adj, current | 1u128 << v, size + 1, candidates & adj[v], best);
        candidates &= !(1u128 << v);
    }
}

/// Admissible set grown greedily in increasing id order; a lower bound on
/// `C(A; λ)` that needs no cap.
pub fn greedy_admissible(a: &Animal<'_>, lambda: f64) -> Result<AdmissibleSet, CapacityError> {
    check_lambda(lambda)?;
    let dist = local_distances(&a.local_adjacency());
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..a.order() {
        if chosen.iter().all(|&j| meets(dist[i][j], lambda)) {
            chosen.push(i);
        }
    }
    Ok(AdmissibleSet {
        vertices: chosen.into_iter().map(|i| a.vertices()[i]).collect(),
        lambda,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::{grid, path_graph, star};
    use crate::graph::induced_animal;

    /// Oracle: largest subset with all pairwise distances at least lambda.
    fn brute_force(a: &Animal<'_>, lambda: f64) -> usize {
        let dist = local_distances(&a.local_adjacency());
        let n = a.order();
        (0u32..1 << n)
            .filter(|&m| {
                (0..n).all(|i| {
                    m >> i & 1 == 0
                        || (i + 1..n).all(|j| m >> j & 1 == 0 || dist[i][j] as f64 >= lambda)
                })
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    fn whole(w: &crate::graph::GraphWindow) -> Animal<'_> {
        let vs: Vec<_> = w.vertices().collect();
        induced_animal(w, &vs).unwrap()
    }

    #[test]
    fn path_of_eleven() {
        let w = path_graph(11);
        let a = whole(&w);
        let (c3, witness) = capacity_exact(&a, 3.0).unwrap();
        assert_eq!(c3, 4);
        assert_eq!(brute_force(&a, 3.0), 4);
        assert!(witness.is_admissible_in(&a));
        assert_eq!(witness.vertices.len(), 4);
        assert_eq!(capacity_exact(&a, 2.0).unwrap().0, 6);
        assert_eq!(brute_force(&a, 2.0), 6);
    }

    #[test]
    fn small_diameter_gives_one() {
        let w = star(5);
        let a = whole(&w);
        assert_eq!(capacity_exact(&a, 3.0).unwrap().0, 1);
        assert_eq!(capacity_exact(&a, 2.0).unwrap().0, 5);
    }

    #[test]
    fn matches_oracle_on_board_animals() {
        let w = grid(4, 4);
        let a = whole(&w);
        for lambda in [1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.5, 7.0] {
            let (c, witness) = capacity_exact(&a, lambda).unwrap();
            assert_eq!(c, brute_force(&a, lambda), "lambda {lambda}");
            assert!(witness.is_admissible_in(&a));
            let g = greedy_admissible(&a, lambda).unwrap();
            assert!(g.is_admissible_in(&a) && g.vertices.len() <= c);
        }
    }

    #[test]
    fn cap_and_lambda_guards() {
        let w = path_graph(30);
        let a = whole(&w);
        assert!(matches!(
            capacity_exact(&a, 2.0),
            Err(CapacityError::Cap { order: 30, cap: 24 })
        ));
        assert_eq!(capacity_exact_with_cap(&a, 2.0, 30).unwrap().0, 15);
        assert!(matches!(
            capacity_exact(&whole(&path_graph(3)), 0.0),
            Err(CapacityError::InvalidLambda(_))
        ));
    }

    #[test]
    fn spanning_tree_capacity_dominates() {
        let w = grid(3, 3);
        let a = whole(&w);
        // comb: top row plus the three columns
        let tree = [(0, 1), (1, 2), (0, 3), (3, 6), (1, 4), (4, 7), (2, 5), (5, 8)];
        for lambda in 2..=6 {
            let c = capacity_exact(&a, lambda as f64).unwrap().0;
            let t = spanning_subgraph_capacity(&a, &tree, lambda as f64, 24).unwrap().0;
            assert!(c <= t);
        }
        assert!(matches!(
            spanning_subgraph_capacity(&a, &tree[..7], 2.0, 24),
            Err(CapacityError::NotSpanning)
        ));
        assert!(matches!(
            spanning_subgraph_capacity(&a, &[(0, 4)], 2.0, 24),
            Err(CapacityError::ForeignEdge(0, 4))
        ));
    }
}
