use super::{Animal, GraphError, Path, VertexId};

/// Closed walk from `x` that crosses every edge of the animal exactly once in
/// each direction.
///
/// Each undirected edge is replaced by two opposite arcs, so every vertex has
/// equal in- and out-degree and the arc set is Eulerian. The circuit is found
/// with Hierholzer's algorithm. Because each ordered pair `u -> v` is a
/// single arc, the walk leaves `u` towards `v` exactly once and has length
/// `2|E(A)|`.
pub fn euler_double_cover(a: &Animal<'_>, x: VertexId) -> Result<Path, GraphError> {
    let start = a.index_of(x).ok_or(GraphError::NotInAnimal(x))?;
    let adj = a.local_adjacency();
    // next unused out-arc per vertex
    let mut cursor = vec![0usize; adj.len()];
    let mut stack = vec![start];
    let mut circuit = Vec::with_capacity(2 * a.edge_count() + 1);
    while let Some(&u) = stack.last() {
        if cursor[u] < adj[u].len() {
            let v = adj[u][cursor[u]];
            cursor[u] += 1;
            stack.push(v);
        } else {
            circuit.push(a.vertices()[u]);
            stack.pop();
        }
    }
    circuit.reverse();
    Ok(Path::new_unchecked(circuit))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::graph::builders::{caterpillar, complete, star};
    use crate::graph::induced_animal;

    /// Independent check: every ordered adjacent pair of the animal occurs as a
    /// step exactly once and the walk is closed at `x`.
    fn assert_double_cover(a: &Animal<'_>, x: VertexId, walk: &Path) {
        assert_eq!(walk.start(), x);
        assert_eq!(walk.end(), x);
        assert_eq!(walk.len(), 2 * a.edge_count());
        let steps: Vec<(VertexId, VertexId)> =
            walk.vertices().windows(2).map(|p| (p[0], p[1])).collect();
        let unique: HashSet<_> = steps.iter().copied().collect();
        assert_eq!(unique.len(), steps.len());
        for (u, v) in a.edges() {
            assert!(unique.contains(&(u, v)));
            assert!(unique.contains(&(v, u)));
        }
        let visited: HashSet<_> = walk.vertices().iter().copied().collect();
        assert_eq!(visited.len(), a.order());
        for (&y, &nu) in &walk.departure_counts() {
            assert!(nu as u32 <= a.window().ambient_degree(y));
        }
    }

    #[test]
    fn single_edge() {
        let w = star(1);
        let a = induced_animal(&w, &[0, 1]).unwrap();
        let walk = euler_double_cover(&a, 0).unwrap();
        assert_eq!(walk.vertices(), &[0, 1, 0]);
    }

    #[test]
    fn star_from_centre() {
        let w = star(3);
        let a = induced_animal(&w, &[0, 1, 2, 3]).unwrap();
        let walk = euler_double_cover(&a, 0).unwrap();
        assert_eq!(walk.len(), 6);
        assert_double_cover(&a, 0, &walk);
    }

    #[test]
    fn triangle_from_every_vertex() {
        let w = complete(3);
        let a = induced_animal(&w, &[0, 1, 2]).unwrap();
        for x in 0..3 {
            let walk = euler_double_cover(&a, x).unwrap();
            assert_eq!(walk.len(), 6);
            assert_double_cover(&a, x, &walk);
        }
    }

    #[test]
    fn caterpillar_and_singleton() {
        let w = caterpillar(6, &[0, 2, 1, 3, 0, 0]);
        let all: Vec<VertexId> = w.vertices().collect();
        let a = induced_animal(&w, &all).unwrap();
        for x in w.vertices() {
            assert_double_cover(&a, x, &euler_double_cover(&a, x).unwrap());
        }
        let single = induced_animal(&w, &[4]).unwrap();
        assert_eq!(euler_double_cover(&single, 4).unwrap().vertices(), &[4]);
        assert!(matches!(
            euler_double_cover(&single, 3),
            Err(GraphError::NotInAnimal(3))
        ));
    }
}
