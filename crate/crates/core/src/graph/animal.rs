use std::collections::VecDeque;

use super::{GraphError, GraphWindow, VertexId, UNREACHABLE};

/// A finite connected vertex set of a window, together with every window edge
/// between its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Animal<'w> {
    window: &'w GraphWindow,
    vertices: Vec<VertexId>,
}

/// Builds the animal induced by `vs`, failing if `vs` is empty or disconnected.
pub fn induced_animal<'w>(w: &'w GraphWindow, vs: &[VertexId]) -> Result<Animal<'w>, GraphError> {
    if vs.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    for &v in vs {
        w.check_vertex(v)?;
    }
    let mut vertices = vs.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    let animal = Animal {
        window: w,
        vertices,
    };
    let labels = animal.local_components();
    if let Some(pos) = labels.iter().position(|&l| l != 0) {
        let other = labels[pos];
        let pick = |label: u32| {
            animal
                .vertices
                .iter()
                .zip(&labels)
                .filter(|&(_, &l)| l == label)
                .map(|(&v, _)| v)
                .collect::<Vec<_>>()
        };
        return Err(GraphError::Disconnected {
            first: pick(0),
            second: pick(other),
        });
    }
    Ok(animal)
}

impl<'w> Animal<'w> {
    pub fn window(&self) -> &'w GraphWindow {
        self.window
    }

    /// Sorted member list.
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` in [`Self::vertices`].
    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Induced edges `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices.iter().flat_map(move |&u| {
            self.window
                .neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v && self.contains(v))
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Degree of `v` inside the animal.
    pub fn inner_degree(&self, v: VertexId) -> usize {
        self.window
            .neighbors(v)
            .iter()
            .filter(|u| self.contains(**u))
            .count()
    }

    /// `n_A`, the largest ambient degree among members.
    pub fn max_ambient_degree(&self) -> u32 {
        self.vertices
            .iter()
            .map(|&v| self.window.ambient_degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Adjacency over local indices `0..order()`.
    pub fn local_adjacency(&self) -> Vec<Vec<usize>> {
        self.vertices
            .iter()
            .map(|&u| {
                self.window
                    .neighbors(u)
                    .iter()
                    .filter_map(|&v| self.index_of(v))
                    .collect()
            })
            .collect()
    }

    /// True when the animal is a simple path (tree with max inner degree 2).
    pub fn is_path(&self) -> bool {
        self.edge_count() + 1 == self.order()
            && self.vertices.iter().all(|&v| self.inner_degree(v) <= 2)
    }

    fn local_components(&self) -> Vec<u32> {
        let adj = self.local_adjacency();
        let mut label = vec![UNREACHABLE; adj.len()];
        let mut next = 0;
        for s in 0..adj.len() {
            if label[s] != UNREACHABLE {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if label[v] == UNREACHABLE {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::{grid, star};

    #[test]
    fn singleton_is_an_animal() {
        let w = star(3);
        let a = induced_animal(&w, &[2]).unwrap();
        assert_eq!(a.order(), 1);
        assert_eq!(a.edge_count(), 0);
    }

    #[test]
    fn non_adjacent_pair_is_rejected_with_witness() {
        let w = star(3);
        match induced_animal(&w, &[2, 1]) {
            Err(GraphError::Disconnected { first, second }) => {
                assert_eq!(first, vec![1]);
                assert_eq!(second, vec![2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn l_tromino_has_two_edges() {
        // (0,0) (1,0) (1,1) on a 3x3 grid
        let w = grid(3, 3);
        let a = induced_animal(&w, &[0, 3, 4]).unwrap();
        assert_eq!(a.edge_count(), 2);
        assert!(a.is_path());
        // oracle: BFS connectivity over the vertex set
        let square = induced_animal(&w, &[0, 1, 3, 4]).unwrap();
        assert_eq!(square.edge_count(), 4);
        assert!(!square.is_path());
    }
}
