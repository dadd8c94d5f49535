use std::collections::{HashMap, HashSet};

use super::{GraphError, GraphWindow, VertexId};

/// A walk `x_0, x_1, ..., x_n` with consecutive vertices adjacent.
///
/// `simple` holds when all vertices are distinct (a self-avoiding path).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    vertices: Vec<VertexId>,
    simple: bool,
}

impl Path {
    pub fn new(w: &GraphWindow, vertices: Vec<VertexId>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyVertexSet);
        }
        for &v in &vertices {
            w.check_vertex(v)?;
        }
        for pair in vertices.windows(2) {
            if !w.has_edge(pair[0], pair[1]) {
                return Err(GraphError::NotAdjacent(pair[0], pair[1]));
            }
        }
        Ok(Self::new_unchecked(vertices))
    }

    pub(crate) fn new_unchecked(vertices: Vec<VertexId>) -> Self {
        let mut seen = HashSet::with_capacity(vertices.len());
        let simple = vertices.iter().all(|v| seen.insert(*v));
        Self { vertices, simple }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Number of steps `|θ|`.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Distinct vertices visited, sorted.
    pub fn vertex_set(&self) -> Vec<VertexId> {
        let mut vs = self.vertices.clone();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// How often the walk leaves each vertex (`ν_θ`).
    pub fn departure_counts(&self) -> HashMap<VertexId, usize> {
        let mut counts = HashMap::new();
        for &v in &self.vertices[..self.vertices.len() - 1] {
            *counts.entry(v).or_insert(0) += 1;
        }
        counts
    }

    /// True when every ordered step `u -> v` occurs at most once.
    pub fn has_unique_departures(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.len());
        self.vertices.windows(2).all(|p| seen.insert((p[0], p[1])))
    }

    /// How often each undirected edge `{u, v}` (keyed `u < v`) is traversed.
    pub fn edge_traversals(&self) -> HashMap<(VertexId, VertexId), usize> {
        let mut counts = HashMap::new();
        for p in self.vertices.windows(2) {
            *counts.entry((p[0].min(p[1]), p[0].max(p[1]))).or_insert(0) += 1;
        }
        counts
    }
}
