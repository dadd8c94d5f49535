use std::collections::VecDeque;

use super::GraphError;

/// Dense vertex identifier, `0..vertex_count` within one window.
pub type VertexId = u32;

/// Marker used in distance tables for vertices in another component.
pub const UNREACHABLE: u32 = u32::MAX;

/// A finite, immutable, simple graph.
///
/// A window is either a standalone graph or an induced ball of some larger
/// (typically infinite) graph. In the latter case `ambient_degree(x)` is the
/// degree in the full graph and can exceed the number of neighbours stored
/// here. A vertex whose ambient degree equals its stored degree is called
/// *complete*; everything computed within distance `r` of a centre is exact
/// as long as all vertices closer than `r` are complete.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphWindow {
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    ambient: Vec<u32>,
    origin: Option<VertexId>,
}

impl GraphWindow {
    /// Builds a standalone window (ambient degree = stored degree).
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        GraphBuilder::new(vertex_count).edges(edges).build()
    }

    pub fn vertex_count(&self) -> usize {
        self.ambient.len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.ambient.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.vertex_count() as VertexId
    }

    /// Sorted neighbour list of `v`.
    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Degree inside the window.
    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Degree `n(v)` in the ambient graph.
    #[inline]
    pub fn ambient_degree(&self, v: VertexId) -> u32 {
        self.ambient[v as usize]
    }

    pub fn ambient_degrees(&self) -> &[u32] {
        &self.ambient
    }

    pub fn max_ambient_degree(&self) -> u32 {
        self.ambient.iter().copied().max().unwrap_or(0)
    }

    #[inline]
    pub fn is_complete(&self, v: VertexId) -> bool {
        self.ambient[v as usize] as usize == self.degree(v)
    }

    /// True when no vertex has neighbours outside the window.
    pub fn is_standalone(&self) -> bool {
        self.vertices().all(|v| self.is_complete(v))
    }

    pub fn origin(&self) -> Option<VertexId> {
        self.origin
    }

    pub fn with_origin(mut self, origin: VertexId) -> Result<Self, GraphError> {
        self.check_vertex(origin)?;
        self.origin = Some(origin);
        Ok(self)
    }

    /// Index of the arc `u -> neighbors(u)[i]` in `0..2|E|`.
    #[inline]
    pub fn arc_base(&self, u: VertexId) -> usize {
        self.offsets[u as usize]
    }

    pub fn arc_count(&self) -> usize {
        self.targets.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.vertex_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Undirected edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// BFS distances from `x`; unreachable vertices hold [`UNREACHABLE`].
    pub fn distances_from(&self, x: VertexId) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[x as usize] = 0;
        queue.push_back(x);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in self.neighbors(u) {
                if dist[v as usize] == UNREACHABLE {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// BFS distances from `x`, stopping after `radius`.
    pub fn distances_within(&self, x: VertexId, radius: u32) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[x as usize] = 0;
        queue.push_back(x);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if du == radius {
                continue;
            }
            for &v in self.neighbors(u) {
                if dist[v as usize] == UNREACHABLE {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Largest radius `R` for which `B_R(x)` computed in this window equals
    /// the ball of the ambient graph. `None` means every radius is exact.
    pub fn exact_radius(&self, x: VertexId) -> Option<u32> {
        let dist = self.distances_from(x);
        dist.iter()
            .enumerate()
            .filter(|&(v, &d)| d != UNREACHABLE && !self.is_complete(v as VertexId))
            .map(|(_, &d)| d)
            .min()
    }

    /// Fails with [`GraphError::WindowTooSmall`] unless `B_radius(x)` is exact.
    pub fn require_exact_ball(&self, x: VertexId, radius: u32) -> Result<(), GraphError> {
        self.check_vertex(x)?;
        match self.exact_radius(x) {
            Some(r) if radius > r => Err(GraphError::WindowTooSmall {
                center: x,
                requested: radius,
                exact_radius: r,
            }),
            _ => Ok(()),
        }
    }

    /// Connected components as a label per vertex, labels in order of first vertex.
    pub fn component_labels(&self) -> Vec<u32> {
        let mut label = vec![UNREACHABLE; self.vertex_count()];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in self.vertices() {
            if label[s as usize] != UNREACHABLE {
                continue;
            }
            label[s as usize] = next;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if label[v as usize] == UNREACHABLE {
                        label[v as usize] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        label
    }
}

/// Incremental constructor for [`GraphWindow`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
    ambient: Vec<(VertexId, u32)>,
    origin: Option<VertexId>,
}

impl GraphBuilder {
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            ..Default::default()
        }
    }

    pub fn edge(mut self, u: VertexId, v: VertexId) -> Self {
        self.edges.push((u, v));
        self
    }

    pub fn edges(mut self, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Self {
        self.edges.extend(edges);
        self
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        self.edges.push((u, v));
    }

    /// Overrides the ambient degree of `v`.
    pub fn ambient_degree(mut self, v: VertexId, degree: u32) -> Self {
        self.ambient.push((v, degree));
        self
    }

    pub fn set_ambient_degree(&mut self, v: VertexId, degree: u32) {
        self.ambient.push((v, degree));
    }

    pub fn origin(mut self, v: VertexId) -> Self {
        self.origin = Some(v);
        self
    }

    pub fn build(self) -> Result<GraphWindow, GraphError> {
        let n = self.vertex_count;
        let check = |v: VertexId| {
            if (v as usize) < n {
                Ok(())
            } else {
                Err(GraphError::InvalidVertex {
                    vertex: v,
                    vertex_count: n,
                })
            }
        };
        let mut degree = vec![0usize; n];
        for &(u, v) in &self.edges {
            check(u)?;
            check(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; offsets[n]];
        for &(u, v) in &self.edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for u in 0..n {
            let list = &mut targets[offsets[u]..offsets[u + 1]];
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u as VertexId, w[0]);
                return Err(GraphError::DuplicateEdge(a.min(b), a.max(b)));
            }
        }
        let mut ambient: Vec<u32> = degree.iter().map(|&d| d as u32).collect();
        for &(v, d) in &self.ambient {
            check(v)?;
            ambient[v as usize] = d;
        }
        for (v, (&a, &d)) in ambient.iter().zip(&degree).enumerate() {
            if (a as usize) < d {
                return Err(GraphError::AmbientBelowDegree {
                    vertex: v as VertexId,
                    ambient: a,
                    degree: d,
                });
            }
        }
        if let Some(o) = self.origin {
            check(o)?;
        }
        Ok(GraphWindow {
            offsets,
            targets,
            ambient,
            origin: self.origin,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            GraphWindow::from_edges(3, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            GraphWindow::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            GraphWindow::from_edges(2, [(0, 2)]),
            Err(GraphError::InvalidVertex { vertex: 2, .. })
        ));
    }

    #[test]
    fn ambient_cannot_drop_below_degree() {
        let err = GraphBuilder::new(2)
            .edge(0, 1)
            .ambient_degree(0, 0)
            .build()
            .unwrap_err();
        assert!(matches!(err, GraphError::AmbientBelowDegree { vertex: 0, .. }));
    }

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let w = GraphWindow::from_edges(4, [(2, 0), (0, 1), (3, 0), (1, 2)]).unwrap();
        assert_eq!(w.neighbors(0), &[1, 2, 3]);
        for u in w.vertices() {
            for &v in w.neighbors(u) {
                assert!(w.has_edge(v, u));
            }
        }
        assert_eq!(w.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (0, 3), (1, 2)]);
    }
}
