//! Finite graph windows, the path metric, animals, paths and the doubled
//! Euler walk through an animal.

mod animal;
pub mod builders;
mod euler;
pub mod io;
mod path;
mod window;

pub use animal::{induced_animal, Animal};
pub use euler::euler_double_cover;
pub use path::Path;
pub use window::{GraphBuilder, GraphWindow, VertexId, UNREACHABLE};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (window has {vertex_count} vertices)")]
    InvalidVertex { vertex: VertexId, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("ambient degree {ambient} of vertex {vertex} is below its window degree {degree}")]
    AmbientBelowDegree {
        vertex: VertexId,
        ambient: u32,
        degree: usize,
    },
    #[error("window too small: radius {requested} around {center} requested, exact only up to {exact_radius}")]
    WindowTooSmall {
        center: VertexId,
        requested: u32,
        exact_radius: u32,
    },
    #[error("vertex set is disconnected: {first:?} is separated from {second:?}")]
    Disconnected {
        first: Vec<VertexId>,
        second: Vec<VertexId>,
    },
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("vertex {0} is not in the animal")]
    NotInAnimal(VertexId),
    #[error("{0} and {1} are not adjacent")]
    NotAdjacent(VertexId, VertexId),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Shortest-path distance `ρ(x, y)`; `None` when `y` is unreachable from `x`.
pub fn path_distance(w: &GraphWindow, x: VertexId, y: VertexId) -> Result<Option<u32>, GraphError> {
    w.check_vertex(x)?;
    w.check_vertex(y)?;
    if x == y {
        return Ok(Some(0));
    }
    let d = w.distances_from(x)[y as usize];
    Ok((d != UNREACHABLE).then_some(d))
}

/// Ball `B_N(x)` and sphere `S_N(x)`, both sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSphere {
    pub ball: Vec<VertexId>,
    pub sphere: Vec<VertexId>,
}

/// Computes `B_N(x)` and `S_N(x)`. Fails when the window cannot see the
/// whole ball.
pub fn ball_sphere(w: &GraphWindow, x: VertexId, radius: u32) -> Result<BallSphere, GraphError> {
    w.require_exact_ball(x, radius)?;
    let dist = w.distances_within(x, radius);
    let mut ball = Vec::new();
    let mut sphere = Vec::new();
    for (v, &d) in dist.iter().enumerate() {
        if d <= radius {
            ball.push(v as VertexId);
            if d == radius {
                sphere.push(v as VertexId);
            }
        }
    }
    Ok(BallSphere { ball, sphere })
}

#[cfg(test)]
mod tests {
    use super::builders::*;
    use super::*;

    #[test]
    fn line_metric() {
        let w = path_graph(4);
        assert_eq!(path_distance(&w, 0, 3).unwrap(), Some(3));
        assert_eq!(path_distance(&w, 2, 2).unwrap(), Some(0));
        assert!(path_distance(&w, 0, 9).is_err());
    }

    #[test]
    fn unreachable_is_none() {
        let w = GraphWindow::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(path_distance(&w, 0, 2).unwrap(), None);
    }

    #[test]
    fn grid_distance_matches_bfs_oracle() {
        // Oracle: Manhattan distance on a rectangular grid.
        let w = grid(5, 5);
        for a in 0..25u32 {
            for b in 0..25u32 {
                let (ai, aj) = (a / 5, a % 5);
                let (bi, bj) = (b / 5, b % 5);
                let manhattan = ai.abs_diff(bi) + aj.abs_diff(bj);
                assert_eq!(path_distance(&w, a, b).unwrap(), Some(manhattan));
            }
        }
        // (0,0) to (2,3)
        assert_eq!(path_distance(&w, 0, 2 * 5 + 3).unwrap(), Some(5));
    }

    #[test]
    fn line_ball_and_truncation() {
        let w = line_window(10);
        let x = w.origin().unwrap();
        let bs = ball_sphere(&w, x, 3).unwrap();
        assert_eq!((bs.ball.len(), bs.sphere.len()), (7, 2));
        assert!(ball_sphere(&w, x, 10).is_ok());
        assert!(matches!(
            ball_sphere(&w, x, 11),
            Err(GraphError::WindowTooSmall { exact_radius: 10, .. })
        ));
    }

    #[test]
    fn grid_sphere_of_radius_two() {
        let w = grid_window(4);
        let bs = ball_sphere(&w, w.origin().unwrap(), 2).unwrap();
        assert_eq!(bs.sphere.len(), 8);
        assert_eq!(bs.ball.len(), 13);
    }

    #[test]
    fn balls_nest_and_spheres_partition() {
        let w = grid_window(6);
        let x = w.origin().unwrap();
        let mut union = vec![x];
        let mut prev = vec![x];
        for n in 1..=6 {
            let bs = ball_sphere(&w, x, n).unwrap();
            assert!(prev.iter().all(|v| bs.ball.binary_search(v).is_ok()));
            union.extend(&bs.sphere);
            union.sort_unstable();
            assert_eq!(union, bs.ball);
            prev = bs.ball;
        }
    }
}
