//! Standard windows used throughout the crate: lines, grids, stars, paths.

use super::{GraphBuilder, GraphWindow, VertexId};

/// Ball of radius `radius` in the two-way infinite line, centred at the origin.
pub fn line_window(radius: u32) -> GraphWindow {
    let n = 2 * radius as usize + 1;
    let mut b = GraphBuilder::new(n);
    for v in 1..n as VertexId {
        b.add_edge(v - 1, v);
    }
    for v in 0..n as VertexId {
        b.set_ambient_degree(v, 2);
    }
    b.origin(radius).build().expect("line window is well formed")
}

/// First `length + 1` vertices of the half-line `0 - 1 - 2 - ...`, origin at 0.
/// Vertex 0 is a genuine endpoint; the last vertex continues outside.
pub fn half_line(length: u32) -> GraphWindow {
    let n = length as usize + 1;
    let mut b = GraphBuilder::new(n);
    for v in 1..n as VertexId {
        b.add_edge(v - 1, v);
    }
    if length > 0 {
        b.set_ambient_degree(length, 2);
    }
    b.origin(0).build().expect("half line is well formed")
}

/// Index of cell `(i, j)` in [`grid_window`] of the given radius, where
/// `-radius <= i, j <= radius`.
pub fn grid_window_index(radius: u32, i: i64, j: i64) -> VertexId {
    let side = 2 * radius as i64 + 1;
    ((i + radius as i64) * side + (j + radius as i64)) as VertexId
}

/// Square `[-radius, radius]^2` cut out of the infinite square lattice.
/// All ambient degrees are 4; the origin is the centre.
pub fn grid_window(radius: u32) -> GraphWindow {
    let side = 2 * radius as usize + 1;
    let mut b = grid_builder(side, side);
    for v in 0..(side * side) as VertexId {
        b.set_ambient_degree(v, 4);
    }
    b.origin(grid_window_index(radius, 0, 0))
        .build()
        .expect("grid window is well formed")
}

/// Standalone `rows x cols` grid; vertex `(i, j)` has id `i * cols + j`.
pub fn grid(rows: usize, cols: usize) -> GraphWindow {
    grid_builder(rows, cols).origin(0).build().expect("grid is well formed")
}

fn grid_builder(rows: usize, cols: usize) -> GraphBuilder {
    let mut b = GraphBuilder::new(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = (i * cols + j) as VertexId;
            if j + 1 < cols {
                b.add_edge(v, v + 1);
            }
            if i + 1 < rows {
                b.add_edge(v, v + cols as VertexId);
            }
        }
    }
    b
}

/// Standalone path with `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> GraphWindow {
    let mut b = GraphBuilder::new(n);
    for v in 1..n as VertexId {
        b.add_edge(v - 1, v);
    }
    b.origin(0).build().expect("path is well formed")
}

/// Star `K_{1,leaves}` with centre 0.
pub fn star(leaves: usize) -> GraphWindow {
    GraphBuilder::new(leaves + 1)
        .edges((1..=leaves as VertexId).map(|l| (0, l)))
        .origin(0)
        .build()
        .expect("star is well formed")
}

pub fn cycle(n: usize) -> GraphWindow {
    assert!(n >= 3);
    GraphBuilder::new(n)
        .edges((0..n as VertexId).map(|v| (v, (v + 1) % n as VertexId)))
        .origin(0)
        .build()
        .expect("cycle is well formed")
}

pub fn complete(n: usize) -> GraphWindow {
    let mut b = GraphBuilder::new(n);
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            b.add_edge(u, v);
        }
    }
    b.origin(0).build().expect("complete graph is well formed")
}

/// Caterpillar: a backbone path of `backbone` vertices with a pendant path of
/// length `legs[k]` hanging from backbone vertex `k`.
pub fn caterpillar(backbone: usize, legs: &[usize]) -> GraphWindow {
    let total = backbone + legs.iter().sum::<usize>();
    let mut b = GraphBuilder::new(total);
    for v in 1..backbone as VertexId {
        b.add_edge(v - 1, v);
    }
    let mut next = backbone as VertexId;
    for (k, &len) in legs.iter().enumerate() {
        let mut prev = k as VertexId;
        for _ in 0..len {
            b.add_edge(prev, next);
            prev = next;
            next += 1;
        }
    }
    b.origin(0).build().expect("caterpillar is well formed")
}
