use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{log_degree, CountResult, EnumerationError};
use crate::graph::{GraphWindow, VertexId};

struct PathSearch<'a> {
    w: &'a GraphWindow,
    target: usize,
    visited: Vec<bool>,
    path: Vec<VertexId>,
    count: u128,
    best: f64,
}

impl<'a> PathSearch<'a> {
    fn new(w: &'a GraphWindow, x: VertexId, target: usize) -> Self {
        let mut visited = vec![false; w.vertex_count()];
        visited[x as usize] = true;
        Self {
            w,
            target,
            visited,
            path: vec![x],
            count: 0,
            best: f64::NEG_INFINITY,
        }
    }

    fn step(&mut self, v: VertexId, weight: f64, sink: &mut Option<&mut dyn FnMut(&[VertexId])>) {
        self.visited[v as usize] = true;
        self.path.push(v);
        let weight = weight + log_degree(self.w.ambient_degree(v));
        if self.path.len() == self.target + 1 {
            self.count += 1;
            if weight > self.best {
                self.best = weight;
            }
            if let Some(s) = sink.as_mut() {
                s(&self.path);
            }
        } else {
            for &next in self.w.neighbors(v) {
                if !self.visited[next as usize] {
                    self.step(next, weight, sink);
                }
            }
        }
        self.path.pop();
        self.visited[v as usize] = false;
    }
}

fn run(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    mut sink: Option<&mut dyn FnMut(&[VertexId])>,
) -> Result<(u128, f64), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroOrder);
    }
    w.require_exact_ball(x, n)?;
    let start = log_degree(w.ambient_degree(x));
    let first = w.neighbors(x);
    if sink.is_some() {
        let mut search = PathSearch::new(w, x, n as usize);
        for &v in first {
            search.step(v, start, &mut sink);
        }
        return Ok((search.count, search.best));
    }
    let (count, best) = first
        .par_iter()
        .map(|&v| {
            let mut search = PathSearch::new(w, x, n as usize);
            search.step(v, start, &mut None);
            (search.count, search.best)
        })
        .reduce(|| (0, f64::NEG_INFINITY), |a, b| (a.0 + b.0, a.1.max(b.1)));
    Ok((count, best))
}

/// Exact `|Σ_N(x)|`: self-avoiding paths of length `n` starting at `x`.
///
/// Requires `B_n(x)` to be exact in the window. The result carries
/// `bound_13 = max Σ_{y ∈ θ} log n(y)` over the same paths.
pub fn count_simple_paths(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    sink: Option<&mut dyn FnMut(&[VertexId])>,
) -> Result<CountResult, EnumerationError> {
    let started = Instant::now();
    let (count, best) = run(w, x, n, sink)?;
    Ok(CountResult {
        n,
        count: BigUint::from(count),
        bound_12: None,
        bound_13: Some(best),
        wall_time: started.elapsed(),
    })
}

/// Streams every simple path of length `n` from `x`, in DFS order.
pub fn for_each_simple_path(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    mut f: impl FnMut(&[VertexId]),
) -> Result<u128, EnumerationError> {
    let mut sink: &mut dyn FnMut(&[VertexId]) = &mut f;
    Ok(run(w, x, n, Some(&mut sink))?.0)
}

/// `max_{θ ∈ Σ_n(x)} Σ_{y ∈ V_θ} log n(y)`; `-∞` when there is no such path.
pub fn bound_13(w: &GraphWindow, x: VertexId, n: u32) -> Result<f64, EnumerationError> {
    Ok(run(w, x, n, None)?.1)
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::graph::builders::{grid_window, line_window, star};
    use crate::graph::GraphBuilder;

    /// Oracle: all neighbour sequences of length n, kept when all vertices differ.
    fn brute_force(w: &GraphWindow, x: VertexId, n: u32) -> (u64, f64) {
        let mut walks = vec![vec![x]];
        for _ in 0..n {
            walks = walks
                .into_iter()
                .flat_map(|walk| {
                    let last = *walk.last().unwrap();
                    w.neighbors(last).iter().map(move |&v| {
                        let mut next = walk.clone();
                        next.push(v);
                        next
                    })
                })
                .collect();
        }
        let mut count = 0;
        let mut best = f64::NEG_INFINITY;
        for walk in walks {
            let distinct: HashSet<_> = walk.iter().collect();
            if distinct.len() == walk.len() {
                count += 1;
                let s: f64 = walk
                    .iter()
                    .map(|&v| (w.ambient_degree(v) as f64).ln())
                    .sum();
                best = best.max(s);
            }
        }
        (count, best)
    }

    #[test]
    fn line_has_two_paths() {
        let w = line_window(12);
        let x = w.origin().unwrap();
        for n in 1..=12 {
            let r = count_simple_paths(&w, x, n, None).unwrap();
            assert_eq!(r.count, BigUint::from(2u32));
        }
        let b = bound_13(&w, x, 3).unwrap();
        assert!((b - 4.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn grid_counts_match_oracle() {
        let w = grid_window(5);
        let x = w.origin().unwrap();
        let expected = [4u32, 12, 36, 100, 284];
        for (n, &e) in (1..=5).zip(&expected) {
            let r = count_simple_paths(&w, x, n, None).unwrap();
            let (oracle, best) = brute_force(&w, x, n);
            assert_eq!(r.count, BigUint::from(oracle));
            assert_eq!(r.count, BigUint::from(e));
            assert!((r.bound_13.unwrap() - best).abs() < 1e-12);
        }
        assert!((bound_13(&w, x, 2).unwrap() - 3.0 * 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn isolated_vertex_has_no_paths() {
        let w = GraphBuilder::new(1).build().unwrap();
        let r = count_simple_paths(&w, 0, 1, None).unwrap();
        assert_eq!(r.count, BigUint::from(0u32));
        assert_eq!(r.bound_13, Some(f64::NEG_INFINITY));
    }

    #[test]
    fn truncated_window_is_an_error() {
        let w = grid_window(3);
        assert!(count_simple_paths(&w, w.origin().unwrap(), 4, None).is_err());
    }

    #[test]
    fn stream_is_distinct_and_matches_count() {
        let w = star(4);
        let mut seen = HashSet::new();
        let total = for_each_simple_path(&w, 1, 2, |p| {
            assert!(seen.insert(p.to_vec()));
        })
        .unwrap();
        assert_eq!(total, 3);
        assert_eq!(seen.len(), 3);
    }
}
