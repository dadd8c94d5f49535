use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::{n_log_n, CountResult, EnumerationError};
use crate::graph::{GraphWindow, VertexId};

/// DFS over walks that leave each vertex towards each neighbour at most once.
struct ThetaSearch<'a> {
    w: &'a GraphWindow,
    target: usize,
    used: Vec<bool>,
    visits: Vec<u32>,
    walk: Vec<VertexId>,
    count: u128,
    best: f64,
}

impl<'a> ThetaSearch<'a> {
    fn new(w: &'a GraphWindow, x: VertexId, target: usize) -> Self {
        let mut visits = vec![0; w.vertex_count()];
        visits[x as usize] = 1;
        Self {
            w,
            target,
            used: vec![false; w.arc_count()],
            visits,
            walk: vec![x],
            count: 0,
            best: f64::NEG_INFINITY,
        }
    }

    /// Take arc `arc` from the current end to `v`.
    fn step(
        &mut self,
        arc: usize,
        v: VertexId,
        weight: f64,
        sink: &mut Option<&mut dyn FnMut(&[VertexId])>,
    ) {
        self.used[arc] = true;
        self.walk.push(v);
        self.visits[v as usize] += 1;
        let weight = if self.visits[v as usize] == 1 {
            weight + n_log_n(self.w.ambient_degree(v))
        } else {
            weight
        };
        if self.walk.len() == self.target + 1 {
            self.count += 1;
            if weight > self.best {
                self.best = weight;
            }
            if let Some(s) = sink.as_mut() {
                s(&self.walk);
            }
        } else {
            let base = self.w.arc_base(v);
            for (i, &next) in self.w.neighbors(v).iter().enumerate() {
                if !self.used[base + i] {
                    self.step(base + i, next, weight, sink);
                }
            }
        }
        self.visits[v as usize] -= 1;
        self.walk.pop();
        self.used[arc] = false;
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
    let start = n_log_n(w.ambient_degree(x));
    let base = w.arc_base(x);
    let first = w.neighbors(x);
    if sink.is_some() {
        let mut search = ThetaSearch::new(w, x, n as usize);
        for (i, &v) in first.iter().enumerate() {
            search.step(base + i, v, start, &mut sink);
        }
        return Ok((search.count, search.best));
    }
    let (count, best) = first
        .par_iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut search = ThetaSearch::new(w, x, n as usize);
            search.step(base + i, v, start, &mut None);
            (search.count, search.best)
        })
        .reduce(|| (0, f64::NEG_INFINITY), |a, b| (a.0 + b.0, a.1.max(b.1)));
    Ok((count, best))
}

/// Exact `|Θ_N(x)|` together with `bound_12`.
pub fn count_theta_paths(w: &GraphWindow, x: VertexId, n: u32) -> Result<CountResult, EnumerationError> {
    let started = Instant::now();
    let (count, best) = run(w, x, n, None)?;
    Ok(CountResult {
        n,
        count: BigUint::from(count),
        bound_12: Some(best),
        bound_13: None,
        wall_time: started.elapsed(),
    })
}

/// Streams every walk of `Θ_n(x)` on the calling thread.
pub fn for_each_theta_path(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    mut f: impl FnMut(&[VertexId]),
) -> Result<u128, EnumerationError> {
    let mut sink: &mut dyn FnMut(&[VertexId]) = &mut f;
    Ok(run(w, x, n, Some(&mut sink))?.0)
}

/// `max_{θ ∈ Θ_n(x)} Σ_{y ∈ V_θ} n(y) log n(y)`.
pub fn bound_12(w: &GraphWindow, x: VertexId, n: u32) -> Result<f64, EnumerationError> {
    Ok(run(w, x, n, None)?.1)
}

#[cfg(test)]
mod tests {
    use std::collections::{BTreeSet, HashSet};

    use super::*;
    use crate::enumeration::count_simple_paths;
    use crate::graph::builders::{complete, grid_window, line_window, path_graph, star};
    use crate::graph::{euler_double_cover, induced_animal, Path};

    /// Oracle: every neighbour sequence, kept when no ordered pair repeats.
    fn brute_force(w: &GraphWindow, x: VertexId, n: u32) -> (u64, f64) {
        let mut walks = vec![vec![x]];
        for _ in 0..n {
            let mut next = Vec::new();
            for walk in walks {
                for &v in w.neighbors(*walk.last().unwrap()) {
                    let mut ext = walk.clone();
                    ext.push(v);
                    next.push(ext);
                }
            }
            walks = next;
        }
        let mut count = 0;
        let mut best = f64::NEG_INFINITY;
        for walk in walks {
            let arcs: Vec<_> = walk.windows(2).map(|p| (p[0], p[1])).collect();
            let distinct: HashSet<_> = arcs.iter().collect();
            if distinct.len() == arcs.len() {
                count += 1;
                let verts: BTreeSet<_> = walk.iter().collect();
                let s: f64 = verts.iter().map(|&&v| n_log_n(w.ambient_degree(v))).sum();
                best = best.max(s);
            }
        }
        (count, best)
    }

    #[test]
    fn single_edge_round_trip() {
        let w = path_graph(2);
        let r = count_theta_paths(&w, 0, 2).unwrap();
        assert_eq!(r.count, BigUint::from(1u32));
        assert_eq!(r.bound_12, Some(0.0));
    }

    #[test]
    fn triangle_matches_oracle() {
        let w = complete(3);
        for x in 0..3 {
            for n in 1..=6 {
                let r = count_theta_paths(&w, x, n).unwrap();
                let (oracle, best) = brute_force(&w, x, n);
                assert_eq!(r.count, BigUint::from(oracle), "x={x} n={n}");
                assert!((r.bound_12.unwrap() - best).abs() < 1e-12);
            }
        }
        // 6 arcs, so no walk of length 7 exists
        assert_eq!(count_theta_paths(&w, 0, 7).unwrap().count, BigUint::from(0u32));
    }

    #[test]
    fn first_step_is_degree() {
        let w = grid_window(3);
        let x = w.origin().unwrap();
        assert_eq!(count_theta_paths(&w, x, 1).unwrap().count, BigUint::from(4u32));
    }

    #[test]
    fn line_bound_value() {
        let w = line_window(6);
        let b = bound_12(&w, w.origin().unwrap(), 2).unwrap();
        assert!((b - 3.0 * 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn grid_matches_oracle_and_contains_paths() {
        let w = grid_window(5);
        let x = w.origin().unwrap();
        for n in 1..=5 {
            let theta = count_theta_paths(&w, x, n).unwrap();
            let (oracle, best) = brute_force(&w, x, n);
            assert_eq!(theta.count, BigUint::from(oracle));
            assert!((theta.bound_12.unwrap() - best).abs() < 1e-9);
            let sigma = count_simple_paths(&w, x, n, None).unwrap();
            assert!(sigma.count <= theta.count);
            assert!(theta.ln_count() <= theta.bound_12.unwrap() + 1e-9);
        }
    }

    #[test]
    fn euler_walk_of_star_is_a_theta_walk() {
        let w = star(3);
        let a = induced_animal(&w, &[0, 1, 2, 3]).unwrap();
        let cover = euler_double_cover(&a, 0).unwrap();
        let mut found = false;
        let total = for_each_theta_path(&w, 0, 6, |walk| {
            if walk == cover.vertices() {
                found = true;
            }
            assert!(Path::new(&w, walk.to_vec()).unwrap().has_unique_departures());
        })
        .unwrap();
        assert!(found);
        assert_eq!(total, 6);
    }
}
