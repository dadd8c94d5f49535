use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{substream, uniform};
use super::ApplicationError;
use crate::enumeration::{ln_biguint, CountResult};
use crate::graph::{GraphWindow, VertexId, UNREACHABLE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PercolationMode {
    Bond,
    Site,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PercolationConfig {
    pub mode: PercolationMode,
    pub p: f64,
    pub trials: u64,
    pub reach_radii: Vec<u32>,
    pub rng_seed: u64,
}

impl PercolationConfig {
    pub fn validate(&self) -> Result<(), ApplicationError> {
        let bad = |m: String| Err(ApplicationError::InvalidConfig(m));
        if !(0.0..=1.0).contains(&self.p) {
            return bad(format!("p = {} is not a probability", self.p));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.reach_radii.is_empty() || self.reach_radii.contains(&0) {
            return bad("reach radii must be a non-empty list of positive integers".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PercolationRow {
    pub n: u32,
    pub reached: u64,
    pub estimate: f64,
    pub stderr: f64,
    /// Site mode: the same runs with `x` forced open.
    pub conditioned: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PercolationTable {
    pub mode: PercolationMode,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub rows: Vec<PercolationRow>,
}

struct Ball {
    ids: Vec<VertexId>,
    dist: Vec<u32>,
    edges: Vec<(usize, usize)>,
    origin: usize,
}

fn ball(w: &GraphWindow, x: VertexId, radius: u32) -> Ball {
    let full = w.distances_within(x, radius);
    let mut local = vec![usize::MAX; w.vertex_count()];
    let mut ids = Vec::new();
    let mut dist = Vec::new();
    for (v, &d) in full.iter().enumerate() {
        if d != UNREACHABLE {
            local[v] = ids.len();
            ids.push(v as VertexId);
            dist.push(d);
        }
    }
    let edges = w
        .edges()
        .filter(|&(u, v)| local[u as usize] != usize::MAX && local[v as usize] != usize::MAX)
        .map(|(u, v)| (local[u as usize], local[v as usize]))
        .collect();
    Ball {
        origin: local[x as usize],
        ids,
        dist,
        edges,
    }
}

/// Farthest distance reached by the open cluster of the origin, once without
/// and once with the origin forced open (they agree in bond mode).
fn trial(b: &Ball, mode: PercolationMode, p: f64, seed: u64, t: u64) -> (u32, u32) {
    let mut rng = substream(seed, t);
    let mut uf = UnionFind::<usize>::new(b.ids.len());
    let mut origin_open = true;
    match mode {
        PercolationMode::Bond => {
            for &(u, v) in &b.edges {
                if uniform(&mut rng) < p {
                    uf.union(u, v);
                }
            }
        }
        PercolationMode::Site => {
            let mut open: Vec<bool> = (0..b.ids.len()).map(|_| uniform(&mut rng) < p).collect();
            origin_open = open[b.origin];
            open[b.origin] = true;
            for &(u, v) in &b.edges {
                if open[u] && open[v] {
                    uf.union(u, v);
                }
            }
        }
    }
    let root = uf.find(b.origin);
    let far = (0..b.ids.len())
        .filter(|&v| uf.find(v) == root)
        .map(|v| b.dist[v])
        .max()
        .unwrap_or(0);
    (if origin_open { far } else { 0 }, far)
}

fn proportion(hits: u64, trials: u64) -> (f64, f64) {
    let p = hits as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

/// Monte-Carlo probability that the open cluster of `x` meets `S_N(x)`, for
/// each configured radius.
///
/// Trial `t` draws from its own substream in a fixed order (edges or
/// vertices of `B_R(x)` by id), so every radius and every `p` sees the same
/// uniforms and the estimates are monotone per seed.
pub fn percolation_run(
    w: &GraphWindow,
    x: VertexId,
    cfg: &PercolationConfig,
) -> Result<PercolationTable, ApplicationError> {
    cfg.validate()?;
    let radius = *cfg.reach_radii.iter().max().unwrap();
    w.require_exact_ball(x, radius)?;
    let b = ball(w, x, radius);
    let len = radius as usize + 1;
    let hist = (0..cfg.trials)
        .into_par_iter()
        .fold(
            || (vec![0u64; len], vec![0u64; len]),
            |(mut plain, mut cond), t| {
                let (a, c) = trial(&b, cfg.mode, cfg.p, cfg.rng_seed, t);
                plain[a as usize] += 1;
                cond[c as usize] += 1;
                (plain, cond)
            },
        )
        .reduce(
            || (vec![0u64; len], vec![0u64; len]),
            |(mut a, mut b), (c, d)| {
                for i in 0..len {
                    a[i] += c[i];
                    b[i] += d[i];
                }
                (a, b)
            },
        );
    let at_least = |h: &[u64], n: u32| h[n as usize..].iter().sum::<u64>();
    let rows = cfg
        .reach_radii
        .iter()
        .map(|&n| {
            let reached = at_least(&hist.0, n);
            let (estimate, stderr) = proportion(reached, cfg.trials);
            PercolationRow {
                n,
                reached,
                estimate,
                stderr,
                conditioned: (cfg.mode == PercolationMode::Site)
                    .then(|| proportion(at_least(&hist.1, n), cfg.trials)),
            }
        })
        .collect();
    Ok(PercolationTable {
        mode: cfg.mode,
        p: cfg.p,
        trials: cfg.trials,
        seed: cfg.rng_seed,
        rows,
    })
}

/// One row of the path-count envelope `min(1, p^N |Σ_N(x)|)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeRow {
    pub n: u32,
    pub estimate: f64,
    pub stderr: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares each estimate (the conditioned one in site mode) with
/// `min(1, p^N |Σ_N(x)|) + 3·stderr`. Radii without a path count are skipped.
pub fn percolation_envelope(table: &PercolationTable, paths: &[CountResult]) -> Vec<EnvelopeRow> {
    table
        .rows
        .iter()
        .filter_map(|row| {
            let c = paths.iter().find(|c| c.n == row.n)?;
            let (estimate, stderr) = row.conditioned.unwrap_or((row.estimate, row.stderr));
            let ln = row.n as f64 * table.p.ln() + ln_biguint(&c.count);
            let bound = if table.p == 0.0 { 0.0 } else { ln.exp().min(1.0) };
            Some(EnvelopeRow {
                n: row.n,
                estimate,
                stderr,
                bound,
                holds: estimate <= bound + 3.0 * stderr,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::count_simple_paths;
    use crate::graph::builders::{grid_window, half_line};

    fn cfg(mode: PercolationMode, p: f64, trials: u64, radii: Vec<u32>) -> PercolationConfig {
        PercolationConfig {
            mode,
            p,
            trials,
            reach_radii: radii,
            rng_seed: 11,
        }
    }

    #[test]
    fn p_zero_never_reaches() {
        let w = grid_window(4);
        let x = w.origin().unwrap();
        let t = percolation_run(&w, x, &cfg(PercolationMode::Bond, 0.0, 200, vec![1, 2])).unwrap();
        assert!(t.rows.iter().all(|r| r.reached == 0));
        let t = percolation_run(&w, x, &cfg(PercolationMode::Site, 0.0, 200, vec![1])).unwrap();
        assert_eq!(t.rows[0].conditioned, Some((0.0, 0.0)));
    }

    #[test]
    fn half_line_closed_form() {
        let w = half_line(12);
        let radii: Vec<u32> = (1..=10).collect();
        let t = percolation_run(&w, 0, &cfg(PercolationMode::Bond, 0.5, 20_000, radii)).unwrap();
        for r in &t.rows {
            let exact = 0.5f64.powi(r.n as i32);
            let se = (exact * (1.0 - exact) / 20_000.0).sqrt();
            assert!((r.estimate - exact).abs() <= 3.0 * se + 1e-12, "{r:?}");
        }
    }

    #[test]
    fn monotone_in_radius_and_p() {
        let w = grid_window(5);
        let x = w.origin().unwrap();
        let radii = vec![1, 2, 3, 4];
        let lo = percolation_run(&w, x, &cfg(PercolationMode::Bond, 0.3, 500, radii.clone())).unwrap();
        let hi = percolation_run(&w, x, &cfg(PercolationMode::Bond, 0.6, 500, radii)).unwrap();
        for t in [&lo, &hi] {
            assert!(t.rows.windows(2).all(|p| p[1].reached <= p[0].reached));
        }
        for (a, b) in lo.rows.iter().zip(&hi.rows) {
            assert!(a.reached <= b.reached);
        }
    }

    #[test]
    fn truncated_radius_is_an_error() {
        let w = grid_window(3);
        let x = w.origin().unwrap();
        assert!(percolation_run(&w, x, &cfg(PercolationMode::Bond, 0.5, 10, vec![4])).is_err());
        assert!(percolation_run(&w, x, &cfg(PercolationMode::Bond, 1.5, 10, vec![1])).is_err());
    }

    #[test]
    fn site_envelope_on_grid() {
        let w = grid_window(5);
        let x = w.origin().unwrap();
        let t = percolation_run(&w, x, &cfg(PercolationMode::Site, 0.2, 4000, vec![1, 2, 3])).unwrap();
        let paths: Vec<_> = (1..=3).map(|n| count_simple_paths(&w, x, n, None).unwrap()).collect();
        let env = percolation_envelope(&t, &paths);
        assert_eq!(env.len(), 3);
        assert!(env.iter().all(|e| e.holds));
        let row = &t.rows[0];
        assert!(row.estimate <= row.conditioned.unwrap().0);
    }
}
