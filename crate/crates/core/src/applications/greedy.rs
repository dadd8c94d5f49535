use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{substream, uniform};
use super::ApplicationError;
use crate::enumeration::{fold_animals, EnumerationCaps};
use crate::graph::{GraphWindow, VertexId, UNREACHABLE};
use crate::temperedness::{pick_max, GammaSeries};

/// Law of the unscaled weight `Z_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "lowercase", deny_unknown_fields)]
pub enum Law {
    Constant { c: f64 },
    Exponential { rate: f64 },
    /// Uniform on `[0, b]`.
    Uniform { b: f64 },
}

impl Law {
    pub fn mean(&self) -> f64 {
        match *self {
            Law::Constant { c } => c,
            Law::Exponential { rate } => 1.0 / rate,
            Law::Uniform { b } => b / 2.0,
        }
    }

    fn sample(&self, u: f64) -> f64 {
        match *self {
            Law::Constant { c } => c,
            Law::Exponential { rate } => -(1.0 - u).ln() / rate,
            Law::Uniform { b } => u * b,
        }
    }
}

/// Vertex weights `Y_x = s(n(x)) Z_x` with `s(n) = n log n` when scaling is
/// on and `s = 1` otherwise; `c` is the constant in `v_x ≤ C n(x) log n(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightModel {
    pub law: Law,
    pub c: f64,
    pub scaling: bool,
}

fn n_log_n(n: u32) -> f64 {
    if n <= 1 {
        0.0
    } else {
        n as f64 * (n as f64).ln()
    }
}

impl WeightModel {
    /// Rejects bad parameters and, with scaling on, a law mean above `c`.
    pub fn new(law: Law, c: f64, scaling: bool) -> Result<Self, ApplicationError> {
        let bad = |m: &str| Err(ApplicationError::InvalidConfig(m.into()));
        let ok = match law {
            Law::Constant { c } => c.is_finite() && c >= 0.0,
            Law::Exponential { rate } => rate.is_finite() && rate > 0.0,
            Law::Uniform { b } => b.is_finite() && b >= 0.0,
        };
        if !ok {
            return bad("weight law parameters out of range");
        }
        if !(c.is_finite() && c > 0.0) {
            return bad("C must be positive");
        }
        let model = Self { law, c, scaling };
        if scaling && law.mean() > c {
            return Err(ApplicationError::MeanBound {
                vertex: None,
                mean: law.mean(),
                bound: c,
            });
        }
        Ok(model)
    }

    fn scale(&self, n: u32) -> f64 {
        if self.scaling {
            n_log_n(n)
        } else {
            1.0
        }
    }

    /// `v_x` for a vertex of degree `n`.
    pub fn mean_at(&self, n: u32) -> f64 {
        self.law.mean() * self.scale(n)
    }

    /// Checks `v_x ≤ C n(x) log n(x)` at every listed vertex.
    pub fn check_means(&self, w: &GraphWindow, vs: &[VertexId]) -> Result<(), ApplicationError> {
        for &v in vs {
            let n = w.ambient_degree(v);
            let (mean, bound) = (self.mean_at(n), self.c * n_log_n(n));
            if mean > bound * (1.0 + 1e-12) {
                return Err(ApplicationError::MeanBound {
                    vertex: Some(v),
                    mean,
                    bound,
                });
            }
        }
        Ok(())
    }
}

/// The Chernoff parameter for the vertices listed.
///
/// Exponential law: the largest `t` with `w_x(t)/t ≤ 2 v_x` everywhere, i.e.
/// `t s(n) / rate ≤ u*` where `-log(1 - u*) = 2 u*`. The other laws satisfy
/// that inequality for every `t`, so `t = 1 / max v_x` is used.
pub fn chernoff_t(model: &WeightModel, w: &GraphWindow, vs: &[VertexId]) -> f64 {
    let s = vs
        .iter()
        .map(|&v| model.scale(w.ambient_degree(v)))
        .fold(0.0, f64::max);
    if s == 0.0 {
        return 1.0;
    }
    match model.law {
        Law::Exponential { rate } => {
            let (mut lo, mut hi) = (0.5f64, 0.99f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if -(1.0 - mid).ln() <= 2.0 * mid {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo * rate / s
        }
        law if law.mean() > 0.0 => 1.0 / (law.mean() * s),
        _ => 1.0,
    }
}

/// Weights for `B_radius(x)` drawn from substream `trial`, one uniform per
/// ball vertex in id order; zero outside the ball.
pub fn sample_weights(
    w: &GraphWindow,
    x: VertexId,
    radius: u32,
    model: &WeightModel,
    seed: u64,
    trial: u64,
) -> Vec<f64> {
    let dist = w.distances_within(x, radius);
    let mut rng = substream(seed, trial);
    dist.iter()
        .enumerate()
        .map(|(v, &d)| {
            if d == UNREACHABLE {
                0.0
            } else {
                let u = uniform(&mut rng);
                model.law.sample(u) * model.scale(w.ambient_degree(v as VertexId))
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyScore {
    pub n: u32,
    pub value: f64,
    /// Sorted members of a maximizing animal.
    pub witness: Vec<VertexId>,
    /// `false` for the heuristic, whose value is only a lower bound.
    pub exact: bool,
    pub method: &'static str,
}

/// `S_N(x) = max_{A ∈ A_N(x)} Σ_{y ∈ A} Y_y`.
///
/// Exact mode uses a tree knapsack when `B_{N-1}(x)` induces a tree and
/// animal enumeration (subject to `caps`) otherwise. Heuristic mode grows
/// greedily from each first step and keeps the best, a lower bound.
pub fn greedy_score(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    weights: &[f64],
    exact: bool,
    caps: &EnumerationCaps,
) -> Result<GreedyScore, ApplicationError> {
    if n == 0 {
        return Err(ApplicationError::InvalidConfig("N must be positive".into()));
    }
    w.require_exact_ball(x, n - 1)?;
    if weights.len() != w.vertex_count() {
        return Err(ApplicationError::InvalidConfig(format!(
            "{} weights for {} vertices",
            weights.len(),
            w.vertex_count()
        )));
    }
    let (value, witness, method) = if !exact {
        let (v, a) = heuristic(w, x, n, weights);
        (v, a, "greedy-restarts")
    } else if let Some(tree) = BallTree::new(w, x, n - 1) {
        let (v, a) = tree.best(n as usize, weights);
        (v, a, "tree-knapsack")
    } else {
        caps.check_animals(n)?;
        let (v, a) = fold_animals(
            w,
            x,
            n,
            || (f64::NEG_INFINITY, Vec::new()),
            |acc: &mut (f64, Vec<VertexId>), a| {
                let mut vs = a.to_vec();
                vs.sort_unstable();
                let total = vs.iter().map(|&v| weights[v as usize]).sum::<f64>();
                *acc = pick_max(std::mem::take(acc), (total, vs));
            },
            pick_max,
        )?;
        (v, a, "enumeration")
    };
    Ok(GreedyScore {
        n,
        value,
        witness,
        exact,
        method,
    })
}

fn heuristic(w: &GraphWindow, x: VertexId, n: u32, weights: &[f64]) -> (f64, Vec<VertexId>) {
    let grow = |first: Option<VertexId>| {
        let mut members = vec![x];
        if let Some(f) = first {
            members.push(f);
        }
        while members.len() < n as usize {
            let next = members
                .iter()
                .flat_map(|&u| w.neighbors(u).iter().copied())
                .filter(|v| !members.contains(v))
                .max_by(|&a, &b| {
                    weights[a as usize]
                        .total_cmp(&weights[b as usize])
                        .then(b.cmp(&a))
                });
            match next {
                Some(v) => members.push(v),
                None => break,
            }
        }
        members.sort_unstable();
        let total = members.iter().map(|&v| weights[v as usize]).sum::<f64>();
        (total, members)
    };
    if n == 1 {
        return grow(None);
    }
    w.neighbors(x)
        .iter()
        .map(|&f| grow(Some(f)))
        .filter(|(_, m)| m.len() == n as usize)
        .fold((f64::NEG_INFINITY, Vec::new()), pick_max)
}

/// `B_r(x)` as a tree rooted at `x`, when the induced subgraph is one.
struct BallTree {
    /// Ball vertices in BFS order; `order[0] = x`.
    order: Vec<VertexId>,
    /// Children of each position in `order`, as positions.
    children: Vec<Vec<usize>>,
}

impl BallTree {
    fn new(w: &GraphWindow, x: VertexId, radius: u32) -> Option<Self> {
        let dist = w.distances_within(x, radius);
        let mut pos = vec![usize::MAX; w.vertex_count()];
        let mut order = vec![x];
        pos[x as usize] = 0;
        let mut children = vec![Vec::new()];
        let mut edges = 0usize;
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            for &v in w.neighbors(u) {
                if dist[v as usize] == UNREACHABLE {
                    continue;
                }
                if u < v {
                    edges += 1;
                }
                if pos[v as usize] == usize::MAX {
                    pos[v as usize] = order.len();
                    order.push(v);
                    children.push(Vec::new());
                    children[head].push(pos[v as usize]);
                }
            }
            head += 1;
        }
        (edges + 1 == order.len()).then_some(Self { order, children })
    }

    /// Best rooted subtree of exactly `n` vertices.
    fn best(&self, n: usize, weights: &[f64]) -> (f64, Vec<VertexId>) {
        let m = self.order.len();
        // dp[p][k]: best weight of a connected set of k vertices rooted at p
        // inside the subtree of p; choice[p][i][k]: size taken from child i
        let mut dp: Vec<Vec<f64>> = vec![Vec::new(); m];
        let mut choice: Vec<Vec<Vec<u32>>> = vec![Vec::new(); m];
        for p in (0..m).rev() {
            let mut cur = vec![f64::NEG_INFINITY, weights[self.order[p] as usize]];
            for &c in &self.children[p] {
                let child = std::mem::take(&mut dp[c]);
                let len = (cur.len() + child.len() - 1).min(n + 1);
                let mut next = vec![f64::NEG_INFINITY; len];
                let mut pick = vec![0u32; len];
                next[..cur.len().min(len)].copy_from_slice(&cur[..cur.len().min(len)]);
                for (k, &base) in cur.iter().enumerate().skip(1) {
                    for (j, &add) in child.iter().enumerate().skip(1) {
                        if k + j >= len {
                            break;
                        }
                        let v = base + add;
                        if v > next[k + j] {
                            next[k + j] = v;
                            pick[k + j] = j as u32;
                        }
                    }
                }
                cur = next;
                choice[p].push(pick);
            }
            dp[p] = cur;
        }
        let value = dp[0].get(n).copied().unwrap_or(f64::NEG_INFINITY);
        let mut members = Vec::with_capacity(n);
        if value.is_finite() {
            let mut stack = vec![(0usize, n)];
            while let Some((p, mut k)) = stack.pop() {
                members.push(self.order[p]);
                for (i, &c) in self.children[p].iter().enumerate().rev() {
                    let j = choice[p][i].get(k).copied().unwrap_or(0) as usize;
                    if j > 0 {
                        stack.push((c, j));
                        k -= j;
                    }
                }
            }
        }
        members.sort_unstable();
        (value, members)
    }
}

/// One radius of the growth experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GreedyRow {
    pub n: u32,
    pub mean_ratio: f64,
    pub max_ratio: f64,
    /// Replications with `S_N / N ≥ Y`.
    pub exceedances: u64,
    pub frequency: f64,
    /// `exp(-t N (Y - γ C))`
    pub envelope: f64,
    /// `frequency ≤ 10 · envelope`
    pub within_slack: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthExperiment {
    pub y: f64,
    pub gamma: f64,
    pub c: f64,
    pub t: f64,
    pub replications: u64,
    pub seed: u64,
    pub rows: Vec<GreedyRow>,
}

/// Distribution of `S_{N_k}(x)/N_k` over independent weight draws, with the
/// exceedance frequency of level `y` against the Chernoff envelope.
///
/// All radii of one replication share its weights. Refused when `γ` is not
/// certified or `y ≤ γ C`.
#[allow(clippy::too_many_arguments)]
pub fn greedy_growth_experiment(
    w: &GraphWindow,
    x: VertexId,
    ns: &[u32],
    model: &WeightModel,
    replications: u64,
    y: f64,
    gamma: &GammaSeries,
    seed: u64,
    caps: &EnumerationCaps,
) -> Result<GrowthExperiment, ApplicationError> {
    if !gamma.converged || !gamma.gamma.is_finite() {
        return Err(ApplicationError::Refused(
            "gamma is not certified finite for this weight; the envelope would be vacuous".into(),
        ));
    }
    let g = gamma.gamma;
    if !(y > g * model.c) {
        return Err(ApplicationError::Refused(format!(
            "level {y} does not exceed gamma * C = {}",
            g * model.c
        )));
    }
    if ns.is_empty() || ns.contains(&0) || replications == 0 {
        return Err(ApplicationError::InvalidConfig(
            "need positive radii and at least one replication".into(),
        ));
    }
    let radius = ns.iter().max().unwrap() - 1;
    w.require_exact_ball(x, radius)?;
    let dist = w.distances_within(x, radius);
    let ball: Vec<VertexId> = w.vertices().filter(|&v| dist[v as usize] != UNREACHABLE).collect();
    model.check_means(w, &ball)?;
    let t = chernoff_t(model, w, &ball);
    let ratios: Vec<Vec<f64>> = (0..replications)
        .into_par_iter()
        .map(|r| {
            let weights = sample_weights(w, x, radius, model, seed, r);
            ns.iter()
                .map(|&n| greedy_score(w, x, n, &weights, true, caps).map(|s| s.value / n as f64))
                .collect::<Result<Vec<f64>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let rows = ns
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let col = ratios.iter().map(|r| r[i]);
            let exceedances = col.clone().filter(|&s| s >= y).count() as u64;
            let frequency = exceedances as f64 / replications as f64;
            let envelope = (-t * n as f64 * (y - g * model.c)).exp();
            GreedyRow {
                n,
                mean_ratio: col.clone().sum::<f64>() / replications as f64,
                max_ratio: col.fold(f64::NEG_INFINITY, f64::max),
                exceedances,
                frequency,
                envelope,
                within_slack: frequency <= 10.0 * envelope,
            }
        })
        .collect();
    Ok(GrowthExperiment {
        y,
        gamma: g,
        c: model.c,
        t,
        replications,
        seed,
        rows,
    })
}
