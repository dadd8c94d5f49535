use serde::Serialize;

use super::ApplicationError;
use crate::graph::{GraphWindow, VertexId, UNREACHABLE};

/// Sphere and ball sizes at one radius against `q^N` and `B_x q^N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallGrowthRow {
    pub n: u32,
    pub sphere: usize,
    pub ball: usize,
    pub q_power: f64,
    /// `|S_N(x)| ≤ q^N`
    pub sphere_holds: bool,
    /// `B_x = |B_{N_0}(x)| / q^{N_0}` at the first checked radius.
    pub b_x: f64,
    /// `|B_N(x)| ≤ B_x q^N`
    pub ball_holds: bool,
}

/// Checks sphere and ball growth against `q^N` for every radius in `ns`
/// (ascending after sorting).
pub fn ball_growth_check(
    w: &GraphWindow,
    x: VertexId,
    q: f64,
    ns: &[u32],
) -> Result<Vec<BallGrowthRow>, ApplicationError> {
    if !(q.is_finite() && q > 0.0) || ns.is_empty() {
        return Err(ApplicationError::InvalidConfig(
            "need q > 0 and at least one radius".into(),
        ));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let top = *ns.last().unwrap();
    w.require_exact_ball(x, top)?;
    let dist = w.distances_within(x, top);
    let mut layer = vec![0usize; top as usize + 1];
    for &d in &dist {
        if d != UNREACHABLE {
            layer[d as usize] += 1;
        }
    }
    let ball_size = |n: u32| layer[..=n as usize].iter().sum::<usize>();
    let b_x = ball_size(ns[0]) as f64 / q.powi(ns[0] as i32);
    Ok(ns
        .iter()
        .map(|&n| {
            let q_power = q.powi(n as i32);
            let (sphere, ball) = (layer[n as usize], ball_size(n));
            BallGrowthRow {
                n,
                sphere,
                ball,
                q_power,
                sphere_holds: sphere as f64 <= q_power,
                b_x,
                ball_holds: ball as f64 <= b_x * q_power * (1.0 + 1e-12),
            }
        })
        .collect())
}
