use serde::Serialize;

use crate::graph::{GraphError, GraphWindow, VertexId, UNREACHABLE};
use crate::repulsion::{Family, PhiFunction};

/// One ball scan: `max_{y ∈ B_N(x)} n(y) ≤ φ^{-1}(bound)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QpnCheck {
    pub n: u32,
    pub max_degree: u32,
    pub phi_inverse: u64,
    pub holds: bool,
}

/// Radii on which the degrees seen from `x` are controlled by `φ^{-1}`.
///
/// Minus family: `ns` holds `N_1 < N_2 < …`, each checked against
/// `φ^{-1}(2N + 1)`. Plus family: `n_x` is the threshold and `checks` covers
/// every radius from `n_x` to the end of the exact part of the window,
/// against `φ^{-1}(2N)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QpnResult {
    pub family: Family,
    pub x: VertexId,
    pub n_star: u32,
    pub ns: Vec<u32>,
    pub n_x: Option<u32>,
    /// Minus: `x_1, x_2, …`. Plus: `x̃`, then `x_1` when case (ii) found one.
    pub pivots: Vec<VertexId>,
    /// The pivot search ran out of vertices inside the exact ball.
    pub exhausted: bool,
    pub checks: Vec<QpnCheck>,
}

impl QpnResult {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

struct Scan<'a> {
    w: &'a GraphWindow,
    dist: Vec<u32>,
    /// Largest distance at which the window is known to be complete.
    limit: u32,
    /// `prefix[r] = max degree over B_r(x)`.
    prefix: Vec<u32>,
}

impl<'a> Scan<'a> {
    fn new(w: &'a GraphWindow, x: VertexId) -> Self {
        let dist = w.distances_from(x);
        let ecc = dist.iter().filter(|&&d| d != UNREACHABLE).max().copied().unwrap_or(0);
        let limit = w.exact_radius(x).unwrap_or(u32::MAX);
        let mut prefix = vec![0; ecc as usize + 1];
        for (v, &d) in dist.iter().enumerate() {
            if d != UNREACHABLE {
                let p = &mut prefix[d as usize];
                *p = (*p).max(w.ambient_degree(v as VertexId));
            }
        }
        for r in 1..prefix.len() {
            prefix[r] = prefix[r].max(prefix[r - 1]);
        }
        Self {
            w,
            dist,
            limit,
            prefix,
        }
    }

    fn ball_max(&self, r: u32) -> u32 {
        self.prefix[(r as usize).min(self.prefix.len() - 1)]
    }

    fn eccentricity(&self) -> u32 {
        self.prefix.len() as u32 - 1
    }

    /// Closest vertex with degree above `above`; ties go to the larger degree,
    /// then the lower id.
    fn closest_above(&self, above: u32) -> Option<VertexId> {
        self.dist
            .iter()
            .enumerate()
            .filter(|&(v, &d)| {
                d != UNREACHABLE && d <= self.limit && self.w.ambient_degree(v as VertexId) > above
            })
            .min_by_key(|&(v, &d)| (d, std::cmp::Reverse(self.w.ambient_degree(v as VertexId)), v))
            .map(|(v, _)| v as VertexId)
    }

    fn rho(&self, v: VertexId) -> u32 {
        self.dist[v as usize]
    }

    fn check(&self, phi: &PhiFunction, n: u32, arg: f64) -> QpnCheck {
        let max_degree = self.ball_max(n);
        let phi_inverse = phi.inverse(arg);
        QpnCheck {
            n,
            max_degree,
            phi_inverse,
            holds: max_degree as u64 <= phi_inverse,
        }
    }
}

/// Builds the radii `N_k` (minus) or the threshold `N_x` (plus) from `x`.
///
/// Pivots are searched only inside the part of the window where balls are
/// exact, so on a cut-out window the minus sequence stops early with
/// `exhausted` set.
pub fn qpn_sequence(
    w: &GraphWindow,
    x: VertexId,
    phi: &PhiFunction,
    n_star: u32,
    family: Family,
) -> Result<QpnResult, GraphError> {
    w.check_vertex(x)?;
    let scan = Scan::new(w, x);
    let mut out = QpnResult {
        family,
        x,
        n_star,
        ns: Vec::new(),
        n_x: None,
        pivots: Vec::new(),
        exhausted: false,
        checks: Vec::new(),
    };
    match family {
        Family::Minus => {
            let Some(first) = scan.closest_above(w.ambient_degree(x).max(n_star)) else {
                out.exhausted = true;
                return Ok(out);
            };
            out.pivots.push(first);
            let mut current = first;
            loop {
                let Some(next) = scan.closest_above(w.ambient_degree(current)) else {
                    out.exhausted = true;
                    break;
                };
                out.pivots.push(next);
                let n = scan.rho(next) - 1;
                if n > 0 && out.ns.last().map_or(true, |&last| n > last) {
                    out.ns.push(n);
                    out.checks.push(scan.check(phi, n, 2.0 * n as f64 + 1.0));
                }
                current = next;
            }
        }
        Family::Plus => {
            let tilde = scan.closest_above(n_star);
            let case_one = match tilde {
                None => true,
                Some(t) => scan.rho(t) as f64 > phi.at(w.ambient_degree(t) as u64) / 2.0,
            };
            let n_x = if case_one {
                tilde.into_iter().for_each(|t| out.pivots.push(t));
                smallest_above(phi.at(n_star as u64) / 2.0)
            } else {
                let t = tilde.unwrap();
                out.pivots.push(t);
                match scan.closest_above(w.ambient_degree(t)) {
                    Some(x1) => {
                        out.pivots.push(x1);
                        scan.rho(x1)
                    }
                    None => {
                        out.exhausted = true;
                        let half = phi.at(w.ambient_degree(t) as u64) / 2.0;
                        scan.rho(t).max(smallest_at_least(half))
                    }
                }
            };
            out.n_x = Some(n_x);
            // past the eccentricity of a complete window the ball stops changing
            let last = if scan.limit == u32::MAX {
                scan.eccentricity().max(n_x)
            } else {
                scan.limit
            };
            for n in n_x..=last {
                out.checks.push(scan.check(phi, n, 2.0 * n as f64));
            }
        }
    }
    Ok(out)
}

/// Smallest `N ≥ 1` with `N > y`.
fn smallest_above(y: f64) -> u32 {
    if y < 1.0 {
        1
    } else {
        (y.floor() + 1.0).min(u32::MAX as f64) as u32
    }
}

/// Smallest `N ≥ 1` with `N ≥ y`.
fn smallest_at_least(y: f64) -> u32 {
    if y <= 1.0 {
        1
    } else {
        y.ceil().min(u32::MAX as f64) as u32
    }
}
