use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::phi::{meets, PhiFunction};
use crate::graph::{GraphWindow, VertexId, UNREACHABLE};

/// Which degree of a pair the repulsion radius is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `φ(min{n(x), n(y)})`
    Minus,
    /// `φ(max{n(x), n(y)})`
    Plus,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Minus => "minus",
            Family::Plus => "plus",
        }
    }

    /// Degree that selects the required separation for a pair.
    pub fn pair_degree(self, a: u32, b: u32) -> u32 {
        match self {
            Family::Minus => a.min(b),
            Family::Plus => a.max(b),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minus" => Ok(Family::Minus),
            "plus" => Ok(Family::Plus),
            other => Err(format!("unknown family {other:?} (expected minus or plus)")),
        }
    }
}

/// A pair of high-degree vertices closer than the profile allows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: VertexId,
    pub y: VertexId,
    pub distance: u32,
    pub required: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RepulsionReport {
    pub family: Family,
    pub n_star: u32,
    pub witnesses: Vec<Violation>,
}

impl RepulsionReport {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Vertices with ambient degree above `n_star`, ascending.
pub fn high_degree_vertices(w: &GraphWindow, n_star: u32) -> Vec<VertexId> {
    w.vertices().filter(|&v| w.ambient_degree(v) > n_star).collect()
}

/// Checks `ρ(x, y) ≥ φ(m±(x, y))` for every pair with both ambient degrees
/// above `n_star`. Pairs in different components are unconstrained.
pub fn check_repulsion(
    w: &GraphWindow,
    phi: &PhiFunction,
    n_star: u32,
    family: Family,
) -> RepulsionReport {
    let high = high_degree_vertices(w, n_star);
    let mut witnesses = Vec::new();
    if high.len() >= 2 {
        let top = high.iter().map(|&v| w.ambient_degree(v)).max().unwrap();
        let reach = phi.at(top as u64).ceil();
        let radius = if reach.is_finite() && reach < u32::MAX as f64 {
            reach as u32
        } else {
            u32::MAX - 1
        };
        for (i, &x) in high.iter().enumerate() {
            let dist = w.distances_within(x, radius);
            for &y in &high[i + 1..] {
                let d = dist[y as usize];
                if d == UNREACHABLE {
                    continue;
                }
                let m = family.pair_degree(w.ambient_degree(x), w.ambient_degree(y));
                let required = phi.at(m as u64);
                if !meets(d, required) {
                    witnesses.push(Violation {
                        x,
                        y,
                        distance: d,
                        required,
                    });
                }
            }
        }
    }
    RepulsionReport {
        family,
        n_star,
        witnesses,
    }
}

/// Partition into low-degree `V*` and high-degree `V*^c`, with the kernel
/// `K(x) = {y : ρ(y, x) < φ(n(x))}` of each high-degree vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub v_star: Vec<VertexId>,
    pub v_star_c: Vec<VertexId>,
    pub kernels: BTreeMap<VertexId, Vec<VertexId>>,
}

pub fn classify_vertices(w: &GraphWindow, phi: &PhiFunction, n_star: u32) -> Classification {
    let (v_star_c, v_star): (Vec<VertexId>, Vec<VertexId>) =
        w.vertices().partition(|&v| w.ambient_degree(v) > n_star);
    let kernels = v_star_c
        .iter()
        .map(|&x| {
            let radius = phi.at(w.ambient_degree(x) as u64);
            let bound = if radius.is_finite() {
                radius.ceil().min((u32::MAX - 1) as f64) as u32
            } else {
                u32::MAX - 1
            };
            let dist = w.distances_within(x, bound);
            let kernel = dist
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d != UNREACHABLE && !meets(d, radius))
                .map(|(y, _)| y as VertexId)
                .collect();
            (x, kernel)
        })
        .collect();
    Classification {
        v_star,
        v_star_c,
        kernels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::{grid_window, star};
    use crate::graph::GraphBuilder;
    use crate::repulsion::PhiSpec;

    fn table(values: &[f64]) -> PhiFunction {
        PhiFunction::new(PhiSpec::Table {
            values: values.to_vec(),
        })
        .unwrap()
    }

    fn affine(slope: f64) -> PhiFunction {
        PhiFunction::new(PhiSpec::Affine {
            slope,
            intercept: 0.0,
        })
        .unwrap()
    }

    /// Two stars of degree 5 whose centres are joined through one middle vertex.
    fn twin_hubs() -> GraphWindow {
        let mut b = GraphBuilder::new(11);
        b.add_edge(0, 10);
        b.add_edge(10, 1);
        for leaf in 2..6 {
            b.add_edge(0, leaf);
        }
        for leaf in 6..10 {
            b.add_edge(1, leaf);
        }
        b.build().unwrap()
    }

    #[test]
    fn bounded_degree_passes_vacuously() {
        let w = grid_window(3);
        let report = check_repulsion(&w, &affine(100.0), 4, Family::Plus);
        assert!(report.passed());
    }

    #[test]
    fn close_hubs_fail_with_one_witness() {
        let w = twin_hubs();
        // φ(5) = 10
        let phi = affine(2.0);
        for family in [Family::Minus, Family::Plus] {
            let report = check_repulsion(&w, &phi, 4, family);
            assert_eq!(
                report.witnesses,
                vec![Violation {
                    x: 0,
                    y: 1,
                    distance: 2,
                    required: 10.0
                }]
            );
        }
        // raising n* above the hub degree lifts the constraint
        assert!(check_repulsion(&w, &phi, 5, Family::Minus).passed());
    }

    #[test]
    fn classification_kernel_uses_strict_radius() {
        // single hub of degree 6; φ(6) = 4 so K(hub) = B_3(hub)
        let mut b = GraphBuilder::new(1 + 6 * 5);
        let mut next = 1;
        for _ in 0..6 {
            let mut prev = 0;
            for _ in 0..5 {
                b.add_edge(prev, next);
                prev = next;
                next += 1;
            }
        }
        let w = b.build().unwrap();
        let phi = table(&[0.5, 0.6, 0.7, 1.0, 2.0, 4.0]);
        let c = classify_vertices(&w, &phi, 2);
        assert_eq!(c.v_star_c, vec![0]);
        assert_eq!(c.v_star.len(), 30);
        let dist = w.distances_from(0);
        let ball3: Vec<VertexId> = w.vertices().filter(|&v| dist[v as usize] <= 3).collect();
        assert_eq!(c.kernels[&0], ball3);
    }

    #[test]
    fn bounded_window_has_no_kernels() {
        let w = star(3);
        let c = classify_vertices(&w, &affine(1.0), 3);
        assert!(c.v_star_c.is_empty());
        assert!(c.kernels.is_empty());
    }
}
