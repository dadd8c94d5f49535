use serde::{Deserialize, Serialize};

use super::check::{check_repulsion, Family};
use super::phi::{PhiFunction, PhiSpec};
use super::RepulsionError;
use crate::graph::{GraphBuilder, GraphWindow, VertexId};

/// A spine vertex promoted to degree `degree` by attaching pendant leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hub {
    pub position: u32,
    pub degree: u32,
}

/// Recipe for a spine-with-hubs graph that satisfies the repulsion condition
/// by construction.
///
/// Spine vertices get ids `0..spine_length` in order; leaves follow, grouped
/// by hub. The spine endpoint `0` is the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HubFamilySpec {
    pub spine_length: u32,
    pub hubs: Vec<Hub>,
    pub n_star: u32,
    pub phi: PhiSpec,
    pub family: Family,
}

impl HubFamilySpec {
    /// Four hubs of degrees 5..8 under `φ(t) = t² − 16`; usable for both families.
    pub fn default_window() -> Self {
        Self {
            spine_length: 140,
            hubs: [(10, 5), (30, 6), (70, 7), (120, 8)]
                .into_iter()
                .map(|(position, degree)| Hub { position, degree })
                .collect(),
            n_star: 2,
            phi: PhiSpec::Power {
                scale: 1.0,
                exponent: 2.0,
                offset: -16.0,
            },
            family: Family::Minus,
        }
    }

    /// Hubs of degrees 3..6 under `φ(t) = t³`, spaced for the minus family.
    pub fn cubic_window() -> Self {
        Self {
            spine_length: 260,
            hubs: [(10, 3), (40, 4), (110, 5), (240, 6)]
                .into_iter()
                .map(|(position, degree)| Hub { position, degree })
                .collect(),
            n_star: 2,
            phi: PhiSpec::Power {
                scale: 1.0,
                exponent: 3.0,
                offset: 0.0,
            },
            family: Family::Minus,
        }
    }
}

/// Builds the spine-with-hubs window and certifies it with [`check_repulsion`].
pub fn generate_hub_graph(spec: &HubFamilySpec) -> Result<GraphWindow, RepulsionError> {
    let phi = PhiFunction::new(spec.phi.clone())?;
    let invalid = |msg: String| Err(RepulsionError::InvalidHubSpec(msg));
    if spec.spine_length < 2 {
        return invalid("spine needs at least two vertices".into());
    }
    if spec.n_star < 2 {
        return invalid("n_star must be at least 2 so spine vertices are unconstrained".into());
    }
    for (k, hub) in spec.hubs.iter().enumerate() {
        if hub.position == 0 || hub.position + 1 >= spec.spine_length {
            return invalid(format!(
                "hub {k} at position {} is not an interior spine vertex",
                hub.position
            ));
        }
        if hub.degree < 3 {
            return invalid(format!("hub {k} has degree {} < 3", hub.degree));
        }
    }
    for (k, pair) in spec.hubs.windows(2).enumerate() {
        if pair[1].position <= pair[0].position {
            return invalid(format!("hub positions must increase (hubs {k} and {})", k + 1));
        }
        if spec.family == Family::Plus && pair[1].degree <= pair[0].degree {
            return invalid(format!(
                "plus family needs strictly increasing hub degrees (hubs {k} and {})",
                k + 1
            ));
        }
    }
    // consecutive spacing; the certification below covers every other pair
    for (k, pair) in spec.hubs.windows(2).enumerate() {
        let (a, b) = (pair[0], pair[1]);
        if a.degree.min(b.degree) <= spec.n_star {
            continue;
        }
        let required = phi
            .at(spec.family.pair_degree(a.degree, b.degree) as u64)
            .ceil();
        let gap = b.position - a.position;
        if (gap as f64) < required {
            return Err(RepulsionError::HubSpacing {
                first: k,
                second: k + 1,
                distance: gap,
                required,
            });
        }
    }

    let leaves: u32 = spec.hubs.iter().map(|h| h.degree - 2).sum();
    let mut b = GraphBuilder::new((spec.spine_length + leaves) as usize);
    for v in 1..spec.spine_length {
        b.add_edge(v - 1, v);
    }
    let mut next: VertexId = spec.spine_length;
    for hub in &spec.hubs {
        for _ in 0..hub.degree - 2 {
            b.add_edge(hub.position, next);
            next += 1;
        }
    }
    let w = b.origin(0).build()?;

    let report = check_repulsion(&w, &phi, spec.n_star, spec.family);
    if let Some(v) = report.witnesses.first() {
        let index = |vertex: VertexId| spec.hubs.iter().position(|h| h.position == vertex).unwrap();
        return Err(RepulsionError::HubSpacing {
            first: index(v.x),
            second: index(v.y),
            distance: v.distance,
            required: v.required,
        });
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(hubs: &[(u32, u32)], family: Family) -> HubFamilySpec {
        HubFamilySpec {
            spine_length: 100,
            hubs: hubs
                .iter()
                .map(|&(position, degree)| Hub { position, degree })
                .collect(),
            family,
            ..HubFamilySpec::default_window()
        }
    }

    #[test]
    fn empty_hub_list_is_a_path() {
        let w = generate_hub_graph(&spec(&[], Family::Plus)).unwrap();
        assert_eq!(w.vertex_count(), 100);
        assert_eq!(w.edge_count(), 99);
        assert_eq!(w.max_ambient_degree(), 2);
    }

    #[test]
    fn three_hub_example_passes_checker() {
        let s = spec(&[(10, 5), (30, 6), (70, 7)], Family::Minus);
        let w = generate_hub_graph(&s).unwrap();
        let phi = PhiFunction::new(s.phi.clone()).unwrap();
        assert!(check_repulsion(&w, &phi, 2, Family::Minus).passed());
        assert_eq!(w.ambient_degree(10), 5);
        assert_eq!(w.ambient_degree(30), 6);
        assert_eq!(w.ambient_degree(70), 7);
        assert_eq!(w.origin(), Some(0));
    }

    #[test]
    fn crowded_hubs_are_rejected() {
        let err = generate_hub_graph(&spec(&[(10, 5), (15, 6)], Family::Minus)).unwrap_err();
        assert!(matches!(
            err,
            RepulsionError::HubSpacing {
                first: 0,
                second: 1,
                distance: 5,
                ..
            }
        ));
    }

    #[test]
    fn non_consecutive_violation_is_caught_by_certification() {
        // big hub, small hub, big hub: consecutive gaps only see φ(3)
        let s = HubFamilySpec {
            phi: PhiSpec::Affine {
                slope: 4.0,
                intercept: 0.0,
            },
            ..spec(&[(10, 9), (22, 3), (34, 9)], Family::Minus)
        };
        let err = generate_hub_graph(&s).unwrap_err();
        assert!(matches!(
            err,
            RepulsionError::HubSpacing {
                first: 0,
                second: 2,
                ..
            }
        ));
    }

    #[test]
    fn default_windows_are_valid() {
        let d = generate_hub_graph(&HubFamilySpec::default_window()).unwrap();
        let phi = PhiFunction::new(HubFamilySpec::default_window().phi).unwrap();
        assert!(check_repulsion(&d, &phi, 2, Family::Plus).passed());
        generate_hub_graph(&HubFamilySpec::cubic_window()).unwrap();
    }
}
