use serde::{Deserialize, Serialize};

use crate::enumeration::{fold_animals, EnumerationCaps, EnumerationError};
use crate::graph::{Animal, GraphWindow, VertexId};
use crate::repulsion::PhiFunction;
use crate::temperedness::{gamma_series, pick_max, SequenceRule, TemperedSequence, WeightFunction};

/// Which degree enters `[n(x) n(y)]^θ`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeMode {
    /// Degree in the ambient graph.
    #[default]
    Ambient,
    /// Degree inside the animal itself, for a molecule given as the whole graph.
    Intrinsic,
}

/// `R^θ(A) = Σ_{⟨x,y⟩ ∈ E(A)} [n(x) n(y)]^θ`.
pub fn randic_index(a: &Animal<'_>, theta: f64, mode: DegreeMode) -> f64 {
    index_of_set(a.window(), a.vertices(), theta, mode)
}

/// Same sum for a sorted vertex list.
fn index_of_set(w: &GraphWindow, vs: &[VertexId], theta: f64, mode: DegreeMode) -> f64 {
    let inner = |v: VertexId| vs.iter().filter(|&&u| w.has_edge(u, v)).count() as f64;
    let degree = |v: VertexId| match mode {
        DegreeMode::Ambient => w.ambient_degree(v) as f64,
        DegreeMode::Intrinsic => inner(v),
    };
    let mut sum = 0.0;
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if w.has_edge(u, v) {
                sum += (degree(u) * degree(v)).powf(theta);
            }
        }
    }
    sum
}

/// `R^θ_N(x)` with the lexicographically smallest maximizing animal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandicMax {
    pub n: u32,
    pub theta: f64,
    pub value: f64,
    pub witness: Vec<VertexId>,
}

/// Exact maximum of `R^θ` over `A_N(x)` by enumeration.
pub fn randic_max(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    theta: f64,
    mode: DegreeMode,
    caps: &EnumerationCaps,
) -> Result<RandicMax, EnumerationError> {
    caps.check_animals(n)?;
    let (value, witness) = fold_animals(
        w,
        x,
        n,
        || (f64::NEG_INFINITY, Vec::new()),
        |acc: &mut (f64, Vec<VertexId>), a| {
            let mut vs = a.to_vec();
            vs.sort_unstable();
            let value = index_of_set(w, &vs, theta, mode);
            let candidate = (value, vs);
            *acc = pick_max(std::mem::take(acc), candidate);
        },
        pick_max,
    )?;
    Ok(RandicMax {
        n,
        theta,
        value,
        witness,
    })
}

/// `γ` for one candidate weight `t^A` with the geometric sequence `t_k = 2^k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandicCertificate {
    /// The exponent `A` in `g(t) = t^A`.
    pub exponent: f64,
    /// `None` when the series is divergent or uncertified.
    pub gamma: Option<f64>,
    pub detail: String,
}

impl RandicCertificate {
    /// `value ≤ e^{γ N}`; `None` without a certified `γ`.
    pub fn bounds(&self, n: u32, value: f64) -> Option<bool> {
        self.gamma.map(|g| value <= 0.0 || value.ln() <= g * n as f64 + 1e-12)
    }
}

/// Certificates for `g = t^{θ+1}` and `g = t^{2θ+1}` (one entry when they coincide).
pub fn randic_certificates(theta: f64, phi: &PhiFunction, tol: f64) -> Vec<RandicCertificate> {
    let mut thetas = vec![theta];
    if theta != 0.0 {
        thetas.push(2.0 * theta);
    }
    let ts = TemperedSequence::new(SequenceRule::Geometric { a: 1.0, b: 2.0 }, None)
        .expect("fixed rule is valid");
    thetas
        .into_iter()
        .map(|th| {
            let g = WeightFunction::Power { theta: th };
            let exponent = th + 1.0;
            match gamma_series(&g, phi, &ts, tol) {
                Ok(s) if s.converged => RandicCertificate {
                    exponent,
                    gamma: Some(s.gamma),
                    detail: format!("gamma {:.6} with tail bound {:.2e}", s.gamma, s.tail_bound),
                },
                Ok(_) => RandicCertificate {
                    exponent,
                    gamma: None,
                    detail: "series not certified".into(),
                },
                Err(e) => RandicCertificate {
                    exponent,
                    gamma: None,
                    detail: e.to_string(),
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::for_each_animal;
    use crate::graph::builders::{grid_window, star};
    use crate::graph::induced_animal;
    use crate::repulsion::PhiSpec;

    #[test]
    fn small_grid_values() {
        let w = grid_window(4);
        let x = w.origin().unwrap();
        let e = induced_animal(&w, &[x, x + 1]).unwrap();
        assert_eq!(randic_index(&e, 1.0, DegreeMode::Ambient), 16.0);
        let p = induced_animal(&w, &[x - 1, x, x + 1]).unwrap();
        assert_eq!(randic_index(&p, 1.0, DegreeMode::Ambient), 32.0);
        let caps = EnumerationCaps::default();
        assert_eq!(randic_max(&w, x, 2, 1.0, DegreeMode::Ambient, &caps).unwrap().value, 16.0);
        assert_eq!(randic_max(&w, x, 3, 1.0, DegreeMode::Ambient, &caps).unwrap().value, 32.0);
    }

    #[test]
    fn star_inverse_square_root() {
        let w = star(3);
        let a = induced_animal(&w, &[0, 1, 2, 3]).unwrap();
        let r = randic_index(&a, -0.5, DegreeMode::Ambient);
        assert!((r - 3f64.sqrt()).abs() < 1e-12);
        assert!((randic_index(&a, -0.5, DegreeMode::Intrinsic) - r).abs() < 1e-12);
    }

    #[test]
    fn theta_zero_is_densest_edge_count() {
        let w = grid_window(5);
        let x = w.origin().unwrap();
        for n in 2..=6 {
            let mut best = 0;
            for_each_animal(&w, x, n, |a| {
                let a = induced_animal(&w, a).unwrap();
                best = best.max(a.edge_count());
            })
            .unwrap();
            let r = randic_max(&w, x, n, 0.0, DegreeMode::Ambient, &EnumerationCaps::default()).unwrap();
            assert_eq!(r.value, best as f64);
        }
    }

    #[test]
    fn certificates_for_cubic_phi() {
        let phi = PhiFunction::new(PhiSpec::Power {
            scale: 1.0,
            exponent: 3.0,
            offset: 0.0,
        })
        .unwrap();
        let c = randic_certificates(1.0, &phi, 1e-9);
        assert_eq!(c.len(), 2);
        assert!((c[0].gamma.unwrap() - 8.0).abs() < 1e-8);
        // t^3 against φ = t^3 has ratio limit 1: not certified
        assert!(c[1].gamma.is_none());
        assert_eq!(c[0].bounds(3, 32.0), Some(true));
    }
}
