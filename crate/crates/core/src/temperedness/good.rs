use super::sequence::TemperedSequence;
use super::weight::WeightFunction;
use super::TemperedError;
use crate::enumeration::{fold_animals, EnumerationError};
use crate::graph::{Animal, GraphWindow, VertexId};
use crate::repulsion::PhiFunction;

/// `G(A; g) = |V(A)|^{-1} Σ_{x ∈ V(A)} g(n(x))`.
pub fn g_average(a: &Animal<'_>, g: &WeightFunction) -> f64 {
    let w = a.window();
    vertex_average(w, a.vertices(), g)
}

pub(crate) fn vertex_average(w: &GraphWindow, vs: &[VertexId], g: &WeightFunction) -> f64 {
    vs.iter().map(|&v| g.at(w.ambient_degree(v))).sum::<f64>() / vs.len() as f64
}

/// `max_{A ∈ A_N(x)} G(A; g)` with a maximizing vertex set (sorted; the
/// lexicographically smallest among maximizers).
pub fn max_g_average(
    w: &GraphWindow,
    x: VertexId,
    n: u32,
    g: &WeightFunction,
) -> Result<(f64, Vec<VertexId>), EnumerationError> {
    let best = fold_animals(
        w,
        x,
        n,
        || (f64::NEG_INFINITY, Vec::new()),
        |acc: &mut (f64, Vec<VertexId>), a| {
            let value = vertex_average(w, a, g);
            if value >= acc.0 {
                let mut vs = a.to_vec();
                vs.sort_unstable();
                if value > acc.0 || vs < acc.1 {
                    *acc = (value, vs);
                }
            }
        },
        pick_max,
    )?;
    Ok(best)
}

pub(crate) fn pick_max(a: (f64, Vec<VertexId>), b: (f64, Vec<VertexId>)) -> (f64, Vec<VertexId>) {
    if b.0 > a.0 || b.0 == a.0 && !b.1.is_empty() && (a.1.is_empty() || b.1 < a.1) {
        b
    } else {
        a
    }
}

/// `|V(A)| ≥ φ(n_A)/2`, with the margin `|V(A)| − φ(n_A)/2`.
pub fn is_good_animal(a: &Animal<'_>, phi: &PhiFunction) -> (bool, f64) {
    good_margin(a.order(), a.max_ambient_degree(), phi)
}

pub(crate) fn good_margin(order: usize, n_a: u32, phi: &PhiFunction) -> (bool, f64) {
    let margin = order as f64 - phi.at(n_a as u64) / 2.0;
    (margin >= -crate::repulsion::tie_guard(order as f64), margin)
}

/// `m_k = |{x ∈ V(A) : n(x) ∈ (t_k, t_{k+1}]}|` for `k = 1..l`, where `l` is
/// the first index with `n_A ≤ t_{l+1}`.
pub fn shell_counts(a: &Animal<'_>, ts: &TemperedSequence) -> Result<Vec<usize>, TemperedError> {
    let w = a.window();
    let n_a = a.max_ambient_degree() as f64;
    let t = ts.terms_covering(n_a)?;
    // t[0] = t_1, …, t[l] = t_{l+1}
    let l = t.len() - 1;
    let mut m = vec![0; l];
    for &v in a.vertices() {
        let d = w.ambient_degree(v) as f64;
        if let Some(k) = (0..l).find(|&k| d > t[k] && d <= t[k + 1]) {
            m[k] += 1;
        }
    }
    Ok(m)
}

/// The two sides of the shell estimate for one animal.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellEstimate {
    pub g_average: f64,
    /// `|V(A)|^{-1} Σ_k g(t_{k+1}) m_k`
    pub shell_sum: f64,
    /// `|V(A)|^{-1} Σ_{n(x) ≤ t_1} g(n(x))`, left out of the shell sum.
    pub low_part: f64,
    pub shells: Vec<usize>,
    /// `m_k ≤ 2|V(A)|/φ(t_k)` for every shell.
    pub shells_within_capacity: bool,
}

/// Splits `G(A; g)` into the shell sum and the contribution of degrees at
/// most `t_1`, and checks the per-shell capacity bound.
pub fn shell_estimate(
    a: &Animal<'_>,
    g: &WeightFunction,
    phi: &PhiFunction,
    ts: &TemperedSequence,
) -> Result<ShellEstimate, TemperedError> {
    let shells = shell_counts(a, ts)?;
    let n = a.order() as f64;
    let t1 = ts.term(1).unwrap();
    let w = a.window();
    let low_part = a
        .vertices()
        .iter()
        .map(|&v| w.ambient_degree(v))
        .filter(|&d| d as f64 <= t1)
        .map(|d| g.at(d))
        .sum::<f64>()
        / n;
    let mut shell_sum = 0.0;
    let mut within = true;
    for (i, &m) in shells.iter().enumerate() {
        let k = i + 1;
        shell_sum += g.value(ts.term(k + 1).unwrap()) * m as f64;
        if m as f64 > 2.0 * n / phi.value(ts.term(k).unwrap()) + 1e-12 {
            within = false;
        }
    }
    Ok(ShellEstimate {
        g_average: g_average(a, g),
        shell_sum: shell_sum / n,
        low_part,
        shells,
        shells_within_capacity: within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::builders::{grid_window, path_graph};
    use crate::graph::{induced_animal, GraphBuilder};
    use crate::repulsion::PhiSpec;
    use crate::temperedness::SequenceRule;

    #[test]
    fn constant_degree_average() {
        let w = grid_window(3);
        let x = w.origin().unwrap();
        let a = induced_animal(&w, &[x]).unwrap();
        assert!((g_average(&a, &WeightFunction::Log) - 4f64.ln()).abs() < 1e-15);
        let (m, _) = max_g_average(&w, x, 3, &WeightFunction::Log).unwrap();
        assert!((m - 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn singleton_of_degree_one() {
        let w = path_graph(2);
        let a = induced_animal(&w, &[0]).unwrap();
        assert_eq!(g_average(&a, &WeightFunction::TLogT), 0.0);
    }

    #[test]
    fn mixed_degrees() {
        // path 0-1-2 where 2 has ambient degree 5
        let w = GraphBuilder::new(3)
            .edges([(0, 1), (1, 2)])
            .ambient_degree(0, 2)
            .ambient_degree(2, 5)
            .build()
            .unwrap();
        let a = induced_animal(&w, &[0, 1, 2]).unwrap();
        let expected = (2.0 * 2f64.ln() + 5f64.ln()) / 3.0;
        assert!((g_average(&a, &WeightFunction::Log) - expected).abs() < 1e-15);
    }

    #[test]
    fn goodness() {
        let phi = PhiFunction::new(PhiSpec::Table {
            values: (1..=10).map(|t| if t == 10 { 20.0 } else { t as f64 / 2.0 }).collect(),
        })
        .unwrap();
        let w = path_graph(5);
        let a = induced_animal(&w, &[0, 1, 2, 3, 4]).unwrap();
        let (good, margin) = is_good_animal(&a, &phi);
        assert!(good);
        assert_eq!(margin, 4.5);
        let w = GraphBuilder::new(3)
            .edges([(0, 1), (1, 2)])
            .ambient_degree(1, 10)
            .build()
            .unwrap();
        let a = induced_animal(&w, &[0, 1, 2]).unwrap();
        assert!(!is_good_animal(&a, &phi).0);
    }

    #[test]
    fn shells() {
        let ts = TemperedSequence::new(SequenceRule::Explicit { values: vec![2.0, 4.0, 16.0, 256.0] }, None)
            .unwrap();
        let w = grid_window(2);
        let a = induced_animal(&w, &[w.origin().unwrap()]).unwrap();
        // degree 4 lies in (t_1, t_2] = (2, 4]
        assert_eq!(shell_counts(&a, &ts).unwrap(), vec![1]);
        let w = GraphBuilder::new(2).edge(0, 1).ambient_degree(1, 9).build().unwrap();
        let a = induced_animal(&w, &[0, 1]).unwrap();
        assert_eq!(shell_counts(&a, &ts).unwrap(), vec![0, 1]);
        let w = path_graph(3);
        let a = induced_animal(&w, &[0, 1, 2]).unwrap();
        assert!(shell_counts(&a, &ts).unwrap().iter().all(|&m| m == 0));
    }
}
