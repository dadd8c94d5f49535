use serde::Serialize;

use super::sequence::{SequenceRule, TemperedSequence};
use super::weight::{phi_power_order, WeightFunction};
use super::TemperedError;
use crate::repulsion::{PhiFunction, PhiSpec};

/// How many leading partial sums a [`GammaSeries`] keeps.
pub const KEPT_PARTIAL_SUMS: usize = 64;
const MAX_TERMS: usize = 10_000_000;
const RATIO_WINDOW: usize = 64;
const RATIO_MAX_TERMS: usize = 100_000;

/// Why the tail of a series is bounded.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Terms are exactly `c / j^p` from rule index `j` on; integral comparison.
    PSeries { c: f64, p: f64 },
    /// Ratios tend to `limit` and stay below `bound < 1` from the cut on.
    Ratio { limit: f64, bound: f64 },
    /// No tail rule applies; only the listed terms were summed.
    None { reason: String },
}

/// Partial sums of `γ(g, φ) = 2 Σ_k g(t_{k+1}) / φ(t_k)` with a tail bound.
///
/// Partial sums include the factor 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaSeries {
    /// First [`KEPT_PARTIAL_SUMS`] partial sums.
    pub partial_sums: Vec<f64>,
    /// Number of terms summed explicitly.
    pub terms_summed: usize,
    /// Partial sum over all `terms_summed` terms.
    pub last_partial_sum: f64,
    /// `2 Σ_{k > K}` lies in `[tail_lower, tail_upper]`.
    pub tail_lower: f64,
    pub tail_upper: f64,
    /// Width of the enclosure of `γ`.
    pub tail_bound: f64,
    /// Upper end of the enclosure: `last_partial_sum + tail_upper`.
    pub gamma: f64,
    pub converged: bool,
    pub certificate: Certificate,
}

impl GammaSeries {
    pub fn q(&self) -> f64 {
        self.gamma.exp()
    }
}

/// Compensated (Neumaier) running sum.
#[derive(Default)]
struct Sum {
    sum: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// `g(t_{k+1}) / φ(t_k)` evaluated in log space; `None` past a finite sequence.
fn term(g: &WeightFunction, phi: &PhiFunction, ts: &TemperedSequence, k: usize) -> Option<f64> {
    let ln_t = ts.ln_term(k)?;
    let ln_next = ts.ln_term(k + 1)?;
    let ln = g.ln_value(ln_next) - phi.ln_value(ln_t);
    Some(if ln == f64::NEG_INFINITY { 0.0 } else { ln.exp() })
}

/// Leading terms `2 g(t_{k+1}) / φ(t_k)`, for reports and pre-flight checks.
pub fn leading_terms(g: &WeightFunction, phi: &PhiFunction, ts: &TemperedSequence, count: usize) -> Vec<f64> {
    (1..=count)
        .map_while(|k| term(g, phi, ts, k))
        .map(|u| 2.0 * u)
        .collect()
}

/// Warning text when terms 3..5 of the series increase (overflow to `inf`
/// counts), a cheap divergence hint. The first terms are skipped because
/// small-argument profiles often make them large.
pub fn preflight_warning(g: &WeightFunction, phi: &PhiFunction, ts: &TemperedSequence) -> Option<String> {
    let lead = leading_terms(g, phi, ts, 5);
    if lead.len() == 5 && lead[2..].windows(2).all(|p| p[1] >= p[0]) && lead[4] > lead[2] {
        Some(format!(
            "gamma series for g = {} likely diverges: leading terms {:?} increase",
            g.name(),
            lead
        ))
    } else {
        None
    }
}

enum Plan {
    PSeries { c: f64, p: f64 },
    Ratio { limit: f64 },
    Divergent,
    Unknown(String),
}

fn plan(g: &WeightFunction, phi: &PhiFunction, ts: &TemperedSequence) -> Plan {
    if let SequenceRule::Explicit { .. } = ts.rule() {
        return Plan::Unknown("explicit sequences have no tail rule".into());
    }
    if let (WeightFunction::Log, PhiSpec::LogLog { upsilon, epsilon }, SequenceRule::DoubleExp) =
        (g, phi.spec(), ts.rule())
    {
        // g(t_{j+1}) / φ(t_j) = e^{j+1} / (υ e^j j^{1+ε})
        return Plan::PSeries {
            c: std::f64::consts::E / upsilon,
            p: 1.0 + epsilon,
        };
    }
    let (Some(a), Some(alpha)) = (g.power_order(), phi_power_order(phi.spec())) else {
        return Plan::Unknown("tabulated g or phi has no tail rule".into());
    };
    match ts.rule() {
        SequenceRule::Geometric { b, .. } => {
            let limit = b.powf(a - alpha);
            if limit < 1.0 {
                Plan::Ratio { limit }
            } else if limit > 1.0 {
                Plan::Divergent
            } else {
                Plan::Unknown("ratio limit is exactly 1".into())
            }
        }
        rule => {
            // t_{k+1} = t_k^m, so terms behave like t_k^{A m - α}
            let m = match rule {
                SequenceRule::DoubleExp => std::f64::consts::E,
                _ => 2.0,
            };
            let e = a * m - alpha;
            if e < 0.0 {
                Plan::Ratio { limit: 0.0 }
            } else if e > 0.0 {
                Plan::Divergent
            } else if a == 0.0 && alpha == 0.0 {
                Plan::Unknown("log-order terms; no ratio certificate".into())
            } else {
                Plan::Divergent
            }
        }
    }
}

/// Sums the series and certifies its tail.
///
/// Convergence is only declared with a tail certificate: an exact p-series
/// form, or a ratio bound below 1 backed by the analytic ratio limit.
/// Divergent combinations are reported as errors carrying the leading terms.
pub fn gamma_series(
    g: &WeightFunction,
    phi: &PhiFunction,
    ts: &TemperedSequence,
    tol: f64,
) -> Result<GammaSeries, TemperedError> {
    g.validate()?;
    if !(tol > 0.0) {
        return Err(TemperedError::InvalidTolerance(tol));
    }
    match plan(g, phi, ts) {
        Plan::Divergent => Err(TemperedError::Divergent {
            weight: g.name(),
            leading_terms: leading_terms(g, phi, ts, 8),
        }),
        Plan::PSeries { c, p } => {
            if p <= 1.0 {
                return Err(TemperedError::Divergent {
                    weight: g.name(),
                    leading_terms: leading_terms(g, phi, ts, 8),
                });
            }
            Ok(p_series(g, phi, ts, tol, c, p))
        }
        Plan::Ratio { limit } => Ok(ratio_series(g, phi, ts, tol, limit)),
        Plan::Unknown(reason) => Ok(finite_sum(g, phi, ts, reason)),
    }
}

fn p_series(g: &WeightFunction, phi: &PhiFunction, ts: &TemperedSequence, tol: f64, c: f64, p: f64) -> GammaSeries {
    // tail from rule index J + 1 on lies in
    // [c / ((p-1)(J+1)^{p-1}), c / ((p-1) J^{p-1})]
    let tail = |j: f64| {
        (
            2.0 * c / ((p - 1.0) * (j + 1.0).powf(p - 1.0)),
            2.0 * c / ((p - 1.0) * j.powf(p - 1.0)),
        )
    };
    let mut sum = Sum::default();
    let mut partial_sums = Vec::new();
    let mut k = 0;
    loop {
        k += 1;
        // exact closed form once t_k is a rule term; log space overflows past j ~ 700
        let u = match ts.rule_index(k) {
            Some(j) => c / (j as f64).powf(p),
            None => term(g, phi, ts, k).expect("rule sequences are infinite"),
        };
        sum.add(2.0 * u);
        if partial_sums.len() < KEPT_PARTIAL_SUMS {
            partial_sums.push(sum.value());
        }
        // rule index of t_{k+1} is the first one not yet summed
        let j = ts.rule_index(k + 1).unwrap() as f64 - 1.0;
        if j < 1.0 {
            continue;
        }
        let (lower, upper) = tail(j);
        if upper - lower < tol || k >= MAX_TERMS {
            let last = sum.value();
            return GammaSeries {
                partial_sums,
                terms_summed: k,
                last_partial_sum: last,
                tail_lower: lower,
                tail_upper: upper,
                tail_bound: upper - lower,
                gamma: last + upper,
                converged: upper - lower < tol,
                certificate: Certificate::PSeries { c, p },
            };
        }
    }
}

fn ratio_series(
    g: &WeightFunction,
    phi: &PhiFunction,
    ts: &TemperedSequence,
    tol: f64,
    limit: f64,
) -> GammaSeries {
    let bound = (1.0 + limit) / 2.0;
    let mut terms: Vec<f64> = Vec::new();
    let extend = |terms: &mut Vec<f64>, upto: usize| {
        while terms.len() < upto {
            let k = terms.len() + 1;
            terms.push(term(g, phi, ts, k).expect("rule sequences are infinite"));
        }
    };
    let mut sum = Sum::default();
    let mut partial_sums = Vec::new();
    let mut k = 0;
    loop {
        k += 1;
        extend(&mut terms, k + RATIO_WINDOW + 1);
        let u = terms[k - 1];
        if !u.is_finite() {
            return finite_sum(g, phi, ts, format!("term {k} is not finite"));
        }
        sum.add(2.0 * u);
        if partial_sums.len() < KEPT_PARTIAL_SUMS {
            partial_sums.push(sum.value());
        }
        let window = &terms[k - 1..k + RATIO_WINDOW];
        let ratios_ok = window
            .windows(2)
            .all(|p| p[1] == 0.0 || p[1].is_finite() && p[1] <= bound * p[0]);
        if ratios_ok {
            let upper = 2.0 * u * bound / (1.0 - bound);
            let lower = 2.0 * terms[k];
            if upper - lower < tol {
                let last = sum.value();
                return GammaSeries {
                    partial_sums,
                    terms_summed: k,
                    last_partial_sum: last,
                    tail_lower: lower,
                    tail_upper: upper,
                    tail_bound: (upper - lower).max(0.0),
                    gamma: last + upper,
                    converged: true,
                    certificate: Certificate::Ratio { limit, bound },
                };
            }
        }
        if k >= RATIO_MAX_TERMS {
            let last = sum.value();
            return GammaSeries {
                partial_sums,
                terms_summed: k,
                last_partial_sum: last,
                tail_lower: 0.0,
                tail_upper: f64::INFINITY,
                tail_bound: f64::INFINITY,
                gamma: f64::INFINITY,
                converged: false,
                certificate: Certificate::Ratio { limit, bound },
            };
        }
    }
}

fn finite_sum(g: &WeightFunction, phi: &PhiFunction, ts: &TemperedSequence, reason: String) -> GammaSeries {
    let mut sum = Sum::default();
    let mut partial_sums = Vec::new();
    let mut k = 0;
    while k < RATIO_WINDOW {
        let Some(u) = term(g, phi, ts, k + 1) else { break };
        if !u.is_finite() {
            break;
        }
        k += 1;
        sum.add(2.0 * u);
        partial_sums.push(sum.value());
    }
    GammaSeries {
        partial_sums,
        terms_summed: k,
        last_partial_sum: sum.value(),
        tail_lower: 0.0,
        tail_upper: f64::INFINITY,
        tail_bound: f64::INFINITY,
        gamma: f64::INFINITY,
        converged: false,
        certificate: Certificate::None { reason },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loglog() -> PhiFunction {
        PhiFunction::new(PhiSpec::LogLog {
            upsilon: 1.0,
            epsilon: 1.0,
        })
        .unwrap()
    }

    fn cubic() -> PhiFunction {
        PhiFunction::new(PhiSpec::Power {
            scale: 1.0,
            exponent: 3.0,
            offset: 0.0,
        })
        .unwrap()
    }

    #[test]
    fn loglog_golden_value() {
        let ts = TemperedSequence::new(SequenceRule::DoubleExp, None).unwrap();
        let s = gamma_series(&WeightFunction::Log, &loglog(), &ts, 1e-9).unwrap();
        let exact = std::f64::consts::E * std::f64::consts::PI.powi(2) / 3.0;
        assert!(s.converged);
        assert!((s.gamma - exact).abs() < 1e-6, "{} vs {exact}", s.gamma);
        assert!(s.gamma - s.tail_bound <= exact + 1e-12 && exact <= s.gamma + 1e-12);
        // first terms are 2e/k^2
        assert!((s.partial_sums[0] - 2.0 * std::f64::consts::E).abs() < 1e-12);
        assert!(s.partial_sums.windows(2).all(|p| p[1] >= p[0]));
    }

    #[test]
    fn t_log_t_with_loglog_diverges() {
        let ts = TemperedSequence::new(SequenceRule::DoubleExp, None).unwrap();
        let err = gamma_series(&WeightFunction::TLogT, &loglog(), &ts, 1e-9).unwrap_err();
        match err {
            TemperedError::Divergent { leading_terms, .. } => {
                assert!(leading_terms.windows(2).all(|p| p[1] >= p[0]))
            }
            other => panic!("{other:?}"),
        }
        assert!(preflight_warning(&WeightFunction::TLogT, &loglog(), &ts).is_some());
        assert!(preflight_warning(&WeightFunction::Log, &loglog(), &ts).is_none());
    }

    #[test]
    fn cubic_doubly_geometric_converges() {
        let ts = TemperedSequence::new(SequenceRule::DoublyGeometric { base: 2.0 }, None).unwrap();
        let s = gamma_series(&WeightFunction::TLogT, &cubic(), &ts, 1e-9).unwrap();
        assert!(s.converged);
        // oracle: direct sum of 2 t^2 log t^2 / t^3 over t = 2^{2^k}
        let direct: f64 = (1..8)
            .map(|k| {
                let ln_t = 2f64.powi(k) * 2f64.ln();
                2.0 * (2.0 * ln_t + (2.0 * ln_t).ln() - 3.0 * ln_t).exp()
            })
            .sum();
        assert!((s.gamma - direct).abs() < 1e-8);
    }

    #[test]
    fn anchored_animals_preset_value() {
        let ts = TemperedSequence::new(SequenceRule::DoublyGeometric { base: 2.0 }, Some(2)).unwrap();
        let s = gamma_series(&WeightFunction::TLogT, &cubic(), &ts, 1e-9).unwrap();
        // t = 2, 4, 16, 256, ...: 2(4 ln 4 / 8 + 16 ln 16 / 64 + 256 ln 256 / 4096 + ...)
        let head = 2.0 * (4.0 * 4f64.ln() / 8.0 + 16.0 * 16f64.ln() / 64.0 + 256.0 * 256f64.ln() / 4096.0);
        assert!(s.gamma > head && s.gamma < head + 0.1);
    }

    #[test]
    fn geometric_ratio_rule() {
        let ts = TemperedSequence::new(SequenceRule::Geometric { a: 1.0, b: 2.0 }, None).unwrap();
        let s = gamma_series(&WeightFunction::Power { theta: 1.0 }, &cubic(), &ts, 1e-9).unwrap();
        // 2 Σ (2^{k+1})^2 / 2^{3k} = 8 Σ 2^{-k} = 8
        assert!(s.converged);
        assert!((s.gamma - 8.0).abs() < 1e-8);
        let err = gamma_series(&WeightFunction::Power { theta: 2.5 }, &cubic(), &ts, 1e-9);
        assert!(matches!(err, Err(TemperedError::Divergent { .. })));
    }

    #[test]
    fn explicit_is_not_certified() {
        let ts = TemperedSequence::new(SequenceRule::Explicit { values: vec![2.0, 4.0, 8.0] }, None)
            .unwrap();
        let s = gamma_series(&WeightFunction::Log, &cubic(), &ts, 1e-9).unwrap();
        assert!(!s.converged);
        assert_eq!(s.terms_summed, 2);
    }
}
