use serde::{Deserialize, Serialize};

use super::TemperedError;

/// Closed-form rule for the tempered sequence `t_1 < t_2 < …`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SequenceRule {
    /// `t_j = exp(e^j)`
    DoubleExp,
    /// `t_j = base^(2^j)`
    DoublyGeometric { base: f64 },
    /// `t_j = a * b^j`
    Geometric { a: f64, b: f64 },
    /// Finite list, used verbatim.
    Explicit { values: Vec<f64> },
}

impl SequenceRule {
    /// `ln t_j` for rule index `j ≥ 1`; `None` past the end of an explicit list.
    pub fn ln_at(&self, j: usize) -> Option<f64> {
        match self {
            SequenceRule::DoubleExp => Some((j as f64).exp()),
            SequenceRule::DoublyGeometric { base } => Some(2f64.powi(j as i32) * base.ln()),
            SequenceRule::Geometric { a, b } => Some(a.ln() + j as f64 * b.ln()),
            SequenceRule::Explicit { values } => values.get(j - 1).map(|v| v.ln()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            SequenceRule::DoubleExp => "exp(e^k)".into(),
            SequenceRule::DoublyGeometric { base } => format!("{base}^(2^k)"),
            SequenceRule::Geometric { a, b } => format!("{a}*{b}^k"),
            SequenceRule::Explicit { values } => format!("explicit[{}]", values.len()),
        }
    }
}

/// `{t_k}`: a rule, optionally anchored so that `t_1 = n*` and only rule
/// terms above `n*` follow. Terms are real; the rules above are not integer
/// valued in general.
#[derive(Debug, Clone, PartialEq)]
pub struct TemperedSequence {
    rule: SequenceRule,
    anchor: Option<f64>,
    skip: usize,
}

impl TemperedSequence {
    pub fn new(rule: SequenceRule, anchor: Option<u32>) -> Result<Self, TemperedError> {
        let invalid = |m: &str| Err(TemperedError::InvalidSequence(m.into()));
        match &rule {
            SequenceRule::DoubleExp => {}
            SequenceRule::DoublyGeometric { base } => {
                if !(base.is_finite() && *base > 1.0) {
                    return invalid("doubly geometric base must exceed 1");
                }
            }
            SequenceRule::Geometric { a, b } => {
                if !(a.is_finite() && *a > 0.0 && b.is_finite() && *b > 1.0) {
                    return invalid("geometric rule needs a > 0 and b > 1");
                }
            }
            SequenceRule::Explicit { values } => {
                if values.is_empty() || values.iter().any(|v| !(v.is_finite() && *v >= 1.0)) {
                    return invalid("explicit sequence must be non-empty with terms >= 1");
                }
                if values.windows(2).any(|p| p[1] <= p[0]) {
                    return invalid("sequence not strictly increasing");
                }
            }
        }
        let anchor = anchor.map(|a| a as f64);
        let mut skip = 0;
        if let Some(a) = anchor {
            let ln_a = a.ln();
            while let Some(v) = rule.ln_at(skip + 1) {
                if v > ln_a {
                    break;
                }
                skip += 1;
                if skip > 1 << 20 {
                    return invalid("rule never exceeds the anchor");
                }
            }
        }
        Ok(Self { rule, anchor, skip })
    }

    pub fn rule(&self) -> &SequenceRule {
        &self.rule
    }

    pub fn anchor(&self) -> Option<f64> {
        self.anchor
    }

    /// Rule index of `t_k`, or `None` for the anchor itself.
    pub fn rule_index(&self, k: usize) -> Option<usize> {
        match self.anchor {
            Some(_) if k == 1 => None,
            Some(_) => Some(self.skip + k - 1),
            None => Some(k),
        }
    }

    /// `ln t_k` for `k ≥ 1`; `None` past the end of a finite sequence.
    pub fn ln_term(&self, k: usize) -> Option<f64> {
        assert!(k >= 1, "sequence is indexed from 1");
        match self.rule_index(k) {
            None => self.anchor.map(f64::ln),
            Some(j) => self.rule.ln_at(j),
        }
    }

    /// `t_k`, possibly `+∞` when it overflows.
    pub fn term(&self, k: usize) -> Option<f64> {
        self.ln_term(k).map(f64::exp)
    }

    /// Terms `t_1, t_2, …` up to and including the first one `≥ bound`.
    pub fn terms_covering(&self, bound: f64) -> Result<Vec<f64>, TemperedError> {
        let mut out = Vec::new();
        let mut k = 1;
        loop {
            let Some(t) = self.term(k) else {
                return Err(TemperedError::Coverage {
                    needed: bound,
                    last: out.last().copied().unwrap_or(f64::NAN),
                });
            };
            out.push(t);
            if t >= bound {
                return Ok(out);
            }
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchored_doubly_geometric() {
        let s = TemperedSequence::new(SequenceRule::DoublyGeometric { base: 2.0 }, Some(2)).unwrap();
        let t: Vec<f64> = (1..=4).map(|k| s.term(k).unwrap().round()).collect();
        assert_eq!(t, vec![2.0, 4.0, 16.0, 256.0]);
        let s = TemperedSequence::new(SequenceRule::DoublyGeometric { base: 2.0 }, Some(16)).unwrap();
        assert_eq!(s.term(2).unwrap().round(), 256.0);
        assert_eq!(s.rule_index(2), Some(3));
    }

    #[test]
    fn double_exponential_log_terms() {
        let s = TemperedSequence::new(SequenceRule::DoubleExp, None).unwrap();
        assert!((s.ln_term(3).unwrap() - 3f64.exp()).abs() < 1e-12);
        assert!(s.term(10).unwrap().is_infinite());
        assert!(s.ln_term(10).unwrap().is_finite());
    }

    #[test]
    fn explicit_validation_and_coverage() {
        assert!(TemperedSequence::new(SequenceRule::Explicit { values: vec![2.0, 2.0] }, None).is_err());
        let s = TemperedSequence::new(SequenceRule::Explicit { values: vec![2.0, 5.0, 9.0] }, None)
            .unwrap();
        assert_eq!(s.terms_covering(6.0).unwrap().len(), 3);
        assert!(matches!(
            s.terms_covering(10.0),
            Err(TemperedError::Coverage { .. })
        ));
    }
}
