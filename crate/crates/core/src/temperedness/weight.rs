use serde::{Deserialize, Serialize};

use super::TemperedError;
use crate::repulsion::PhiSpec;

/// Degree weight `g` used in the animal average `G(A; g)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum WeightFunction {
    /// `log t`
    Log,
    /// `t log t`
    TLogT,
    /// `t^(theta + 1)`
    Power { theta: f64 },
    /// `values[t - 1]`
    Table { values: Vec<f64> },
}

impl WeightFunction {
    pub fn validate(&self) -> Result<(), TemperedError> {
        match self {
            WeightFunction::Power { theta } if !(theta.is_finite() && *theta > -1.0) => Err(
                TemperedError::InvalidWeight("power weight needs theta > -1".into()),
            ),
            WeightFunction::Table { values } => {
                if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
                    return Err(TemperedError::InvalidWeight(
                        "weight table must be non-empty and finite".into(),
                    ));
                }
                if values.windows(2).any(|p| p[1] < p[0]) {
                    return Err(TemperedError::InvalidWeight("weight table decreases".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> String {
        match self {
            WeightFunction::Log => "log t".into(),
            WeightFunction::TLogT => "t log t".into(),
            WeightFunction::Power { theta } => format!("t^{}", theta + 1.0),
            WeightFunction::Table { .. } => "table".into(),
        }
    }

    /// `g(t)` for real `t ≥ 1`. Tables are read at `round(t)` and are `+∞`
    /// past their end.
    pub fn value(&self, t: f64) -> f64 {
        match self {
            WeightFunction::Log => t.ln(),
            WeightFunction::TLogT => t * t.ln(),
            WeightFunction::Power { theta } => t.powf(theta + 1.0),
            WeightFunction::Table { values } => {
                let i = t.round().max(1.0) as usize;
                values.get(i - 1).copied().unwrap_or(f64::INFINITY)
            }
        }
    }

    /// `g` at an ambient degree.
    pub fn at(&self, n: u32) -> f64 {
        if n == 0 {
            return 0.0;
        }
        self.value(n as f64)
    }

    /// `ln g(t)` given `ln t`; stays finite when `t` overflows.
    pub fn ln_value(&self, ln_t: f64) -> f64 {
        match self {
            WeightFunction::Log => ln_t.ln(),
            WeightFunction::TLogT => ln_t + ln_t.ln(),
            WeightFunction::Power { theta } => (theta + 1.0) * ln_t,
            WeightFunction::Table { .. } => self.value(ln_t.exp()).ln(),
        }
    }

    /// Polynomial order `A` with `g(t) ≈ t^A` up to log factors; `None` for tables.
    pub(crate) fn power_order(&self) -> Option<f64> {
        match self {
            WeightFunction::Log => Some(0.0),
            WeightFunction::TLogT => Some(1.0),
            WeightFunction::Power { theta } => Some(theta + 1.0),
            WeightFunction::Table { .. } => None,
        }
    }
}

/// Polynomial order `α` of a repulsion profile; `None` for tables.
pub(crate) fn phi_power_order(phi: &PhiSpec) -> Option<f64> {
    match phi {
        PhiSpec::LogLog { .. } => Some(0.0),
        PhiSpec::Power { exponent, .. } => Some(*exponent),
        PhiSpec::Affine { .. } => Some(1.0),
        PhiSpec::Table { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_one() {
        assert_eq!(WeightFunction::Log.at(1), 0.0);
        assert_eq!(WeightFunction::TLogT.at(1), 0.0);
        assert_eq!(WeightFunction::Power { theta: 1.0 }.at(1), 1.0);
    }

    #[test]
    fn log_space_agrees() {
        for g in [
            WeightFunction::Log,
            WeightFunction::TLogT,
            WeightFunction::Power { theta: 0.5 },
        ] {
            for t in [3.0f64, 17.0, 1e6] {
                assert!((g.ln_value(t.ln()) - g.value(t).ln()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn table_guards() {
        assert!(WeightFunction::Table { values: vec![] }.validate().is_err());
        assert!(WeightFunction::Table { values: vec![2.0, 1.0] }.validate().is_err());
        let t = WeightFunction::Table {
            values: vec![0.0, 1.0],
        };
        assert_eq!(t.at(2), 1.0);
        assert_eq!(t.at(3), f64::INFINITY);
        assert!(WeightFunction::Power { theta: -2.0 }.validate().is_err());
    }
}
