//! Tempered sequences, the series `γ(g, φ)`, the radii `N_k` on which ball
//! degrees stay below `φ^{-1}`, and good animals.

mod gamma;
mod good;
mod qpn;
mod sequence;
mod weight;

pub use gamma::{
    gamma_series, leading_terms, preflight_warning, Certificate, GammaSeries, KEPT_PARTIAL_SUMS,
};
pub use good::{
    g_average, is_good_animal, max_g_average, shell_counts, shell_estimate, ShellEstimate,
};
pub use qpn::{qpn_sequence, QpnCheck, QpnResult};
pub use sequence::{SequenceRule, TemperedSequence};
pub use weight::WeightFunction;

pub(crate) use good::{good_margin, pick_max, vertex_average};

use thiserror::Error;

use crate::enumeration::EnumerationError;
use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TemperedError {
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("sequence ends at {last} before covering {needed}")]
    Coverage { needed: f64, last: f64 },
    #[error("gamma series for g = {weight} diverges; leading terms {leading_terms:?}")]
    Divergent {
        weight: String,
        leading_terms: Vec<f64>,
    },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A named `(g, t_k)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    pub weight: WeightFunction,
    pub rule: SequenceRule,
    /// Start the sequence at `t_1 = n*`.
    pub anchored: bool,
}

impl Preset {
    /// `paths-default`, `animals-default` or `randic(θ)`.
    pub fn parse(name: &str) -> Result<Self, TemperedError> {
        let name = name.trim();
        let preset = match name {
            "paths-default" => Preset {
                name: name.into(),
                weight: WeightFunction::Log,
                rule: SequenceRule::DoubleExp,
                anchored: false,
            },
            "animals-default" => Preset {
                name: name.into(),
                weight: WeightFunction::TLogT,
                rule: SequenceRule::DoublyGeometric { base: 2.0 },
                anchored: true,
            },
            other => {
                let theta = other
                    .strip_prefix("randic(")
                    .and_then(|s| s.strip_suffix(')'))
                    .and_then(|s| s.trim().parse::<f64>().ok())
                    .ok_or_else(|| TemperedError::UnknownPreset(other.into()))?;
                let weight = WeightFunction::Power { theta };
                weight.validate()?;
                Preset {
                    name: format!("randic({theta})"),
                    weight,
                    rule: SequenceRule::Geometric { a: 1.0, b: 2.0 },
                    anchored: false,
                }
            }
        };
        Ok(preset)
    }

    pub fn sequence(&self, n_star: u32) -> Result<TemperedSequence, TemperedError> {
        TemperedSequence::new(self.rule.clone(), self.anchored.then_some(n_star))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        assert_eq!(Preset::parse("paths-default").unwrap().weight, WeightFunction::Log);
        let r = Preset::parse("randic(0.5)").unwrap();
        assert_eq!(r.weight, WeightFunction::Power { theta: 0.5 });
        assert!(Preset::parse("randic(x)").is_err());
        assert!(Preset::parse("nope").is_err());
        let s = Preset::parse("animals-default").unwrap().sequence(2).unwrap();
        assert_eq!(s.term(1), Some(2.0));
    }
}
