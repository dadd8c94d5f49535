use serde::{Deserialize, Serialize};

use super::RepulsionError;

/// Serializable description of a repulsion profile.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum PhiSpec {
    /// `upsilon * log t * (log log t)^(1 + epsilon)`
    LogLog { upsilon: f64, epsilon: f64 },
    /// `scale * t^exponent + offset`
    Power {
        #[serde(default = "one")]
        scale: f64,
        exponent: f64,
        #[serde(default)]
        offset: f64,
    },
    /// `slope * t + intercept`
    Affine { slope: f64, intercept: f64 },
    /// `values[t - 1]` for `t = 1..=values.len()`
    Table { values: Vec<f64> },
}

fn one() -> f64 {
    1.0
}

/// A strictly increasing map `φ: ℕ → (0, ∞)`.
///
/// Closed forms are used from the first integer `t0` at which they are
/// defined and positive; below `t0` the profile is the linear ramp
/// `φ(t0) * t / t0`, which keeps `φ` positive and strictly increasing on all
/// of ℕ. Tables are used as given; arguments past the end of a table map to
/// `+∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiFunction {
    spec: PhiSpec,
    ramp_start: f64,
    ramp_value: f64,
}

const MAX_RAMP_SEARCH: u64 = 1 << 20;

impl PhiFunction {
    pub fn new(spec: PhiSpec) -> Result<Self, RepulsionError> {
        let invalid = |msg: &str| Err(RepulsionError::InvalidPhi(msg.to_string()));
        match &spec {
            PhiSpec::LogLog { upsilon, epsilon } => {
                if !(*upsilon > 0.0) || !(*epsilon > -1.0) {
                    return invalid("loglog needs upsilon > 0 and epsilon > -1");
                }
            }
            PhiSpec::Power {
                scale, exponent, offset,
            } => {
                if !(*scale > 0.0) || !(*exponent > 0.0) || !offset.is_finite() {
                    return invalid("power needs scale > 0, exponent > 0 and a finite offset");
                }
            }
            PhiSpec::Affine { slope, intercept } => {
                if !(*slope > 0.0) || !intercept.is_finite() {
                    return invalid("affine needs slope > 0 and a finite intercept");
                }
            }
            PhiSpec::Table { values } => {
                if values.is_empty() {
                    return invalid("phi table is empty");
                }
                if !values.iter().all(|v| v.is_finite() && *v > 0.0) {
                    return invalid("phi table values must be positive and finite");
                }
                if values.windows(2).any(|p| p[1] <= p[0]) {
                    return invalid("phi not strictly increasing");
                }
                return Ok(Self {
                    spec,
                    ramp_start: 1.0,
                    ramp_value: 0.0,
                });
            }
        }
        let mut t0 = 1;
        while !(raw(&spec, t0 as f64) > 0.0) {
            t0 += 1;
            if t0 > MAX_RAMP_SEARCH {
                return invalid("phi never becomes positive");
            }
        }
        let ramp_value = raw(&spec, t0 as f64);
        Ok(Self {
            spec,
            ramp_start: t0 as f64,
            ramp_value,
        })
    }

    pub fn spec(&self) -> &PhiSpec {
        &self.spec
    }

    /// First integer argument at which the closed form is used verbatim.
    pub fn closed_form_start(&self) -> u64 {
        self.ramp_start as u64
    }

    /// `φ(n)` for a natural number.
    pub fn at(&self, n: u64) -> f64 {
        self.value(n as f64)
    }

    /// `φ(t)` for real `t > 0`.
    pub fn value(&self, t: f64) -> f64 {
        match &self.spec {
            PhiSpec::Table { values } => {
                if t < 1.0 {
                    return values[0] * t.max(0.0);
                }
                let idx = t.round() as usize;
                if idx > values.len() {
                    f64::INFINITY
                } else {
                    values[idx - 1]
                }
            }
            spec => {
                if t >= self.ramp_start {
                    raw(spec, t)
                } else {
                    self.ramp_value * t / self.ramp_start
                }
            }
        }
    }

    /// `ln φ(t)` given `ln t`, usable when `t` itself overflows `f64`.
    pub fn ln_value(&self, ln_t: f64) -> f64 {
        let t = ln_t.exp();
        if t.is_finite() && t < 1e300 {
            return self.value(t).ln();
        }
        match &self.spec {
            PhiSpec::LogLog { upsilon, epsilon } => {
                upsilon.ln() + ln_t.ln() + (1.0 + epsilon) * ln_t.ln().ln()
            }
            PhiSpec::Power {
                scale, exponent, ..
            } => scale.ln() + exponent * ln_t,
            PhiSpec::Affine { slope, .. } => slope.ln() + ln_t,
            PhiSpec::Table { .. } => f64::INFINITY,
        }
    }

    /// `max{n ∈ ℕ : φ(n) ≤ y}`, or 0 when `φ(1) > y`.
    pub fn inverse(&self, y: f64) -> u64 {
        let le = |n: u64| self.at(n) <= y + tie_guard(y);
        if !le(1) {
            return 0;
        }
        if let PhiSpec::Table { values } = &self.spec {
            let len = values.len() as u64;
            return (1..=len).rev().find(|&n| le(n)).unwrap_or(0);
        }
        let mut lo = 1u64;
        let mut hi = 2u64;
        while le(hi) {
            lo = hi;
            if hi >= 1 << 62 {
                return lo;
            }
            hi *= 2;
        }
        // le(lo) holds, le(hi) fails
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if le(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

fn raw(spec: &PhiSpec, t: f64) -> f64 {
    match spec {
        PhiSpec::LogLog { upsilon, epsilon } => {
            let ll = t.ln().ln();
            if ll.is_nan() || ll <= 0.0 {
                f64::NAN
            } else {
                upsilon * t.ln() * ll.powf(1.0 + epsilon)
            }
        }
        PhiSpec::Power {
            scale,
            exponent,
            offset,
        } => scale * pow(t, *exponent) + offset,
        PhiSpec::Affine { slope, intercept } => slope * t + intercept,
        PhiSpec::Table { .. } => unreachable!("tables are evaluated directly"),
    }
}

pub(crate) fn pow(t: f64, e: f64) -> f64 {
    if e.fract() == 0.0 && e.abs() < 64.0 {
        t.powi(e as i32)
    } else {
        t.powf(e)
    }
}

/// Half an ulp of `value`; comparisons between an integer distance and a
/// real profile value accept a shortfall of at most this much as a tie.
pub fn tie_guard(value: f64) -> f64 {
    value.abs() * f64::EPSILON * 0.5
}

/// `distance ≥ required`, with ties resolved in favour of the inequality.
pub fn meets(distance: u32, required: f64) -> bool {
    distance as f64 >= required - tie_guard(required)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn power(exponent: f64, offset: f64) -> PhiFunction {
        PhiFunction::new(PhiSpec::Power {
            scale: 1.0,
            exponent,
            offset,
        })
        .unwrap()
    }

    #[test]
    fn square_inverse() {
        let phi = power(2.0, 0.0);
        assert_eq!(phi.inverse(59.0), 7);
        assert_eq!(phi.inverse(49.0), 7);
        assert_eq!(phi.inverse(0.5), 0);
    }

    #[test]
    fn inverse_undoes_phi() {
        for phi in [
            power(2.0, -16.0),
            power(1.5, 0.0),
            PhiFunction::new(PhiSpec::LogLog {
                upsilon: 1.0,
                epsilon: 1.0,
            })
            .unwrap(),
            PhiFunction::new(PhiSpec::Affine {
                slope: 2.0,
                intercept: 1.0,
            })
            .unwrap(),
        ] {
            for n in 1..2000 {
                assert_eq!(phi.inverse(phi.at(n)), n, "{:?} at {n}", phi.spec());
            }
        }
    }

    #[test]
    fn clipped_power_is_positive_and_increasing() {
        let phi = power(2.0, -16.0);
        assert_eq!(phi.closed_form_start(), 5);
        assert_eq!(phi.at(5), 9.0);
        assert_eq!(phi.at(6), 20.0);
        let values: Vec<f64> = (1..10).map(|n| phi.at(n)).collect();
        assert!(values.iter().all(|v| *v > 0.0));
        assert!(values.windows(2).all(|p| p[0] < p[1]));
        assert!((phi.at(3) - 5.4).abs() < 1e-12);
    }

    #[test]
    fn loglog_inverse_matches_linear_scan() {
        let phi = PhiFunction::new(PhiSpec::LogLog {
            upsilon: 1.0,
            epsilon: 1.0,
        })
        .unwrap();
        // oracle: scan t = 3..=10^6 with the closed form written out directly
        let closed = |t: f64| t.ln() * t.ln().ln().powi(2);
        let scanned = (3..=1_000_000u64)
            .filter(|&t| closed(t as f64) <= 12.0)
            .max()
            .unwrap();
        assert_eq!(phi.inverse(12.0), scanned);
        assert_eq!(scanned, 125);
    }

    #[test]
    fn table_validation_and_saturation() {
        let err = PhiFunction::new(PhiSpec::Table {
            values: vec![1.0, 2.0, 2.0],
        })
        .unwrap_err();
        assert!(err.to_string().contains("phi not strictly increasing"));
        let t = PhiFunction::new(PhiSpec::Table {
            values: vec![1.0, 3.0, 7.0],
        })
        .unwrap();
        assert_eq!(t.inverse(5.0), 2);
        assert_eq!(t.inverse(100.0), 3);
        assert_eq!(t.at(4), f64::INFINITY);
    }

    #[test]
    fn ties_count_as_meeting() {
        assert!(meets(20, 20.0));
        assert!(meets(20, 20.0 + 20.0 * f64::EPSILON * 0.25));
        assert!(!meets(19, 20.0));
    }
}
