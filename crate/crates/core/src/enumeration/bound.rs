use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use super::CountResult;

/// Natural log of an arbitrary-precision integer; `-∞` for zero.
pub fn ln_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    // keep the top 64 bits
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Outcome of `count ≤ q^N` at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundVerdict {
    pub n: u32,
    /// `None` when no count was supplied for this order.
    pub count: Option<BigUint>,
    pub ln_count: f64,
    /// `N log q`
    pub ln_bound: f64,
    pub passed: bool,
}

/// Checks `count ≤ q^N` for every `N` in `ns`, exactly.
///
/// `q` is taken as the exact binary value of the `f64`, so the comparison is
/// integer arithmetic once log space cannot separate the two sides.
pub fn verify_exponential_bound(counts: &[CountResult], q: f64, ns: &[u32]) -> Vec<BoundVerdict> {
    ns.iter()
        .map(|&n| {
            let ln_bound = n as f64 * q.ln();
            match counts.iter().find(|c| c.n == n) {
                None => BoundVerdict {
                    n,
                    count: None,
                    ln_count: f64::NAN,
                    ln_bound,
                    passed: false,
                },
                Some(c) => {
                    let ln_count = ln_biguint(&c.count);
                    BoundVerdict {
                        n,
                        count: Some(c.count.clone()),
                        ln_count,
                        ln_bound,
                        passed: at_most_power(&c.count, q, n),
                    }
                }
            }
        })
        .collect()
}

/// `count ≤ q^n` with `q` read as an exact dyadic rational.
pub(crate) fn at_most_power(count: &BigUint, q: f64, n: u32) -> bool {
    if count.is_zero() || n == 0 && count <= &BigUint::from(1u32) {
        return true;
    }
    if !(q > 0.0) {
        return false;
    }
    if q.is_infinite() {
        return true;
    }
    let gap = ln_biguint(count) - n as f64 * q.ln();
    if gap < -1e-6 {
        return true;
    }
    if gap > 1e-6 {
        return false;
    }
    let (mantissa, exponent) = decompose(q);
    let lhs_shift = exponent * n as i64;
    let rhs = BigUint::from(mantissa).pow(n);
    if lhs_shift >= 0 {
        count <= &(rhs << lhs_shift as u64)
    } else {
        &(count << (-lhs_shift) as u64) <= &rhs
    }
}

/// `q = mantissa * 2^exponent` for finite positive `q`.
fn decompose(q: f64) -> (u64, i64) {
    let bits = q.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    if raw_exp == 0 {
        (frac, -1074)
    } else {
        (frac | (1u64 << 52), raw_exp - 1075)
    }
}
