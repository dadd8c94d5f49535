//! Randić index maxima over animals and the exponential bound certified by
//! the weights `t^{θ+1}` and `t^{2θ+1}`.
//!
//!     cargo run --release --example randic [-- theta]

use repulse::applications::{randic_certificates, randic_max, DegreeMode};
use repulse::enumeration::EnumerationCaps;
use repulse::repulsion::{generate_hub_graph, HubFamilySpec, PhiFunction};

fn main() {
    let theta: f64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let spec = HubFamilySpec::cubic_window();
    let w = generate_hub_graph(&spec).unwrap();
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();
    let certs = randic_certificates(theta, &phi, 1e-9);
    for c in &certs {
        println!("g = t^{}: {}", c.exponent, c.detail);
    }
    let caps = EnumerationCaps { animals: 60, ..Default::default() };
    for n in [2, 5, 12, 39] {
        for mode in [DegreeMode::Ambient, DegreeMode::Intrinsic] {
            let m = randic_max(&w, 0, n, theta, mode, &caps).unwrap();
            let verdicts: Vec<String> = certs
                .iter()
                .map(|c| match c.bounds(n, m.value) {
                    Some(b) => format!("t^{}: {}", c.exponent, if b { "ok" } else { "VIOLATED" }),
                    None => format!("t^{}: uncertified", c.exponent),
                })
                .collect();
            println!("N = {n:2} {mode:?}: R = {:.3}; {}", m.value, verdicts.join(", "));
        }
    }
}
