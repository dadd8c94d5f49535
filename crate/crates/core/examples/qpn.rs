//! Radii from a vertex on which `φ^{-1}` controls every degree seen, for
//! both families on the default hub window.
//!
//!     cargo run --example qpn

use repulse::repulsion::{generate_hub_graph, Family, HubFamilySpec, PhiFunction};
use repulse::temperedness::qpn_sequence;

fn main() {
    let spec = HubFamilySpec::default_window();
    let w = generate_hub_graph(&spec).unwrap();
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();

    for x in [0, 12, 30] {
        let r = qpn_sequence(&w, x, &phi, spec.n_star, Family::Minus).unwrap();
        println!("minus x = {x}: N_k = {:?}, pivots {:?}, all checks hold: {}", r.ns, r.pivots, r.passed());
        for c in &r.checks {
            println!("  N = {:3}: max degree {} <= phi^-1(2N+1) = {}", c.n, c.max_degree, c.phi_inverse);
        }
    }
    let r = qpn_sequence(&w, 0, &phi, spec.n_star, Family::Plus).unwrap();
    println!(
        "plus x = 0: N_x = {:?}, {} radii checked, all hold: {}",
        r.n_x,
        r.checks.len(),
        r.passed()
    );
}
