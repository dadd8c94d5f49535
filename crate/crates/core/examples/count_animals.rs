//! Site animals containing a vertex: grid counts, and counts at the radii
//! `N_k` of the default hub window against `q̄^N` with `q̄ = e^γ`.
//!
//!     cargo run --release --example count_animals

use repulse::enumeration::{count_animals, verify_exponential_bound};
use repulse::graph::builders::grid_window;
use repulse::repulsion::{generate_hub_graph, Family, HubFamilySpec, PhiFunction};
use repulse::temperedness::{gamma_series, qpn_sequence, Preset};

fn main() {
    let w = grid_window(6);
    let x = w.origin().unwrap();
    print!("grid |A_N(0)|:");
    for n in 1..=7 {
        print!(" {}", count_animals(&w, x, n, None).unwrap().count);
    }
    println!();

    let spec = HubFamilySpec::cubic_window();
    let w = generate_hub_graph(&spec).unwrap();
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();
    let seq = qpn_sequence(&w, 0, &phi, spec.n_star, Family::Minus).unwrap();
    let preset = Preset::parse("animals-default").unwrap();
    let gs = gamma_series(&preset.weight, &phi, &preset.sequence(spec.n_star).unwrap(), 1e-9).unwrap();
    println!("cubic window: N_k = {:?}, gamma = {:.6}, q = {:.4}", seq.ns, gs.gamma, gs.q());

    let counts: Vec<_> = seq.ns.iter().map(|&n| count_animals(&w, 0, n, None).unwrap()).collect();
    for v in verify_exponential_bound(&counts, gs.q(), &seq.ns) {
        println!(
            "N = {:3}  count = {:>4}  log count = {:.3}  N log q = {:.3}  {}",
            v.n,
            v.count.unwrap(),
            v.ln_count,
            v.ln_bound,
            if v.passed { "ok" } else { "VIOLATED" }
        );
    }
}
