//! Bernoulli percolation: the half-line closed form `p^N`, then site
//! percolation on the default hub window at `p = 0.5 / e^γ` against the
//! path-count envelope.
//!
//!     cargo run --release --example percolation [-- seed]

use repulse::applications::{percolation_envelope, percolation_run, PercolationConfig, PercolationMode};
use repulse::enumeration::count_simple_paths;
use repulse::graph::builders::half_line;
use repulse::repulsion::{generate_hub_graph, HubFamilySpec, PhiFunction};
use repulse::temperedness::{gamma_series, Preset};

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let radii: Vec<u32> = (1..=10).collect();

    let line = half_line(12);
    let cfg = PercolationConfig {
        mode: PercolationMode::Bond,
        p: 0.5,
        trials: 100_000,
        reach_radii: radii.clone(),
        rng_seed: seed,
    };
    let t = percolation_run(&line, 0, &cfg).unwrap();
    println!("half-line, p = 0.5, seed {seed}");
    println!("N,estimate,stderr,exact");
    for r in &t.rows {
        println!("{},{:.5},{:.5},{:.5}", r.n, r.estimate, r.stderr, 0.5f64.powi(r.n as i32));
    }

    let spec = HubFamilySpec::default_window();
    let w = generate_hub_graph(&spec).unwrap();
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();
    let preset = Preset::parse("paths-default").unwrap();
    let q = gamma_series(&preset.weight, &phi, &preset.sequence(spec.n_star).unwrap(), 1e-9)
        .unwrap()
        .q();
    let cfg = PercolationConfig {
        mode: PercolationMode::Site,
        p: 0.5 / q,
        ..cfg
    };
    let t = percolation_run(&w, 0, &cfg).unwrap();
    let paths: Vec<_> = radii.iter().map(|&n| count_simple_paths(&w, 0, n, None).unwrap()).collect();
    println!("\nhub window, site mode, p = {:.5}", cfg.p);
    println!("N,conditioned,stderr,envelope,holds");
    for e in percolation_envelope(&t, &paths) {
        println!("{},{:.5},{:.5},{:.5},{}", e.n, e.estimate, e.stderr, e.bound, e.holds);
    }
}
