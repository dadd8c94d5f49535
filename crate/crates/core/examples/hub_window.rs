//! Build the default spine-with-hubs window, certify it, and print it in the
//! plain-text graph format.
//!
//!     cargo run --example hub_window [-- cubic]

use repulse::graph::io::write_graph;
use repulse::repulsion::{
    check_repulsion, classify_vertices, generate_hub_graph, HubFamilySpec, PhiFunction,
};

fn main() {
    let spec = match std::env::args().nth(1).as_deref() {
        Some("cubic") => HubFamilySpec::cubic_window(),
        _ => HubFamilySpec::default_window(),
    };
    let w = generate_hub_graph(&spec).expect("spec is repulsive");
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();

    let report = check_repulsion(&w, &phi, spec.n_star, spec.family);
    println!(
        "{} vertices, {} edges, family {}, repulsive: {}",
        w.vertex_count(),
        w.edge_count(),
        spec.family.name(),
        report.passed()
    );
    let c = classify_vertices(&w, &phi, spec.n_star);
    println!("high-degree vertices: {:?}", c.v_star_c);
    for (x, k) in &c.kernels {
        println!("  kernel of {x}: {} vertices", k.len());
    }

    // an extra hub next to the first one breaks the spacing
    let mut bad = spec.clone();
    bad.hubs.insert(1, repulse::repulsion::Hub { position: 12, degree: 5 });
    match generate_hub_graph(&bad) {
        Ok(_) => println!("unexpected: crowded hubs accepted"),
        Err(e) => println!("crowded hubs rejected: {e}"),
    }

    let text = write_graph(&w);
    println!("--- first lines of the graph file ---");
    for line in text.lines().take(5) {
        println!("{line}");
    }
}
