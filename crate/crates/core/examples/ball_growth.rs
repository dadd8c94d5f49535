//! Sphere and ball sizes against `q^N` and `B_x q^N`.
//!
//!     cargo run --example ball_growth

use repulse::applications::ball_growth_check;
use repulse::graph::builders::grid_window;
use repulse::repulsion::{generate_hub_graph, HubFamilySpec, PhiFunction};
use repulse::temperedness::{gamma_series, Preset};

fn main() {
    let spec = HubFamilySpec::default_window();
    let w = generate_hub_graph(&spec).unwrap();
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();
    let preset = Preset::parse("paths-default").unwrap();
    let q = gamma_series(&preset.weight, &phi, &preset.sequence(spec.n_star).unwrap(), 1e-9)
        .unwrap()
        .q();
    println!("hub window, q = {q:.5}");
    println!("N,sphere,ball,q^N,B_x q^N");
    for r in ball_growth_check(&w, 0, q, &[29, 40, 69, 100, 119]).unwrap() {
        println!("{},{},{},{:.3},{:.3}", r.n, r.sphere, r.ball, r.q_power, r.b_x * r.q_power);
    }

    // |S_N| = 4N on the grid, so q = 2 only wins from N = 4 on
    let g = grid_window(10);
    println!("\ngrid, q = 2");
    for r in ball_growth_check(&g, g.origin().unwrap(), 2.0, &[1, 2, 4, 8, 10]).unwrap() {
        println!("N = {:2}: |S_N| = {:3} <= {:.0}: {}", r.n, r.sphere, r.q_power, r.sphere_holds);
    }
}
