//! Greedy animals: exact and heuristic maxima of random vertex weights, and
//! the growth experiment for `S_{N_k}/N_k` against its Chernoff envelope.
//!
//!     cargo run --release --example greedy [-- replications]

use repulse::applications::{greedy_growth_experiment, greedy_score, sample_weights, Law, WeightModel};
use repulse::enumeration::EnumerationCaps;
use repulse::graph::builders::grid_window;
use repulse::repulsion::{generate_hub_graph, Family, HubFamilySpec, PhiFunction};
use repulse::temperedness::{gamma_series, qpn_sequence, Preset};

fn main() {
    let reps: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let caps = EnumerationCaps::default();

    let model = WeightModel::new(Law::Exponential { rate: 1.0 }, 1.0, false).unwrap();
    let w = grid_window(5);
    let x = w.origin().unwrap();
    let y = sample_weights(&w, x, 5, &model, 3, 0);
    for n in 1..=6 {
        let exact = greedy_score(&w, x, n, &y, true, &caps).unwrap();
        let heur = greedy_score(&w, x, n, &y, false, &caps).unwrap();
        println!(
            "grid N = {n}: exact {:.4} ({}), heuristic lower bound {:.4}",
            exact.value, exact.method, heur.value
        );
    }

    let spec = HubFamilySpec::cubic_window();
    let w = generate_hub_graph(&spec).unwrap();
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();
    let preset = Preset::parse("animals-default").unwrap();
    let gs = gamma_series(&preset.weight, &phi, &preset.sequence(spec.n_star).unwrap(), 1e-9).unwrap();
    let ns = qpn_sequence(&w, 0, &phi, spec.n_star, Family::Minus).unwrap().ns;
    let model = WeightModel::new(Law::Exponential { rate: 1.0 }, 1.0, true).unwrap();
    let y = gs.gamma * model.c + 1.0;
    let caps = EnumerationCaps { animals: 240, ..caps };
    let exp = greedy_growth_experiment(&w, 0, &ns, &model, reps, y, &gs, 7, &caps).unwrap();
    println!("\ncubic window, Y = {:.4}, t = {:.4}, {} replications", exp.y, exp.t, exp.replications);
    println!("N,mean_ratio,max_ratio,frequency,envelope,within_slack");
    for r in &exp.rows {
        println!(
            "{},{:.4},{:.4},{},{:.3e},{}",
            r.n, r.mean_ratio, r.max_ratio, r.frequency, r.envelope, r.within_slack
        );
    }
}
