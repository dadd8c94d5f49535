//! Good animals and the shell split of `G(A; g)` used for the γ bound.
//!
//!     cargo run --release --example good_animals

use repulse::enumeration::for_each_animal;
use repulse::graph::induced_animal;
use repulse::repulsion::{generate_hub_graph, HubFamilySpec, PhiFunction};
use repulse::temperedness::{gamma_series, is_good_animal, shell_estimate, Preset};

fn main() {
    let spec = HubFamilySpec::cubic_window();
    let w = generate_hub_graph(&spec).unwrap();
    let phi = PhiFunction::new(spec.phi.clone()).unwrap();
    let preset = Preset::parse("animals-default").unwrap();
    let ts = preset.sequence(spec.n_star).unwrap();
    let gamma = gamma_series(&preset.weight, &phi, &ts, 1e-9).unwrap().gamma;

    for n in [5, 20, 39] {
        let (mut total, mut good, mut worst) = (0, 0, 0.0f64);
        let mut shells_ok = true;
        for_each_animal(&w, 0, n, |vs| {
            let a = induced_animal(&w, vs).unwrap();
            total += 1;
            good += usize::from(is_good_animal(&a, &phi).0);
            let e = shell_estimate(&a, &preset.weight, &phi, &ts).unwrap();
            worst = worst.max(e.shell_sum);
            shells_ok &= e.shells_within_capacity;
        })
        .unwrap();
        println!(
            "N = {n:2}: {good}/{total} good; max shell sum {worst:.4} <= gamma {gamma:.4}; shells within capacity: {shells_ok}"
        );
    }
}
