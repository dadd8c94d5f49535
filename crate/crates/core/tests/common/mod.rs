#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use repulse::graph::GraphWindow;
use repulse::repulsion::{generate_hub_graph, Family, Hub, HubFamilySpec, PhiFunction, PhiSpec};

/// A random spine-with-hubs spec that passes certification, drawn from `seed`.
pub fn random_hub_spec(seed: u64) -> HubFamilySpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phi = if rng.random_bool(0.5) {
        PhiSpec::Affine { slope: 1.0, intercept: 0.0 }
    } else {
        PhiSpec::Power { scale: 1.0, exponent: 2.0, offset: -16.0 }
    };
    let f = PhiFunction::new(phi.clone()).unwrap();
    let spine_length = rng.random_range(12..=48u32);
    let mut hubs = Vec::new();
    let mut pos = rng.random_range(1..=6u32);
    while pos + 1 < spine_length && hubs.len() < 4 {
        let degree = rng.random_range(3..=6u32);
        hubs.push(Hub { position: pos, degree });
        // the gap must cover phi of the smaller degree of any later pair
        let need = f.at(degree as u64).ceil().max(1.0) as u32;
        pos += need + rng.random_range(0..=4u32);
    }
    HubFamilySpec {
        spine_length,
        hubs,
        n_star: 2,
        phi,
        family: Family::Minus,
    }
}

pub fn random_hub_window(seed: u64) -> (HubFamilySpec, GraphWindow) {
    let spec = random_hub_spec(seed);
    let w = generate_hub_graph(&spec).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
    (spec, w)
}

/// `criterion k: PASS|FAIL  detail`
pub fn report(k: u32, ok: bool, detail: &str) {
    println!("criterion {k}: {}  {detail}", if ok { "PASS" } else { "FAIL" });
}
