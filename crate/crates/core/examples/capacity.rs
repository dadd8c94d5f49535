//! λ-capacity of animals: exact values against `max{1, 2N/λ}`, the backbone
//! decomposition of one animal, and the path showing the factor 2 is sharp.
//!
//!     cargo run --release --example capacity

use repulse::capacity::{backbone_decompose, optimality_witness, verify_capacity_bounds};
use repulse::enumeration::for_each_animal;
use repulse::graph::builders::grid;
use repulse::graph::induced_animal;

fn main() {
    let w = grid(6, 6);
    for lambda in [2.0, 3.0, 4.0] {
        for n in [4u32, 6, 8] {
            let (mut total, mut worst, mut bad) = (0, 0, 0);
            for_each_animal(&w, 14, n, |vs| {
                let a = induced_animal(&w, vs).unwrap();
                let v = verify_capacity_bounds(&a, lambda).unwrap();
                total += 1;
                worst = worst.max(v.capacity);
                bad += usize::from(!v.passed());
            })
            .unwrap();
            let bound = (2.0 * n as f64 / lambda).max(1.0);
            println!("lambda {lambda} N {n}: {total} animals, max capacity {worst} <= {bound}, {bad} violations");
        }
    }

    let a = induced_animal(&w, &[0, 1, 2, 3, 7, 13, 19, 8, 14]).unwrap();
    println!("\nbackbone decomposition:\n{}", backbone_decompose(&a).render());

    let wit = optimality_witness(100, 0.05).unwrap();
    println!(
        "path of length {}: capacity {} at lambda {} vs threshold {:.4}: {}",
        wit.length, wit.capacity, wit.lambda, wit.threshold, wit.holds
    );
}
