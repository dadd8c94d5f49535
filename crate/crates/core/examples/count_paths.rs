//! Exact counts of simple paths and departure-unique walks on the grid,
//! with the log-space bounds they are checked against.
//!
//!     cargo run --release --example count_paths [-- max_n]

use repulse::enumeration::{count_simple_paths, count_theta_paths};
use repulse::graph::builders::grid_window;

fn main() {
    let max_n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let w = grid_window(max_n);
    let x = w.origin().unwrap();

    println!("N,count,log_count,bound12,bound13,theta_count");
    for n in 1..=max_n {
        let s = count_simple_paths(&w, x, n, None).unwrap();
        // theta walks grow much faster; stop at 8
        let (tc, b12) = if n <= 8 {
            let t = count_theta_paths(&w, x, n).unwrap();
            (t.count.to_string(), t.bound_12.unwrap())
        } else {
            ("-".into(), f64::NAN)
        };
        println!(
            "{n},{},{:.6},{:.6},{:.6},{tc}",
            s.count,
            s.ln_count(),
            b12,
            s.bound_13.unwrap()
        );
    }
}
