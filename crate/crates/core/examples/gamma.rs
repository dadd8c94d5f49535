//! The series γ(g, φ) = 2 Σ g(t_{k+1}) / φ(t_k) with a certified tail.
//!
//!     cargo run --example gamma

use repulse::repulsion::{PhiFunction, PhiSpec};
use repulse::temperedness::{gamma_series, Preset, SequenceRule, TemperedSequence, WeightFunction};

fn main() {
    let loglog = PhiFunction::new(PhiSpec::LogLog { upsilon: 1.0, epsilon: 1.0 }).unwrap();
    let ts = TemperedSequence::new(SequenceRule::DoubleExp, None).unwrap();

    let s = gamma_series(&WeightFunction::Log, &loglog, &ts, 1e-9).unwrap();
    let exact = std::f64::consts::E * std::f64::consts::PI.powi(2) / 3.0;
    println!("log vs loglog: gamma = {:.9} (e pi^2 / 3 = {exact:.9})", s.gamma);
    println!("  partial sums {:?}", &s.partial_sums[..5]);
    println!("  tail bound {:.3e}, {:?}", s.tail_bound, s.certificate);

    match gamma_series(&WeightFunction::TLogT, &loglog, &ts, 1e-9) {
        Ok(s) => println!("t log t: unexpectedly gamma = {}", s.gamma),
        Err(e) => println!("t log t: {e}"),
    }

    let cubic = PhiFunction::new(PhiSpec::Power { scale: 1.0, exponent: 3.0, offset: 0.0 }).unwrap();
    for name in ["animals-default", "randic(1)", "randic(-0.5)"] {
        let p = Preset::parse(name).unwrap();
        let s = gamma_series(&p.weight, &cubic, &p.sequence(2).unwrap(), 1e-9).unwrap();
        println!("{name} vs t^3: gamma = {:.6}, q = {:.4}, converged {}", s.gamma, s.q(), s.converged);
    }
}
