//! End-to-end run of a config file through the harness, in any report format.
//!
//!     cargo run --release --example pipeline -- configs/paths.toml [csv|json-lines|human]

use repulse::harness::{emit_report, run_validated, validate_config, Format, Stage};

const DEFAULT: &str = r#"
[graph]
source = "window"
name = "default"

[caps]
paths = 120
animals = 120

[experiment]
kind = "paths"
"#;

fn main() {
    let mut args = std::env::args().skip(1);
    let raw = match args.next() {
        Some(path) => std::fs::read_to_string(&path).expect("readable config"),
        None => DEFAULT.to_string(),
    };
    let format: Format = args.next().as_deref().unwrap_or("human").parse().unwrap();
    let v = match validate_config(&raw) {
        Ok(v) => v,
        Err(errors) => {
            for e in errors {
                eprintln!("config: {e}");
            }
            std::process::exit(2);
        }
    };
    let report = run_validated(&v, Stage::Experiment);
    print!("{}", String::from_utf8(emit_report(&report, format)).unwrap());
    std::process::exit(if report.overall() { 0 } else { 1 });
}
