//! Runs each example binary and expects exit 0.
//!
//! `cargo test` builds the examples next to the test binaries; when only this
//! target was built, they are built first with the cargo that launched us.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [(&str, &[&str]); 13] = [
    ("hub_window", &[]),
    ("hub_window", &["cubic"]),
    ("count_paths", &[]),
    ("count_animals", &[]),
    ("capacity", &[]),
    ("gamma", &[]),
    ("qpn", &[]),
    ("good_animals", &[]),
    ("percolation", &[]),
    ("randic", &[]),
    ("greedy", &["200"]),
    ("pipeline", &[]),
    ("ball_growth", &[]),
];

fn examples_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().join("examples")
}

#[test]
fn every_example_runs() {
    let dir = examples_dir();
    if EXAMPLES.iter().any(|(name, _)| !dir.join(name).exists()) {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo)
            .args(["build", "--examples", "-p", "repulse"])
            .status()
            .unwrap();
        assert!(status.success());
    }
    for (name, args) in EXAMPLES {
        let out = Command::new(dir.join(name))
            .args(args)
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .output()
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            out.status.success(),
            "{name} {args:?} exited {:?}\n{}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(!out.stdout.is_empty(), "{name} printed nothing");
    }
}
