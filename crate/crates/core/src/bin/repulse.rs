//! Command-line front end over `repulse::harness`.
//!
//! Every subcommand reads one TOML config and runs the pipeline up to its
//! stage. The process exits 0 iff the report passes, 1 when it fails and 2
//! on usage or config errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use repulse::graph::io::write_graph;
use repulse::harness::{
    build_window, emit_report, run_validated, validate_config, Format, Stage, Validated,
};

#[derive(Parser)]
#[command(name = "repulse", version, about = "Counting, capacity and percolation checks on repulsive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Experiment config (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; the THREADS variable overrides the config value.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// csv | json-lines | human. CSV columns: step,equation,n,lhs,rhs,verdict,detail.
    #[arg(long, global = true, default_value = "human")]
    format: String,
    /// Output file; defaults to the config `output` key, then stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, PartialEq, Eq)]
enum Command {
    /// Build or load the graph; --graph-out also writes it in the text format.
    Generate {
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Repulsion check.
    Check,
    /// Radii N_k (or N_x) from x.
    Sequence,
    /// gamma, q = e^gamma, partial sums and tail bound.
    Gamma,
    /// Exact counts at each feasible radius against q^N.
    Enumerate,
    /// Capacity bounds over all animals up to the configured order.
    Capacity,
    /// Percolation reach probabilities against the path-count envelope.
    Percolate,
    /// Randic index maxima against e^(gamma N).
    Randic,
    /// Greedy-animal growth experiment.
    Greedy,
    /// Every stage.
    Pipeline,
}

impl Command {
    fn stage(&self) -> Stage {
        match self {
            Command::Generate { .. } => Stage::Generate,
            Command::Check => Stage::Check,
            Command::Sequence => Stage::Sequence,
            Command::Gamma => Stage::Gamma,
            Command::Enumerate => Stage::Enumerate,
            _ => Stage::Experiment,
        }
    }

    /// Experiment kind a subcommand insists on.
    fn kind(&self) -> Option<&'static str> {
        match self {
            Command::Capacity => Some("capacity"),
            Command::Percolate => Some("percolation"),
            Command::Randic => Some("randic"),
            Command::Greedy => Some("greedy"),
            _ => None,
        }
    }
}

fn load(cli: &Cli) -> Result<Validated, Vec<String>> {
    let path = cli.config.as_ref().ok_or_else(|| vec!["--config is required".to_string()])?;
    let raw = std::fs::read_to_string(path).map_err(|e| vec![format!("{}: {e}", path.display())])?;
    let mut table: toml::Table = toml::from_str(&raw).map_err(|e| vec![e.to_string()])?;
    if let Some(seed) = cli.seed {
        let seed = i64::try_from(seed).map_err(|_| vec!["--seed must fit in 63 bits".to_string()])?;
        table.insert("seed".into(), toml::Value::Integer(seed));
    }
    let text = toml::to_string(&table).map_err(|e| vec![e.to_string()])?;
    let mut v = validate_config(&text)?;
    let base = path.parent().unwrap_or(Path::new("."));
    v.config.resolve_paths(base);
    if let Some(kind) = cli.command.kind() {
        let got = v.config.experiment.name();
        if got != kind {
            return Err(vec![format!("config experiment kind is {got}; this subcommand needs {kind}")]);
        }
    }
    Ok(v)
}

fn threads(cli: &Cli, v: &Validated) -> Result<Option<usize>, String> {
    if let Some(t) = cli.threads {
        return Ok(Some(t));
    }
    match std::env::var("THREADS") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| format!("THREADS={s:?} is not a count")),
        Err(_) => Ok(v.config.threads),
    }
}

fn run(cli: &Cli) -> Result<bool, String> {
    let format: Format = cli.format.parse()?;
    let v = load(cli).map_err(|errs| {
        let mut msg = String::from("invalid config:");
        for e in errs {
            msg.push_str("\n  ");
            msg.push_str(&e);
        }
        msg
    })?;
    if let Some(n) = threads(cli, &v)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    if let Command::Generate { graph_out: Some(path) } = &cli.command {
        let (w, _) = build_window(&v.config)?;
        std::fs::write(path, write_graph(&w)).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let report = run_validated(&v, cli.command.stage());
    let bytes = emit_report(&report, format);
    let out = cli.out.clone().or_else(|| v.config.output.as_ref().map(PathBuf::from));
    match out {
        Some(p) => std::fs::write(&p, bytes).map_err(|e| format!("{}: {e}", p.display()))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(|e| e.to_string())?;
        }
    }
    Ok(report.overall())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("repulse: {e}");
            ExitCode::from(2)
        }
    }
}
