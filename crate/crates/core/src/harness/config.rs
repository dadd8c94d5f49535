use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::applications::{DegreeMode, PercolationMode, WeightModel};
use crate::enumeration::EnumerationCaps;
use crate::graph::VertexId;
use crate::repulsion::{Family, Hub, HubFamilySpec, PhiFunction, PhiSpec};
use crate::temperedness::{preflight_warning, Preset};

/// Where the graph comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GraphSource {
    /// A built-in hub window: `default` or `cubic`.
    Window { name: String },
    /// A graph file in the plain-text format of [`crate::graph::io`].
    File { path: String },
    /// A spine with hubs, certified against the configured `phi`.
    Hubs { spine_length: u32, hubs: Vec<Hub> },
}

impl GraphSource {
    fn named(&self) -> Option<HubFamilySpec> {
        match self {
            GraphSource::Window { name } if name == "default" => Some(HubFamilySpec::default_window()),
            GraphSource::Window { name } if name == "cubic" => Some(HubFamilySpec::cubic_window()),
            _ => None,
        }
    }
}

fn default_max_order() -> u32 {
    6
}

fn default_lambdas() -> Vec<f64> {
    vec![2.0, 3.0, 4.0, 5.0, 6.0]
}

fn default_radii() -> Vec<u32> {
    (1..=10).collect()
}

fn one() -> f64 {
    1.0
}

/// What the pipeline does after the counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Experiment {
    Paths {
        #[serde(default)]
        theta_walks: bool,
    },
    Animals {},
    Capacity {
        #[serde(default = "default_max_order")]
        max_order: u32,
        #[serde(default = "default_lambdas")]
        lambdas: Vec<f64>,
    },
    Percolation {
        mode: PercolationMode,
        /// Fixed retention probability.
        p: Option<f64>,
        /// `p = p_scale / q` with `q = e^γ`.
        p_scale: Option<f64>,
        trials: u64,
        #[serde(default = "default_radii")]
        radii: Vec<u32>,
    },
    Randic {
        theta: f64,
        #[serde(default)]
        degrees: DegreeMode,
    },
    Greedy {
        model: WeightModel,
        replications: u64,
        /// `Y = γ C + y_margin`
        #[serde(default = "one")]
        y_margin: f64,
    },
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Paths { .. } => "paths",
            Experiment::Animals {} => "animals",
            Experiment::Capacity { .. } => "capacity",
            Experiment::Percolation { .. } => "percolation",
            Experiment::Randic { .. } => "randic",
            Experiment::Greedy { .. } => "greedy",
        }
    }

    fn stochastic(&self) -> bool {
        matches!(self, Experiment::Percolation { .. } | Experiment::Greedy { .. })
    }

    fn default_preset(&self) -> String {
        match self {
            Experiment::Animals {} | Experiment::Greedy { .. } => "animals-default".into(),
            Experiment::Randic { theta, .. } => format!("randic({theta})"),
            _ => "paths-default".into(),
        }
    }
}

/// A validated experiment description; every field is filled.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub output: Option<String>,
    pub x: VertexId,
    pub n_star: u32,
    pub family: Family,
    pub preset: String,
    pub tol: f64,
    pub graph: GraphSource,
    pub phi: PhiSpec,
    pub caps: EnumerationCaps,
    pub experiment: Experiment,
}

impl ExperimentConfig {
    /// Makes a relative graph file path relative to `base`.
    pub fn resolve_paths(&mut self, base: &Path) {
        if let GraphSource::File { path } = &mut self.graph {
            if Path::new(path).is_relative() {
                *path = base.join(&path).to_string_lossy().into_owned();
            }
        }
    }
}

/// A config that passed validation, with non-fatal remarks.
#[derive(Debug, Clone, PartialEq)]
pub struct Validated {
    pub config: ExperimentConfig,
    pub warnings: Vec<String>,
}

const KEYS: [&str; 12] = [
    "seed", "threads", "output", "x", "n_star", "family", "preset", "tol", "graph", "phi", "caps",
    "experiment",
];

/// Parses and cross-checks a TOML config, reporting every problem found.
pub fn validate_config(raw: &str) -> Result<Validated, Vec<String>> {
    let table: toml::Table = toml::from_str(raw).map_err(|e| vec![e.to_string()])?;
    let mut errors = Vec::new();
    for key in table.keys() {
        if !KEYS.contains(&key.as_str()) {
            errors.push(format!("unknown key `{key}`"));
        }
    }
    let field = |key: &str| -> Option<toml::Value> { table.get(key).cloned() };
    fn parse<T: DeserializeOwned>(key: &str, v: Option<toml::Value>, errors: &mut Vec<String>) -> Option<T> {
        match v?.try_into() {
            Ok(t) => Some(t),
            Err(e) => {
                errors.push(format!("{key}: {}", e.to_string().trim()));
                None
            }
        }
    }
    let seed: Option<u64> = parse("seed", field("seed"), &mut errors);
    let threads: Option<usize> = parse("threads", field("threads"), &mut errors);
    let output: Option<String> = parse("output", field("output"), &mut errors);
    let x: Option<VertexId> = parse("x", field("x"), &mut errors);
    let n_star: Option<u32> = parse("n_star", field("n_star"), &mut errors);
    let family: Option<Family> = parse("family", field("family"), &mut errors);
    let preset: Option<String> = parse("preset", field("preset"), &mut errors);
    let tol: Option<f64> = parse("tol", field("tol"), &mut errors);
    let graph: Option<GraphSource> = parse("graph", field("graph"), &mut errors);
    let phi: Option<PhiSpec> = parse("phi", field("phi"), &mut errors);
    let caps: Option<EnumerationCaps> = parse("caps", field("caps"), &mut errors);
    let experiment: Option<Experiment> = parse("experiment", field("experiment"), &mut errors);

    if table.get("graph").is_none() {
        errors.push("missing [graph]".into());
    }
    if table.get("experiment").is_none() {
        errors.push("missing [experiment]".into());
    }
    let named = graph.as_ref().and_then(GraphSource::named);
    if let Some(GraphSource::Window { name }) = &graph {
        if named.is_none() {
            errors.push(format!("graph: unknown window {name:?} (expected default or cubic)"));
        }
    }
    let phi = phi.or_else(|| named.as_ref().map(|s| s.phi.clone()));
    if phi.is_none() && table.get("phi").is_none() {
        errors.push("missing [phi] (only built-in windows supply one)".into());
    }
    let phi_fn = phi.as_ref().and_then(|p| match PhiFunction::new(p.clone()) {
        Ok(f) => Some(f),
        Err(e) => {
            errors.push(format!("phi: {e}"));
            None
        }
    });
    let n_star = n_star.or_else(|| named.as_ref().map(|s| s.n_star));
    if n_star.is_none() && table.get("n_star").is_none() {
        errors.push("missing n_star (only built-in windows supply one)".into());
    }
    let tol = tol.unwrap_or(1e-9);
    if !(tol > 0.0) {
        errors.push(format!("tol: must be positive, got {tol}"));
    }
    if threads == Some(0) {
        errors.push("threads: must be at least 1".into());
    }

    let mut warnings = Vec::new();
    if let Some(exp) = &experiment {
        if exp.stochastic() && seed.is_none() && table.get("seed").is_none() {
            errors.push(format!("seed is required for the {} experiment", exp.name()));
        }
        check_experiment(exp, &mut errors, &mut warnings);
    }
    let preset = preset.or_else(|| experiment.as_ref().map(Experiment::default_preset));
    let parsed_preset = preset.as_ref().and_then(|p| match Preset::parse(p) {
        Ok(p) => Some(p),
        Err(e) => {
            errors.push(format!("preset: {e}"));
            None
        }
    });
    if let (Some(p), Some(f), Some(n)) = (&parsed_preset, &phi_fn, n_star) {
        if let Ok(ts) = p.sequence(n) {
            if let Some(w) = preflight_warning(&p.weight, f, &ts) {
                warnings.push(w);
            }
        }
    }
    if let (Some(Experiment::Greedy { .. }), Some(p)) = (&experiment, &preset) {
        if p != "animals-default" {
            warnings.push(format!("greedy envelope is meant for animals-default, got {p}"));
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }
    Ok(Validated {
        config: ExperimentConfig {
            seed,
            threads,
            output,
            x: x.unwrap_or(0),
            n_star: n_star.unwrap(),
            family: family.or_else(|| named.map(|s| s.family)).unwrap_or(Family::Minus),
            preset: preset.unwrap(),
            tol,
            graph: graph.unwrap(),
            phi: phi.unwrap(),
            caps: caps.unwrap_or_default(),
            experiment: experiment.unwrap(),
        },
        warnings,
    })
}

fn check_experiment(exp: &Experiment, errors: &mut Vec<String>, warnings: &mut Vec<String>) {
    match exp {
        Experiment::Capacity { max_order, lambdas } => {
            if *max_order == 0 {
                errors.push("experiment.max_order: must be at least 1".into());
            }
            for &l in lambdas {
                if !(l.is_finite() && l > 0.0) {
                    errors.push(format!("experiment.lambdas: {l} is not positive"));
                } else if l <= 1.0 {
                    warnings.push(format!("lambda {l} <= 1: every set is admissible"));
                }
            }
        }
        Experiment::Percolation {
            p,
            p_scale,
            trials,
            radii,
            ..
        } => {
            match (p, p_scale) {
                (Some(_), Some(_)) | (None, None) => {
                    errors.push("experiment: give exactly one of p and p_scale".into())
                }
                (Some(p), None) if !(0.0..=1.0).contains(p) => {
                    errors.push(format!("experiment.p: {p} is not a probability"))
                }
                (None, Some(s)) if !(*s >= 0.0) => {
                    errors.push(format!("experiment.p_scale: {s} is negative"))
                }
                _ => {}
            }
            if *trials == 0 {
                errors.push("experiment.trials: must be at least 1".into());
            }
            if radii.is_empty() || radii.contains(&0) {
                errors.push("experiment.radii: need positive radii".into());
            }
        }
        Experiment::Greedy {
            model,
            replications,
            y_margin,
        } => {
            if let Err(e) = WeightModel::new(model.law, model.c, model.scaling) {
                errors.push(format!("experiment.model: {e}"));
            }
            if *replications == 0 {
                errors.push("experiment.replications: must be at least 1".into());
            }
            if !(*y_margin > 0.0) {
                errors.push("experiment.y_margin: must be positive".into());
            }
        }
        Experiment::Randic { theta, .. } if !theta.is_finite() => {
            errors.push("experiment.theta: must be finite".into());
        }
        _ => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_gets_defaults() {
        let v = validate_config(
            r#"
            [graph]
            source = "window"
            name = "default"
            [experiment]
            kind = "paths"
            "#,
        )
        .unwrap();
        assert_eq!(v.config.tol, 1e-9);
        assert_eq!(v.config.caps, EnumerationCaps::default());
        assert_eq!(v.config.preset, "paths-default");
        assert_eq!(v.config.n_star, 2);
        assert!(v.warnings.is_empty());
    }

    #[test]
    fn all_errors_are_listed() {
        let errs = validate_config(
            r#"
            bogus = 1
            n_star = 2
            [graph]
            source = "hubs"
            spine_length = 10
            hubs = []
            [phi]
            family = "table"
            values = [1.0, 2.0, 2.0]
            [experiment]
            kind = "percolation"
            mode = "bond"
            p = 0.5
            trials = 10
            "#,
        )
        .unwrap_err();
        let text = errs.join("\n");
        assert!(text.contains("unknown key `bogus`"), "{text}");
        assert!(text.contains("phi not strictly increasing"), "{text}");
        assert!(text.contains("seed is required"), "{text}");
    }

    #[test]
    fn divergent_preset_warns() {
        let v = validate_config(
            r#"
            n_star = 2
            preset = "animals-default"
            [graph]
            source = "window"
            name = "default"
            [phi]
            family = "loglog"
            upsilon = 1.0
            epsilon = 1.0
            [experiment]
            kind = "animals"
            "#,
        )
        .unwrap();
        assert_eq!(v.warnings.len(), 1);
        assert!(v.warnings[0].contains("likely diverges"));
    }
}
