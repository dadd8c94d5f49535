//! Experiment configs, the generate → check → sequence → gamma → enumerate
//! pipeline, and report emission.

mod config;
mod pipeline;
mod report;

pub use config::{validate_config, Experiment, ExperimentConfig, GraphSource, Validated};
pub use pipeline::{build_window, run_pipeline, run_until, run_validated, Stage};
pub use report::{emit_report, num, parse_json_lines, Format, Report, Row, StepError, Verdict, CSV_COLUMNS};
