use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Context only; never affects the overall verdict.
    Info,
}

impl Verdict {
    pub fn of(holds: bool) -> Self {
        if holds {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Info => "info",
        }
    }
}

/// One line of a report: `lhs ≤ rhs` at order `n` for the labelled equation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub step: String,
    /// Equation label, `-` for rows that check nothing.
    pub equation: String,
    pub n: Option<u32>,
    pub lhs: String,
    pub rhs: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepError {
    pub step: String,
    pub message: String,
}

/// Header line of the json-lines format and the non-row half of a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Header {
    tool: String,
    version: String,
    seed: Option<u64>,
    config: String,
    warnings: Vec<String>,
    error: Option<StepError>,
    overall: bool,
}

/// Pipeline output. Wall-clock timings are deliberately left out so that the
/// same config and seed give byte-identical reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub seed: Option<u64>,
    /// The validated config as compact JSON.
    pub config: String,
    pub warnings: Vec<String>,
    pub rows: Vec<Row>,
    pub error: Option<StepError>,
}

impl Report {
    pub fn new(config: String, seed: Option<u64>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed,
            config,
            warnings: Vec::new(),
            rows: Vec::new(),
            error: None,
        }
    }

    /// No captured error and no failing row.
    pub fn overall(&self) -> bool {
        self.error.is_none() && self.rows.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn push(
        &mut self,
        step: &str,
        equation: &str,
        n: Option<u32>,
        lhs: impl ToString,
        rhs: impl ToString,
        verdict: Verdict,
        detail: impl Into<String>,
    ) {
        self.rows.push(Row {
            step: step.into(),
            equation: equation.into(),
            n,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            verdict,
            detail: detail.into(),
        });
    }

    pub fn fail_step(&mut self, step: &str, message: impl Into<String>) {
        self.error = Some(StepError {
            step: step.into(),
            message: message.into(),
        });
    }

    fn header(&self) -> Header {
        Header {
            tool: self.tool.clone(),
            version: self.version.clone(),
            seed: self.seed,
            config: self.config.clone(),
            warnings: self.warnings.clone(),
            error: self.error.clone(),
            overall: self.overall(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    JsonLines,
    Human,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json-lines" | "jsonl" => Ok(Format::JsonLines),
            "human" => Ok(Format::Human),
            other => Err(format!("unknown format {other:?} (expected csv, json-lines or human)")),
        }
    }
}

/// Number formatting shared by every step: shortest round-trip form, in
/// exponent notation outside `[1e-6, 1e12)`.
pub fn num(v: f64) -> String {
    if v != 0.0 && v.is_finite() && !(1e-6..1e12).contains(&v.abs()) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

pub const CSV_COLUMNS: [&str; 7] = ["step", "equation", "n", "lhs", "rhs", "verdict", "detail"];

/// Renders a report. Output depends only on the report's contents.
pub fn emit_report(r: &Report, format: Format) -> Vec<u8> {
    let mut out = String::new();
    match format {
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(Vec::new());
            wr.write_record(CSV_COLUMNS).expect("in-memory write");
            for row in &r.rows {
                let n = row.n.map(|n| n.to_string()).unwrap_or_default();
                let fields = [
                    row.step.as_str(),
                    &row.equation,
                    &n,
                    &row.lhs,
                    &row.rhs,
                    row.verdict.as_str(),
                    &row.detail,
                ];
                wr.write_record(fields).expect("in-memory write");
            }
            return wr.into_inner().expect("in-memory flush");
        }
        Format::JsonLines => {
            out.push_str(&serde_json::to_string(&r.header()).expect("header serializes"));
            out.push('\n');
            for row in &r.rows {
                out.push_str(&serde_json::to_string(row).expect("row serializes"));
                out.push('\n');
            }
        }
        Format::Human => {
            let seed = r.seed.map(|s| s.to_string()).unwrap_or_else(|| "none".into());
            let overall = if r.overall() { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{} {}  seed {}  overall {}", r.tool, r.version, seed, overall);
            let _ = writeln!(out, "config {}", r.config);
            for w in &r.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
            if let Some(e) = &r.error {
                let _ = writeln!(out, "error at {}: {}", e.step, e.message);
            }
            if !r.rows.is_empty() {
                let cells: Vec<[String; 6]> = r
                    .rows
                    .iter()
                    .map(|row| {
                        [
                            row.step.clone(),
                            row.equation.clone(),
                            row.n.map(|n| n.to_string()).unwrap_or_else(|| "-".into()),
                            row.lhs.clone(),
                            row.rhs.clone(),
                            row.verdict.as_str().to_uppercase(),
                        ]
                    })
                    .collect();
                let head = ["step", "eq", "N", "lhs", "rhs", "verdict"];
                let mut width = head.map(str::len);
                for c in &cells {
                    for (i, s) in c.iter().enumerate() {
                        width[i] = width[i].max(s.chars().count());
                    }
                }
                let line = |out: &mut String, c: &[&str; 6], detail: &str| {
                    for (i, s) in c.iter().enumerate() {
                        let _ = write!(out, "{:<w$}  ", s, w = width[i]);
                    }
                    let _ = writeln!(out, "{detail}");
                };
                line(&mut out, &head, "detail");
                for (c, row) in cells.iter().zip(&r.rows) {
                    let refs = [&*c[0], &*c[1], &*c[2], &*c[3], &*c[4], &*c[5]];
                    line(&mut out, &refs, &row.detail);
                }
            }
        }
    }
    out.into_bytes()
}

/// Reads back the json-lines form.
pub fn parse_json_lines(text: &str) -> Result<Report, String> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().ok_or("empty input")?;
    let h: Header = serde_json::from_str(head).map_err(|e| format!("header: {e}"))?;
    let rows = lines
        .enumerate()
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("row {}: {e}", i + 1)))
        .collect::<Result<Vec<Row>, _>>()?;
    let r = Report {
        tool: h.tool,
        version: h.version,
        seed: h.seed,
        config: h.config,
        warnings: h.warnings,
        rows,
        error: h.error,
    };
    if r.overall() != h.overall {
        return Err("overall flag disagrees with the rows".into());
    }
    Ok(r)
}
