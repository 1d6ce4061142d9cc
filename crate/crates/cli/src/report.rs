use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use qpm_core::amplify::SuccessEstimate;
use qpm_core::text::{ClassicalMatchResult, Pattern, Text};
use serde::{Deserialize, Serialize};

use crate::{CliResult, Failure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    #[default]
    Json,
}

/// Everything needed to rerun a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub text: PathBuf,
    /// Literal pattern, or `@path` to read it from a file.
    pub pattern: String,
    pub trials: usize,
    pub seed: u64,
    pub r_mode: String,
    pub j_mode: String,
    pub kgram: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineReport {
    pub best_score: usize,
    pub offsets: Vec<usize>,
}

impl From<&ClassicalMatchResult> for BaselineReport {
    fn from(r: &ClassicalMatchResult) -> Self {
        BaselineReport {
            best_score: r.best_score,
            offsets: r.offsets.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionReport {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub r_mode: String,
    pub probabilities: Vec<f64>,
    pub std_errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArgmaxReport {
    pub position: usize,
    pub probability: f64,
    pub ci95: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        ToolInfo {
            name: "qpm",
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

/// A search report. Wall-clock timings are deliberately absent so that
/// equal specs give byte-identical files; `--timings` prints them to stderr.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportBundle {
    pub tool: ToolInfo,
    pub spec: ExperimentSpec,
    pub distribution: DistributionReport,
    pub argmax: ArgmaxReport,
    pub baseline: BaselineReport,
    pub success: SuccessEstimate,
}

#[derive(Debug, Deserialize)]
pub struct SpecOnly {
    pub spec: ExperimentSpec,
}

impl ReportBundle {
    pub fn to_json(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// File contents with one trailing line terminator removed.
pub fn read_input(path: &Path) -> CliResult<Vec<u8>> {
    let mut bytes = fs::read(path).map_err(|e| {
        Failure::Core(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
    })?;
    if bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    Ok(bytes)
}

/// `@path` reads a file, anything else is taken literally.
pub fn literal_or_file(arg: &str) -> CliResult<Vec<u8>> {
    match arg.strip_prefix('@') {
        Some(path) => read_input(Path::new(path)),
        None => Ok(arg.as_bytes().to_vec()),
    }
}

pub fn load_text(path: &Path) -> CliResult<Text> {
    Ok(Text::from_bytes(&read_input(path)?)?)
}

pub fn load_pattern(arg: &str) -> CliResult<Pattern> {
    Ok(Pattern::from_bytes(&literal_or_file(arg)?)?)
}

pub fn write_output(path: &Path, contents: &[u8]) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| {
        Failure::Core(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())).into())
    })
}
