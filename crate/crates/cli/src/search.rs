use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use qpm_core::amplify::{JMode, RMode, Report, RunConfig, SearchInstance};
use qpm_core::text::{build_index, recode_kgrams};

use crate::report::{
    load_pattern, load_text, write_output, ArgmaxReport, BaselineReport, DistributionReport,
    ExperimentSpec, OutputFormat, ReportBundle, SpecOnly, ToolInfo,
};
use crate::{CliResult, Failure};

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    text: PathBuf,
    /// Literal pattern, or `@path` to read it from a file.
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value_t = 2000)]
    trials: usize,
    #[arg(long, env = "QPM_SEED", default_value_t = 0)]
    seed: u64,
    /// `random` or `fixed:<k>`.
    #[arg(long = "r", default_value = "random")]
    r_mode: String,
    /// `random` or `cycle`.
    #[arg(long = "j", default_value = "random")]
    j_mode: String,
    /// Search over 2- or 3-grams instead of single symbols.
    #[arg(long)]
    kgram: Option<usize>,
    /// `csv` writes the distribution here and the full report to `<out>.bundle.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Print elapsed times to stderr.
    #[arg(long)]
    timings: bool,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// A JSON report written by `search`.
    bundle: PathBuf,
}

fn parse_modes(spec: &ExperimentSpec) -> CliResult<(RMode, JMode)> {
    let r = spec
        .r_mode
        .parse()
        .map_err(|e| Failure::Usage(format!("--r: {e}")))?;
    let j = spec
        .j_mode
        .parse()
        .map_err(|e| Failure::Usage(format!("--j: {e}")))?;
    Ok((r, j))
}

fn check(spec: &ExperimentSpec) -> CliResult<()> {
    if spec.trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    if let Some(k) = spec.kgram {
        if !(2..=3).contains(&k) {
            return Err(Failure::Usage(format!("--kgram must be 2 or 3, got {k}")));
        }
    }
    if spec.format == OutputFormat::Csv && spec.out.is_none() {
        return Err(Failure::Usage("--format csv needs --out".into()));
    }
    parse_modes(spec).map(|_| ())
}

/// Runs the experiment described by `spec` without touching its outputs.
pub fn execute(spec: &ExperimentSpec, timings: bool) -> CliResult<ReportBundle> {
    check(spec)?;
    let (r_mode, j_mode) = parse_modes(spec)?;
    let started = Instant::now();
    let mut text = load_text(&spec.text)?;
    let mut pattern = load_pattern(&spec.pattern)?;
    pattern.check_fits(&text)?;
    if let Some(k) = spec.kgram {
        (text, pattern) = recode_kgrams(&text, &pattern, k)?;
    }
    let index = build_index(&text)?;
    let instance = SearchInstance::new(&text, &pattern, &index)?;
    if timings {
        eprintln!("setup: {:.3?}", started.elapsed());
    }

    let config = RunConfig {
        trials: spec.trials,
        seed: spec.seed,
        r_mode,
        j_mode,
        report: Report::Distribution,
    };
    let started = Instant::now();
    let estimate = instance.estimate_distribution(&config)?;
    if timings {
        eprintln!("distribution: {:.3?}", started.elapsed());
    }
    let started = Instant::now();
    let success = instance.success_probability(&RunConfig {
        report: Report::Outcomes,
        ..config
    })?;
    if timings {
        eprintln!("sampled runs: {:.3?}", started.elapsed());
    }

    let position = estimate.distribution.argmax();
    let (lo, hi) = estimate.interval(position);
    Ok(ReportBundle {
        tool: ToolInfo::current(),
        spec: spec.clone(),
        argmax: ArgmaxReport {
            position,
            probability: estimate.distribution.probabilities[position],
            ci95: [lo, hi],
        },
        distribution: DistributionReport {
            n: estimate.distribution.n,
            m: estimate.distribution.m,
            trials: spec.trials,
            seed: spec.seed,
            r_mode: r_mode.to_string(),
            probabilities: estimate.distribution.probabilities,
            std_errors: estimate.std_errors,
        },
        baseline: BaselineReport::from(instance.baseline()),
        success,
    })
}

fn distribution_csv(report: &DistributionReport) -> String {
    let mut csv = String::from("position,probability\n");
    for (i, p) in report.probabilities.iter().enumerate() {
        csv.push_str(&format!("{i},{p}\n"));
    }
    csv
}

fn print_summary(bundle: &ReportBundle) {
    let d = &bundle.distribution;
    let a = &bundle.argmax;
    let b = &bundle.baseline;
    let s = &bundle.success;
    println!(
        "n={} m={} trials={} seed={} r={} j={}",
        d.n, d.m, d.trials, d.seed, d.r_mode, bundle.spec.j_mode
    );
    println!(
        "{:<10} {:>8}   {:<10} {:?}",
        "measured", a.position, "classical", b.offsets
    );
    println!(
        "{:<10} {:>8.5}   {:<10} {}/{}",
        "prob", a.probability, "score", b.best_score, d.m
    );
    println!(
        "argmax in classical tie set: {}",
        if b.offsets.contains(&a.position) {
            "yes"
        } else {
            "no"
        }
    );
    println!(
        "success rate {:.4} ({}/{}), 95% Wilson [{:.4}, {:.4}]",
        s.rate, s.successes, s.trials, s.wilson_low, s.wilson_high
    );
}

pub fn search(args: SearchArgs) -> CliResult<()> {
    let spec = ExperimentSpec {
        text: args.text,
        pattern: args.pattern,
        trials: args.trials,
        seed: args.seed,
        r_mode: args.r_mode,
        j_mode: args.j_mode,
        kgram: args.kgram,
        out: args.out,
        format: args.format,
    };
    let bundle = execute(&spec, args.timings)?;
    if let Some(out) = &spec.out {
        match spec.format {
            OutputFormat::Json => write_output(out, bundle.to_json()?.as_bytes())?,
            OutputFormat::Csv => {
                write_output(out, distribution_csv(&bundle.distribution).as_bytes())?;
                let mut sidecar = out.clone().into_os_string();
                sidecar.push(".bundle.json");
                write_output(&PathBuf::from(sidecar), bundle.to_json()?.as_bytes())?;
            }
        }
    }
    print_summary(&bundle);
    Ok(())
}

pub fn replay(args: ReplayArgs) -> CliResult<()> {
    let recorded = fs::read_to_string(&args.bundle)?;
    let SpecOnly { spec } = serde_json::from_str(&recorded)?;
    let rerun = execute(&spec, false)?.to_json()?;
    if rerun != recorded {
        return Err(Failure::Check(format!(
            "replay of {} differs from the recorded report",
            args.bundle.display()
        )));
    }
    println!("replay identical: {}", args.bundle.display());
    Ok(())
}
