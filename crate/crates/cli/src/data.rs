use std::path::PathBuf;

use clap::Args;
use qpm_core::amplify::TrialRng;
use qpm_core::text::{build_index, closest_match_classical, plant_pattern, PlantSpec, Symbol};

use crate::report::{load_pattern, load_text, write_output, BaselineReport};
use crate::{CliResult, Failure};

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[arg(long)]
    text: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

pub fn index(args: IndexArgs) -> CliResult<()> {
    let text = load_text(&args.text)?;
    let index = build_index(&text)?;
    let mut json = index.to_json()?;
    json.push('\n');
    write_output(&args.out, json.as_bytes())?;
    println!(
        "indexed {} positions, {} symbols -> {}",
        index.n(),
        index.alphabet().count(),
        args.out.display()
    );
    Ok(())
}

#[derive(Debug, Args)]
pub struct BaselineArgs {
    #[arg(long)]
    text: PathBuf,
    /// Literal pattern, or `@path` to read it from a file.
    #[arg(long)]
    pattern: String,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn baseline(args: BaselineArgs) -> CliResult<()> {
    let text = load_text(&args.text)?;
    let pattern = load_pattern(&args.pattern)?;
    let report = BaselineReport::from(&closest_match_classical(&text, &pattern)?);
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    match &args.out {
        Some(path) => write_output(path, json.as_bytes())?,
        None => print!("{json}"),
    }
    Ok(())
}

/// Defaults reproduce the N = 212, M = 10 instance used for the averaged
/// distribution experiment: a 4-letter background with the pattern planted
/// at offset `N - M - ⌊(N - M)/8⌋` = 177.
#[derive(Debug, Args)]
pub struct PlantArgs {
    #[arg(long, default_value_t = 212)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    m: usize,
    /// Background letters are the first `alphabet` of a..z, A..Z.
    #[arg(long, default_value_t = 4)]
    alphabet: u32,
    #[arg(long)]
    offset: Option<usize>,
    /// Draw the pattern from letters that never occur in the background.
    #[arg(long)]
    exclusive: bool,
    /// Also plant the first half of the pattern at this offset.
    #[arg(long)]
    half_match: Option<usize>,
    #[arg(long, env = "QPM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    text_out: PathBuf,
    #[arg(long)]
    pattern_out: PathBuf,
}

const LETTERS: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

fn letters(symbols: &[Symbol]) -> Vec<u8> {
    symbols.iter().map(|&s| LETTERS[s as usize]).collect()
}

pub fn plant(args: PlantArgs) -> CliResult<()> {
    let needed = args.alphabet as usize + if args.exclusive { args.m } else { 0 };
    if needed > LETTERS.len() {
        return Err(Failure::Usage(format!(
            "needs {needed} distinct letters, at most {} available",
            LETTERS.len()
        )));
    }
    let spec = PlantSpec {
        n: args.n,
        m: args.m,
        alphabet: args.alphabet,
        offset: args.offset,
        exclusive: args.exclusive,
        half_match: args.half_match,
    };
    let instance = plant_pattern(&spec, &mut TrialRng::new(args.seed, 0))?;
    write_output(&args.text_out, &letters(instance.text.symbols()))?;
    write_output(&args.pattern_out, &letters(instance.pattern.symbols()))?;
    println!("planted offset {}", instance.offset);
    Ok(())
}
