//! Thin command-line front end over the library: run gap testers on files,
//! write embeddings, generate corpora, and measure probe counts.
//!
//! Exit codes: 0 = ACCEPT (or a non-tester command succeeded), 1 = REJECT,
//! 2 = any error, including bad flags.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use gapshear::{
    append_bench_csv, bench_grid, default_walk_period, gap_alpha, gap_ptas, gap_quadratic,
    generate, make_shared_randomness, sampled_random_walk, sublinear_embed, AperiodicityParams,
    BenchOptions, CorpusSpec, EmbedMode, Error, GeneratorKind, RateConfig, Result, RunReport,
    Seed, TesterMode, Text, Verdict, WalkParams,
};

#[derive(Parser)]
#[command(name = "gapshear", version, about = "Sublinear gap edit distance testers and embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two files are within edit distance k
    Gap(GapArgs),
    /// Embed one file into a Hamming-comparable symbol sequence
    Embed(EmbedArgs),
    /// Generate a string pair with planted edits
    Gen(GenArgs),
    /// Run a probe-count grid and append it to a CSV table
    Bench(BenchArgs),
}

#[derive(Args)]
struct GapArgs {
    x: PathBuf,
    y: PathBuf,
    /// Edit distance budget of the YES side
    #[arg(long)]
    k: usize,
    /// quadratic | alpha | ptas | walk
    #[arg(long, default_value = "quadratic")]
    mode: String,
    /// Diagonal group width (alpha mode)
    #[arg(long)]
    alpha: Option<usize>,
    /// Groups per LCE index block (alpha mode; chosen automatically if absent)
    #[arg(long)]
    block_b: Option<usize>,
    /// Aperiodicity window length (required in ptas mode)
    #[arg(long)]
    window: Option<usize>,
    /// Gap looseness of the ptas mode [default: 0.5]
    #[arg(long)]
    epsilon: Option<f64>,
    /// Sampling period of the walk mode [default: ceil(2 ln n)]
    #[arg(long)]
    p: Option<usize>,
    /// Sampling-rate constant [default: 3.0]
    #[arg(long)]
    rate_c: Option<f64>,
    /// Failure-probability exponent [default: 1.0]
    #[arg(long)]
    lambda: Option<f64>,
    /// Decimal or 0x-hex seed [fallback: $GAPSHEAR_SEED, then 0]
    #[arg(long)]
    seed: Option<String>,
    /// Drop one trailing newline from each input file
    #[arg(long)]
    strip_trailing_newline: bool,
}

#[derive(Args)]
struct EmbedArgs {
    x: PathBuf,
    /// Sampling period; must be at least 2 ln n
    #[arg(long)]
    p: usize,
    /// Where to write the embedded symbol sequence
    #[arg(long)]
    out: PathBuf,
    /// Write lowercase hex instead of raw bytes
    #[arg(long)]
    hex: bool,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    strip_trailing_newline: bool,
}

#[derive(Args)]
struct GenArgs {
    out_x: PathBuf,
    out_y: PathBuf,
    /// Length of the base string
    #[arg(long)]
    n: usize,
    /// Alphabet size; symbols are the byte values below it
    #[arg(long, default_value_t = 256)]
    sigma: u16,
    /// uniform-random | aperiodic-verified | periodic-stress
    #[arg(long, default_value = "uniform-random")]
    kind: String,
    /// Number of planted edits separating the pair
    #[arg(long, default_value_t = 0)]
    edits: usize,
    /// Window length the aperiodic-verified kind certifies
    #[arg(long)]
    window: Option<usize>,
    /// Budget the aperiodic-verified kind certifies against
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    seed: Option<String>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated string lengths
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    /// Comma-separated edit budgets
    #[arg(long, value_delimiter = ',', required = true)]
    k_list: Vec<usize>,
    /// quadratic | alpha | ptas | walk
    #[arg(long, default_value = "quadratic")]
    mode: String,
    /// Seeds per (n, k) cell
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// CSV table to append to
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    alpha: Option<usize>,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    rate_c: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    seed: Option<String>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Some(Verdict::Reject)) => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Option<Verdict>> {
    match cli.command {
        Command::Gap(a) => cmd_gap(a).map(Some),
        Command::Embed(a) => cmd_embed(a).map(|_| None),
        Command::Gen(a) => cmd_gen(a).map(|_| None),
        Command::Bench(a) => cmd_bench(a).map(|_| None),
    }
}

/// --seed, else $GAPSHEAR_SEED, else 0.
fn resolve_seed(flag: &Option<String>) -> Result<Seed> {
    if let Some(s) = flag {
        return Seed::parse(s);
    }
    if let Ok(s) = std::env::var("GAPSHEAR_SEED") {
        return Seed::parse(&s);
    }
    Ok(Seed::new(0))
}

fn resolve_rates(rate_c: Option<f64>, lambda: Option<f64>) -> Result<RateConfig> {
    let d = RateConfig::default();
    RateConfig::new(rate_c.unwrap_or(d.hp_constant), lambda.unwrap_or(d.failure_exponent))
}

fn read_input(path: &Path, strip: bool) -> Result<Text> {
    let mut bytes = fs::read(path)?;
    if strip && bytes.last() == Some(&b'\n') {
        bytes.pop();
        if bytes.last() == Some(&b'\r') {
            bytes.pop();
        }
    }
    Ok(Text::new(bytes))
}

fn cmd_gap(a: GapArgs) -> Result<Verdict> {
    let seed = resolve_seed(&a.seed)?;
    let rates = resolve_rates(a.rate_c, a.lambda)?;
    let mode: TesterMode = a.mode.parse()?;
    let x = read_input(&a.x, a.strip_trailing_newline)?;
    let y = read_input(&a.y, a.strip_trailing_newline)?;
    let mut parameters = vec![
        ("mode".to_string(), mode.to_string()),
        ("k".to_string(), a.k.to_string()),
    ];
    let start = Instant::now();
    let verdict = match mode {
        TesterMode::Quadratic => gap_quadratic(&x, &y, a.k, rates, seed).verdict,
        TesterMode::Alpha => {
            let alpha = a.alpha.unwrap_or(2);
            parameters.push(("alpha".to_string(), alpha.to_string()));
            if let Some(b) = a.block_b {
                parameters.push(("block_b".to_string(), b.to_string()));
            }
            gap_alpha(&x, &y, a.k, alpha, a.block_b, rates, seed)?.verdict
        }
        TesterMode::Ptas => {
            let window = a
                .window
                .ok_or_else(|| Error::Parameter("ptas mode requires --window".to_string()))?;
            let epsilon = a.epsilon.unwrap_or(0.5);
            parameters.push(("window".to_string(), window.to_string()));
            parameters.push(("epsilon".to_string(), epsilon.to_string()));
            gap_ptas(&x, &y, a.k, window, epsilon, rates, seed)?.verdict
        }
        TesterMode::Walk => {
            let n = x.len().max(y.len()).max(1);
            let p = a.p.unwrap_or_else(|| default_walk_period(n));
            let trace = sampled_random_walk(&x, &y, WalkParams { k: a.k, p, n }, seed)?;
            parameters.push(("p".to_string(), p.to_string()));
            parameters.push(("mismatches".to_string(), trace.c.to_string()));
            parameters.push(("leftover".to_string(), trace.leftover.to_string()));
            trace.verdict
        }
    };
    let report = RunReport {
        command: "gap".to_string(),
        seed,
        outcome: verdict.label().to_string(),
        probes_x: x.probes(),
        probes_y: y.probes(),
        wall_time_ms: start.elapsed().as_millis(),
        parameters,
    };
    print!("{report}");
    Ok(verdict)
}

fn cmd_embed(a: EmbedArgs) -> Result<()> {
    let seed = resolve_seed(&a.seed)?;
    let x = read_input(&a.x, a.strip_trailing_newline)?;
    let n = x.len().max(1);
    let mode = if x.raw().iter().all(|&b| b <= 1) { EmbedMode::Binary } else { EmbedMode::General };
    let start = Instant::now();
    let randomness = make_shared_randomness(n, a.p, mode, seed)?;
    let embedding = sublinear_embed(&x, &randomness)?;
    if a.hex {
        let hex: String = embedding.output.iter().map(|b| format!("{b:02x}")).collect();
        fs::write(&a.out, hex)?;
    } else {
        fs::write(&a.out, &embedding.output)?;
    }
    let report = RunReport {
        command: "embed".to_string(),
        seed,
        outcome: a.out.display().to_string(),
        probes_x: x.probes(),
        probes_y: 0,
        wall_time_ms: start.elapsed().as_millis(),
        parameters: vec![
            ("p".to_string(), a.p.to_string()),
            ("mode".to_string(), format!("{mode:?}").to_lowercase()),
            ("samples".to_string(), randomness.sample_count().to_string()),
            ("output_len".to_string(), embedding.output.len().to_string()),
        ],
    };
    print!("{report}");
    Ok(())
}

fn cmd_gen(a: GenArgs) -> Result<()> {
    let seed = resolve_seed(&a.seed)?;
    let kind: GeneratorKind = a.kind.parse()?;
    let verify = match (a.window, a.k) {
        (Some(window), Some(k)) => Some(AperiodicityParams { window, k }),
        _ => None,
    };
    let spec = CorpusSpec { n: a.n, sigma: a.sigma, kind, edits: a.edits, verify, seed };
    let start = Instant::now();
    let (x, y) = generate(&spec)?;
    fs::write(&a.out_x, &x)?;
    fs::write(&a.out_y, &y)?;
    let report = RunReport {
        command: "gen".to_string(),
        seed,
        outcome: a.out_x.display().to_string(),
        probes_x: 0,
        probes_y: 0,
        wall_time_ms: start.elapsed().as_millis(),
        parameters: vec![
            ("out_y".to_string(), a.out_y.display().to_string()),
            ("n".to_string(), a.n.to_string()),
            ("sigma".to_string(), a.sigma.to_string()),
            ("kind".to_string(), kind.to_string()),
            ("edits".to_string(), a.edits.to_string()),
        ],
    };
    print!("{report}");
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<()> {
    let seed = resolve_seed(&a.seed)?;
    let mode: TesterMode = a.mode.parse()?;
    let opts = BenchOptions {
        alpha: a.alpha.unwrap_or(2),
        window: a.window.unwrap_or(64),
        epsilon: a.epsilon.unwrap_or(0.5),
        rates: resolve_rates(a.rate_c, a.lambda)?,
    };
    let start = Instant::now();
    let rows = bench_grid(&a.n_list, &a.k_list, mode, a.trials, &opts, seed)?;
    append_bench_csv(&a.out, &rows)?;
    let report = RunReport {
        command: "bench".to_string(),
        seed,
        outcome: a.out.display().to_string(),
        probes_x: 0,
        probes_y: 0,
        wall_time_ms: start.elapsed().as_millis(),
        parameters: vec![
            ("mode".to_string(), mode.to_string()),
            ("rows".to_string(), rows.len().to_string()),
            ("trials".to_string(), a.trials.to_string()),
        ],
    };
    print!("{report}");
    Ok(())
}
