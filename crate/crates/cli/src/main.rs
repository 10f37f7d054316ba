use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use cmvdir::montecarlo::{all_pass, draw, VerificationReport};
use cmvdir::sampler::sample_gen_dirichlet;
use cmvdir::{GenDirichletParams, RngStream};
use serde::Serialize;

mod suites;

use suites::{Suite, SuiteConfig};

const EXIT_FAILED: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "cmvd", version, about = "Complex matrix-variate Dirichlet verification and sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and emit one report per check.
    Verify(VerifyArgs),
    /// Draw generalized type-2 Dirichlet tuples as JSON lines.
    Sample(SampleArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Matrix dimension.
    #[arg(long, default_value_t = 2)]
    p: usize,
    /// Number of matrices in a tuple.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// alpha_1..alpha_{k+1}, comma separated [default: p+1 each]
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    /// beta_1..beta_k, comma separated [default: 1 each]
    #[arg(long, value_delimiter = ',')]
    beta: Option<Vec<f64>>,
    #[arg(long, env = "CMVD_SEED", default_value_t = 42)]
    seed: u64,
    /// Cap on worker threads.
    #[arg(long)]
    threads: Option<usize>,
}

impl ModelArgs {
    fn params(&self) -> cmvdir::Result<GenDirichletParams> {
        let alpha = self.alpha.clone().unwrap_or_else(|| vec![self.p as f64 + 1.0; self.k + 1]);
        let beta = self.beta.clone().unwrap_or_else(|| vec![1.0; self.k]);
        if beta.len() != self.k {
            return Err(cmvdir::Error::Domain(format!(
                "beta must have k = {} entries, got {}",
                self.k,
                beta.len()
            )));
        }
        GenDirichletParams::new(self.p, alpha, beta)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[command(flatten)]
    model: ModelArgs,
    /// Samples per Monte Carlo check.
    #[arg(long, default_value_t = 100_000)]
    n: usize,
    /// Samples for the change-of-variables identity.
    #[arg(long, default_value_t = 50)]
    n_cov: usize,
    /// Random instances per Jacobian check.
    #[arg(long, default_value_t = 20)]
    instances: usize,
    /// Gamma-integral shape [default: p+1]
    #[arg(long)]
    a: Option<f64>,
    /// Gamma-integral proposal shape [default: a-0.5]
    #[arg(long)]
    a0: Option<f64>,
    /// Report file [default: stdout]
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Jsonl)]
    format: Format,
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Number of tuples.
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Output file [default: stdout]
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Serialize)]
struct SampleRecord {
    p: usize,
    k: usize,
    seed: u64,
    index: usize,
    matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(args) => verify(args),
        Command::Sample(args) => sample(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("config error: {e:#}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

fn init_threads(threads: Option<usize>) -> anyhow::Result<()> {
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring worker threads")?;
    }
    Ok(())
}

fn open_output(path: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn verify(args: &VerifyArgs) -> anyhow::Result<u8> {
    let params = args.model.params()?;
    init_threads(args.model.threads)?;
    let a = args.a.unwrap_or(params.p() as f64 + 1.0);
    let cfg = SuiteConfig {
        n: args.n,
        n_cov: args.n_cov,
        instances: args.instances,
        seed: args.model.seed,
        a,
        a0: args.a0.unwrap_or(a - 0.5),
        params,
    };
    let reports = suites::run(args.suite, &cfg)?;
    let mut out = open_output(&args.output)?;
    write_reports(&mut out, &reports, args.format)?;
    out.flush()?;
    print_table(&reports);
    Ok(if all_pass(&reports) { 0 } else { EXIT_FAILED })
}

fn write_reports(out: &mut dyn Write, reports: &[VerificationReport], format: Format) -> anyhow::Result<()> {
    match format {
        Format::Jsonl => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                w.serialize(r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn print_table(reports: &[VerificationReport]) {
    let width = reports.iter().map(|r| r.check_id.len()).max().unwrap_or(8).max(8);
    eprintln!("{:<width$}  {:<6}  {:>14}  {:>14}  tolerance", "check", "status", "observed", "target");
    for r in reports {
        let status = if r.passed() { "pass" } else { "FAIL" };
        eprintln!(
            "{:<width$}  {:<6}  {:>14.6e}  {:>14.6e}  {}",
            r.check_id, status, r.observed, r.target, r.tolerance
        );
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    eprintln!("{} checks, {} failed", reports.len(), failed);
}

fn sample(args: &SampleArgs) -> anyhow::Result<u8> {
    let params = args.model.params()?;
    init_threads(args.model.threads)?;
    let seed = args.model.seed;
    let tuples = draw(args.n, RngStream::new(seed, 0), |rng| sample_gen_dirichlet(&params, rng))?;
    let mut out = open_output(&args.output)?;
    for (index, xs) in tuples.iter().enumerate() {
        let matrices = xs
            .mats()
            .iter()
            .map(|m| {
                let m = m.matrix();
                (0..m.nrows())
                    .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                    .collect()
            })
            .collect();
        let record = SampleRecord {
            p: params.p(),
            k: params.k(),
            seed,
            index,
            matrices,
        };
        serde_json::to_writer(&mut out, &record)?;
        writeln!(out)?;
    }
    out.flush()?;
    Ok(0)
}
