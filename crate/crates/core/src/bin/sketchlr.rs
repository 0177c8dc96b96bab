use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::info;

use sketchlr::approx::Algorithm;
use sketchlr::harness::{emit_csv, oracle_sweep, run_trials, validate_suite, write_csv, ExperimentConfig, ResultRecord};
use sketchlr::params::SplitRule;
use sketchlr::zoo::{MatrixKind, MatrixSpec};
use sketchlr::{Error, Field};

#[derive(Parser)]
#[command(name = "sketchlr", version, about = "Randomized sketching experiments for low-rank approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run trials at the configured splits and write one CSV row per trial.
    Run(ExperimentArgs),
    /// Scan every feasible split per budget and report the best one.
    Oracle(ExperimentArgs),
    /// Run the Monte Carlo and identity checks.
    Validate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML file with experiment settings. Flags given alongside override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Synthetic input kind, e.g. exp_decay_fast.
    #[arg(long)]
    matrix: Option<MatrixKind>,
    /// Binary matrix file to use as input.
    #[arg(long, conflicts_with = "matrix")]
    matrix_file: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Effective rank of the synthetic input.
    #[arg(long = "R")]
    big_r: Option<usize>,
    /// Seed for the noise in synthetic inputs.
    #[arg(long)]
    matrix_seed: Option<u64>,
    /// Target rank r.
    #[arg(long)]
    rank: Option<usize>,
    /// Storage budget T = k + l. Repeatable.
    #[arg(long = "T")]
    t: Vec<usize>,
    /// Reconstruction to score. Repeatable.
    #[arg(long)]
    algo: Vec<Algorithm>,
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed for the test matrices.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    split: Option<SplitRule>,
    #[arg(long)]
    field: Option<Field>,
    /// Write zero wall times so repeated runs give identical files.
    #[arg(long)]
    no_timing: bool,
    /// CSV destination. Defaults to standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ExperimentArgs {
    fn into_config(self, oracle: bool) -> sketchlr::Result<(ExperimentConfig, Option<PathBuf>)> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_toml_file(path)?,
            None => {
                let matrix = match (&self.matrix_file, self.matrix) {
                    (Some(p), _) => MatrixSpec::from_file(p),
                    (None, Some(kind)) => MatrixSpec::new(kind, 1000, 10),
                    (None, None) => return Err(Error::arg("one of --matrix, --matrix-file or --config is required")),
                };
                let rank = self.rank.ok_or_else(|| Error::arg("--rank is required"))?;
                let mut cfg = ExperimentConfig::new(matrix, rank, Vec::new(), Vec::new());
                cfg.sweep = if oracle { SplitRule::Oracle } else { SplitRule::Default };
                cfg
            }
        };
        if let Some(p) = self.matrix_file {
            cfg.matrix = MatrixSpec::from_file(p);
        } else if let Some(kind) = self.matrix {
            cfg.matrix.kind = kind;
            cfg.matrix.path = None;
        }
        if let Some(n) = self.n {
            cfg.matrix.n = n;
        }
        if let Some(big_r) = self.big_r {
            cfg.matrix.big_r = big_r;
        }
        if let Some(seed) = self.matrix_seed {
            cfg.matrix.seed = seed;
        }
        if let Some(r) = self.rank {
            cfg.r = r;
        }
        if !self.t.is_empty() {
            cfg.t_values = self.t;
        }
        if !self.algo.is_empty() {
            cfg.algorithms = self.algo;
        }
        if let Some(trials) = self.trials {
            cfg.trials = trials;
        }
        if let Some(seed) = self.seed {
            cfg.master_seed = seed;
        }
        if let Some(field) = self.field {
            cfg.field = field;
        }
        if let Some(split) = self.split {
            cfg.sweep = split;
        }
        if self.no_timing {
            cfg.timing = false;
        }
        if oracle && cfg.sweep != SplitRule::Oracle {
            return Err(Error::arg("the oracle command only accepts --split oracle"));
        }
        if cfg.algorithms.is_empty() {
            cfg.algorithms = vec![Algorithm::Alg7];
        }
        cfg.validate()?;
        Ok((cfg, self.out))
    }
}

fn write_records(records: &[ResultRecord], out: Option<PathBuf>) -> sketchlr::Result<()> {
    match out {
        Some(path) => {
            emit_csv(records, &path)?;
            info!("wrote {} records to {}", records.len(), path.display());
            Ok(())
        }
        None => write_csv(records, std::io::stdout().lock()),
    }
}

fn exit_code(err: &Error) -> ExitCode {
    eprintln!("sketchlr: {err}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    match cli.command {
        Command::Run(args) => {
            let result = args.into_config(false).and_then(|(cfg, out)| write_records(&run_trials(&cfg)?, out));
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => exit_code(&e),
            }
        }
        Command::Oracle(args) => {
            let result = args.into_config(true).and_then(|(cfg, out)| {
                let sweep = oracle_sweep(&cfg)?;
                let mut err = std::io::stderr().lock();
                for m in &sweep.minima {
                    let _ = writeln!(
                        err,
                        "{} T={} k={} l_or_s={} mean_relative_error={:.6e} splits={}",
                        m.algorithm, m.t, m.k, m.l_or_s, m.mean_error, m.candidates
                    );
                }
                write_records(&sweep.records, out)
            });
            match result {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => exit_code(&e),
            }
        }
        Command::Validate { seed } => {
            let report = validate_suite(seed);
            print!("{report}");
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
    }
}
