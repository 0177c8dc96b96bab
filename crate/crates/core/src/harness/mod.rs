//! Experiment runner behind the `sketchlr` binary.
//!
//! A run fixes one input matrix, then for every budget `T`, split and
//! trial draws fresh test matrices from the stream `(master_seed, trial)`,
//! sketches, reconstructs and scores. Trials run in parallel; output order
//! depends only on the configuration.

mod config;
mod records;
mod run;
pub mod validate;

pub use config::ExperimentConfig;
pub use records::{emit_csv, read_csv, write_csv, ResultRecord, CSV_HEADER};
pub use run::{mean_errors, oracle_sweep, oracle_sweep_on, run_trials, run_trials_on, OracleMinimum, OracleSweep, SplitMean};
pub use validate::{validate_suite, CheckResult, ValidationReport};
