//! Experiment runner behind the `sumcore` binary.
//!
//! One experiment is an [`ExperimentConfig`]: model, set expression, seed,
//! budget and one operation. [`run_experiment`] turns it into a [`Report`]
//! whose JSON form is identical for identical configs, apart from
//! `wall_time_ms`, whatever the worker thread count.

pub mod config;
pub mod error;
pub mod fuzz;
pub mod report;
pub mod run;
pub mod witness_json;

pub use config::{ExperimentConfig, FamilyName, Mode, Operation, OutFormat, ScorerName, SetEncoding};
pub use error::{CliError, Result};
pub use report::{error_json, Report, Status, Table};
pub use run::run_experiment;
pub use witness_json::parse_witness_json;

/// Runs `f` on a rayon pool with `threads` workers (`None`: rayon's default).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
