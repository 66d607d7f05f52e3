//! Experiment runner: configuration, the individual checks, JSON reports,
//! classical fixtures and window-stability sweeps.

mod checks;
mod config;
pub mod fixtures;
mod report;
mod run;

pub use checks::{run_check, Context};
pub use config::{tau_products, Check, ExperimentConfig, Resolved, DEFAULT_MAX_VERTICES};
pub use report::{CheckRecord, RegionStats, Report, Status, Summary};
pub use run::{build_region, region_stats, run, stability_sweep, SweepReport, SweepRow};
