//! Experiment driver and report plumbing on top of the `thinlaw` library:
//! each experiment reproduces one convergence law or bound sweep as a table
//! of exactly computed functionals.

pub mod config;
pub mod experiments;
pub mod report;

pub use config::{
    parse_family, parse_grid_f64, parse_grid_usize, ExperimentConfig, ExperimentKind,
};
pub use experiments::{
    bounds_experiment, chain_experiment, classes_report, compound_experiment, ltn_iid, ltn_niid,
    rate_experiment,
};
pub use report::ExperimentReport;
