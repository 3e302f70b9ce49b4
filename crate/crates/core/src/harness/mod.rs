//! Experiment drivers behind the command-line runner: each returns its data
//! plus a `check` that turns embedded assertions into an error with a witness.

mod bound;
mod config;
mod decay;
mod figure1;
mod report;
mod series;
mod suite;
mod table4;

pub use bound::{power_law_envelope, run_bound, BoundRow, BoundTrajectory, CLOSED_FORM_TOLERANCE};
pub use config::ExperimentConfig;
pub use decay::{
    run_decay, DecayConfig, DecayReport, SpatialDomain, DECAY_KEYS, EXPONENT_TOLERANCE,
    RATIO_SLOPE_LIMIT,
};
pub use figure1::{run_figure1, Figure1};
pub use report::{fmt_float, CsvTable};
pub use series::{log_ladder, slope_fit, TimeSeries};
pub use suite::{
    empty_model, run_theorem31_suite, suite_model, tight_model, SuiteModel, SuiteReport, SuiteRow,
    SymbolFamily,
};
pub use table4::{run_table4, Table4, Table4Row, FIT_RANGE, FIT_TOLERANCE};
