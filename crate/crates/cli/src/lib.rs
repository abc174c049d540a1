//! File formats, experiment harness and command-line front end for
//! [`cptagg_core`].

pub mod commands;
pub mod format;
pub mod harness;
pub mod solve;

pub use format::{parse_cpt, parse_instance, serialize_cpt, serialize_instance, FormatError};
pub use harness::{run_row, run_sweep, write_csv, ExperimentRow, Sweep};
pub use solve::{report_to_json, solve, SolveReportJson, SolveRequest};
