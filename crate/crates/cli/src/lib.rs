//! Classification harness: runs every `(m, p)` case and kernel `Δ` through
//! the smoothness checker and compares against the published verdicts.

pub mod branch;
pub mod classify;
pub mod config;
pub mod error;
pub mod expectations;
pub mod identities;
pub mod report;
pub mod spotcheck;

pub use branch::{branch_locus_report, BranchComponentReport};
pub use classify::{
    run_case, run_classification, ClassificationReport, ClassifyOptions, DeltaSpec,
};
pub use error::{CliError, CliResult};
pub use expectations::{DeltaShape, Expectation, ExpectationTable};
pub use identities::{verify_example_c, verify_matrix_identities, IdentityCheck};
