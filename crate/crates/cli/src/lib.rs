//! Command-line front end for `dicke-core`: sweeps, the `N = 100` table,
//! single-point reports, oracle checks and gnuplot scripts.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod config;
pub mod error;
pub mod grid;
pub mod oracle;
pub mod plot;
pub mod report;
pub mod sweep;
pub mod table1;

pub use app::{run, Cli};
pub use error::Failure;
