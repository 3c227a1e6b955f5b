//! File-based front end for the `inplace-tft` library.

pub mod coeff_file;
pub mod commands;
pub mod error;
pub mod selftest;

pub use coeff_file::{CoeffFile, RingOverrides};
pub use commands::{cmd_bench, cmd_itft, cmd_multiply, cmd_tft, BenchRow, BENCH_HEADER};
pub use error::CliError;
