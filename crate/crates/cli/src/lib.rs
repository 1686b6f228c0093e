//! Library side of the `puzzles` binary: the verification report, sequence
//! identification, the optional OEIS client and the family sweep.

pub mod error;
pub mod families;
pub mod identify;
pub mod oeis;
pub mod report;

pub use error::{CliError, Result};
