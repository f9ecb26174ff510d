//! File formats, test families and the pipeline behind the `arithgroup`
//! command.

pub mod bench;
pub mod error;
pub mod example;
pub mod families;
pub mod problem;
pub mod run;

pub use error::{CliError, Result};
