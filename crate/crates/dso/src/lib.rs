//! File formats, serialized oracles, verification and benchmark runs for
//! [`dso_core`], plus the `dso` command-line tool built on them.

pub mod blob;
pub mod error;
pub mod format;
pub mod generate;
pub mod report;
pub mod run;

pub use error::{Error, Result};
