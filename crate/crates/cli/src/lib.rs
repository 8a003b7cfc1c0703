//! Std companion to `hermicode-core`: run headers, the generator cache,
//! report formats, the verification suites and the command line.

pub mod cache;
pub mod cli;
pub mod clock;
mod error;
pub mod formats;
pub mod header;
pub mod suites;

pub use error::{Error, Result};
