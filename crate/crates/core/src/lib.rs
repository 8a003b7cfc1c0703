//! Hermitian varieties `H(2n+1, q²)`, their generators, and the dual code of
//! points and generators over `F_p`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is pure and
//! deterministic: file formats, clocks, randomness and the command line live
//! in the companion `hermicode` crate.
//!
//! Layout:
//! - [`gf`]: table-driven arithmetic in `GF(q²)` and the prime field `F_p`.
//! - [`projspace`]: canonical points and reduced-echelon subspaces of `PG(m, q²)`.
//! - [`hermitian`]: the variety, its polarity, generator enumeration and the
//!   brute-force counting routines.
//! - [`counting`]: exact closed forms for every counting quantity.
//! - [`dualcode`]: incidence matrix, code words, minimum distance and peeling.
#![no_std]

extern crate alloc;

pub mod budget;
pub mod counting;
pub mod dualcode;
mod error;
pub mod gf;
pub mod hermitian;
pub mod projspace;

pub use error::{Error, Result};

/// Version tag written into every cache file and report header.
pub const CODE_VERSION: &str = "hermicode-1";
