//! Reidemeister numbers of ZM-groups.
//!
//! A ZM-group is a finite group whose Sylow subgroups are all cyclic. Every
//! such group has a presentation
//!
//! ```text
//! ZM(m, n, r) = < a, b | a^m = b^n = 1, b^-1 a b = a^r >
//! ```
//!
//! with `gcd(m, n) = gcd(m, r - 1) = 1` and `r^n = 1 (mod m)`. This crate
//! evaluates the closed-form Reidemeister spectrum of these groups and checks
//! it against two brute-force routes: direct orbit counting of the twisted
//! conjugation action and Burnside's fixed-point average.
//!
//! All arithmetic is exact. There is no floating point anywhere in the crate.

pub mod cli;
pub mod error;
pub mod harness;
pub mod modarith;
pub mod morphisms;
pub mod reidemeister;
pub mod zmgroup;

pub use error::{Error, Result};
pub use morphisms::{Mode, MorphismCheck, MorphismTriple};
pub use reidemeister::{ReidemeisterReport, SpectrumResult};
pub use zmgroup::{Element, ZmParams};

/// Exact non-negative integer used for every group parameter and exponent.
///
/// Intermediate products go through `u128` or checked arithmetic; nothing
/// wraps silently.
pub type Nat = u64;
