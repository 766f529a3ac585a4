//! Arc-space contact loci and minimal log discrepancies in exact arithmetic.
//!
//! The crate evaluates codimensions of contact loci and minimal log
//! discrepancies from two kinds of numerical input (log-resolution data and
//! monomial / Newton data) and checks them against a brute-force jet-scheme
//! point counter over small prime fields.

pub mod cli;
pub mod error;
pub mod extended;
pub mod jet;
pub mod lattice_opt;
pub mod monomial;
pub mod rational;
pub mod resolution;
pub mod theorem_lab;

pub use error::{Error, Result};
pub use extended::ExtendedRational;
pub use rational::Q;
