//! Reductions between Subset Sum, k-SUM, CSP and bicriteria path problems,
//! together with reference solvers and brute-force oracles.

pub mod avgfree;
pub mod bench;
pub mod error;
pub mod generate;
pub mod graph;
pub mod instances;
pub mod numeric;
pub mod solvers;
pub mod threshold;

pub use error::{Error, Result};
