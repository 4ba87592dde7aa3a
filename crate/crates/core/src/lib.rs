//! Hairy graph complexes, graph complexes with local coefficient systems, and the
//! operators and filtrations that compare them.

pub mod coeff;
pub mod complex;
pub mod decorated;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod operators;
pub mod report;

pub use error::{Error, Result};
