//! Exact Jordan structure, centralizer dimensions, miniversal deformations
//! and the partition stratification of `n × n` rational matrices.

pub mod arnold;
pub mod document;
pub mod error;
pub mod exactq;
pub mod jordan;
pub mod partition;
pub mod strata;
pub mod verify;

pub use error::{Error, Result};
