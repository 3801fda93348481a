//! Exact character degree sums of finite classical groups, checked against a
//! brute-force census of small groups and against known bounds.

pub mod bounds;
pub mod census;
pub mod error;
pub mod field;
pub mod groups;
pub mod qpoly;
pub mod sums;

pub use error::{Error, Result};
