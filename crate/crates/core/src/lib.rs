//! Tools for finite groupoids, centred on quadratical quasigroups: identity
//! checks, cycle structure, table completion by propagation, enumeration up to
//! isomorphism and translatability scans.

pub mod error;
pub mod groupoid;
pub mod catalog;
pub mod cli;
pub mod construct;
pub mod properties;
pub mod report;
pub mod search;
pub mod structure;

pub use error::{Error, Result};
pub use groupoid::Groupoid;
