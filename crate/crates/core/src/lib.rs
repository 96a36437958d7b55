pub mod cohomology;
pub mod error;
pub mod exact;
pub mod global;
pub mod lattice;
pub mod local;
pub mod quadfield;
pub mod report;

pub use error::{Error, Result};
