//! The one-dimensional blob complex over exact fields.

pub mod algebra;
pub mod blob;
pub mod chain;
pub mod cli;
pub mod comparison;
pub mod field;
pub mod hochschild;
pub mod linalg;
pub mod report;
pub mod specfile;
pub mod verify;

pub use field::{Field, Fp, Q};
