pub mod error;
pub mod parse;
pub mod partitions;
pub mod algebra_lab;
pub mod chowrank;
pub mod schur;
pub mod verify;

pub use error::{Error, Result};
