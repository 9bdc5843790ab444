pub mod charsums;
pub mod codes;
pub mod combinatorics;
pub mod constructions;
pub mod designs;
pub mod error;
pub mod field;
pub mod io;
pub mod pipeline;

pub use error::{Error, Result};
