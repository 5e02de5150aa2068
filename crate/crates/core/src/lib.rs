pub mod characters;
pub mod charsum;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod ring;
pub mod roots;
pub mod sequences;
pub mod symmetric;

pub use error::{Error, Result};
