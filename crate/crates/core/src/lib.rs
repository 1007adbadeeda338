pub mod arith;
pub mod classifier;
pub mod error;
pub mod family;
pub mod groups;
pub mod p1;
pub mod sample;
pub mod toric;

pub use error::{Error, Result};
