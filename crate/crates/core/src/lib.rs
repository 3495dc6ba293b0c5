pub mod cli;
mod error;
pub mod models;
pub mod qcore;
pub mod shots;
pub mod tradeoff;

pub use error::{Error, Result};
