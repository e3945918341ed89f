//! File formats, weight-table caching and the command-line driver for
//! [`grahamlab_core`].

pub mod cache;
pub mod cli;
pub mod error;
pub mod formats;
pub mod output;

pub use error::{AppError, AppResult};
