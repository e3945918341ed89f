use std::io;
use std::path::PathBuf;

use crate::cache::CacheError;
use crate::formats::FormatError;

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] grahamlab_core::Error),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

impl AppError {
    pub fn exit_code(&self) -> u8 {
        use grahamlab_core::Error as E;
        match self {
            AppError::Core(E::ResourceLimit { .. } | E::Ceiling { .. }) => EXIT_RESOURCE,
            AppError::Core(E::Verification(_) | E::MissingWeight { .. }) => EXIT_VERIFICATION,
            _ => EXIT_USAGE,
        }
    }

    /// Failures that mean a mathematical check did not hold.
    pub fn is_verification(&self) -> bool {
        self.exit_code() == EXIT_VERIFICATION
    }
}

pub type AppResult<T> = Result<T, AppError>;
