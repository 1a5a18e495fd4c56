// SPDX-License-Identifier: Apache-2.0

use gaussnet_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gaussnet_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("oracle verification failed: max |eof deviation| = {deviation:e} exceeds {tolerance:e}")]
    Verification { deviation: f64, tolerance: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 usage, 3 domain, 4 numeric failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Usage => 2,
                ErrorKind::Domain => 3,
                ErrorKind::Numeric => 4,
            },
            CliError::Verification { .. } => 4,
        }
    }
}
