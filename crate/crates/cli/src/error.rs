use std::path::{Path, PathBuf};

use soltrans_core::classifier::ClassifyError;
use soltrans_core::geometry::GeometryError;
use soltrans_core::profile::ProfileError;
use soltrans_core::surface::SurfaceError;
use soltrans_core::verifier::VerifyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("classification failed: {0}")]
    Classify(#[from] ClassifyError),
    #[error("geometry: {0}")]
    Geometry(#[from] GeometryError),
    #[error("integration failed: {0}")]
    Profile(#[from] ProfileError),
    #[error("mesh construction failed: {0}")]
    Surface(#[from] SurfaceError),
    #[error("oracle failed: {0}")]
    Verify(#[from] VerifyError),
    #[error("no translator exists for these fields: {0}")]
    NoTranslator(String),
    #[error("{failed} of {total} checks exceeded their tolerance")]
    VerificationFailed { failed: usize, total: usize },
}

impl Error {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn csv(path: &Path, source: csv::Error) -> Self {
        Error::Csv {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 2 for failed verification, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::VerificationFailed { .. } => 2,
            _ => 1,
        }
    }
}
