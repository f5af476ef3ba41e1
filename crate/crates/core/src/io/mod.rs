//! Persistence formats: the `PCB1` point-cloud binary, scene/dataset
//! manifests, and model checkpoints. Readers validate aggressively and
//! return named errors; they never panic on corrupt input.

pub mod checkpoint;
pub mod dataset;
pub mod pcb;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("bad magic in {context}: expected {expected:?}, found {found:?}")]
    BadMagic {
        context: &'static str,
        expected: [u8; 4],
        found: [u8; 4],
    },
    #[error("truncated {context}: needed {needed} bytes, found {found}")]
    Truncated {
        context: &'static str,
        needed: usize,
        found: usize,
    },
    #[error("{context} has {extra} trailing bytes")]
    TrailingBytes {
        context: &'static str,
        extra: usize,
    },
    #[error("invalid JSON in {context}: {message}")]
    Json { context: String, message: String },
    #[error("invalid manifest: {0}")]
    InvalidManifest(String),
    #[error("tensor {name} shape mismatch: manifest says {rows}x{cols}, payload has {actual} values")]
    ShapeMismatch {
        name: String,
        rows: usize,
        cols: usize,
        actual: usize,
    },
    #[error("checkpoint version mismatch: file has version {found}, this build reads version {expected}")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("non-finite value in {context}")]
    NonFinite { context: String },
    #[error("missing file: {0}")]
    MissingFile(PathBuf),
}

impl FormatError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        FormatError::Io {
            path: path.into(),
            source,
        }
    }
}
