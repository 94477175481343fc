//! Versioned JSON checkpoints of the lower-bound search.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use semirank_core::search::SearchState;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: String, source: serde_json::Error },
    #[error("{path}: checkpoint version {found}, expected {VERSION}")]
    Version { path: String, found: u32 },
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: u32,
    state: SearchState,
}

/// Writes `state` to `path` through a temporary file, so an interrupted
/// write never leaves a truncated checkpoint behind.
pub fn save(path: &Path, state: &SearchState) -> Result<(), CheckpointError> {
    let io = |source| CheckpointError::Io { path: path.display().to_string(), source };
    let json = serde_json::to_vec(&Envelope { version: VERSION, state: state.clone() })
        .map_err(|source| CheckpointError::Json { path: path.display().to_string(), source })?;
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, json).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(io)
}

pub fn load(path: &Path) -> Result<SearchState, CheckpointError> {
    let name = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CheckpointError::Io { path: name.clone(), source })?;
    let env: Envelope = serde_json::from_slice(&bytes).map_err(|source| CheckpointError::Json { path: name.clone(), source })?;
    if env.version != VERSION {
        return Err(CheckpointError::Version { path: name, found: env.version });
    }
    Ok(env.state)
}

/// Saves offered states at most once per interval and keeps the first
/// error for the caller.
pub struct Checkpointer {
    path: PathBuf,
    interval: Duration,
    last: Instant,
    pub error: Option<CheckpointError>,
    pub saved: usize,
}

impl Checkpointer {
    pub fn new(path: PathBuf, interval: Duration) -> Checkpointer {
        Checkpointer { path, interval, last: Instant::now(), error: None, saved: 0 }
    }

    pub fn offer(&mut self, state: &SearchState) {
        if self.error.is_some() || self.last.elapsed() < self.interval {
            return;
        }
        match save(&self.path, state) {
            Ok(()) => self.saved += 1,
            Err(e) => self.error = Some(e),
        }
        self.last = Instant::now();
    }
}
