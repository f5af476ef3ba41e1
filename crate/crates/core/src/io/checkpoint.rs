//! Model checkpoints: a JSON manifest (version, config snapshot, tensor
//! index) next to `weights.bin`, a concatenation of row-major little-endian
//! 32-bit float payloads.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FormatError;

pub const CHECKPOINT_FORMAT_VERSION: u32 = 1;
pub const PAYLOAD_FILE: &str = "weights.bin";
pub const MANIFEST_FILE: &str = "checkpoint.json";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckpointManifest {
    pub format_version: u32,
    /// Model configuration snapshot; interpreted by the model module.
    pub config: serde_json::Value,
    pub tensors: Vec<TensorRecord>,
    pub payload: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorRecord {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    /// Offset in floats (not bytes) into the payload.
    pub offset: usize,
}

/// A named tensor to persist or one that was loaded.
#[derive(Debug, Clone)]
pub struct NamedTensor {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub values: Vec<f32>,
}

pub fn save(
    dir: &Path,
    config: serde_json::Value,
    tensors: &[NamedTensor],
) -> Result<(), FormatError> {
    std::fs::create_dir_all(dir).map_err(|e| FormatError::io(dir, e))?;
    let mut records = Vec::with_capacity(tensors.len());
    let mut payload: Vec<u8> = Vec::new();
    let mut offset = 0usize;
    for t in tensors {
        debug_assert_eq!(t.values.len(), t.rows * t.cols);
        records.push(TensorRecord {
            name: t.name.clone(),
            rows: t.rows,
            cols: t.cols,
            offset,
        });
        for v in &t.values {
            payload.extend_from_slice(&v.to_le_bytes());
        }
        offset += t.values.len();
    }
    let manifest = CheckpointManifest {
        format_version: CHECKPOINT_FORMAT_VERSION,
        config,
        tensors: records,
        payload: PAYLOAD_FILE.to_string(),
    };
    let mut text = serde_json::to_string_pretty(&manifest).map_err(|e| FormatError::Json {
        context: "checkpoint manifest".into(),
        message: e.to_string(),
    })?;
    text.push('\n');
    std::fs::write(dir.join(MANIFEST_FILE), text)
        .map_err(|e| FormatError::io(dir.join(MANIFEST_FILE), e))?;
    std::fs::write(dir.join(PAYLOAD_FILE), payload)
        .map_err(|e| FormatError::io(dir.join(PAYLOAD_FILE), e))?;
    Ok(())
}

pub fn load(dir: &Path) -> Result<(serde_json::Value, Vec<NamedTensor>), FormatError> {
    let manifest_path = dir.join(MANIFEST_FILE);
    if !manifest_path.exists() {
        return Err(FormatError::MissingFile(manifest_path));
    }
    let bytes = std::fs::read(&manifest_path).map_err(|e| FormatError::io(&manifest_path, e))?;
    let manifest: CheckpointManifest =
        serde_json::from_slice(&bytes).map_err(|e| FormatError::Json {
            context: manifest_path.display().to_string(),
            message: e.to_string(),
        })?;
    if manifest.format_version != CHECKPOINT_FORMAT_VERSION {
        return Err(FormatError::VersionMismatch {
            found: manifest.format_version,
            expected: CHECKPOINT_FORMAT_VERSION,
        });
    }

    let payload_path = dir.join(&manifest.payload);
    if !payload_path.exists() {
        return Err(FormatError::MissingFile(payload_path));
    }
    let payload = std::fs::read(&payload_path).map_err(|e| FormatError::io(&payload_path, e))?;
    if payload.len() % 4 != 0 {
        return Err(FormatError::Truncated {
            context: "checkpoint payload",
            needed: payload.len() + (4 - payload.len() % 4),
            found: payload.len(),
        });
    }
    let float_count = payload.len() / 4;

    let mut tensors = Vec::with_capacity(manifest.tensors.len());
    let mut expected_total = 0usize;
    for rec in &manifest.tensors {
        let len = rec
            .rows
            .checked_mul(rec.cols)
            .ok_or_else(|| FormatError::InvalidManifest(format!("tensor {} shape overflow", rec.name)))?;
        let end = rec.offset.checked_add(len).ok_or_else(|| {
            FormatError::InvalidManifest(format!("tensor {} offset overflow", rec.name))
        })?;
        if end > float_count {
            return Err(FormatError::ShapeMismatch {
                name: rec.name.clone(),
                rows: rec.rows,
                cols: rec.cols,
                actual: float_count.saturating_sub(rec.offset),
            });
        }
        expected_total += len;
        let mut values = Vec::with_capacity(len);
        for i in 0..len {
            let base = (rec.offset + i) * 4;
            let v = f32::from_le_bytes(payload[base..base + 4].try_into().expect("in range"));
            if !v.is_finite() {
                return Err(FormatError::NonFinite {
                    context: format!("tensor {} element {i}", rec.name),
                });
            }
            values.push(v);
        }
        tensors.push(NamedTensor {
            name: rec.name.clone(),
            rows: rec.rows,
            cols: rec.cols,
            values,
        });
    }
    if expected_total != float_count {
        return Err(FormatError::TrailingBytes {
            context: "checkpoint payload",
            extra: (float_count - expected_total.min(float_count)) * 4,
        });
    }
    Ok((manifest.config, tensors))
}
