//! Scene manifests and on-disk dataset layout.
//!
//! A dataset directory holds `dataset.json` plus one directory per scene:
//!
//! ```text
//! out/
//!   dataset.json
//!   scenes/scene_00000/manifest.json
//!   scenes/scene_00000/obj0_canonical.pcb ...
//! ```
//!
//! Manifests are canonical JSON (fixed key order, two-space indent) so
//! re-generation diffs cleanly.

use std::path::{Path, PathBuf};

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use super::{pcb, FormatError};
use crate::geometry::{PointCloud, Pose, RotationMatrix, SceneNormalization};
use crate::layout::{CameraConfig, CameraSpec, ObjectSample, SceneSample, ShapeKind, ShapeSpec};
use crate::real::Real;

pub const DATASET_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub format_version: u32,
    pub global_seed: u64,
    pub scene_count: usize,
    pub scenes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneManifest {
    pub scene_id: u64,
    pub seed: u64,
    pub normalization: NormalizationRecord,
    pub camera: CameraRecord,
    pub objects: Vec<ObjectRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormalizationRecord {
    pub center: [f64; 3],
    pub scale: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CameraRecord {
    pub elevation_deg: f64,
    pub azimuth_deg: f64,
    pub radius: f64,
    pub resolution: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ObjectRecord {
    pub index: u32,
    pub class: String,
    pub shape_params: Vec<f64>,
    pub pose: PoseRecord,
    pub files: FilesRecord,
    pub visibility: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoseRecord {
    /// Row-major 3x3 rotation.
    pub rotation_matrix: [f64; 9],
    pub translation: [f64; 3],
    pub size: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilesRecord {
    pub canonical: String,
    pub partial: String,
    pub partial_normalized: String,
}

fn json_error(context: &str, e: serde_json::Error) -> FormatError {
    FormatError::Json {
        context: context.to_string(),
        message: e.to_string(),
    }
}

fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| json_error(&path.display().to_string(), e))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| FormatError::io(path, e))
}

fn read_json<D: for<'de> Deserialize<'de>>(path: &Path) -> Result<D, FormatError> {
    if !path.exists() {
        return Err(FormatError::MissingFile(path.to_path_buf()));
    }
    let bytes = std::fs::read(path).map_err(|e| FormatError::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| json_error(&path.display().to_string(), e))
}

fn vec3_record<T: Real>(v: &Vector3<T>) -> [f64; 3] {
    [v.x.as_f64(), v.y.as_f64(), v.z.as_f64()]
}

fn rotation_record<T: Real>(r: &RotationMatrix<T>) -> [f64; 9] {
    let m = r.matrix();
    let mut out = [0.0; 9];
    for row in 0..3 {
        for col in 0..3 {
            out[row * 3 + col] = m[(row, col)].as_f64();
        }
    }
    out
}

/// Writes one scene: manifest plus PCB clouds. Returns the relative
/// directory name written under `scenes_root`.
pub fn write_scene<T: Real>(
    scenes_root: &Path,
    sample: &SceneSample<T>,
) -> Result<String, FormatError> {
    let dir_name = format!("scene_{:05}", sample.scene_id);
    let dir = scenes_root.join(&dir_name);
    std::fs::create_dir_all(&dir).map_err(|e| FormatError::io(&dir, e))?;

    let mut objects = Vec::with_capacity(sample.objects.len());
    for (i, obj) in sample.objects.iter().enumerate() {
        let files = FilesRecord {
            canonical: format!("obj{i}_canonical.pcb"),
            partial: format!("obj{i}_partial.pcb"),
            partial_normalized: format!("obj{i}_partial_normalized.pcb"),
        };
        pcb::write(&dir.join(&files.canonical), obj.canonical.points())?;
        let empty: &[Vector3<T>] = &[];
        pcb::write(
            &dir.join(&files.partial),
            obj.partial.as_ref().map_or(empty, |c| c.points()),
        )?;
        pcb::write(
            &dir.join(&files.partial_normalized),
            obj.partial_normalized.as_ref().map_or(empty, |c| c.points()),
        )?;
        objects.push(ObjectRecord {
            index: i as u32,
            class: obj.class.clone(),
            shape_params: obj.spec.params.iter().map(|p| p.as_f64()).collect(),
            pose: PoseRecord {
                rotation_matrix: rotation_record(&obj.pose.rotation),
                translation: vec3_record(&obj.pose.translation),
                size: vec3_record(&obj.pose.size),
            },
            files,
            visibility: obj.visibility.as_f64(),
        });
    }

    let manifest = SceneManifest {
        scene_id: sample.scene_id,
        seed: sample.seed,
        normalization: NormalizationRecord {
            center: vec3_record(&sample.normalization.center),
            scale: sample.normalization.scale.as_f64(),
        },
        camera: CameraRecord {
            elevation_deg: sample.camera.elevation_deg.as_f64(),
            azimuth_deg: sample.camera.azimuth_deg.as_f64(),
            radius: sample.camera.radius.as_f64(),
            resolution: sample.camera.resolution as u32,
        },
        objects,
    };
    write_json(&dir.join("manifest.json"), &manifest)?;
    Ok(dir_name)
}

fn vec3_of<T: Real>(v: &[f64; 3]) -> Vector3<T> {
    Vector3::new(T::of(v[0]), T::of(v[1]), T::of(v[2]))
}

fn cloud_of<T: Real>(points: Vec<Vector3<T>>) -> Option<PointCloud<T>> {
    PointCloud::new(points).ok()
}

/// Loads one scene directory, validating the manifest.
pub fn load_scene<T: Real>(dir: &Path) -> Result<SceneSample<T>, FormatError> {
    let manifest: SceneManifest = read_json(&dir.join("manifest.json"))?;

    if !(manifest.normalization.scale > 0.0) {
        return Err(FormatError::InvalidManifest(format!(
            "normalization scale {} must be positive",
            manifest.normalization.scale
        )));
    }
    if manifest.camera.resolution < 16 {
        return Err(FormatError::InvalidManifest(format!(
            "camera resolution {} below minimum 16",
            manifest.camera.resolution
        )));
    }

    let defaults = CameraConfig::<T>::default();
    let camera = CameraSpec {
        elevation_deg: T::of(manifest.camera.elevation_deg),
        azimuth_deg: T::of(manifest.camera.azimuth_deg),
        radius: T::of(manifest.camera.radius),
        fov_deg: defaults.fov_deg,
        resolution: manifest.camera.resolution as usize,
        look_at: defaults.look_at,
    };
    camera
        .validate()
        .map_err(|e| FormatError::InvalidManifest(e.to_string()))?;

    let mut objects = Vec::with_capacity(manifest.objects.len());
    for rec in &manifest.objects {
        let mut m = Matrix3::<T>::zeros();
        for row in 0..3 {
            for col in 0..3 {
                let v = rec.pose.rotation_matrix[row * 3 + col];
                if !v.is_finite() {
                    return Err(FormatError::NonFinite {
                        context: format!("rotation of object {}", rec.index),
                    });
                }
                m[(row, col)] = T::of(v);
            }
        }
        let rotation = RotationMatrix::try_new_with_tol(m, 1e-4).map_err(|e| {
            FormatError::InvalidManifest(format!("object {}: {e}", rec.index))
        })?;
        let pose = Pose::new(
            rotation,
            vec3_of(&rec.pose.translation),
            vec3_of(&rec.pose.size),
        )
        .map_err(|e| FormatError::InvalidManifest(format!("object {}: {e}", rec.index)))?;

        if !(0.0..=1.0).contains(&rec.visibility) {
            return Err(FormatError::InvalidManifest(format!(
                "object {} visibility {} outside [0, 1]",
                rec.index, rec.visibility
            )));
        }

        let kind = ShapeKind::from_name(&rec.class).ok_or_else(|| {
            FormatError::InvalidManifest(format!(
                "object {} has unknown class {:?}",
                rec.index, rec.class
            ))
        })?;

        let canonical_points: Vec<Vector3<T>> = pcb::read(&dir.join(&rec.files.canonical))?;
        if canonical_points.len() < 64 {
            return Err(FormatError::InvalidManifest(format!(
                "object {} canonical cloud has {} points, minimum is 64",
                rec.index,
                canonical_points.len()
            )));
        }
        let canonical = cloud_of(canonical_points).ok_or_else(|| {
            FormatError::InvalidManifest(format!("object {} canonical cloud is empty", rec.index))
        })?;
        let spec = ShapeSpec::new(
            kind,
            rec.shape_params.iter().map(|p| T::of(*p)).collect(),
            canonical.len(),
        )
        .map_err(|e| FormatError::InvalidManifest(format!("object {}: {e}", rec.index)))?;

        let partial = cloud_of(pcb::read(&dir.join(&rec.files.partial))?);
        let partial_normalized = cloud_of(pcb::read(&dir.join(&rec.files.partial_normalized))?);

        let (yaw, pitch) = crate::layout::yaw_pitch_of(&rotation);
        objects.push(ObjectSample {
            class: rec.class.clone(),
            spec,
            canonical,
            pose,
            partial,
            partial_normalized,
            visibility: T::of(rec.visibility),
            yaw_rad: yaw,
            pitch_rad: pitch,
        });
    }

    Ok(SceneSample {
        scene_id: manifest.scene_id,
        seed: manifest.seed,
        objects,
        camera,
        normalization: SceneNormalization {
            center: vec3_of(&manifest.normalization.center),
            scale: T::of(manifest.normalization.scale),
        },
    })
}

/// Writes the dataset root manifest.
pub fn write_dataset_manifest(
    root: &Path,
    global_seed: u64,
    scene_dirs: &[String],
) -> Result<(), FormatError> {
    let manifest = DatasetManifest {
        format_version: DATASET_FORMAT_VERSION,
        global_seed,
        scene_count: scene_dirs.len(),
        scenes: scene_dirs.to_vec(),
    };
    write_json(&root.join("dataset.json"), &manifest)
}

/// Loads a whole dataset directory in manifest order.
pub fn load_dataset<T: Real>(root: &Path) -> Result<(DatasetManifest, Vec<SceneSample<T>>), FormatError> {
    let manifest: DatasetManifest = read_json(&root.join("dataset.json"))?;
    if manifest.format_version != DATASET_FORMAT_VERSION {
        return Err(FormatError::VersionMismatch {
            found: manifest.format_version,
            expected: DATASET_FORMAT_VERSION,
        });
    }
    if manifest.scenes.len() != manifest.scene_count {
        return Err(FormatError::InvalidManifest(format!(
            "scene_count {} does not match listed scenes {}",
            manifest.scene_count,
            manifest.scenes.len()
        )));
    }
    let mut samples = Vec::with_capacity(manifest.scenes.len());
    for rel in &manifest.scenes {
        samples.push(load_scene(&root.join("scenes").join(rel))?);
    }
    Ok((manifest, samples))
}

pub fn scenes_root(root: &Path) -> PathBuf {
    root.join("scenes")
}
