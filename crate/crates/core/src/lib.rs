//! Desk-scale 3D scene pose pipeline: procedural scene layout synthesis with
//! simulated perception, permutation-invariant point-cloud condition encoders,
//! a flow-matching transformer that denoises per-object rotation/translation/size,
//! geometric evaluation metrics, and de-occlusion mask dataset tooling.
//!
//! Core math is generic over the scalar type via [`Real`]; the pipeline
//! instantiates scene-side geometry at `f64` (see [`SceneScalar`]) and the
//! learned model at `f32` (see [`ModelScalar`], matching the checkpoint
//! payload format).


pub mod geometry;
pub mod io;
pub mod layout;
pub mod metrics;
pub mod real;
pub mod seed;

pub use real::Real;

/// Scalar used for scene geometry, layout synthesis, and metrics.
pub type SceneScalar = f64;
/// Scalar used for model weights and training (checkpoints store f32).
pub type ModelScalar = f32;

/// 3-vector in the pipeline's scene scalar.
pub type Vec3 = nalgebra::Vector3<SceneScalar>;
/// 3x3 matrix in the pipeline's scene scalar.
pub type Mat3 = nalgebra::Matrix3<SceneScalar>;

pub type PointCloud = geometry::PointCloud<SceneScalar>;
pub type Pose = geometry::Pose<SceneScalar>;
pub type RotationMatrix = geometry::RotationMatrix<SceneScalar>;
pub type Rotation6d = geometry::Rotation6d<SceneScalar>;
pub type Aabb = geometry::Aabb<SceneScalar>;
pub type SceneNormalization = geometry::SceneNormalization<SceneScalar>;
pub type SceneSample = layout::SceneSample<SceneScalar>;
pub type MetricsReport = metrics::MetricsReport<SceneScalar>;
