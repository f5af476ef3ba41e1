//! Rotation representations, poses, bounding boxes, point clouds, and the
//! scene normalization / composition operations shared by every other module.

mod aabb;
mod cloud;
mod pose;
mod rotation;
mod scene;

pub use aabb::{aabb_intersects, aabb_iou_3d, Aabb, BoxIou};
pub use cloud::PointCloud;
pub use pose::{apply_pose, Pose};
pub use rotation::{matrix_to_rot6d, rot6d_to_matrix, Rotation6d, RotationMatrix};
pub use scene::{
    compose_scene, normalize_scene, ComposedScene, SceneNormalization,
};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeometryError {
    #[error("degenerate 6D rotation: {0}")]
    DegenerateRotation(String),
    #[error("matrix is not a rotation: {0}")]
    InvalidRotationMatrix(String),
    #[error("point cloud must contain at least one finite point")]
    EmptyCloud,
    #[error("point cloud contains a non-finite coordinate at index {0}")]
    NonFinitePoint(usize),
    #[error("pose size components must be strictly positive, got {0}")]
    NonPositiveSize(String),
    #[error("pose translation must be finite")]
    NonFiniteTranslation,
    #[error("scene has no objects")]
    EmptyScene,
    #[error("scene extent is degenerate (zero size)")]
    DegenerateScene,
    #[error("object list length {objects} does not match pose list length {poses}")]
    LengthMismatch { objects: usize, poses: usize },
}
