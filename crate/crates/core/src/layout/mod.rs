//! Procedural scene synthesis: primitive shape sampling, grounded
//! non-intersecting layouts, camera sampling, and z-buffer visibility that
//! stands in for a real perception stack by producing per-object partial
//! point clouds.

mod camera;
mod generate;
mod place;
mod render;
mod scene_sample;
mod shape;

pub use camera::{sample_camera, CameraConfig, CameraProjection, CameraSpec};
pub use generate::{
    generate_dataset, generate_scene, validate_scene, yaw_pitch_of, DatasetConfig, DatasetSummary,
};
pub use place::{sample_layout, LayoutConfig};
pub use render::{
    normalize_object_partial, render_partial, PartialView, RenderOptions, RenderOutput,
};
pub use scene_sample::{ObjectSample, SceneSample};
pub use shape::{sample_shape, sample_surface, ShapeDistribution, ShapeKind, ShapeSpec};

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum LayoutError {
    #[error("invalid configuration: {0}")]
    Configuration(String),
    #[error("layout infeasible: rejection budget of {budget} exhausted after placing {placed} of {total} objects")]
    LayoutInfeasible {
        budget: usize,
        placed: usize,
        total: usize,
    },
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}
