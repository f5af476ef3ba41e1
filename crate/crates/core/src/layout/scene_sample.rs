//! The per-scene record produced by the generator and consumed by training
//! and evaluation.

use crate::geometry::{
    compose_scene, ComposedScene, GeometryError, PointCloud, Pose, SceneNormalization,
};
use crate::layout::camera::CameraSpec;
use crate::layout::shape::ShapeSpec;
use crate::real::Real;

#[derive(Debug, Clone)]
pub struct ObjectSample<T: Real> {
    pub class: String,
    pub spec: ShapeSpec<T>,
    /// Canonical surface cloud (unit cube frame), stored without the pose's
    /// rotation augmentation.
    pub canonical: PointCloud<T>,
    /// Ground-truth pose in the scene frame.
    pub pose: Pose<T>,
    /// Visible points in the scene frame; `None` when fully occluded.
    pub partial: Option<PointCloud<T>>,
    /// Visible points in the object-local normalized frame.
    pub partial_normalized: Option<PointCloud<T>>,
    pub visibility: T,
    /// Rotation-augmentation record backing `pose.rotation`.
    pub yaw_rad: T,
    pub pitch_rad: T,
}

#[derive(Debug, Clone)]
pub struct SceneSample<T: Real> {
    pub scene_id: u64,
    pub seed: u64,
    pub objects: Vec<ObjectSample<T>>,
    pub camera: CameraSpec<T>,
    pub normalization: SceneNormalization<T>,
}

impl<T: Real> SceneSample<T> {
    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn canonical_clouds(&self) -> Vec<PointCloud<T>> {
        self.objects.iter().map(|o| o.canonical.clone()).collect()
    }

    pub fn gt_poses(&self) -> Vec<Pose<T>> {
        self.objects.iter().map(|o| o.pose).collect()
    }

    /// Full composed scene cloud, rebuilt from canonical clouds and poses.
    pub fn composed(&self) -> Result<ComposedScene<T>, GeometryError> {
        let clouds = self.canonical_clouds();
        let poses = self.gt_poses();
        compose_scene(&clouds, &poses)
    }

    /// Union of the per-object visible points in scene frame, in object
    /// order. `None` when every object is fully occluded.
    pub fn visible_cloud(&self) -> Option<PointCloud<T>> {
        let mut pts = Vec::new();
        for o in &self.objects {
            if let Some(c) = &o.partial {
                pts.extend_from_slice(c.points());
            }
        }
        PointCloud::new(pts).ok()
    }
}
