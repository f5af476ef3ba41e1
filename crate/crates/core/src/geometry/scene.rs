//! Scene-level composition and normalization into the unified model space.

use nalgebra::Vector3;

use super::{apply_pose, Aabb, GeometryError, PointCloud, Pose};
use crate::real::Real;

/// Rigid shift + uniform scale mapping scene coordinates into the unified
/// space: `x_unified = (x - center) / scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SceneNormalization<T: Real> {
    pub center: Vector3<T>,
    pub scale: T,
}

impl<T: Real> SceneNormalization<T> {
    pub fn identity() -> Self {
        Self {
            center: Vector3::zeros(),
            scale: T::one(),
        }
    }

    pub fn to_unified(&self, x: &Vector3<T>) -> Vector3<T> {
        (x - self.center) / self.scale
    }

    pub fn from_unified(&self, x: &Vector3<T>) -> Vector3<T> {
        x * self.scale + self.center
    }

    /// Pose with translation and size mapped into the unified space;
    /// rotation is unchanged.
    pub fn normalize_pose(&self, pose: &Pose<T>) -> Pose<T> {
        Pose {
            rotation: pose.rotation,
            translation: self.to_unified(&pose.translation),
            size: pose.size / self.scale,
        }
    }

    /// Inverse of [`Self::normalize_pose`].
    pub fn denormalize_pose(&self, pose: &Pose<T>) -> Pose<T> {
        Pose {
            rotation: pose.rotation,
            translation: self.from_unified(&pose.translation),
            size: pose.size * self.scale,
        }
    }
}

/// Normalizes a scene of posed objects: center is the centroid of all posed
/// points, scale is half the maximum extent of the union AABB. Returns the
/// normalized poses (canonical clouds are untouched) and the transform.
pub fn normalize_scene<T: Real>(
    objects: &[(PointCloud<T>, Pose<T>)],
) -> Result<(Vec<Pose<T>>, SceneNormalization<T>), GeometryError> {
    if objects.is_empty() {
        return Err(GeometryError::EmptyScene);
    }
    let mut sum = Vector3::zeros();
    let mut count = 0usize;
    let mut bbox: Option<Aabb<T>> = None;
    for (cloud, pose) in objects {
        let posed = apply_pose(pose, cloud);
        for p in posed.points() {
            sum += *p;
        }
        count += posed.len();
        let b = posed.aabb();
        bbox = Some(match bbox {
            Some(prev) => prev.union(&b),
            None => b,
        });
    }
    let center = sum / T::from_usize_(count);
    let scale = bbox.expect("at least one object").max_extent() * T::of(0.5);
    if scale <= T::zero() {
        return Err(GeometryError::DegenerateScene);
    }
    let norm = SceneNormalization { center, scale };
    let poses = objects
        .iter()
        .map(|(_, pose)| norm.normalize_pose(pose))
        .collect();
    Ok((poses, norm))
}

/// Union of posed object clouds with per-object provenance ranges.
#[derive(Debug, Clone)]
pub struct ComposedScene<T: Real> {
    pub cloud: PointCloud<T>,
    /// `(start, len)` of each object's slice in `cloud`, in input order.
    pub ranges: Vec<(usize, usize)>,
}

impl<T: Real> ComposedScene<T> {
    pub fn object_points(&self, index: usize) -> &[Vector3<T>] {
        let (start, len) = self.ranges[index];
        &self.cloud.points()[start..start + len]
    }
}

/// Applies each pose to its canonical cloud and concatenates the results.
pub fn compose_scene<T: Real>(
    objects: &[PointCloud<T>],
    poses: &[Pose<T>],
) -> Result<ComposedScene<T>, GeometryError> {
    if objects.len() != poses.len() {
        return Err(GeometryError::LengthMismatch {
            objects: objects.len(),
            poses: poses.len(),
        });
    }
    if objects.is_empty() {
        return Err(GeometryError::EmptyScene);
    }
    let mut points = Vec::with_capacity(objects.iter().map(|c| c.len()).sum());
    let mut ranges = Vec::with_capacity(objects.len());
    for (cloud, pose) in objects.iter().zip(poses) {
        let posed = apply_pose(pose, cloud);
        ranges.push((points.len(), posed.len()));
        points.extend_from_slice(posed.points());
    }
    Ok(ComposedScene {
        cloud: PointCloud::new(points)?,
        ranges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RotationMatrix;
    use approx::assert_relative_eq;

    fn unit_cube_corners() -> PointCloud<f64> {
        let mut pts = Vec::new();
        for &x in &[-0.5, 0.5] {
            for &y in &[-0.5, 0.5] {
                for &z in &[-0.5, 0.5] {
                    pts.push(Vector3::new(x, y, z));
                }
            }
        }
        PointCloud::new(pts).unwrap()
    }

    #[test]
    fn centered_scene_is_left_alone() {
        // Corners of [-1,1]^3: centroid 0, union AABB extent 2, scale 1.
        let cube = unit_cube_corners();
        let pose = Pose::new(
            RotationMatrix::identity(),
            Vector3::zeros(),
            Vector3::new(2.0, 2.0, 2.0),
        )
        .unwrap();
        let (poses, norm) = normalize_scene(&[(cube, pose)]).unwrap();
        assert_relative_eq!(norm.center, Vector3::zeros(), epsilon = 1e-12);
        assert_relative_eq!(norm.scale, 1.0, epsilon = 1e-12);
        assert_relative_eq!(poses[0].translation, Vector3::zeros(), epsilon = 1e-12);
        assert_relative_eq!(poses[0].size, Vector3::new(2.0, 2.0, 2.0), epsilon = 1e-12);
    }

    #[test]
    fn translated_cube_centroid_becomes_center() {
        let cube = unit_cube_corners();
        let pose = Pose::new(
            RotationMatrix::identity(),
            Vector3::new(10.0, 0.0, 0.0),
            Vector3::new(1.0, 1.0, 1.0),
        )
        .unwrap();
        let (_, norm) = normalize_scene(&[(cube, pose)]).unwrap();
        assert_relative_eq!(norm.center, Vector3::new(10.0, 0.0, 0.0), epsilon = 1e-6);
    }

    #[test]
    fn normalize_then_denormalize_round_trips() {
        let cube = unit_cube_corners();
        let poses = vec![
            Pose::new(
                RotationMatrix::from_yaw(0.4),
                Vector3::new(3.0, -2.0, 0.5),
                Vector3::new(0.7, 0.9, 1.3),
            )
            .unwrap(),
            Pose::new(
                RotationMatrix::identity(),
                Vector3::new(-1.0, 4.0, 0.0),
                Vector3::new(2.0, 1.0, 0.4),
            )
            .unwrap(),
        ];
        let objs: Vec<_> = poses.iter().map(|p| (cube.clone(), *p)).collect();
        let (normed, norm) = normalize_scene(&objs).unwrap();
        for (orig, n) in poses.iter().zip(&normed) {
            let back = norm.denormalize_pose(n);
            assert_relative_eq!(back.translation, orig.translation, epsilon = 1e-6);
            assert_relative_eq!(back.size, orig.size, epsilon = 1e-6);
        }
    }

    #[test]
    fn single_point_scene_is_degenerate() {
        let point = PointCloud::new(vec![Vector3::new(0.0, 0.0, 0.0)]).unwrap();
        let err = normalize_scene(&[(point, Pose::identity())]);
        assert!(matches!(err, Err(GeometryError::DegenerateScene)));
    }

    #[test]
    fn compose_concatenates_and_tracks_provenance() {
        let cube = unit_cube_corners();
        let single = Pose::identity();
        let shifted = Pose::new(
            RotationMatrix::identity(),
            Vector3::new(5.0, 0.0, 0.0),
            Vector3::new(1.0, 1.0, 1.0),
        )
        .unwrap();
        let composed = compose_scene(&[cube.clone(), cube.clone()], &[single, shifted]).unwrap();
        assert_eq!(composed.cloud.len(), 2 * cube.len());
        assert_eq!(composed.ranges, vec![(0, 8), (8, 8)]);
        // identity pose: first slice equals the canonical cloud bit-exact
        assert_eq!(composed.object_points(0), cube.points());
    }

    #[test]
    fn composed_aabb_is_union_of_per_object_aabbs() {
        let cube = unit_cube_corners();
        let poses = [
            Pose::identity(),
            Pose::new(
                RotationMatrix::from_yaw(1.0),
                Vector3::new(2.0, 1.0, 0.0),
                Vector3::new(1.5, 0.5, 1.0),
            )
            .unwrap(),
        ];
        let composed = compose_scene(&[cube.clone(), cube.clone()], &poses).unwrap();
        let by_union = apply_pose(&poses[0], &cube)
            .aabb()
            .union(&apply_pose(&poses[1], &cube).aabb());
        let direct = composed.cloud.aabb();
        assert_relative_eq!(direct.min, by_union.min, epsilon = 1e-12);
        assert_relative_eq!(direct.max, by_union.max, epsilon = 1e-12);
    }

    #[test]
    fn compose_length_mismatch_errors() {
        let cube = unit_cube_corners();
        let err = compose_scene(&[cube], &[]);
        assert!(matches!(err, Err(GeometryError::LengthMismatch { .. })));
    }
}
