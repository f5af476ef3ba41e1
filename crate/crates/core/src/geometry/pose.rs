use nalgebra::Vector3;

use super::{GeometryError, PointCloud, RotationMatrix};
use crate::real::Real;

/// Placement of a canonical object in the scene: rotation, translation, and
/// per-axis size in unified scene units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose<T: Real> {
    pub rotation: RotationMatrix<T>,
    pub translation: Vector3<T>,
    pub size: Vector3<T>,
}

impl<T: Real> Pose<T> {
    pub fn new(
        rotation: RotationMatrix<T>,
        translation: Vector3<T>,
        size: Vector3<T>,
    ) -> Result<Self, GeometryError> {
        if !(size.x > T::zero() && size.y > T::zero() && size.z > T::zero()) {
            return Err(GeometryError::NonPositiveSize(format!(
                "({}, {}, {})",
                size.x, size.y, size.z
            )));
        }
        if !(translation.x.is_finite() && translation.y.is_finite() && translation.z.is_finite()) {
            return Err(GeometryError::NonFiniteTranslation);
        }
        Ok(Self {
            rotation,
            translation,
            size,
        })
    }

    pub fn identity() -> Self {
        Self {
            rotation: RotationMatrix::identity(),
            translation: Vector3::zeros(),
            size: Vector3::new(T::one(), T::one(), T::one()),
        }
    }

    /// Scale in the canonical frame, then rotate, then translate:
    /// `x -> R (s .* x) + t`.
    pub fn transform_point(&self, x: &Vector3<T>) -> Vector3<T> {
        self.rotation.apply(&x.component_mul(&self.size)) + self.translation
    }
}

/// Applies the pose to every point of a canonical-space cloud.
pub fn apply_pose<T: Real>(pose: &Pose<T>, cloud: &PointCloud<T>) -> PointCloud<T> {
    cloud.map(|p| pose.transform_point(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tiny_cloud() -> PointCloud<f64> {
        PointCloud::new(vec![
            Vector3::new(1.0, 1.0, 1.0),
            Vector3::new(-0.5, 0.25, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn identity_pose_is_identity_map() {
        let c = tiny_cloud();
        let out = apply_pose(&Pose::identity(), &c);
        assert_eq!(out, c); // bit-exact
    }

    #[test]
    fn scale_then_translate() {
        let pose = Pose::new(
            RotationMatrix::identity(),
            Vector3::new(1.0, 0.0, 0.0),
            Vector3::new(2.0, 2.0, 2.0),
        )
        .unwrap();
        let out = pose.transform_point(&Vector3::new(1.0, 1.0, 1.0));
        assert_eq!(out, Vector3::new(3.0, 2.0, 2.0));
    }

    #[test]
    fn yaw_quarter_turn_moves_x_axis_to_y() {
        let pose = Pose::new(
            RotationMatrix::from_yaw(std::f64::consts::FRAC_PI_2),
            Vector3::zeros(),
            Vector3::new(1.0, 1.0, 1.0),
        )
        .unwrap();
        let out = pose.transform_point(&Vector3::new(1.0, 0.0, 0.0));
        assert_relative_eq!(out, Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-12);
    }

    #[test]
    fn unit_size_pose_preserves_pairwise_distances() {
        let pose = Pose::new(
            RotationMatrix::from_axis_angle(&Vector3::new(1.0, 2.0, 0.5), 0.7),
            Vector3::new(3.0, -1.0, 2.0),
            Vector3::new(1.0, 1.0, 1.0),
        )
        .unwrap();
        let c = tiny_cloud();
        let out = apply_pose(&pose, &c);
        let before = (c.points()[0] - c.points()[1]).norm();
        let after = (out.points()[0] - out.points()[1]).norm();
        assert_relative_eq!(before, after, epsilon = 1e-6);
    }

    #[test]
    fn non_positive_size_rejected() {
        let err = Pose::new(
            RotationMatrix::identity(),
            Vector3::zeros(),
            Vector3::new(1.0, 0.0, 1.0),
        );
        assert!(matches!(err, Err(GeometryError::NonPositiveSize(_))));
    }
}
