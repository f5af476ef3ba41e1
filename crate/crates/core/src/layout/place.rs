//! Grounded, non-intersecting object placement via rejection sampling.

use nalgebra::Vector3;
use rand::Rng;

use super::LayoutError;
use crate::geometry::{aabb_intersects, apply_pose, Aabb, PointCloud, Pose, RotationMatrix};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutConfig<T: Real> {
    pub max_objects: usize,
    /// Half-range of the uniform x/y translation draw.
    pub xy_range: T,
    /// Pitch perturbation half-range in degrees (yaw is always full-circle).
    pub pitch_range_deg: T,
    /// Per-axis size range.
    pub size_range: (T, T),
    /// Total placement attempts per scene before giving up.
    pub rejection_budget: usize,
}

impl<T: Real> Default for LayoutConfig<T> {
    fn default() -> Self {
        Self {
            max_objects: 8,
            xy_range: T::of(0.8),
            pitch_range_deg: T::of(15.0),
            // sizes keep five rotated AABBs packable inside the xy range
            size_range: (T::of(0.25), T::of(0.6)),
            rejection_budget: 1000,
        }
    }
}

/// Rotation/size draw for one object together with the placement loop. Each
/// pose gets a uniform yaw, a pitch perturbation about the x axis applied
/// before the yaw, and a translation whose z grounds the posed cloud at
/// z = 0 exactly. Samples x/y until no placed AABB pair intersects.
pub fn sample_layout<T: Real, R: Rng>(
    rng: &mut R,
    clouds: &[PointCloud<T>],
    cfg: &LayoutConfig<T>,
) -> Result<Vec<Pose<T>>, LayoutError> {
    let n = clouds.len();
    if n == 0 || n > cfg.max_objects {
        return Err(LayoutError::Configuration(format!(
            "object count {n} outside 1..={}",
            cfg.max_objects
        )));
    }

    let mut poses: Vec<Pose<T>> = Vec::with_capacity(n);
    let mut boxes: Vec<Aabb<T>> = Vec::with_capacity(n);
    let mut attempts = 0usize;

    for (idx, cloud) in clouds.iter().enumerate() {
        let yaw = T::of(rng.random_range(0.0..std::f64::consts::TAU));
        let pitch_range = cfg.pitch_range_deg.as_f64().to_radians();
        let pitch = if pitch_range > 0.0 {
            T::of(rng.random_range(-pitch_range..pitch_range))
        } else {
            T::zero()
        };
        let rotation = compose_yaw_pitch(yaw, pitch);
        let size = Vector3::new(
            draw_size(rng, cfg),
            draw_size(rng, cfg),
            draw_size(rng, cfg),
        );

        // Rotation and size are fixed per object; translation only shifts
        // the AABB, so the cloud is transformed once.
        let unplaced = Pose::new(rotation, Vector3::zeros(), size)?;
        let posed = apply_pose(&unplaced, cloud);
        let base_box = posed.aabb();
        let ground_z = -base_box.min.z;

        loop {
            attempts += 1;
            if attempts > cfg.rejection_budget {
                return Err(LayoutError::LayoutInfeasible {
                    budget: cfg.rejection_budget,
                    placed: idx,
                    total: n,
                });
            }
            let range = cfg.xy_range.as_f64();
            let (tx, ty) = if range > 0.0 {
                (
                    T::of(rng.random_range(-range..range)),
                    T::of(rng.random_range(-range..range)),
                )
            } else {
                (T::zero(), T::zero())
            };
            let t = Vector3::new(tx, ty, ground_z);
            let candidate = Aabb::new(base_box.min + t, base_box.max + t);
            if boxes.iter().any(|b| aabb_intersects(b, &candidate)) {
                continue;
            }
            boxes.push(candidate);
            poses.push(Pose::new(rotation, t, size)?);
            break;
        }
    }
    Ok(poses)
}

/// Yaw about z composed with a pitch perturbation: `R = Rz(yaw) * Rx(pitch)`.
pub fn compose_yaw_pitch<T: Real>(yaw: T, pitch: T) -> RotationMatrix<T> {
    let rz = RotationMatrix::from_yaw(yaw);
    let rx = RotationMatrix::from_axis_angle(&Vector3::x_axis().into_inner(), pitch);
    RotationMatrix::try_new_with_tol(rz.matrix() * rx.matrix(), 1e-5)
        .expect("product of rotations is a rotation")
}

fn draw_size<T: Real, R: Rng>(rng: &mut R, cfg: &LayoutConfig<T>) -> T {
    let (lo, hi) = (cfg.size_range.0.as_f64(), cfg.size_range.1.as_f64());
    if hi > lo {
        T::of(rng.random_range(lo..hi))
    } else {
        cfg.size_range.0
    }
}
