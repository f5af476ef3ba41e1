//! Z-buffer visibility: simulated perception producing per-object partial
//! point clouds and visibility fractions.

use nalgebra::Vector3;
use rand::Rng;

use super::camera::{CameraSpec, MIN_RESOLUTION};
use super::LayoutError;
use crate::geometry::{ComposedScene, PointCloud};
use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions<T: Real> {
    /// Points whose depth is within this tolerance of the pixel winner also
    /// count as visible. Zero keeps only the unique winner per pixel.
    pub depth_tolerance: T,
    /// Gaussian noise applied along the view ray to visible points.
    pub depth_noise_sigma: T,
}

impl<T: Real> Default for RenderOptions<T> {
    fn default() -> Self {
        Self {
            depth_tolerance: T::zero(),
            depth_noise_sigma: T::zero(),
        }
    }
}

/// One object's visibility result.
#[derive(Debug, Clone)]
pub struct PartialView<T: Real> {
    /// Indices into the object's slice of the composed cloud.
    pub visible_indices: Vec<usize>,
    /// Visible points in the scene frame; `None` when fully occluded.
    pub cloud: Option<PointCloud<T>>,
    /// visible / total for this object.
    pub visibility: T,
    pub occluded: bool,
}

#[derive(Debug, Clone)]
pub struct RenderOutput<T: Real> {
    pub per_object: Vec<PartialView<T>>,
}

impl<T: Real> RenderOutput<T> {
    /// Union of all per-object visible points, in object order.
    pub fn visible_scene_cloud(&self) -> Option<PointCloud<T>> {
        let mut pts = Vec::new();
        for view in &self.per_object {
            if let Some(c) = &view.cloud {
                pts.extend_from_slice(c.points());
            }
        }
        PointCloud::new(pts).ok()
    }
}

/// Projects every composed point into the camera grid, keeps the nearest
/// point per pixel, and returns each object's visible subset.
pub fn render_partial<T: Real, R: Rng>(
    scene: &ComposedScene<T>,
    camera: &CameraSpec<T>,
    opts: &RenderOptions<T>,
    rng: &mut R,
) -> Result<RenderOutput<T>, LayoutError> {
    if camera.resolution < MIN_RESOLUTION {
        return Err(LayoutError::Configuration(format!(
            "render resolution {} below minimum {MIN_RESOLUTION}",
            camera.resolution
        )));
    }
    camera.validate()?;
    let proj = camera.projection();
    let res = camera.resolution;

    // pass 1: per-pixel winner (depth, object, local point index)
    let mut zbuf: Vec<Option<(T, usize, usize)>> = vec![None; res * res];
    let mut projected: Vec<Vec<Option<(usize, T)>>> = Vec::with_capacity(scene.ranges.len());
    for (obj, &(start, len)) in scene.ranges.iter().enumerate() {
        let mut per_point = Vec::with_capacity(len);
        for (local, p) in scene.cloud.points()[start..start + len].iter().enumerate() {
            match proj.project(p) {
                Some((px, py, depth)) => {
                    let cell = py * res + px;
                    per_point.push(Some((cell, depth)));
                    let better = match &zbuf[cell] {
                        Some((d, _, _)) => depth < *d,
                        None => true,
                    };
                    if better {
                        zbuf[cell] = Some((depth, obj, local));
                    }
                }
                None => per_point.push(None),
            }
        }
        projected.push(per_point);
    }

    // pass 2: collect visible points per object
    let tol = opts.depth_tolerance;
    let use_tol = tol > T::zero();
    let mut per_object = Vec::with_capacity(scene.ranges.len());
    for (obj, &(start, len)) in scene.ranges.iter().enumerate() {
        let mut visible_indices = Vec::new();
        for (local, entry) in projected[obj].iter().enumerate() {
            let Some((cell, depth)) = entry else { continue };
            let Some((best_depth, best_obj, best_local)) = &zbuf[*cell] else {
                continue;
            };
            let visible = if use_tol {
                *depth <= *best_depth + tol
            } else {
                *best_obj == obj && *best_local == local
            };
            if visible {
                visible_indices.push(local);
            }
        }
        let total = T::from_usize_(len);
        let visibility = T::from_usize_(visible_indices.len()) / total;
        let mut points: Vec<Vector3<T>> = visible_indices
            .iter()
            .map(|&i| scene.cloud.points()[start + i])
            .collect();
        if opts.depth_noise_sigma > T::zero() {
            let fwd = proj.forward;
            for p in &mut points {
                let noise: f64 = rng.sample(rand_distr::StandardNormal);
                *p += fwd * (opts.depth_noise_sigma * T::of(noise));
            }
        }
        let cloud = PointCloud::new(points).ok();
        per_object.push(PartialView {
            occluded: visible_indices.is_empty(),
            visible_indices,
            cloud,
            visibility,
        });
    }

    Ok(RenderOutput { per_object })
}

/// Centers a partial cloud at its centroid and scales by half the maximum
/// extent so it roughly fills [-1, 1]^3. A cloud with zero extent is only
/// centered.
pub fn normalize_object_partial<T: Real>(partial: &PointCloud<T>) -> PointCloud<T> {
    let centroid = partial.centroid();
    let half_extent = partial.aabb().max_extent() * T::of(0.5);
    let scale = if half_extent > T::zero() {
        half_extent
    } else {
        T::one()
    };
    partial.map(|p| (p - centroid) / scale)
}
