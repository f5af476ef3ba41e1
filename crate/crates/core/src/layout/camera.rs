//! Camera sampling and pinhole projection onto the z-buffer grid.

use nalgebra::Vector3;
use rand::Rng;

use super::LayoutError;
use crate::real::Real;

pub const MIN_RESOLUTION: usize = 16;

/// Sampling ranges for [`sample_camera`].
#[derive(Debug, Clone, PartialEq)]
pub struct CameraConfig<T: Real> {
    pub elevation_deg: (T, T),
    pub radius: (T, T),
    pub fov_deg: T,
    pub resolution: usize,
    pub look_at: Vector3<T>,
}

impl<T: Real> Default for CameraConfig<T> {
    fn default() -> Self {
        Self {
            elevation_deg: (T::of(15.0), T::of(60.0)),
            radius: (T::of(5.0), T::of(7.0)),
            fov_deg: T::of(50.0),
            resolution: 192,
            look_at: Vector3::new(T::zero(), T::zero(), T::of(0.25)),
        }
    }
}

/// A sampled viewpoint: elevation/azimuth/radius orbit around `look_at`.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraSpec<T: Real> {
    pub elevation_deg: T,
    pub azimuth_deg: T,
    pub radius: T,
    pub fov_deg: T,
    pub resolution: usize,
    pub look_at: Vector3<T>,
}

impl<T: Real> CameraSpec<T> {
    pub fn validate(&self) -> Result<(), LayoutError> {
        let e = self.elevation_deg.as_f64();
        if !(15.0..=60.0).contains(&e) {
            return Err(LayoutError::Configuration(format!(
                "camera elevation {e} outside [15, 60] degrees"
            )));
        }
        if !(self.radius > T::zero()) {
            return Err(LayoutError::Configuration(
                "camera radius must be positive".into(),
            ));
        }
        if self.resolution < MIN_RESOLUTION {
            return Err(LayoutError::Configuration(format!(
                "camera resolution {} below minimum {MIN_RESOLUTION}",
                self.resolution
            )));
        }
        Ok(())
    }

    pub fn position(&self) -> Vector3<T> {
        let e = self.elevation_deg * T::of(std::f64::consts::PI / 180.0);
        let a = self.azimuth_deg * T::of(std::f64::consts::PI / 180.0);
        self.look_at
            + Vector3::new(e.cos() * a.cos(), e.cos() * a.sin(), e.sin()) * self.radius
    }

    pub fn projection(&self) -> CameraProjection<T> {
        let pos = self.position();
        let forward = (self.look_at - pos).normalize();
        let world_up = Vector3::new(T::zero(), T::zero(), T::one());
        let right = forward.cross(&world_up).normalize();
        let up = right.cross(&forward);
        let half_tan = (self.fov_deg * T::of(std::f64::consts::PI / 360.0)).tan();
        CameraProjection {
            pos,
            forward,
            right,
            up,
            half_tan,
            resolution: self.resolution,
        }
    }
}

/// Precomputed basis for projecting scene points to pixels.
#[derive(Debug, Clone)]
pub struct CameraProjection<T: Real> {
    pub pos: Vector3<T>,
    pub forward: Vector3<T>,
    pub right: Vector3<T>,
    pub up: Vector3<T>,
    pub half_tan: T,
    pub resolution: usize,
}

impl<T: Real> CameraProjection<T> {
    /// Pixel coordinates and depth along the view axis; `None` for points
    /// behind the camera or outside the image grid.
    pub fn project(&self, p: &Vector3<T>) -> Option<(usize, usize, T)> {
        let v = p - self.pos;
        let depth = v.dot(&self.forward);
        if !(depth > T::zero()) {
            return None;
        }
        let x = v.dot(&self.right) / depth / self.half_tan;
        let y = v.dot(&self.up) / depth / self.half_tan;
        let res = T::from_usize_(self.resolution);
        let px = ((x + T::one()) * T::of(0.5) * res).floor();
        let py = ((y + T::one()) * T::of(0.5) * res).floor();
        if px < T::zero() || py < T::zero() || px >= res || py >= res {
            return None;
        }
        Some((px.as_f64() as usize, py.as_f64() as usize, depth))
    }
}

/// Elevation uniform in the configured range (default [15, 60] degrees),
/// azimuth uniform over the full circle, radius uniform in range.
pub fn sample_camera<T: Real, R: Rng>(rng: &mut R, cfg: &CameraConfig<T>) -> CameraSpec<T> {
    let elevation_deg = T::of(rng.random_range(
        cfg.elevation_deg.0.as_f64()..cfg.elevation_deg.1.as_f64(),
    ));
    let azimuth_deg = T::of(rng.random_range(0.0..360.0));
    let radius = T::of(rng.random_range(cfg.radius.0.as_f64()..cfg.radius.1.as_f64()));
    CameraSpec {
        elevation_deg,
        azimuth_deg,
        radius,
        fov_deg: cfg.fov_deg,
        resolution: cfg.resolution,
        look_at: cfg.look_at,
    }
}
