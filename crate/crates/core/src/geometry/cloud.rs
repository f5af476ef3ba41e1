use nalgebra::Vector3;

use super::{Aabb, GeometryError};
use crate::real::Real;

/// Non-empty set of 3D points with finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud<T: Real> {
    points: Vec<Vector3<T>>,
}

impl<T: Real> PointCloud<T> {
    pub fn new(points: Vec<Vector3<T>>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyCloud);
        }
        for (i, p) in points.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(GeometryError::NonFinitePoint(i));
            }
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn points(&self) -> &[Vector3<T>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vector3<T>> {
        self.points
    }

    pub fn aabb(&self) -> Aabb<T> {
        Aabb::of_points(&self.points).expect("cloud is non-empty")
    }

    pub fn centroid(&self) -> Vector3<T> {
        let mut sum = Vector3::zeros();
        for p in &self.points {
            sum += *p;
        }
        sum / T::from_usize_(self.points.len())
    }

    /// Maps every point; the map must keep coordinates finite.
    pub fn map(&self, f: impl Fn(&Vector3<T>) -> Vector3<T>) -> Self {
        Self {
            points: self.points.iter().map(f).collect(),
        }
    }

    /// Deterministic subsample: keeps every k-th point (stride chosen from
    /// the target size), preserving order. Returns the cloud itself when it
    /// is already within budget.
    pub fn subsample_stride(&self, max_points: usize) -> Self {
        assert!(max_points >= 1);
        if self.points.len() <= max_points {
            return self.clone();
        }
        let stride = self.points.len().div_ceil(max_points);
        Self {
            points: self.points.iter().step_by(stride).copied().collect(),
        }
    }

    pub fn cast<U: Real>(&self) -> PointCloud<U> {
        PointCloud {
            points: self
                .points
                .iter()
                .map(|p| Vector3::new(U::of(p.x.as_f64()), U::of(p.y.as_f64()), U::of(p.z.as_f64())))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(matches!(
            PointCloud::<f64>::new(vec![]),
            Err(GeometryError::EmptyCloud)
        ));
        let bad = vec![Vector3::new(0.0, f64::NAN, 0.0)];
        assert!(matches!(
            PointCloud::new(bad),
            Err(GeometryError::NonFinitePoint(0))
        ));
    }

    #[test]
    fn centroid_of_symmetric_pair_is_midpoint() {
        let c = PointCloud::new(vec![Vector3::new(-1.0, 0.0, 2.0), Vector3::new(3.0, 0.0, 2.0)])
            .unwrap();
        assert_eq!(c.centroid(), Vector3::new(1.0, 0.0, 2.0));
    }

    #[test]
    fn stride_subsample_respects_budget() {
        let pts = (0..100)
            .map(|i| Vector3::new(i as f64, 0.0, 0.0))
            .collect::<Vec<_>>();
        let c = PointCloud::new(pts).unwrap();
        let s = c.subsample_stride(16);
        assert!(s.len() <= 16);
        assert_eq!(s.points()[0], Vector3::new(0.0, 0.0, 0.0));
    }
}
