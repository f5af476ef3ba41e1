use nalgebra::Vector3;

use crate::real::Real;

/// Axis-aligned bounding box, `min <= max` componentwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb<T: Real> {
    pub min: Vector3<T>,
    pub max: Vector3<T>,
}

/// 3D IoU value plus a flag marking a zero-volume union.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxIou<T: Real> {
    pub value: T,
    pub degenerate: bool,
}

impl<T: Real> Aabb<T> {
    pub fn new(min: Vector3<T>, max: Vector3<T>) -> Self {
        debug_assert!(min.x <= max.x && min.y <= max.y && min.z <= max.z);
        Self { min, max }
    }

    pub fn of_points(points: &[Vector3<T>]) -> Option<Self> {
        let first = points.first()?;
        let mut min = *first;
        let mut max = *first;
        for p in &points[1..] {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            min.z = min.z.min(p.z);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
            max.z = max.z.max(p.z);
        }
        Some(Self { min, max })
    }

    pub fn extent(&self) -> Vector3<T> {
        self.max - self.min
    }

    pub fn max_extent(&self) -> T {
        let e = self.extent();
        e.x.max(e.y).max(e.z)
    }

    pub fn center(&self) -> Vector3<T> {
        (self.min + self.max) * T::of(0.5)
    }

    pub fn volume(&self) -> T {
        let e = self.extent();
        e.x * e.y * e.z
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            min: Vector3::new(
                self.min.x.min(other.min.x),
                self.min.y.min(other.min.y),
                self.min.z.min(other.min.z),
            ),
            max: Vector3::new(
                self.max.x.max(other.max.x),
                self.max.y.max(other.max.y),
                self.max.z.max(other.max.z),
            ),
        }
    }
}

/// Strict overlap on all three axes; boxes sharing only a face do not
/// intersect.
pub fn aabb_intersects<T: Real>(a: &Aabb<T>, b: &Aabb<T>) -> bool {
    a.min.x < b.max.x
        && b.min.x < a.max.x
        && a.min.y < b.max.y
        && b.min.y < a.max.y
        && a.min.z < b.max.z
        && b.min.z < a.max.z
}

/// Overlap volume / union volume. A zero-volume union yields 0 with the
/// degenerate flag set.
pub fn aabb_iou_3d<T: Real>(a: &Aabb<T>, b: &Aabb<T>) -> BoxIou<T> {
    let zero = T::zero();
    let ox = (a.max.x.min(b.max.x) - a.min.x.max(b.min.x)).max(zero);
    let oy = (a.max.y.min(b.max.y) - a.min.y.max(b.min.y)).max(zero);
    let oz = (a.max.z.min(b.max.z) - a.min.z.max(b.min.z)).max(zero);
    let overlap = ox * oy * oz;
    let union = a.volume() + b.volume() - overlap;
    if union <= zero {
        return BoxIou {
            value: zero,
            degenerate: true,
        };
    }
    BoxIou {
        value: overlap / union,
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit_cube_at(x: f64) -> Aabb<f64> {
        Aabb::new(Vector3::new(x, 0.0, 0.0), Vector3::new(x + 1.0, 1.0, 1.0))
    }

    #[test]
    fn identical_cubes_have_iou_one() {
        let a = unit_cube_at(0.0);
        let r = aabb_iou_3d(&a, &a);
        assert_eq!(r.value, 1.0);
        assert!(!r.degenerate);
    }

    #[test]
    fn disjoint_cubes_do_not_intersect() {
        let a = unit_cube_at(0.0);
        let b = unit_cube_at(2.0);
        assert!(!aabb_intersects(&a, &b));
        assert_eq!(aabb_iou_3d(&a, &b).value, 0.0);
    }

    #[test]
    fn face_touching_cubes_do_not_intersect() {
        let a = unit_cube_at(0.0);
        let b = unit_cube_at(1.0);
        assert!(!aabb_intersects(&a, &b));
    }

    #[test]
    fn half_offset_cubes_iou_is_one_third() {
        // overlap 0.5, union 1.5
        let a = unit_cube_at(0.0);
        let b = unit_cube_at(0.5);
        assert!(aabb_intersects(&a, &b));
        assert_relative_eq!(aabb_iou_3d(&a, &b).value, 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_volume_union_is_degenerate() {
        let flat = Aabb::new(Vector3::new(0.0, 0.0, 0.0), Vector3::new(1.0, 1.0, 0.0));
        let r = aabb_iou_3d(&flat, &flat);
        assert!(r.degenerate);
        assert_eq!(r.value, 0.0);
    }
}
