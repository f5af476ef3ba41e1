//! Voxel-occupancy volume IoU.
//!
//! Both clouds are voxelized over their joint AABB at a cubic grid
//! resolution; surface occupancy is filled per (x, y) column between the
//! lowest and highest occupied z cell, which turns watertight surface
//! samples into solids.

use nalgebra::Vector3;

use crate::geometry::Aabb;
use crate::real::Real;

pub const MIN_VOXEL_RESOLUTION: usize = 8;

struct Grid {
    res: usize,
    cells: Vec<bool>,
}

impl Grid {
    fn new(res: usize) -> Self {
        Self {
            res,
            cells: vec![false; res * res * res],
        }
    }

    fn index(&self, x: usize, y: usize, z: usize) -> usize {
        (x * self.res + y) * self.res + z
    }

    fn occupy<T: Real>(&mut self, points: &[Vector3<T>], bounds: &Aabb<T>) {
        let res = self.res;
        let res_t = T::from_usize_(res);
        let ext = bounds.extent();
        let cell_of = |v: T, lo: T, e: T| -> usize {
            let t = (v - lo) / e * res_t;
            let idx = t.floor().as_f64() as isize;
            idx.clamp(0, res as isize - 1) as usize
        };
        for p in points {
            let x = cell_of(p.x, bounds.min.x, ext.x);
            let y = cell_of(p.y, bounds.min.y, ext.y);
            let z = cell_of(p.z, bounds.min.z, ext.z);
            let i = self.index(x, y, z);
            self.cells[i] = true;
        }
    }

    /// Fill between the min and max occupied z in every column.
    fn fill_columns(&mut self) {
        let res = self.res;
        for x in 0..res {
            for y in 0..res {
                let mut lo = None;
                let mut hi = 0;
                for z in 0..res {
                    if self.cells[self.index(x, y, z)] {
                        if lo.is_none() {
                            lo = Some(z);
                        }
                        hi = z;
                    }
                }
                if let Some(lo) = lo {
                    for z in lo..=hi {
                        let i = self.index(x, y, z);
                        self.cells[i] = true;
                    }
                }
            }
        }
    }
}

/// Volume IoU of two clouds at the given grid resolution; `None` when either
/// cloud is empty or the joint AABB has zero volume.
pub fn volume_iou<T: Real>(
    a: &[Vector3<T>],
    b: &[Vector3<T>],
    resolution: usize,
) -> Option<T> {
    if a.is_empty() || b.is_empty() || resolution < MIN_VOXEL_RESOLUTION {
        return None;
    }
    let bounds = Aabb::of_points(a)?.union(&Aabb::of_points(b)?);
    let ext = bounds.extent();
    if !(ext.x > T::zero() && ext.y > T::zero() && ext.z > T::zero()) {
        return None;
    }
    let mut ga = Grid::new(resolution);
    let mut gb = Grid::new(resolution);
    ga.occupy(a, &bounds);
    gb.occupy(b, &bounds);
    ga.fill_columns();
    gb.fill_columns();

    let mut inter = 0usize;
    let mut union = 0usize;
    for (ca, cb) in ga.cells.iter().zip(&gb.cells) {
        if *ca && *cb {
            inter += 1;
        }
        if *ca || *cb {
            union += 1;
        }
    }
    if union == 0 {
        return None;
    }
    Some(T::from_usize_(inter) / T::from_usize_(union))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Stratified surface grid of an axis-aligned unit cube at `origin`:
    /// `per_axis^2` points per face, so every voxel column is guaranteed a
    /// top and bottom hit when `per_axis` exceeds the grid resolution.
    fn cube_surface(origin: Vector3<f64>, per_axis: usize) -> Vec<Vector3<f64>> {
        let mut out = Vec::with_capacity(per_axis * per_axis * 6);
        let step = 1.0 / per_axis as f64;
        for i in 0..per_axis {
            for j in 0..per_axis {
                let u = (i as f64 + 0.5) * step;
                let v = (j as f64 + 0.5) * step;
                for p in [
                    Vector3::new(0.0, u, v),
                    Vector3::new(1.0, u, v),
                    Vector3::new(u, 0.0, v),
                    Vector3::new(u, 1.0, v),
                    Vector3::new(u, v, 0.0),
                    Vector3::new(u, v, 1.0),
                ] {
                    out.push(p + origin);
                }
            }
        }
        out
    }

    #[test]
    fn identical_clouds_have_unit_iou() {
        let a = cube_surface(Vector3::zeros(), 96);
        assert_eq!(volume_iou(&a, &a, 64), Some(1.0));
    }

    #[test]
    fn disjoint_clouds_have_zero_iou() {
        let a = cube_surface(Vector3::zeros(), 48);
        let b = cube_surface(Vector3::new(3.0, 0.0, 0.0), 48);
        assert_eq!(volume_iou(&a, &b, 32), Some(0.0));
    }

    #[test]
    fn half_offset_cubes_approach_analytic_third() {
        let a = cube_surface(Vector3::zeros(), 128);
        let b = cube_surface(Vector3::new(0.5, 0.0, 0.0), 128);
        let iou = volume_iou(&a, &b, 64).unwrap();
        assert!((iou - 1.0 / 3.0).abs() < 0.05, "iou {iou}");
    }

    #[test]
    fn resolution_refinement_converges_on_cubes() {
        let a = cube_surface(Vector3::zeros(), 256);
        let b = cube_surface(Vector3::new(0.5, 0.0, 0.0), 256);
        let at_64 = volume_iou(&a, &b, 64).unwrap();
        let at_128 = volume_iou(&a, &b, 128).unwrap();
        assert!((at_64 - at_128).abs() < 0.02, "{at_64} vs {at_128}");
    }

    #[test]
    fn degenerate_inputs_are_undefined() {
        let flat: Vec<Vector3<f64>> = (0..100)
            .map(|i| Vector3::new(i as f64, 0.0, 0.0))
            .collect();
        assert_eq!(volume_iou(&flat, &flat, 64), None);
        let empty: Vec<Vector3<f64>> = vec![];
        let a = cube_surface(Vector3::zeros(), 8);
        assert_eq!(volume_iou(&a, &empty, 64), None);
        assert_eq!(volume_iou(&a, &a, 4), None);
    }
}
