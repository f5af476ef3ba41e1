//! 6D rotation representation and its conversion to/from rotation matrices.
//!
//! The 6D form holds the first two columns of a rotation matrix before
//! orthonormalization; Gram-Schmidt reconstructs the full matrix. This keeps
//! the parameterization continuous, unlike quaternions or Euler angles.

use nalgebra::{Matrix3, Vector3};

use super::GeometryError;
use crate::real::Real;

const DEGENERATE_EPS: f64 = 1e-8;

/// Two 3-vectors encoding a rotation: the un-orthonormalized first two
/// columns of the matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation6d<T: Real> {
    pub a1: Vector3<T>,
    pub a2: Vector3<T>,
}

impl<T: Real> Rotation6d<T> {
    pub fn new(a1: Vector3<T>, a2: Vector3<T>) -> Self {
        Self { a1, a2 }
    }

    /// Flat `[a1, a2]` layout used by the pose token vectors.
    pub fn from_array(v: [T; 6]) -> Self {
        Self {
            a1: Vector3::new(v[0], v[1], v[2]),
            a2: Vector3::new(v[3], v[4], v[5]),
        }
    }

    pub fn to_array(&self) -> [T; 6] {
        [
            self.a1.x, self.a1.y, self.a1.z, self.a2.x, self.a2.y, self.a2.z,
        ]
    }
}

/// Validated 3x3 rotation matrix: orthonormal columns and determinant +1,
/// both within 1e-6.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationMatrix<T: Real>(Matrix3<T>);

impl<T: Real> RotationMatrix<T> {
    pub const VALIDATION_TOL: f64 = 1e-6;

    pub fn identity() -> Self {
        Self(Matrix3::identity())
    }

    /// Validates orthonormality and determinant before wrapping.
    pub fn try_new(m: Matrix3<T>) -> Result<Self, GeometryError> {
        Self::try_new_with_tol(m, Self::VALIDATION_TOL)
    }

    pub fn try_new_with_tol(m: Matrix3<T>, tol: f64) -> Result<Self, GeometryError> {
        let gram = m.transpose() * m;
        let dev = (gram - Matrix3::identity()).abs().max();
        if dev.as_f64() > tol {
            return Err(GeometryError::InvalidRotationMatrix(format!(
                "columns deviate from orthonormal by {:.3e}",
                dev.as_f64()
            )));
        }
        let det = m.determinant();
        if (det.as_f64() - 1.0).abs() > tol {
            return Err(GeometryError::InvalidRotationMatrix(format!(
                "determinant {} is not +1",
                det.as_f64()
            )));
        }
        Ok(Self(m))
    }

    /// Wraps without validation; for matrices constructed orthonormal by
    /// definition (axis-angle, Gram-Schmidt output).
    pub(crate) fn new_unchecked(m: Matrix3<T>) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix3<T> {
        &self.0
    }

    pub fn from_axis_angle(axis: &Vector3<T>, angle: T) -> Self {
        let unit = nalgebra::Unit::new_normalize(*axis);
        Self(nalgebra::Rotation3::from_axis_angle(&unit, angle).into_inner())
    }

    /// Yaw about +z.
    pub fn from_yaw(angle: T) -> Self {
        Self::from_axis_angle(&Vector3::z_axis().into_inner(), angle)
    }

    pub fn apply(&self, v: &Vector3<T>) -> Vector3<T> {
        self.0 * v
    }
}

/// Gram-Schmidt orthonormalization of the 6D representation:
/// `b1 = normalize(a1)`, `b2 = normalize(a2 - (b1.a2) b1)`, `b3 = b1 x b2`.
pub fn rot6d_to_matrix<T: Real>(r: &Rotation6d<T>) -> Result<RotationMatrix<T>, GeometryError> {
    let eps = T::of(DEGENERATE_EPS);
    let n1 = r.a1.norm();
    if n1 <= eps {
        return Err(GeometryError::DegenerateRotation(format!(
            "|a1| = {:.3e} is near zero",
            n1.as_f64()
        )));
    }
    let b1 = r.a1 / n1;
    let proj = r.a2 - b1 * b1.dot(&r.a2);
    let n2 = proj.norm();
    if n2 <= eps {
        return Err(GeometryError::DegenerateRotation(format!(
            "a2 is parallel to a1 (residual norm {:.3e})",
            n2.as_f64()
        )));
    }
    let b2 = proj / n2;
    let b3 = b1.cross(&b2);
    Ok(RotationMatrix::new_unchecked(Matrix3::from_columns(&[
        b1, b2, b3,
    ])))
}

/// First two columns of the matrix; inverse of [`rot6d_to_matrix`] on valid
/// rotations.
pub fn matrix_to_rot6d<T: Real>(m: &RotationMatrix<T>) -> Rotation6d<T> {
    Rotation6d {
        a1: m.matrix().column(0).into(),
        a2: m.matrix().column(1).into(),
    }
}

/// Uniform random rotation (via Gram-Schmidt of Gaussian columns).
pub fn random_rotation<T: Real, R: rand::Rng>(rng: &mut R) -> RotationMatrix<T> {
    use rand_distr::StandardNormal;
    loop {
        let g = |rng: &mut R| {
            Vector3::new(
                T::of(rng.sample::<f64, _>(StandardNormal)),
                T::of(rng.sample::<f64, _>(StandardNormal)),
                T::of(rng.sample::<f64, _>(StandardNormal)),
            )
        };
        let r = Rotation6d::new(g(rng), g(rng));
        if let Ok(m) = rot6d_to_matrix(&r) {
            return m;
        }
    }
}
