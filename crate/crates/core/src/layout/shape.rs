//! Procedural primitive library with uniform surface sampling.
//!
//! Shapes are sampled uniformly by surface area, then normalized into the
//! canonical unit cube centered at the origin (max extent 1, so coordinates
//! lie in [-0.5, 0.5]).

use nalgebra::Vector3;
use rand::Rng;

use super::LayoutError;
use crate::geometry::{Aabb, PointCloud};
use crate::real::Real;

pub const DEFAULT_SURFACE_SAMPLES: usize = 20_000;
pub const MIN_SURFACE_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Box,
    Cylinder,
    Sphere,
    EllShape,
    Cone,
    Torus,
}

impl ShapeKind {
    pub const ALL: [ShapeKind; 6] = [
        ShapeKind::Box,
        ShapeKind::Cylinder,
        ShapeKind::Sphere,
        ShapeKind::EllShape,
        ShapeKind::Cone,
        ShapeKind::Torus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ShapeKind::Box => "box",
            ShapeKind::Cylinder => "cylinder",
            ShapeKind::Sphere => "sphere",
            ShapeKind::EllShape => "ell-shape",
            ShapeKind::Cone => "cone",
            ShapeKind::Torus => "torus",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|k| k.name() == name)
    }
}

/// A primitive plus its positive shape parameters and surface sample count.
///
/// Parameter layout per kind:
/// - box: `[extent_x, extent_y, extent_z]`
/// - cylinder: `[radius, height]`
/// - sphere: `[radius]`
/// - ell-shape: `[arm_x, arm_y, thickness, height]`
/// - cone: `[base_radius, height]`
/// - torus: `[major_radius, minor_radius]`
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec<T: Real> {
    pub kind: ShapeKind,
    pub params: Vec<T>,
    pub samples: usize,
}

impl<T: Real> ShapeSpec<T> {
    pub fn new(kind: ShapeKind, params: Vec<T>, samples: usize) -> Result<Self, LayoutError> {
        let expected = match kind {
            ShapeKind::Box => 3,
            ShapeKind::Cylinder | ShapeKind::Cone | ShapeKind::Torus => 2,
            ShapeKind::Sphere => 1,
            ShapeKind::EllShape => 4,
        };
        if params.len() != expected {
            return Err(LayoutError::Configuration(format!(
                "{} expects {} parameters, got {}",
                kind.name(),
                expected,
                params.len()
            )));
        }
        if params.iter().any(|p| !(*p > T::zero())) {
            return Err(LayoutError::Configuration(format!(
                "{} parameters must be positive",
                kind.name()
            )));
        }
        if samples < MIN_SURFACE_SAMPLES {
            return Err(LayoutError::Configuration(format!(
                "surface sample count {samples} below minimum {MIN_SURFACE_SAMPLES}"
            )));
        }
        if kind == ShapeKind::Torus && params[1] >= params[0] {
            return Err(LayoutError::Configuration(
                "torus minor radius must be below major radius".into(),
            ));
        }
        Ok(Self {
            kind,
            params,
            samples,
        })
    }

    pub fn unit_box() -> Self {
        Self {
            kind: ShapeKind::Box,
            params: vec![T::one(), T::one(), T::one()],
            samples: DEFAULT_SURFACE_SAMPLES,
        }
    }
}

/// Per-kind sampling weights for random shape draws.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeDistribution {
    pub weights: Vec<(ShapeKind, f64)>,
}

impl Default for ShapeDistribution {
    fn default() -> Self {
        Self {
            weights: ShapeKind::ALL.iter().map(|k| (*k, 1.0)).collect(),
        }
    }
}

impl ShapeDistribution {
    pub fn single(kind: ShapeKind) -> Self {
        Self {
            weights: vec![(kind, 1.0)],
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> ShapeKind {
        let total: f64 = self.weights.iter().map(|(_, w)| w).sum();
        let mut u = rng.random_range(0.0..total);
        for (kind, w) in &self.weights {
            if u < *w {
                return *kind;
            }
            u -= w;
        }
        self.weights.last().expect("non-empty weights").0
    }
}

/// Draws a random shape spec and its canonical surface cloud.
pub fn sample_shape<T: Real, R: Rng>(
    rng: &mut R,
    dist: &ShapeDistribution,
    samples: usize,
) -> Result<(ShapeSpec<T>, PointCloud<T>), LayoutError> {
    let kind = dist.draw(rng);
    let u = |rng: &mut R, a: f64, b: f64| T::of(rng.random_range(a..b));
    let params = match kind {
        ShapeKind::Box => vec![u(rng, 0.4, 1.0), u(rng, 0.4, 1.0), u(rng, 0.4, 1.0)],
        ShapeKind::Cylinder => vec![u(rng, 0.2, 0.5), u(rng, 0.4, 1.0)],
        ShapeKind::Sphere => vec![u(rng, 0.3, 0.5)],
        ShapeKind::EllShape => vec![
            u(rng, 0.5, 1.0),
            u(rng, 0.5, 1.0),
            u(rng, 0.2, 0.4),
            u(rng, 0.3, 1.0),
        ],
        ShapeKind::Cone => vec![u(rng, 0.25, 0.5), u(rng, 0.5, 1.0)],
        ShapeKind::Torus => {
            let major = u(rng, 0.3, 0.45);
            let minor = T::of(rng.random_range(0.08..0.15));
            vec![major, minor]
        }
    };
    let spec = ShapeSpec::new(kind, params, samples)?;
    let cloud = sample_surface(&spec, rng)?;
    Ok((spec, cloud))
}

/// Uniform surface samples of the primitive, canonicalized to the unit cube.
pub fn sample_surface<T: Real, R: Rng>(
    spec: &ShapeSpec<T>,
    rng: &mut R,
) -> Result<PointCloud<T>, LayoutError> {
    let raw = match spec.kind {
        ShapeKind::Box => sample_box(&spec.params, spec.samples, rng),
        ShapeKind::Cylinder => sample_cylinder(&spec.params, spec.samples, rng),
        ShapeKind::Sphere => sample_sphere(&spec.params, spec.samples, rng),
        ShapeKind::EllShape => sample_ell(&spec.params, spec.samples, rng),
        ShapeKind::Cone => sample_cone(&spec.params, spec.samples, rng),
        ShapeKind::Torus => sample_torus(&spec.params, spec.samples, rng),
    };
    Ok(canonicalize(raw))
}

/// Centers the AABB at the origin and scales isotropically so the maximum
/// extent is 1.
fn canonicalize<T: Real>(points: Vec<Vector3<T>>) -> PointCloud<T> {
    let bbox = Aabb::of_points(&points).expect("samples are non-empty");
    let center = bbox.center();
    let scale = bbox.max_extent();
    debug_assert!(scale > T::zero());
    PointCloud::new(points.into_iter().map(|p| (p - center) / scale).collect())
        .expect("canonical cloud is non-empty and finite")
}

fn sample_box<T: Real, R: Rng>(params: &[T], n: usize, rng: &mut R) -> Vec<Vector3<T>> {
    let (a, b, c) = (
        params[0].as_f64(),
        params[1].as_f64(),
        params[2].as_f64(),
    );
    let areas = [b * c, b * c, a * c, a * c, a * b, a * b];
    let total: f64 = areas.iter().sum();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut u = rng.random_range(0.0..total);
        let mut face = 5;
        for (i, area) in areas.iter().enumerate() {
            if u < *area {
                face = i;
                break;
            }
            u -= area;
        }
        let s = |rng: &mut R, e: f64| rng.random_range(-e / 2.0..e / 2.0);
        let p = match face {
            0 => Vector3::new(a / 2.0, s(rng, b), s(rng, c)),
            1 => Vector3::new(-a / 2.0, s(rng, b), s(rng, c)),
            2 => Vector3::new(s(rng, a), b / 2.0, s(rng, c)),
            3 => Vector3::new(s(rng, a), -b / 2.0, s(rng, c)),
            4 => Vector3::new(s(rng, a), s(rng, b), c / 2.0),
            _ => Vector3::new(s(rng, a), s(rng, b), -c / 2.0),
        };
        out.push(Vector3::new(T::of(p.x), T::of(p.y), T::of(p.z)));
    }
    out
}

fn sample_cylinder<T: Real, R: Rng>(params: &[T], n: usize, rng: &mut R) -> Vec<Vector3<T>> {
    let (r, h) = (params[0].as_f64(), params[1].as_f64());
    let lateral = 2.0 * std::f64::consts::PI * r * h;
    let cap = std::f64::consts::PI * r * r;
    let total = lateral + 2.0 * cap;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let u = rng.random_range(0.0..total);
        let p = if u < lateral {
            Vector3::new(
                r * theta.cos(),
                r * theta.sin(),
                rng.random_range(-h / 2.0..h / 2.0),
            )
        } else {
            let rho = r * rng.random_range(0.0f64..1.0).sqrt();
            let z = if u < lateral + cap { h / 2.0 } else { -h / 2.0 };
            Vector3::new(rho * theta.cos(), rho * theta.sin(), z)
        };
        out.push(Vector3::new(T::of(p.x), T::of(p.y), T::of(p.z)));
    }
    out
}

fn sample_sphere<T: Real, R: Rng>(params: &[T], n: usize, rng: &mut R) -> Vec<Vector3<T>> {
    let r = params[0].as_f64();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let z = rng.random_range(-1.0f64..1.0);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let rho = (1.0 - z * z).max(0.0).sqrt();
        out.push(Vector3::new(
            T::of(r * rho * theta.cos()),
            T::of(r * rho * theta.sin()),
            T::of(r * z),
        ));
    }
    out
}

fn sample_cone<T: Real, R: Rng>(params: &[T], n: usize, rng: &mut R) -> Vec<Vector3<T>> {
    let (r, h) = (params[0].as_f64(), params[1].as_f64());
    let slant = (r * r + h * h).sqrt();
    let lateral = std::f64::consts::PI * r * slant;
    let base = std::f64::consts::PI * r * r;
    let total = lateral + base;
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let u = rng.random_range(0.0..total);
        let p = if u < lateral {
            // fraction t from base; area density is proportional to 1 - t
            let t = 1.0 - (1.0 - rng.random_range(0.0f64..1.0)).sqrt();
            let rho = r * (1.0 - t);
            Vector3::new(rho * theta.cos(), rho * theta.sin(), -h / 2.0 + t * h)
        } else {
            let rho = r * rng.random_range(0.0f64..1.0).sqrt();
            Vector3::new(rho * theta.cos(), rho * theta.sin(), -h / 2.0)
        };
        out.push(Vector3::new(T::of(p.x), T::of(p.y), T::of(p.z)));
    }
    out
}

fn sample_torus<T: Real, R: Rng>(params: &[T], n: usize, rng: &mut R) -> Vec<Vector3<T>> {
    let (major, minor) = (params[0].as_f64(), params[1].as_f64());
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let phi = rng.random_range(0.0..std::f64::consts::TAU);
        // area element is proportional to major + minor*cos(phi)
        let accept = (major + minor * phi.cos()) / (major + minor);
        if rng.random_range(0.0f64..1.0) >= accept {
            continue;
        }
        let ring = major + minor * phi.cos();
        out.push(Vector3::new(
            T::of(ring * theta.cos()),
            T::of(ring * theta.sin()),
            T::of(minor * phi.sin()),
        ));
    }
    out
}

/// L-shaped block: the union of an x-arm box and a y-arm box sharing a corner
/// at the origin. Surface samples are drawn from both boxes' faces and
/// rejected when they fall strictly inside the other box.
fn sample_ell<T: Real, R: Rng>(params: &[T], n: usize, rng: &mut R) -> Vec<Vector3<T>> {
    let (arm_x, arm_y, thick, height) = (
        params[0].as_f64(),
        params[1].as_f64(),
        params[2].as_f64(),
        params[3].as_f64(),
    );
    // box extents and centers, in the corner frame
    let boxes = [
        ([arm_x, thick, height], [arm_x / 2.0, thick / 2.0, height / 2.0]),
        ([thick, arm_y, height], [thick / 2.0, arm_y / 2.0, height / 2.0]),
    ];
    let area = |e: &[f64; 3]| 2.0 * (e[0] * e[1] + e[1] * e[2] + e[0] * e[2]);
    let a0 = area(&boxes[0].0);
    let a1 = area(&boxes[1].0);
    let total = a0 + a1;

    let inside = |p: &Vector3<f64>, b: usize| {
        let (e, c) = &boxes[b];
        (p.x - c[0]).abs() < e[0] / 2.0 - 1e-12
            && (p.y - c[1]).abs() < e[1] / 2.0 - 1e-12
            && (p.z - c[2]).abs() < e[2] / 2.0 - 1e-12
    };

    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let pick = rng.random_range(0.0..total);
        let b = if pick < a0 { 0 } else { 1 };
        let (e, c) = &boxes[b];
        let face_pts =
            sample_box::<f64, R>(&[e[0], e[1], e[2]], 1, rng);
        let p = Vector3::new(face_pts[0].x + c[0], face_pts[0].y + c[1], face_pts[0].z + c[2]);
        if inside(&p, 1 - b) {
            continue;
        }
        out.push(Vector3::new(T::of(p.x), T::of(p.y), T::of(p.z)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_sample_count_is_20k() {
        let spec = ShapeSpec::<f64>::unit_box();
        assert_eq!(spec.samples, 20_000);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cloud = sample_surface(&spec, &mut rng).unwrap();
        assert_eq!(cloud.len(), 20_000);
    }

    #[test]
    fn equal_extent_box_fills_half_cube() {
        let spec = ShapeSpec::<f64>::new(ShapeKind::Box, vec![1.0, 1.0, 1.0], 4096).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let cloud = sample_surface(&spec, &mut rng).unwrap();
        let mut max_abs: f64 = 0.0;
        for p in cloud.points() {
            max_abs = max_abs.max(p.x.abs()).max(p.y.abs()).max(p.z.abs());
            // every point sits on some face
            let on_face = [p.x, p.y, p.z].iter().any(|v| (v.abs() - 0.5).abs() < 1e-9);
            assert!(on_face, "point {p:?} is not on the cube surface");
        }
        assert!((max_abs - 0.5).abs() < 1e-6);
    }

    #[test]
    fn sphere_norms_are_equal_after_canonicalization() {
        let spec = ShapeSpec::<f64>::new(ShapeKind::Sphere, vec![0.37], 4096).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cloud = sample_surface(&spec, &mut rng).unwrap();
        for p in cloud.points() {
            assert!((p.norm() - 0.5).abs() < 1e-3, "norm {}", p.norm());
        }
    }

    #[test]
    fn all_kinds_sample_within_canonical_cube() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for kind in ShapeKind::ALL {
            let dist = ShapeDistribution::single(kind);
            let (spec, cloud) = sample_shape::<f64, _>(&mut rng, &dist, 512).unwrap();
            assert_eq!(spec.kind, kind);
            for p in cloud.points() {
                assert!(
                    p.x.abs() <= 0.5 + 1e-9 && p.y.abs() <= 0.5 + 1e-9 && p.z.abs() <= 0.5 + 1e-9,
                    "{kind:?} point escapes the canonical cube: {p:?}"
                );
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let dist = ShapeDistribution::default();
        let a = sample_shape::<f64, _>(&mut ChaCha8Rng::seed_from_u64(5), &dist, 256).unwrap();
        let b = sample_shape::<f64, _>(&mut ChaCha8Rng::seed_from_u64(5), &dist, 256).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        assert!(ShapeSpec::<f64>::new(ShapeKind::Sphere, vec![0.5, 0.5], 128).is_err());
        assert!(ShapeSpec::<f64>::new(ShapeKind::Sphere, vec![-0.5], 128).is_err());
        assert!(ShapeSpec::<f64>::new(ShapeKind::Sphere, vec![0.5], 16).is_err());
        assert!(ShapeSpec::<f64>::new(ShapeKind::Torus, vec![0.3, 0.4], 128).is_err());
    }
}
