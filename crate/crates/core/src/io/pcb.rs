//! `PCB1` point-cloud binary: magic `PCB1`, unsigned 32-bit little-endian
//! point count, then count x 3 little-endian 32-bit floats.

use std::path::Path;

use nalgebra::Vector3;

use super::FormatError;
use crate::real::Real;

pub const MAGIC: [u8; 4] = *b"PCB1";

/// Serializes points (converted to f32) into the PCB1 byte layout.
pub fn encode<T: Real>(points: &[Vector3<T>]) -> Vec<u8> {
    let mut out = Vec::with_capacity(8 + points.len() * 12);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&(points.len() as u32).to_le_bytes());
    for p in points {
        out.extend_from_slice(&p.x.as_f32().to_le_bytes());
        out.extend_from_slice(&p.y.as_f32().to_le_bytes());
        out.extend_from_slice(&p.z.as_f32().to_le_bytes());
    }
    out
}

/// Parses a PCB1 byte buffer. Rejects bad magic, truncation, trailing bytes,
/// and non-finite coordinates.
pub fn decode<T: Real>(bytes: &[u8]) -> Result<Vec<Vector3<T>>, FormatError> {
    const CTX: &str = "PCB1 point cloud";
    if bytes.len() < 8 {
        return Err(FormatError::Truncated {
            context: CTX,
            needed: 8,
            found: bytes.len(),
        });
    }
    let found: [u8; 4] = bytes[0..4].try_into().expect("length checked");
    if found != MAGIC {
        return Err(FormatError::BadMagic {
            context: CTX,
            expected: MAGIC,
            found,
        });
    }
    let count = u32::from_le_bytes(bytes[4..8].try_into().expect("length checked")) as usize;
    let needed = 8 + count.checked_mul(12).ok_or(FormatError::Truncated {
        context: CTX,
        needed: usize::MAX,
        found: bytes.len(),
    })?;
    if bytes.len() < needed {
        return Err(FormatError::Truncated {
            context: CTX,
            needed,
            found: bytes.len(),
        });
    }
    if bytes.len() > needed {
        return Err(FormatError::TrailingBytes {
            context: CTX,
            extra: bytes.len() - needed,
        });
    }
    let mut points = Vec::with_capacity(count);
    for i in 0..count {
        let base = 8 + i * 12;
        let coord = |off: usize| {
            f32::from_le_bytes(bytes[base + off..base + off + 4].try_into().expect("in range"))
        };
        let (x, y, z) = (coord(0), coord(4), coord(8));
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(FormatError::NonFinite {
                context: format!("point {i} of PCB1 cloud"),
            });
        }
        points.push(Vector3::new(
            T::of(x as f64),
            T::of(y as f64),
            T::of(z as f64),
        ));
    }
    Ok(points)
}

pub fn write<T: Real>(path: &Path, points: &[Vector3<T>]) -> Result<(), FormatError> {
    std::fs::write(path, encode(points)).map_err(|e| FormatError::io(path, e))
}

pub fn read<T: Real>(path: &Path) -> Result<Vec<Vector3<T>>, FormatError> {
    let bytes = std::fs::read(path).map_err(|e| FormatError::io(path, e))?;
    decode(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_layout_is_20_bytes() {
        let bytes = encode(&[Vector3::new(0.0f64, 0.0, 0.0)]);
        assert_eq!(bytes.len(), 4 + 4 + 12);
        assert_eq!(&bytes[0..4], b"PCB1");
        assert_eq!(&bytes[4..8], &1u32.to_le_bytes());
    }

    #[test]
    fn round_trip_is_bit_identical() {
        let pts = vec![
            Vector3::new(0.125f32, -3.5, 7.75),
            Vector3::new(1e-8, 2.0, -0.0),
            Vector3::new(4.0, 5.0, 6.0),
        ];
        let bytes = encode(&pts);
        let back: Vec<Vector3<f32>> = decode(&bytes).unwrap();
        assert_eq!(pts, back);
        assert_eq!(bytes, encode(&back));
    }

    #[test]
    fn empty_cloud_round_trips() {
        let bytes = encode::<f64>(&[]);
        assert_eq!(bytes.len(), 8);
        let back: Vec<Vector3<f64>> = decode(&bytes).unwrap();
        assert!(back.is_empty());
    }

    #[test]
    fn bad_magic_is_named() {
        let mut bytes = encode(&[Vector3::new(1.0f64, 2.0, 3.0)]);
        bytes[0] = b'X';
        assert!(matches!(
            decode::<f64>(&bytes),
            Err(FormatError::BadMagic { .. })
        ));
    }

    #[test]
    fn truncation_and_trailing_are_named() {
        let bytes = encode(&[Vector3::new(1.0f64, 2.0, 3.0)]);
        assert!(matches!(
            decode::<f64>(&bytes[..bytes.len() - 1]),
            Err(FormatError::Truncated { .. })
        ));
        let mut extra = bytes.clone();
        extra.push(0);
        assert!(matches!(
            decode::<f64>(&extra),
            Err(FormatError::TrailingBytes { .. })
        ));
    }

    #[test]
    fn huge_count_does_not_allocate() {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&MAGIC);
        bytes.extend_from_slice(&u32::MAX.to_le_bytes());
        assert!(matches!(
            decode::<f64>(&bytes),
            Err(FormatError::Truncated { .. })
        ));
    }

    #[test]
    fn non_finite_coordinates_are_rejected() {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&MAGIC);
        bytes.extend_from_slice(&1u32.to_le_bytes());
        bytes.extend_from_slice(&f32::NAN.to_le_bytes());
        bytes.extend_from_slice(&0f32.to_le_bytes());
        bytes.extend_from_slice(&0f32.to_le_bytes());
        assert!(matches!(
            decode::<f64>(&bytes),
            Err(FormatError::NonFinite { .. })
        ));
    }
}
