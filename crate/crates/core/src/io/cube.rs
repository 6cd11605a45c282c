//! HSC1 cube files.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "HSC1"
//!      4     4  width   (u32, little-endian)
//!      8     4  height  (u32, little-endian)
//!     12     4  bands   (u32, little-endian)
//!     16     1  sample type: 1 = f32, 2 = f64
//!     17     …  samples, little-endian, pixel-interleaved in raster order
//! ```

use std::fs;
use std::path::Path;

use crate::cube::SpectralCube;
use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"HSC1";
pub const HEADER_LEN: usize = 17;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleType {
    F32 = 1,
    F64 = 2,
}

impl SampleType {
    pub fn size(self) -> usize {
        match self {
            SampleType::F32 => 4,
            SampleType::F64 => 8,
        }
    }

    fn from_byte(b: u8) -> Option<Self> {
        match b {
            1 => Some(SampleType::F32),
            2 => Some(SampleType::F64),
            _ => None,
        }
    }
}

/// Serializes `cube`. Storing as f32 rounds every sample.
pub fn encode_cube(cube: &SpectralCube, sample: SampleType) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + cube.data().len() * sample.size());
    out.extend_from_slice(MAGIC);
    for dim in [cube.width(), cube.height(), cube.bands()] {
        out.extend_from_slice(&(dim as u32).to_le_bytes());
    }
    out.push(sample as u8);
    match sample {
        SampleType::F32 => {
            for &v in cube.data() {
                out.extend_from_slice(&(v as f32).to_le_bytes());
            }
        }
        SampleType::F64 => {
            for &v in cube.data() {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
    }
    out
}

/// Parses an HSC1 image; `path` only labels errors.
pub fn decode_cube(bytes: &[u8], path: &Path) -> Result<SpectralCube> {
    let truncated = |offset: usize, expected: usize| Error::Truncated {
        path: path.to_path_buf(),
        offset: offset as u64,
        expected: expected as u64,
    };
    if bytes.len() < MAGIC.len() || &bytes[..4] != MAGIC {
        return Err(Error::BadMagic {
            path: path.to_path_buf(),
            offset: 0,
        });
    }
    if bytes.len() < HEADER_LEN {
        return Err(truncated(bytes.len(), HEADER_LEN));
    }
    let dim = |offset: usize| -> Result<usize> {
        let v = u32::from_le_bytes(bytes[offset..offset + 4].try_into().unwrap()) as usize;
        if v == 0 {
            return Err(Error::ZeroHeaderDimension {
                path: path.to_path_buf(),
                offset: offset as u64,
            });
        }
        Ok(v)
    };
    let width = dim(4)?;
    let height = dim(8)?;
    let bands = dim(12)?;
    let sample = SampleType::from_byte(bytes[16]).ok_or_else(|| Error::BadDtype {
        path: path.to_path_buf(),
        offset: 16,
        dtype: bytes[16],
    })?;
    let count = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(bands))
        .ok_or_else(|| truncated(bytes.len(), usize::MAX))?;
    let payload_len = count
        .checked_mul(sample.size())
        .ok_or_else(|| truncated(bytes.len(), usize::MAX))?;
    let payload = &bytes[HEADER_LEN..];
    if payload.len() < payload_len {
        return Err(truncated(bytes.len(), HEADER_LEN + payload_len));
    }
    if payload.len() > payload_len {
        return Err(Error::TrailingBytes {
            path: path.to_path_buf(),
            offset: (HEADER_LEN + payload_len) as u64,
            extra: (payload.len() - payload_len) as u64,
        });
    }
    let data = match sample {
        SampleType::F32 => payload
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()) as f64)
            .collect(),
        SampleType::F64 => payload
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect(),
    };
    SpectralCube::new(width, height, bands, data)
}

pub fn read_cube(path: impl AsRef<Path>) -> Result<SpectralCube> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_cube(&bytes, path)
}

/// Writes `cube` as f64 samples, so reading it back is bit-exact.
pub fn write_cube(cube: &SpectralCube, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_cube(cube, SampleType::F64)).map_err(|e| Error::io(path, e))
}

/// True when `bytes` start with the HSC1 magic.
pub fn is_cube_file(bytes: &[u8]) -> bool {
    bytes.starts_with(MAGIC)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p() -> &'static Path {
        Path::new("test.hsc")
    }

    fn small() -> SpectralCube {
        SpectralCube::from_fn(3, 2, 4, |x, y, j| {
            x as f64 * 0.5 - y as f64 + j as f64 * 1e-3
        })
        .unwrap()
    }

    #[test]
    fn header_layout() {
        let bytes = encode_cube(&small(), SampleType::F64);
        assert_eq!(&bytes[..4], b"HSC1");
        assert_eq!(&bytes[4..8], &3u32.to_le_bytes());
        assert_eq!(&bytes[8..12], &2u32.to_le_bytes());
        assert_eq!(&bytes[12..16], &4u32.to_le_bytes());
        assert_eq!(bytes[16], 2);
        assert_eq!(bytes.len(), 17 + 3 * 2 * 4 * 8);
    }

    #[test]
    fn bad_magic() {
        let mut bytes = encode_cube(&small(), SampleType::F64);
        bytes[..4].copy_from_slice(b"XXXX");
        assert!(matches!(
            decode_cube(&bytes, p()),
            Err(Error::BadMagic { offset: 0, .. })
        ));
        assert!(matches!(
            decode_cube(b"HS", p()),
            Err(Error::BadMagic { .. })
        ));
    }

    #[test]
    fn truncated_payload() {
        // Header claims 4 bands, payload holds 3.
        let cube3 = SpectralCube::from_fn(3, 2, 3, |_, _, _| 1.0).unwrap();
        let mut bytes = encode_cube(&cube3, SampleType::F64);
        bytes[12..16].copy_from_slice(&4u32.to_le_bytes());
        match decode_cube(&bytes, p()) {
            Err(Error::Truncated {
                offset, expected, ..
            }) => {
                assert_eq!(offset, (17 + 18 * 8) as u64);
                assert_eq!(expected, (17 + 24 * 8) as u64);
            }
            other => panic!("expected truncation, got {other:?}"),
        }
        assert!(matches!(
            decode_cube(&bytes[..10], p()),
            Err(Error::Truncated { offset: 10, .. })
        ));
    }

    #[test]
    fn zero_dims_and_dtype() {
        let mut bytes = encode_cube(&small(), SampleType::F64);
        bytes[8..12].copy_from_slice(&0u32.to_le_bytes());
        assert!(matches!(
            decode_cube(&bytes, p()),
            Err(Error::ZeroHeaderDimension { offset: 8, .. })
        ));
        let mut bytes = encode_cube(&small(), SampleType::F64);
        bytes[16] = 7;
        assert!(matches!(
            decode_cube(&bytes, p()),
            Err(Error::BadDtype {
                offset: 16,
                dtype: 7,
                ..
            })
        ));
        let mut bytes = encode_cube(&small(), SampleType::F64);
        bytes.push(0);
        assert!(matches!(
            decode_cube(&bytes, p()),
            Err(Error::TrailingBytes { extra: 1, .. })
        ));
    }

    #[test]
    fn f32_payload_widens() {
        let cube = SpectralCube::new(2, 1, 1, vec![0.25, -3.5]).unwrap();
        let bytes = encode_cube(&cube, SampleType::F32);
        assert_eq!(bytes.len(), 17 + 8);
        assert_eq!(decode_cube(&bytes, p()).unwrap(), cube);
    }

    proptest! {
        #[test]
        fn f64_round_trip_is_bitwise(
            (w, h, b, data) in (1usize..5, 1usize..5, 1usize..4)
                .prop_flat_map(|(w, h, b)| (Just(w), Just(h), Just(b),
                    prop::collection::vec(prop::num::f64::NORMAL | prop::num::f64::ZERO | prop::num::f64::SUBNORMAL, w * h * b)))
        ) {
            let cube = SpectralCube::new(w, h, b, data).unwrap();
            let back = decode_cube(&encode_cube(&cube, SampleType::F64), p()).unwrap();
            let bits = |c: &SpectralCube| c.data().iter().map(|v| v.to_bits()).collect::<Vec<_>>();
            prop_assert_eq!(bits(&back), bits(&cube));
        }
    }
}
