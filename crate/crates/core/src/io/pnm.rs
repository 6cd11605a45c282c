//! Portable graymaps (P2/P5): channel-stack ingestion and label export.

use std::fs;
use std::path::{Path, PathBuf};

use crate::cube::SpectralCube;
use crate::error::{Error, Result};
use crate::labels::{relabel_dense, LabelMap};

use super::cube::{decode_cube, encode_cube, is_cube_file, SampleType};

/// A decoded graymap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graymap {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u16>,
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
    path: &'a Path,
}

impl Header<'_> {
    fn fail(&self, reason: impl Into<String>) -> Error {
        Error::Graymap {
            path: self.path.to_path_buf(),
            reason: format!("{} (byte {})", reason.into(), self.pos),
        }
    }

    fn skip_space(&mut self) {
        while let Some(&c) = self.bytes.get(self.pos) {
            if c == b'#' {
                while self.bytes.get(self.pos).is_some_and(|&c| c != b'\n') {
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<usize> {
        self.skip_space();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail("expected a decimal number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.fail("number out of range"))
    }
}

pub fn decode_graymap(bytes: &[u8], path: &Path) -> Result<Graymap> {
    let mut h = Header {
        bytes,
        pos: 2,
        path,
    };
    let binary = match bytes.get(..2) {
        Some(b"P5") => true,
        Some(b"P2") => false,
        _ => {
            return Err(Error::BadMagic {
                path: path.to_path_buf(),
                offset: 0,
            })
        }
    };
    let width = h.number()?;
    let height = h.number()?;
    let maxval = h.number()?;
    if width == 0 || height == 0 {
        return Err(h.fail("zero dimension"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(h.fail(format!("maxval {maxval} outside 1..=65535")));
    }
    let n = width * height;
    let mut pixels = Vec::with_capacity(n);
    if binary {
        // Exactly one whitespace byte separates the header from the raster.
        if !bytes.get(h.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(h.fail("missing separator before raster"));
        }
        h.pos += 1;
        let wide = maxval > 255;
        let sample = if wide { 2 } else { 1 };
        let raster = &bytes[h.pos..];
        if raster.len() < n * sample {
            return Err(Error::Truncated {
                path: path.to_path_buf(),
                offset: bytes.len() as u64,
                expected: (h.pos + n * sample) as u64,
            });
        }
        if wide {
            pixels.extend(
                raster[..2 * n]
                    .chunks_exact(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]])),
            );
        } else {
            pixels.extend(raster[..n].iter().map(|&b| u16::from(b)));
        }
    } else {
        for _ in 0..n {
            let v = h.number()?;
            if v > maxval {
                return Err(h.fail(format!("sample {v} exceeds maxval {maxval}")));
            }
            pixels.push(v as u16);
        }
    }
    if pixels.iter().any(|&v| usize::from(v) > maxval) {
        return Err(h.fail(format!("sample exceeds maxval {maxval}")));
    }
    Ok(Graymap {
        width,
        height,
        maxval: maxval as u16,
        pixels,
    })
}

pub fn read_graymap(path: impl AsRef<Path>) -> Result<Graymap> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_graymap(&bytes, path)
}

/// One band per graymap, in the order given.
pub fn read_graymap_stack<P: AsRef<Path>>(paths: &[P]) -> Result<SpectralCube> {
    let (first, rest) = paths.split_first().ok_or(Error::EmptyStack)?;
    let base = read_graymap(first)?;
    let mut channels = vec![base];
    for path in rest {
        let g = read_graymap(path)?;
        if g.width != channels[0].width || g.height != channels[0].height {
            return Err(Error::StackMismatch {
                path: path.as_ref().to_path_buf(),
                width: channels[0].width,
                height: channels[0].height,
                found_width: g.width,
                found_height: g.height,
            });
        }
        channels.push(g);
    }
    let (width, height) = (channels[0].width, channels[0].height);
    SpectralCube::from_fn(width, height, channels.len(), |x, y, j| {
        f64::from(channels[j].pixels[y * width + x])
    })
}

/// Where label maps go when they do not fit a 16-bit graymap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelFormat {
    /// P5, maxval 65535, big-endian samples.
    Pgm16,
    /// Single-band HSC1 cube holding label values as f64.
    Hsc1,
}

impl std::fmt::Display for LabelFormat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LabelFormat::Pgm16 => f.write_str("pgm16"),
            LabelFormat::Hsc1 => f.write_str("hsc1"),
        }
    }
}

pub const PGM_LABEL_LIMIT: usize = 65536;

pub fn label_format(labels: &LabelMap) -> LabelFormat {
    if labels.count() <= PGM_LABEL_LIMIT {
        LabelFormat::Pgm16
    } else {
        LabelFormat::Hsc1
    }
}

pub fn encode_labels(labels: &LabelMap) -> (LabelFormat, Vec<u8>) {
    match label_format(labels) {
        LabelFormat::Pgm16 => {
            let mut out =
                format!("P5\n{} {}\n65535\n", labels.width(), labels.height()).into_bytes();
            for &l in labels.labels() {
                out.extend_from_slice(&(l as u16).to_be_bytes());
            }
            (LabelFormat::Pgm16, out)
        }
        LabelFormat::Hsc1 => {
            let cube = SpectralCube::new(
                labels.width(),
                labels.height(),
                1,
                labels.labels().iter().map(|&l| f64::from(l)).collect(),
            )
            .expect("label map dimensions are positive");
            (LabelFormat::Hsc1, encode_cube(&cube, SampleType::F64))
        }
    }
}

/// Writes `labels` and reports which format was used.
pub fn write_labels(labels: &LabelMap, path: impl AsRef<Path>) -> Result<LabelFormat> {
    let path = path.as_ref();
    let (format, bytes) = encode_labels(labels);
    fs::write(path, bytes).map_err(|e| Error::io(path, e))?;
    Ok(format)
}

/// Reads a label file written by [`write_labels`] (or any graymap).
///
/// Values are renumbered densely in raster first-appearance order, which
/// leaves files produced by this crate unchanged.
pub fn read_labels(path: impl AsRef<Path>) -> Result<LabelMap> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_labels(&bytes, path)
}

pub fn decode_labels(bytes: &[u8], path: &Path) -> Result<LabelMap> {
    if is_cube_file(bytes) {
        let cube = decode_cube(bytes, path)?;
        let raw = cube
            .data()
            .iter()
            .step_by(cube.bands())
            .enumerate()
            .map(|(index, &value)| {
                if value >= 0.0 && value.fract() == 0.0 && value <= u64::MAX as f64 {
                    Ok(value as u64)
                } else {
                    Err(Error::LabelValue {
                        path: PathBuf::from(path),
                        index,
                        value,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        relabel_dense(cube.width(), cube.height(), &raw)
    } else {
        let g = decode_graymap(bytes, path)?;
        relabel_dense(g.width, g.height, &g.pixels)
    }
}
