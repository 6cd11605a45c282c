use crate::error::{Error, Result};
use crate::grid::{Grid, PixelIndex};

/// A `width × height` grid of `bands`-dimensional spectra.
///
/// Values are stored pixel-interleaved in raster order: the spectrum of
/// pixel `i = y * width + x` is `data[i * bands..(i + 1) * bands]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCube {
    width: usize,
    height: usize,
    bands: usize,
    data: Vec<f64>,
}

impl SpectralCube {
    pub fn new(width: usize, height: usize, bands: usize, data: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 || bands == 0 {
            return Err(Error::ZeroDimension {
                width,
                height,
                bands,
            });
        }
        let expected = width * height * bands;
        if data.len() != expected {
            return Err(Error::DataLength {
                expected,
                found: data.len(),
            });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            width,
            height,
            bands,
            data,
        })
    }

    /// Builds a cube by evaluating `f(x, y, band)` for every sample.
    pub fn from_fn(
        width: usize,
        height: usize,
        bands: usize,
        mut f: impl FnMut(usize, usize, usize) -> f64,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(width * height * bands);
        for y in 0..height {
            for x in 0..width {
                for j in 0..bands {
                    data.push(f(x, y, j));
                }
            }
        }
        Self::new(width, height, bands, data)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bands(&self) -> usize {
        self.bands
    }

    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.width, self.height)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Spectrum at flat raster index `i`.
    #[inline]
    pub fn spectrum(&self, i: usize) -> &[f64] {
        &self.data[i * self.bands..(i + 1) * self.bands]
    }

    pub fn spectrum_at(&self, p: PixelIndex) -> Result<&[f64]> {
        let i = self.grid().check(p)?;
        Ok(self.spectrum(i))
    }

    pub fn value(&self, x: usize, y: usize, band: usize) -> f64 {
        self.data[(y * self.width + x) * self.bands + band]
    }
}
