//! Spectral distances between pixels of a cube.
//!
//! Euclidean:
//!   d(x, y) = sqrt( Σ_j (f_j(x) - f_j(y))² )
//!
//! Chi-squared, with band sums `f.j`, pixel sums `fx.` and grand total `N`:
//!   d(x, y) = sqrt( Σ_j N / f.j · (f_j(x)/fx. - f_j(y)/fy.)² )
//!
//! The chi-squared marginals depend on the whole cube, so a [`Metric`] is
//! built once per cube and reused by every pass.

use std::fmt;
use std::str::FromStr;

use crate::cube::SpectralCube;
use crate::error::{Error, Marginal, Result};
use crate::grid::PixelIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MetricKind {
    #[default]
    Euclidean,
    ChiSquared,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::ChiSquared => "chi2",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "euclidean" | "euclid" | "l2" => Ok(MetricKind::Euclidean),
            "chi2" | "chi-squared" | "chi_squared" => Ok(MetricKind::ChiSquared),
            other => Err(format!(
                "unknown metric '{other}' (expected euclidean or chi2)"
            )),
        }
    }
}

/// Marginal sums of a non-negative cube.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiContext {
    pub band_sums: Vec<f64>,
    pub pixel_sums: Vec<f64>,
    pub total: f64,
    /// `N / f.j`, cached per band.
    band_weights: Vec<f64>,
}

/// A spectral distance bound to the marginals of one cube.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    kind: MetricKind,
    chi: Option<ChiContext>,
}

impl Metric {
    pub fn euclidean() -> Self {
        Self {
            kind: MetricKind::Euclidean,
            chi: None,
        }
    }

    pub fn build(cube: &SpectralCube, kind: MetricKind) -> Result<Self> {
        match kind {
            MetricKind::Euclidean => Ok(Self::euclidean()),
            MetricKind::ChiSquared => Ok(Self {
                kind,
                chi: Some(ChiContext::build(cube)?),
            }),
        }
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn chi_context(&self) -> Option<&ChiContext> {
        self.chi.as_ref()
    }

    /// Distance between flat raster indices `p` and `q` of `cube`.
    #[inline]
    pub fn distance(&self, cube: &SpectralCube, p: usize, q: usize) -> f64 {
        let a = cube.spectrum(p);
        let b = cube.spectrum(q);
        match &self.chi {
            None => a
                .iter()
                .zip(b)
                .map(|(u, v)| (u - v) * (u - v))
                .sum::<f64>()
                .sqrt(),
            Some(chi) => {
                debug_assert_eq!(chi.pixel_sums.len(), cube.pixel_count());
                let sp = chi.pixel_sums[p];
                let sq = chi.pixel_sums[q];
                a.iter()
                    .zip(b)
                    .zip(&chi.band_weights)
                    .map(|((u, v), w)| {
                        let diff = u / sp - v / sq;
                        w * diff * diff
                    })
                    .sum::<f64>()
                    .sqrt()
            }
        }
    }

    pub fn distance_at(&self, cube: &SpectralCube, p: PixelIndex, q: PixelIndex) -> Result<f64> {
        let grid = cube.grid();
        let p = grid.check(p)?;
        let q = grid.check(q)?;
        Ok(self.distance(cube, p, q))
    }
}

impl ChiContext {
    fn build(cube: &SpectralCube) -> Result<Self> {
        if let Some((index, &value)) = cube.data().iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::NegativeValue { index, value });
        }
        let bands = cube.bands();
        let mut band_sums = vec![0.0; bands];
        // Pixel sums run over all L bands.
        let mut pixel_sums = Vec::with_capacity(cube.pixel_count());
        for i in 0..cube.pixel_count() {
            let s = cube.spectrum(i);
            for (acc, v) in band_sums.iter_mut().zip(s) {
                *acc += v;
            }
            pixel_sums.push(s.iter().sum::<f64>());
        }
        if let Some(index) = pixel_sums.iter().position(|&s| s == 0.0) {
            return Err(Error::DegenerateMarginal {
                marginal: Marginal::Pixel,
                index,
            });
        }
        if let Some(index) = band_sums.iter().position(|&s| s == 0.0) {
            return Err(Error::DegenerateMarginal {
                marginal: Marginal::Band,
                index,
            });
        }
        let total: f64 = band_sums.iter().sum();
        let band_weights = band_sums.iter().map(|s| total / s).collect();
        Ok(Self {
            band_sums,
            pixel_sums,
            total,
            band_weights,
        })
    }
}
