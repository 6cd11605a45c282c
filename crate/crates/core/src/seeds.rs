//! Seed ordering by cumulative distance.
//!
//! The cumulative distance of a pixel `p` in a region `R` is
//! `δ_R(p) = Σ_{x ∈ R} d(f(p), f(x))`. Its minimiser is the vectorial
//! median of the region and its maximiser the anti-median. Both refinement
//! passes draw their seeds from a list sorted on `δ_R`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::cube::SpectralCube;
use crate::error::{Error, Result};
use crate::metric::Metric;

/// Region size above which cumulative distances are refused.
pub const DEFAULT_REGION_CAP: usize = 50_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeedOrder {
    /// Ascending `δ_R`: the vectorial median comes first.
    #[default]
    MedianFirst,
    /// Descending `δ_R`: the anti-median comes first.
    AntimedianFirst,
}

impl SeedOrder {
    pub fn name(self) -> &'static str {
        match self {
            SeedOrder::MedianFirst => "median",
            SeedOrder::AntimedianFirst => "antimedian",
        }
    }
}

impl fmt::Display for SeedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeedOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "median" | "median-first" | "median_first" => Ok(SeedOrder::MedianFirst),
            "antimedian" | "anti-median" | "antimedian-first" | "antimedian_first" => {
                Ok(SeedOrder::AntimedianFirst)
            }
            other => Err(format!(
                "unknown seed order '{other}' (expected median or antimedian)"
            )),
        }
    }
}

/// A pixel (flat raster index) and its cumulative distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeedEntry {
    pub pixel: usize,
    pub cumdist: f64,
}

/// `δ_R(p)` for every `p` in `region`, in the order of `region`.
///
/// Exact O(K²) evaluation. Each sum accumulates its terms in region order.
pub fn cumulative_distances(
    cube: &SpectralCube,
    metric: &Metric,
    region: &[usize],
) -> Result<Vec<SeedEntry>> {
    cumulative_distances_capped(cube, metric, region, DEFAULT_REGION_CAP)
}

pub fn cumulative_distances_capped(
    cube: &SpectralCube,
    metric: &Metric,
    region: &[usize],
    cap: usize,
) -> Result<Vec<SeedEntry>> {
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }
    if region.len() > cap {
        return Err(Error::RegionTooLarge {
            size: region.len(),
            cap,
        });
    }
    let k = region.len();
    let mut sums = vec![0.0f64; k];
    // Each pair is evaluated once. For any fixed `a`, the terms d(a, b)
    // still arrive in increasing `b`, so rounding matches a plain double loop.
    for a in 0..k {
        for b in a + 1..k {
            let d = metric.distance(cube, region[a], region[b]);
            sums[a] += d;
            sums[b] += d;
        }
    }
    Ok(region
        .iter()
        .zip(sums)
        .map(|(&pixel, cumdist)| SeedEntry { pixel, cumdist })
        .collect())
}

/// Seeds of one region, sorted on cumulative distance and consumed front to back.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedList {
    region: u32,
    order: SeedOrder,
    entries: Vec<SeedEntry>,
    cursor: usize,
}

/// Sorts `cumdists` per `order`; equal distances keep ascending raster index.
pub fn build_seed_list(region: u32, mut cumdists: Vec<SeedEntry>, order: SeedOrder) -> SeedList {
    cumdists.sort_by(|a, b| {
        let by_dist = match order {
            SeedOrder::MedianFirst => a.cumdist.total_cmp(&b.cumdist),
            SeedOrder::AntimedianFirst => b.cumdist.total_cmp(&a.cumdist),
        };
        match by_dist {
            Ordering::Equal => a.pixel.cmp(&b.pixel),
            other => other,
        }
    });
    SeedList {
        region,
        order,
        entries: cumdists,
        cursor: 0,
    }
}

impl SeedList {
    pub fn region(&self) -> u32 {
        self.region
    }

    pub fn order(&self) -> SeedOrder {
        self.order
    }

    pub fn entries(&self) -> &[SeedEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First entry of the list: the median (or anti-median) pixel.
    pub fn first(&self) -> Option<usize> {
        self.entries.first().map(|e| e.pixel)
    }

    /// Next entry not yet claimed by a refined region.
    ///
    /// Entries passed over are dropped for good, so `assigned` must be
    /// monotone: once true for a pixel, it stays true.
    pub fn pop_first_unassigned(&mut self, assigned: impl Fn(usize) -> bool) -> Option<usize> {
        while let Some(e) = self.entries.get(self.cursor) {
            self.cursor += 1;
            if !assigned(e.pixel) {
                return Some(e.pixel);
            }
        }
        None
    }
}

/// Sorted seed lists for every class of a partition, indexed by class label.
pub fn seed_lists(
    cube: &SpectralCube,
    metric: &Metric,
    classes: &[Vec<usize>],
    order: SeedOrder,
    cap: usize,
) -> Result<Vec<SeedList>> {
    classes
        .iter()
        .enumerate()
        .map(|(label, pixels)| {
            let cumdists = cumulative_distances_capped(cube, metric, pixels, cap)?;
            Ok(build_seed_list(label as u32, cumdists, order))
        })
        .collect()
}
