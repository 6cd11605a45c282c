//! Settings and seed preparation shared by the η and μ refinement passes.

use crate::cube::SpectralCube;
use crate::error::Result;
use crate::grid::Connectivity;
use crate::labels::{relabel_dense_u32, LabelMap};
use crate::metric::Metric;
use crate::seeds::{seed_lists, SeedList, SeedOrder, DEFAULT_REGION_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefineOptions {
    pub seed_order: SeedOrder,
    pub connectivity: Connectivity,
    /// Largest flat zone for which cumulative distances are computed.
    pub region_cap: usize,
    pub edge_cache: bool,
}

impl Default for RefineOptions {
    fn default() -> Self {
        Self {
            seed_order: SeedOrder::MedianFirst,
            connectivity: Connectivity::Four,
            region_cap: DEFAULT_REGION_CAP,
            edge_cache: false,
        }
    }
}

/// Seed lists of every class of `flat`, indexed by class label.
///
/// Lists depend only on the partition and the metric, so a parameter sweep
/// can build them once and hand clones to each run.
pub fn prepare_seeds(
    cube: &SpectralCube,
    metric: &Metric,
    flat: &LabelMap,
    options: &RefineOptions,
) -> Result<Vec<SeedList>> {
    seed_lists(
        cube,
        metric,
        &flat.classes(),
        options.seed_order,
        options.region_cap,
    )
}

/// Output of a refinement pass with the seed of every region.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub labels: LabelMap,
    /// Seed pixel that claimed each region, indexed by label. With
    /// [`crate::BallDomain::WholeZone`] a split-off region may not contain it.
    pub seeds: Vec<usize>,
    /// Per pixel, its distance to the seed of its region: spectral for the
    /// η pass, geodesic for the μ pass.
    pub distances: Vec<f64>,
}

impl Refinement {
    pub(crate) fn from_raw(
        width: usize,
        height: usize,
        raw: &[u32],
        raw_seeds: &[usize],
        distances: Vec<f64>,
    ) -> Self {
        let (labels, ids) =
            relabel_dense_u32(width, height, raw, raw_seeds.len().saturating_sub(1));
        let mut seeds = vec![0; labels.count()];
        for (r, &dense) in ids.iter().enumerate() {
            if dense != u32::MAX {
                seeds[dense as usize] = raw_seeds[r];
            }
        }
        Self {
            labels,
            seeds,
            distances,
        }
    }
}
