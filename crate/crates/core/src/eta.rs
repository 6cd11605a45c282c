//! η-bounded regions.
//!
//! Inside each λ-flat zone, regions are grown from seeds taken in
//! cumulative-distance order. A region accepts a not-yet-assigned pixel of
//! the same zone when it touches a pixel already in the region and its
//! spectral distance to the seed is `≤ η`. Every region is therefore
//! connected, contains its seed, and stays within η of it.

use std::collections::VecDeque;

use crate::cube::SpectralCube;
use crate::error::Result;
use crate::flatzones::check_param;
use crate::grid::Connectivity;
use crate::labels::LabelMap;
use crate::metric::Metric;
use crate::refine::{prepare_seeds, RefineOptions, Refinement};
use crate::seeds::SeedList;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaParams {
    pub eta: f64,
    pub options: RefineOptions,
}

impl EtaParams {
    pub fn new(eta: f64) -> Self {
        Self {
            eta,
            options: RefineOptions::default(),
        }
    }

    pub fn with_options(mut self, options: RefineOptions) -> Self {
        self.options = options;
        self
    }
}

pub fn eta_bounded_regions(
    cube: &SpectralCube,
    metric: &Metric,
    flat: &LabelMap,
    params: &EtaParams,
) -> Result<LabelMap> {
    check_param("eta", params.eta)?;
    let seeds = prepare_seeds(cube, metric, flat, &params.options)?;
    eta_with_seeds(
        cube,
        metric,
        flat,
        seeds,
        params.eta,
        params.options.connectivity,
    )
    .map(|r| r.labels)
}

/// η pass over precomputed seed lists (one per class of `flat`, by label).
pub fn eta_with_seeds(
    cube: &SpectralCube,
    metric: &Metric,
    flat: &LabelMap,
    seeds: Vec<SeedList>,
    eta: f64,
    conn: Connectivity,
) -> Result<Refinement> {
    check_param("eta", eta)?;
    let grid = cube.grid();
    let n = grid.len();
    let mut assigned = vec![false; n];
    let mut raw = vec![0u32; n];
    let mut distances = vec![0.0; n];
    let mut raw_seeds = Vec::new();
    let mut current = 0u32;
    let mut queue = VecDeque::new();

    for mut list in seeds {
        let zone = list.region();
        while let Some(seed) = list.pop_first_unassigned(|p| assigned[p]) {
            assigned[seed] = true;
            raw[seed] = current;
            raw_seeds.push(seed);
            queue.push_back(seed);
            while let Some(p) = queue.pop_front() {
                for (q, _) in grid.neighbors_of(p, conn) {
                    if assigned[q] || flat.label(q) != zone {
                        continue;
                    }
                    let d = metric.distance(cube, seed, q);
                    if d <= eta {
                        assigned[q] = true;
                        raw[q] = current;
                        distances[q] = d;
                        queue.push_back(q);
                    }
                }
            }
            current += 1;
        }
    }
    debug_assert!(assigned.iter().all(|&a| a));
    Ok(Refinement::from_raw(
        grid.width,
        grid.height,
        &raw,
        &raw_seeds,
        distances,
    ))
}
