//! λ-flat zones (quasi-flat zones).
//!
//! Two pixels share a zone iff some path joins them along which every
//! adjacent step has spectral distance `≤ λ`.

use std::collections::VecDeque;

use crate::cube::SpectralCube;
use crate::edges::EdgeWeights;
use crate::error::{Error, Result};
use crate::grid::Connectivity;
use crate::labels::{relabel_dense_u32, LabelMap};
use crate::metric::Metric;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaParams {
    /// Step threshold; `f64::INFINITY` puts each grid component in one zone.
    pub lambda: f64,
    pub connectivity: Connectivity,
    /// Precompute every adjacency weight before flooding.
    pub edge_cache: bool,
}

impl LambdaParams {
    pub fn new(lambda: f64) -> Self {
        Self {
            lambda,
            connectivity: Connectivity::Four,
            edge_cache: false,
        }
    }

    pub fn with_connectivity(mut self, connectivity: Connectivity) -> Self {
        self.connectivity = connectivity;
        self
    }

    pub fn with_edge_cache(mut self, edge_cache: bool) -> Self {
        self.edge_cache = edge_cache;
        self
    }
}

pub(crate) fn check_param(name: &'static str, value: f64) -> Result<()> {
    if value.is_nan() || value < 0.0 {
        return Err(Error::InvalidParameter { name, value });
    }
    Ok(())
}

pub fn lambda_flat_zones(
    cube: &SpectralCube,
    metric: &Metric,
    params: &LambdaParams,
) -> Result<LabelMap> {
    check_param("lambda", params.lambda)?;
    let weights = EdgeWeights::new(cube, metric, params.connectivity, params.edge_cache);
    Ok(flood(&weights, params.lambda, params.connectivity))
}

pub(crate) fn flood(weights: &EdgeWeights<'_>, lambda: f64, conn: Connectivity) -> LabelMap {
    let grid = weights.grid();
    let n = grid.len();
    let mut labels = vec![u32::MAX; n];
    let mut next = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if labels[start] != u32::MAX {
            continue;
        }
        labels[start] = next;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for (q, dir) in grid.neighbors_of(p, conn) {
                if labels[q] == u32::MAX && weights.weight(p, q, dir) <= lambda {
                    labels[q] = next;
                    queue.push_back(q);
                }
            }
        }
        next += 1;
    }
    // Zones are opened in raster order, so labels are already first-appearance dense.
    relabel_dense_u32(
        grid.width,
        grid.height,
        &labels,
        next.saturating_sub(1) as usize,
    )
    .0
}
