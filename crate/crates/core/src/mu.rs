//! μ-geodesic balls.
//!
//! The geodesic distance between two pixels is the least total spectral
//! distance over the adjacent steps of a path joining them. Inside each
//! λ-flat zone, each seed claims every pixel within geodesic distance μ.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::cube::SpectralCube;
use crate::edges::EdgeWeights;
use crate::error::{Error, Result};
use crate::flatzones::check_param;
use crate::grid::Connectivity;
use crate::labels::LabelMap;
use crate::metric::Metric;
use crate::refine::{prepare_seeds, RefineOptions, Refinement};
use crate::seeds::SeedList;

/// Pixels a ball's geodesic paths may pass through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BallDomain {
    /// Only pixels of the zone not yet claimed by an earlier ball.
    #[default]
    Residual,
    /// The whole zone. Paths may cross claimed pixels, which stay with their
    /// first ball; what remains of a ball is split into connected regions.
    WholeZone,
}

impl fmt::Display for BallDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BallDomain::Residual => f.write_str("residual"),
            BallDomain::WholeZone => f.write_str("zone"),
        }
    }
}

impl FromStr for BallDomain {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "residual" => Ok(BallDomain::Residual),
            "zone" | "whole-zone" | "class" => Ok(BallDomain::WholeZone),
            other => Err(format!(
                "unknown ball domain '{other}' (expected residual or zone)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuParams {
    pub mu: f64,
    pub options: RefineOptions,
    pub domain: BallDomain,
}

impl MuParams {
    pub fn new(mu: f64) -> Self {
        Self {
            mu,
            options: RefineOptions::default(),
            domain: BallDomain::Residual,
        }
    }

    pub fn with_options(mut self, options: RefineOptions) -> Self {
        self.options = options;
        self
    }

    pub fn with_domain(mut self, domain: BallDomain) -> Self {
        self.domain = domain;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Frontier {
    dist: f64,
    pixel: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    // Reversed: BinaryHeap is a max-heap, we pop the nearest pixel first and
    // the lowest raster index among equals.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.pixel.cmp(&self.pixel))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reusable Dijkstra state sized to one grid.
pub(crate) struct BallSearch {
    dist: Vec<f64>,
    touched: Vec<usize>,
    heap: BinaryHeap<Frontier>,
}

impl BallSearch {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            dist: vec![f64::INFINITY; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    /// Pixels within geodesic distance `mu` of `seed`, in settling order.
    pub(crate) fn ball(
        &mut self,
        weights: &EdgeWeights<'_>,
        conn: Connectivity,
        seed: usize,
        mu: f64,
        in_domain: impl Fn(usize) -> bool,
    ) -> Vec<(usize, f64)> {
        for &p in &self.touched {
            self.dist[p] = f64::INFINITY;
        }
        self.touched.clear();
        self.heap.clear();

        let grid = weights.grid();
        let mut settled = Vec::new();
        self.dist[seed] = 0.0;
        self.touched.push(seed);
        self.heap.push(Frontier {
            dist: 0.0,
            pixel: seed,
        });
        while let Some(Frontier { dist, pixel }) = self.heap.pop() {
            if dist > self.dist[pixel] {
                continue;
            }
            settled.push((pixel, dist));
            for (q, dir) in grid.neighbors_of(pixel, conn) {
                if !in_domain(q) {
                    continue;
                }
                let nd = dist + weights.weight(pixel, q, dir);
                if nd <= mu && nd < self.dist[q] {
                    if self.dist[q].is_infinite() {
                        self.touched.push(q);
                    }
                    self.dist[q] = nd;
                    self.heap.push(Frontier { dist: nd, pixel: q });
                }
            }
        }
        settled
    }
}

/// Geodesic ball of radius `mu` around `seed`, with paths restricted to `domain`.
///
/// Returns `(pixel, geodesic distance)` for every pixel within `mu`, nearest
/// first. The seed is always present with distance 0.
pub fn geodesic_ball(
    cube: &SpectralCube,
    metric: &Metric,
    domain: &[usize],
    seed: usize,
    mu: f64,
    conn: Connectivity,
) -> Result<Vec<(usize, f64)>> {
    check_param("mu", mu)?;
    let n = cube.pixel_count();
    let mut inside = vec![false; n];
    for &p in domain {
        if p >= n {
            let grid = cube.grid();
            return Err(Error::OutOfBounds {
                x: (p % grid.width) as i64,
                y: (p / grid.width) as i64,
                width: grid.width,
                height: grid.height,
            });
        }
        inside[p] = true;
    }
    if seed >= n || !inside[seed] {
        return Err(Error::SeedOutsideDomain { seed });
    }
    let weights = EdgeWeights::on_demand(cube, metric);
    Ok(BallSearch::new(n).ball(&weights, conn, seed, mu, |q| inside[q]))
}

pub fn mu_geodesic_balls(
    cube: &SpectralCube,
    metric: &Metric,
    flat: &LabelMap,
    params: &MuParams,
) -> Result<LabelMap> {
    check_param("mu", params.mu)?;
    let seeds = prepare_seeds(cube, metric, flat, &params.options)?;
    mu_with_seeds(cube, metric, flat, seeds, params).map(|r| r.labels)
}

/// μ pass over precomputed seed lists (one per class of `flat`, by label).
pub fn mu_with_seeds(
    cube: &SpectralCube,
    metric: &Metric,
    flat: &LabelMap,
    seeds: Vec<SeedList>,
    params: &MuParams,
) -> Result<Refinement> {
    check_param("mu", params.mu)?;
    let conn = params.options.connectivity;
    let weights = EdgeWeights::new(cube, metric, conn, params.options.edge_cache);
    let grid = cube.grid();
    let n = grid.len();
    let mut assigned = vec![false; n];
    let mut raw = vec![0u32; n];
    let mut distances = vec![0.0; n];
    let mut raw_seeds = Vec::new();
    let mut current = 0u32;
    let mut search = BallSearch::new(n);
    let mut claimed = Vec::new();
    let mut queue = VecDeque::new();

    for mut list in seeds {
        let zone = list.region();
        while let Some(seed) = list.pop_first_unassigned(|p| assigned[p]) {
            match params.domain {
                BallDomain::Residual => {
                    let ball = search.ball(&weights, conn, seed, params.mu, |q| {
                        flat.label(q) == zone && !assigned[q]
                    });
                    for (p, d) in ball {
                        assigned[p] = true;
                        raw[p] = current;
                        distances[p] = d;
                    }
                    raw_seeds.push(seed);
                    current += 1;
                }
                BallDomain::WholeZone => {
                    let ball =
                        search.ball(&weights, conn, seed, params.mu, |q| flat.label(q) == zone);
                    claimed.clear();
                    for (p, d) in ball {
                        if !assigned[p] {
                            distances[p] = d;
                            claimed.push(p);
                        }
                    }
                    let next = split_components(
                        grid,
                        conn,
                        &claimed,
                        &mut assigned,
                        &mut raw,
                        current,
                        &mut queue,
                    );
                    raw_seeds.extend(std::iter::repeat_n(seed, (next - current) as usize));
                    current = next;
                }
            }
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

/// Labels each connected component of `claimed` with a fresh label.
fn split_components(
    grid: crate::grid::Grid,
    conn: Connectivity,
    claimed: &[usize],
    assigned: &mut [bool],
    raw: &mut [u32],
    mut current: u32,
    queue: &mut VecDeque<usize>,
) -> u32 {
    // Pending pixels are marked with u32::MAX until their component is flooded.
    for &p in claimed {
        raw[p] = u32::MAX;
    }
    for &start in claimed {
        if raw[start] != u32::MAX {
            continue;
        }
        raw[start] = current;
        assigned[start] = true;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            for (q, _) in grid.neighbors_of(p, conn) {
                if !assigned[q] && raw[q] == u32::MAX {
                    raw[q] = current;
                    assigned[q] = true;
                    queue.push_back(q);
                }
            }
        }
        current += 1;
    }
    current
}
