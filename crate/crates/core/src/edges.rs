//! Adjacency-edge weights `d(f(p), f(q))`, computed on demand or cached.

use crate::cube::SpectralCube;
use crate::grid::{Connectivity, Direction, Grid};
use crate::metric::Metric;

/// Source of edge weights for one cube, metric and connectivity.
///
/// The cached form stores each undirected edge once, keyed by its lower
/// pixel index and one of the four forward directions (E, S, SE, SW).
pub struct EdgeWeights<'a> {
    cube: &'a SpectralCube,
    metric: &'a Metric,
    cache: Option<Vec<f64>>,
}

const FORWARD: [Direction; 4] = [Direction::E, Direction::S, Direction::SE, Direction::SW];

impl<'a> EdgeWeights<'a> {
    pub fn on_demand(cube: &'a SpectralCube, metric: &'a Metric) -> Self {
        Self {
            cube,
            metric,
            cache: None,
        }
    }

    pub fn cached(cube: &'a SpectralCube, metric: &'a Metric, conn: Connectivity) -> Self {
        let grid = cube.grid();
        let slots = match conn {
            Connectivity::Four => 2,
            Connectivity::Eight => 4,
        };
        let mut cache = vec![f64::NAN; grid.len() * 4];
        for p in 0..grid.len() {
            for (slot, &dir) in FORWARD.iter().enumerate().take(slots) {
                if let Some(q) = grid.step(p, dir) {
                    cache[p * 4 + slot] = metric.distance(cube, p, q);
                }
            }
        }
        Self {
            cube,
            metric,
            cache: Some(cache),
        }
    }

    pub fn new(
        cube: &'a SpectralCube,
        metric: &'a Metric,
        conn: Connectivity,
        cache: bool,
    ) -> Self {
        if cache {
            Self::cached(cube, metric, conn)
        } else {
            Self::on_demand(cube, metric)
        }
    }

    pub fn cube(&self) -> &'a SpectralCube {
        self.cube
    }

    pub fn metric(&self) -> &'a Metric {
        self.metric
    }

    pub fn grid(&self) -> Grid {
        self.cube.grid()
    }

    /// Weight of the edge from `p` to its neighbor `q`, which lies in direction `dir`.
    #[inline]
    pub fn weight(&self, p: usize, q: usize, dir: Direction) -> f64 {
        match &self.cache {
            None => self.metric.distance(self.cube, p, q),
            Some(cache) => {
                let (base, slot) = match dir {
                    Direction::E => (p, 0),
                    Direction::S => (p, 1),
                    Direction::SE => (p, 2),
                    Direction::SW => (p, 3),
                    Direction::W => (q, 0),
                    Direction::N => (q, 1),
                    Direction::NW => (q, 2),
                    Direction::NE => (q, 3),
                };
                let w = cache[base * 4 + slot];
                debug_assert!(!w.is_nan(), "edge {p}->{q} not cached");
                w
            }
        }
    }
}
