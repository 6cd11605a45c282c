//! Partitions of the pixel grid stored as dense label maps.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::grid::{Connectivity, Grid};

/// A partition of a `width × height` grid.
///
/// Labels are dense (`0..count`) and numbered by first appearance in a
/// raster scan, so two label maps describing the same partition compare
/// equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: usize,
    height: usize,
    labels: Vec<u32>,
    count: usize,
}

impl LabelMap {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.width, self.height)
    }

    /// Number of classes.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> u32 {
        self.labels[i]
    }

    /// One class holding the whole grid.
    pub fn uniform(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            labels: vec![0; width * height],
            count: usize::from(width * height > 0),
        }
    }

    /// Pixel count of each class, indexed by label.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Flat indices of each class in raster order, indexed by label.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes: Vec<Vec<usize>> =
            self.sizes().into_iter().map(Vec::with_capacity).collect();
        for (i, &l) in self.labels.iter().enumerate() {
            classes[l as usize].push(i);
        }
        classes
    }

    /// Number of connected components per class under `conn`.
    pub fn components_per_class(&self, conn: Connectivity) -> Vec<usize> {
        let grid = self.grid();
        let mut seen = vec![false; self.labels.len()];
        let mut components = vec![0; self.count];
        let mut queue = VecDeque::new();
        for start in 0..self.labels.len() {
            if seen[start] {
                continue;
            }
            let l = self.labels[start];
            components[l as usize] += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(p) = queue.pop_front() {
                for (q, _) in grid.neighbors_of(p, conn) {
                    if !seen[q] && self.labels[q] == l {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
        }
        components
    }

    /// True when every class is a single connected component.
    pub fn classes_connected(&self, conn: Connectivity) -> bool {
        self.components_per_class(conn).iter().all(|&c| c == 1)
    }
}

/// Renumbers provisional labels to `0..count` in raster first-appearance order.
pub fn relabel_dense<T>(width: usize, height: usize, raw: &[T]) -> Result<LabelMap>
where
    T: Copy + Eq + std::hash::Hash,
{
    let expected = width * height;
    if raw.len() != expected {
        return Err(Error::LabelLength {
            expected,
            found: raw.len(),
        });
    }
    let mut ids: HashMap<T, u32> = HashMap::new();
    let labels = raw
        .iter()
        .map(|r| {
            let next = ids.len() as u32;
            *ids.entry(*r).or_insert(next)
        })
        .collect();
    Ok(LabelMap {
        width,
        height,
        labels,
        count: ids.len(),
    })
}

/// Fast path for provisional labels that are already small integers.
///
/// Also returns the dense label given to each provisional label
/// (`u32::MAX` for unused ones).
pub(crate) fn relabel_dense_u32(
    width: usize,
    height: usize,
    raw: &[u32],
    max_raw: usize,
) -> (LabelMap, Vec<u32>) {
    debug_assert_eq!(raw.len(), width * height);
    let mut ids = vec![u32::MAX; max_raw + 1];
    let mut count = 0u32;
    let labels = raw
        .iter()
        .map(|&r| {
            let slot = &mut ids[r as usize];
            if *slot == u32::MAX {
                *slot = count;
                count += 1;
            }
            *slot
        })
        .collect();
    let map = LabelMap {
        width,
        height,
        labels,
        count: count as usize,
    };
    (map, ids)
}

/// True iff every class of `fine` lies inside a single class of `coarse`.
pub fn is_refinement(fine: &LabelMap, coarse: &LabelMap) -> Result<bool> {
    if fine.width != coarse.width || fine.height != coarse.height {
        return Err(Error::DimensionMismatch {
            left_width: fine.width,
            left_height: fine.height,
            right_width: coarse.width,
            right_height: coarse.height,
        });
    }
    let mut parent = vec![u32::MAX; fine.count];
    for (&f, &c) in fine.labels.iter().zip(&coarse.labels) {
        let slot = &mut parent[f as usize];
        if *slot == u32::MAX {
            *slot = c;
        } else if *slot != c {
            return Ok(false);
        }
    }
    Ok(true)
}
