//! Pixel grid geometry: coordinates, adjacency and neighbor enumeration.
//!
//! Segmentation passes work on flat raster indices (`y * width + x`);
//! [`PixelIndex`] is the coordinate form used at API boundaries.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Column/row coordinate of a pixel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PixelIndex {
    pub x: usize,
    pub y: usize,
}

impl PixelIndex {
    pub fn new(x: usize, y: usize) -> Self {
        Self { x, y }
    }
}

impl From<(usize, usize)> for PixelIndex {
    fn from((x, y): (usize, usize)) -> Self {
        Self { x, y }
    }
}

/// Pixel adjacency used by every pass of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Four,
    Eight,
}

impl Connectivity {
    pub fn directions(self) -> &'static [Direction] {
        match self {
            Connectivity::Four => &Direction::ALL[..4],
            Connectivity::Eight => &Direction::ALL,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Four => f.write_str("4"),
            Connectivity::Eight => f.write_str("8"),
        }
    }
}

impl FromStr for Connectivity {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "4" | "four" => Ok(Connectivity::Four),
            "8" | "eight" => Ok(Connectivity::Eight),
            other => Err(format!("unknown connectivity '{other}' (expected 4 or 8)")),
        }
    }
}

/// Neighbor direction, in enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    N,
    S,
    W,
    E,
    NW,
    NE,
    SW,
    SE,
}

impl Direction {
    pub const ALL: [Direction; 8] = [
        Direction::N,
        Direction::S,
        Direction::W,
        Direction::E,
        Direction::NW,
        Direction::NE,
        Direction::SW,
        Direction::SE,
    ];

    pub fn offset(self) -> (isize, isize) {
        match self {
            Direction::N => (0, -1),
            Direction::S => (0, 1),
            Direction::W => (-1, 0),
            Direction::E => (1, 0),
            Direction::NW => (-1, -1),
            Direction::NE => (1, -1),
            Direction::SW => (-1, 1),
            Direction::SE => (1, 1),
        }
    }
}

/// Width/height of a raster, with index arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub width: usize,
    pub height: usize,
}

impl Grid {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height }
    }

    pub fn len(&self) -> usize {
        self.width * self.height
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: PixelIndex) -> bool {
        p.x < self.width && p.y < self.height
    }

    pub fn index(&self, p: PixelIndex) -> usize {
        p.y * self.width + p.x
    }

    pub fn pixel(&self, i: usize) -> PixelIndex {
        PixelIndex::new(i % self.width, i / self.width)
    }

    pub fn check(&self, p: PixelIndex) -> Result<usize> {
        if self.contains(p) {
            Ok(self.index(p))
        } else {
            Err(Error::OutOfBounds {
                x: p.x as i64,
                y: p.y as i64,
                width: self.width,
                height: self.height,
            })
        }
    }

    /// Neighbor of flat index `i` in direction `dir`, if in bounds.
    #[inline]
    pub fn step(&self, i: usize, dir: Direction) -> Option<usize> {
        let (dx, dy) = dir.offset();
        let x = (i % self.width).checked_add_signed(dx)?;
        let y = (i / self.width).checked_add_signed(dy)?;
        (x < self.width && y < self.height).then_some(y * self.width + x)
    }

    /// In-bounds neighbors of flat index `i`, paired with their direction.
    #[inline]
    pub fn neighbors_of(
        &self,
        i: usize,
        conn: Connectivity,
    ) -> impl Iterator<Item = (usize, Direction)> + '_ {
        conn.directions()
            .iter()
            .filter_map(move |&d| self.step(i, d).map(|q| (q, d)))
    }
}

/// All in-bounds neighbors of `p`: N, S, W, E, then NW, NE, SW, SE for eight.
pub fn neighbors(
    p: PixelIndex,
    conn: Connectivity,
    width: usize,
    height: usize,
) -> Result<Vec<PixelIndex>> {
    let grid = Grid::new(width, height);
    let i = grid.check(p)?;
    Ok(grid
        .neighbors_of(i, conn)
        .map(|(q, _)| grid.pixel(q))
        .collect())
}
