//! Synthetic test imagery.
//!
//! The "tooth saw" cube has identical rows. Band 0 follows a piecewise
//! linear column profile made of ramps that rise or fall by `step` per
//! column; the remaining bands are constant. With the default ramps
//! (+3, −3, +8, −3, +3) and `step = 10` the 21-column profile is
//!
//! ```text
//! 0 10 20 30 20 10 0 10 20 30 40 50 60 70 80 70 60 50 60 70 80
//! ```
//!
//! so every horizontal step has Euclidean length exactly 10: λ < 10 leaves
//! 21 column stripes and λ = 10 merges the whole image. The median column
//! is the centre one (value 40).

use crate::cube::SpectralCube;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ToothSawSpec {
    pub height: usize,
    pub bands: usize,
    /// Band-0 change per column.
    pub step: f64,
    /// Signed ramp lengths in columns: `+n` rises for `n` columns, `-n` falls.
    pub ramps: Vec<i32>,
    /// Band-0 value of the first column.
    pub base: f64,
    /// Value of bands 1.. everywhere.
    pub constant: f64,
}

impl Default for ToothSawSpec {
    fn default() -> Self {
        Self {
            height: 21,
            bands: 4,
            step: 10.0,
            ramps: vec![3, -3, 8, -3, 3],
            base: 0.0,
            constant: 50.0,
        }
    }
}

impl ToothSawSpec {
    /// One column more than the total ramp length.
    pub fn width(&self) -> usize {
        1 + self
            .ramps
            .iter()
            .map(|r| r.unsigned_abs() as usize)
            .sum::<usize>()
    }

    fn validate(&self) -> Result<()> {
        if self.height == 0 || self.bands == 0 {
            return Err(Error::InvalidSynth(
                "height and bands must be positive".into(),
            ));
        }
        if self.ramps.contains(&0) {
            return Err(Error::InvalidSynth("ramp lengths must be non-zero".into()));
        }
        if !(self.step.is_finite() && self.base.is_finite() && self.constant.is_finite()) {
            return Err(Error::InvalidSynth(
                "step, base and constant must be finite".into(),
            ));
        }
        Ok(())
    }

    /// Band-0 value of each column.
    pub fn profile(&self) -> Vec<f64> {
        let mut profile = Vec::with_capacity(self.width());
        let mut level = 0i64;
        profile.push(self.base);
        for &ramp in &self.ramps {
            for _ in 0..ramp.unsigned_abs() {
                level += i64::from(ramp.signum());
                profile.push(self.base + self.step * level as f64);
            }
        }
        profile
    }
}

pub fn tooth_saw_cube(spec: &ToothSawSpec) -> Result<SpectralCube> {
    spec.validate()?;
    let profile = spec.profile();
    SpectralCube::from_fn(profile.len(), spec.height, spec.bands, |x, _, band| {
        if band == 0 {
            profile[x]
        } else {
            spec.constant
        }
    })
}
