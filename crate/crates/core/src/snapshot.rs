//! Sampled complex field values on a rectilinear grid at a fixed time.

use crate::error::{Error, Result};
use crate::vec3::{ComplexVec3, Vec3};

/// A rectilinear grid of field samples with its placement metadata.
#[derive(Debug, Clone)]
pub struct FieldSnapshot {
    pub dims: [usize; 3],
    pub origin: Vec3,
    pub spacing: Vec3,
    pub t: f64,
    pub values: Vec<ComplexVec3>,
}

impl FieldSnapshot {
    pub fn from_fn<F>(dims: [usize; 3], origin: Vec3, spacing: Vec3, t: f64, f: F) -> FieldSnapshot
    where
        F: Fn(Vec3) -> ComplexVec3,
    {
        let mut values = Vec::with_capacity(dims[0] * dims[1] * dims[2]);
        for iz in 0..dims[2] {
            for iy in 0..dims[1] {
                for ix in 0..dims[0] {
                    values.push(f(Vec3::new(
                        origin.x + spacing.x * ix as f64,
                        origin.y + spacing.y * iy as f64,
                        origin.z + spacing.z * iz as f64,
                    )));
                }
            }
        }
        FieldSnapshot { dims, origin, spacing, t, values }
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        (iz * self.dims[1] + iy) * self.dims[0] + ix
    }

    pub fn at(&self, ix: usize, iy: usize, iz: usize) -> ComplexVec3 {
        self.values[self.index(ix, iy, iz)]
    }

    pub fn point(&self, ix: usize, iy: usize, iz: usize) -> Vec3 {
        Vec3::new(
            self.origin.x + self.spacing.x * ix as f64,
            self.origin.y + self.spacing.y * iy as f64,
            self.origin.z + self.spacing.z * iz as f64,
        )
    }

    /// Trilinear interpolation; errors outside the grid hull.
    pub fn sample(&self, x: Vec3) -> Result<ComplexVec3> {
        let mut idx = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for a in 0..3 {
            let coord = (x[a] - self.origin[a]) / self.spacing[a];
            if coord < -1e-9 || coord > (self.dims[a] - 1) as f64 + 1e-9 {
                return Err(Error::RegionExceedsGrid(format!(
                    "sample point axis {a} coordinate {coord} outside [0, {}]",
                    self.dims[a] - 1
                )));
            }
            let clamped = coord.clamp(0.0, (self.dims[a] - 1) as f64);
            let base = (clamped.floor() as usize).min(self.dims[a].saturating_sub(2));
            idx[a] = base;
            frac[a] = clamped - base as f64;
        }
        let mut acc = ComplexVec3::ZERO;
        for dz in 0..2usize {
            for dy in 0..2usize {
                for dx in 0..2usize {
                    let w = (if dx == 0 { 1.0 - frac[0] } else { frac[0] })
                        * (if dy == 0 { 1.0 - frac[1] } else { frac[1] })
                        * (if dz == 0 { 1.0 - frac[2] } else { frac[2] });
                    if w != 0.0 {
                        acc += self.at(idx[0] + dx, idx[1] + dy, idx[2] + dz) * w;
                    }
                }
            }
        }
        Ok(acc)
    }
}
