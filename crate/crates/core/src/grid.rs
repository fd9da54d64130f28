//! Polar sampling of the unit disk for supremum checks.

use num_complex::Complex64;

use crate::error::{MathError, Result};

/// A polar grid with radii accumulating geometrically toward the rim.
///
/// Radii follow `r_i = 1 - (1 - r_max)^(i / n_r)` for i = 1..=n_r, so the
/// gap 1 - r shrinks geometrically; angles are uniform. The origin is never
/// sampled. Grid maxima are lower bounds for the true supremum over the
/// disk, and reports should label them as grid suprema.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angles: Vec<f64>,
}

impl DiskGrid {
    /// Default resolution: 64 radii x 128 angles, outermost radius 0.999.
    pub const DEFAULT_RADII: usize = 64;
    pub const DEFAULT_ANGLES: usize = 128;
    pub const DEFAULT_MAX_RADIUS: f64 = 0.999;

    pub fn new(radial: usize, angular: usize, max_radius: f64) -> Result<Self> {
        if radial == 0 || angular == 0 {
            return Err(MathError::InvalidCriterion {
                reason: "grid needs at least one radius and one angle",
            });
        }
        if !(max_radius > 0.0 && max_radius < 1.0) {
            return Err(MathError::InvalidCriterion {
                reason: "grid max radius must lie in (0, 1)",
            });
        }
        let gap = 1.0 - max_radius;
        let radii = (1..=radial)
            .map(|i| 1.0 - gap.powf(i as f64 / radial as f64))
            .collect();
        let angles = (0..angular)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / angular as f64)
            .collect();
        Ok(Self { radii, angles })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Grid points in deterministic radius-major order.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii.iter().flat_map(move |&r| {
            self.angles
                .iter()
                .map(move |&t| Complex64::from_polar(r, t))
        })
    }
}

impl Default for DiskGrid {
    fn default() -> Self {
        Self::new(
            Self::DEFAULT_RADII,
            Self::DEFAULT_ANGLES,
            Self::DEFAULT_MAX_RADIUS,
        )
        .expect("default grid parameters are valid")
    }
}
