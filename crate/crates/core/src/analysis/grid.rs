use std::f64::consts::TAU;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::RADIUS_CAP_SLACK;

/// Polar sample grid inside the unit disk: every radius paired with `M`
/// equispaced angles `2 pi j / M`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    radii: Vec<f64>,
    angles: usize,
}

impl SampleGrid {
    pub const DEFAULT_ANGLES: usize = 720;
    pub const MIN_ANGLES: usize = 8;

    pub fn new(radii: Vec<f64>, angles: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidArgument("grid needs at least one radius".into()));
        }
        if angles < Self::MIN_ANGLES {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least {} angles, got {angles}",
                Self::MIN_ANGLES
            )));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidArgument("grid radii must lie in (0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("grid radii must be strictly increasing".into()));
        }
        Ok(Self { radii, angles })
    }

    /// Radii `0.1, 0.2, ..., 0.9, 0.95, 0.99, 0.995` with 720 angles.
    pub fn default_grid() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.95, 0.99, 0.995]);
        Self {
            radii,
            angles: Self::DEFAULT_ANGLES,
        }
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angle_count(&self) -> usize {
        self.angles
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().expect("grid is never empty")
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.angles as f64
    }

    /// All sample points, radius-major.
    pub fn points(&self) -> Vec<Complex64> {
        let mut pts = Vec::with_capacity(self.len());
        for &r in &self.radii {
            pts.extend((0..self.angles).map(|j| Complex64::from_polar(r, self.angle(j))));
        }
        pts
    }

    /// Keeps only radii `<= cap`; fails when nothing remains.
    pub fn capped(&self, cap: f64) -> Result<Self> {
        let radii: Vec<f64> = self
            .radii
            .iter()
            .copied()
            .filter(|&r| r <= cap + RADIUS_CAP_SLACK)
            .collect();
        if radii.is_empty() {
            return Err(Error::RadiusBeyondSeriesCap {
                radius: self.radii[0],
                cap,
                order: 0,
            });
        }
        Ok(Self {
            radii,
            angles: self.angles,
        })
    }
}

/// `M` equispaced points on the circle of radius `r` (which may be 1).
pub fn circle_points(r: f64, m: usize) -> Vec<Complex64> {
    (0..m)
        .map(|j| Complex64::from_polar(r, TAU * j as f64 / m as f64))
        .collect()
}

/// Parses `"r1,r2,...;M"`.
impl FromStr for SampleGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (radii, angles) = s
            .split_once(';')
            .ok_or_else(|| Error::InvalidArgument(format!("grid config `{s}` must look like `r1,r2,...;M`")))?;
        let radii = radii
            .split(',')
            .map(|r| {
                r.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad grid radius `{r}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let angles = angles
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("bad grid angle count `{angles}`")))?;
        Self::new(radii, angles)
    }
}
