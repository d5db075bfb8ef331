//! Sampling certificates for sense-preservation, convexity and convexity in
//! a direction. These are certificates on a finite grid, not proofs.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use super::grid::{circle_points, SampleGrid};
use super::report::{CheckReport, Criterion};
use super::TOLERANCE;
use crate::error::{Error, Result};
use crate::mappings::{cis, HarmonicMap};
use crate::series::{TruncatedSeries, RADIUS_CAP_SLACK};

/// `|phi'|` below this counts as a vanishing derivative.
pub const DERIVATIVE_EPSILON: f64 = 1e-10;

/// First differences below this magnitude are merged into their neighbours
/// before counting extrema.
pub const FLAT_DIFFERENCE: f64 = 1e-12;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Index of the extremal value; ties go to the lowest index so parallel
/// reductions stay deterministic.
fn arg_extremum(values: &[f64], maximize: bool) -> usize {
    let better = |a: f64, b: f64| if maximize { a > b } else { a < b };
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if better(v, values[best]) {
            best = i;
        }
    }
    best
}

fn series_grid(grid: &SampleGrid, cap: f64, order: usize) -> Result<SampleGrid> {
    grid.capped(cap).map_err(|_| Error::RadiusBeyondSeriesCap {
        radius: grid.radii()[0],
        cap,
        order,
    })
}

/// Maximum of `|eval|` over the grid; passes when it stays below `1 - tau`.
pub fn sup_modulus<F>(eval: F, grid: &SampleGrid) -> Result<CheckReport>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let points = grid.points();
    let moduli = points
        .par_iter()
        .map(|&z| {
            eval(z).map(|w| w.norm()).map_err(|e| match e {
                Error::Evaluation { .. } => e,
                other => Error::Evaluation {
                    z,
                    reason: other.to_string(),
                },
            })
        })
        .collect::<Result<Vec<f64>>>()?;
    let i = arg_extremum(&moduli, true);
    let max = moduli[i];
    Ok(CheckReport::new(
        Criterion::SensePreserving,
        max < 1.0 - TOLERANCE,
        max,
        points[i],
        points.len(),
    )
    .with_metric("r_max", grid.r_max()))
}

/// Local univalence check on the dilatation `g'/h'`.
///
/// Exact polynomials are checked pointwise on the whole grid. Otherwise the
/// dilatation is expanded as a series, whose coefficients are bounded by 1
/// whenever `|omega| < 1`, and the grid is capped at the reliable radius of
/// the map's truncation order.
pub fn sense_preserving_check(f: &HarmonicMap, grid: &SampleGrid) -> Result<CheckReport> {
    let cap = f.reliable_radius();
    if cap >= 1.0 {
        return sup_modulus(
            |z| {
                let h1 = f.h().evaluate_derivative(z);
                if h1.norm() <= DERIVATIVE_EPSILON {
                    return Err(Error::VanishingDenominator { z, modulus: h1.norm() });
                }
                Ok(f.g().evaluate_derivative(z) / h1)
            },
            grid,
        );
    }
    let omega = f.dilatation()?;
    let grid = series_grid(grid, cap, f.order())?;
    sup_modulus(|z| Ok(omega.evaluate(z)), &grid)
}

/// Minimum of `Re(1 + z phi''/phi')` over the grid (capped to the series
/// radius); passes when strictly positive.
pub fn convexity_check(phi: &TruncatedSeries, grid: &SampleGrid) -> Result<CheckReport> {
    let grid = series_grid(grid, phi.reliable_radius(), phi.order())?;
    let points = grid.points();
    let derivs: Vec<(Complex64, Complex64)> = points
        .par_iter()
        .map(|&z| (phi.evaluate_derivative(z), phi.evaluate_second_derivative(z)))
        .collect();
    if let Some(i) = derivs.iter().position(|(d1, _)| d1.norm() <= DERIVATIVE_EPSILON) {
        return Ok(CheckReport::new(
            Criterion::DerivativeVanishes,
            false,
            derivs[i].0.norm(),
            points[i],
            i + 1,
        ));
    }
    let values: Vec<f64> = points
        .iter()
        .zip(&derivs)
        .map(|(z, (d1, d2))| (ONE + z * d2 / d1).re)
        .collect();
    let i = arg_extremum(&values, false);
    Ok(CheckReport::new(Criterion::Convex, values[i] > 0.0, values[i], points[i], points.len())
        .with_metric("r_max", grid.r_max()))
}

/// `Re{ e^{i(mu - gamma)} (1 - 2 z e^{-i mu} cos nu + z^2 e^{-2i mu}) phi'(z) }`.
pub fn rz_expression(z: Complex64, derivative: Complex64, gamma: f64, mu: f64, nu: f64) -> f64 {
    let w = z * cis(-mu);
    let quad = ONE - 2.0 * nu.cos() * w + w * w;
    (cis(mu - gamma) * quad * derivative).re
}

/// Directional convexity criterion for a single `(mu, nu)`: passes when the
/// minimum of [`rz_expression`] is at least `-tau`.
pub fn rz_check(
    phi: &TruncatedSeries,
    gamma: f64,
    mu: f64,
    nu: f64,
    grid: &SampleGrid,
) -> Result<CheckReport> {
    let grid = series_grid(grid, phi.reliable_radius(), phi.order())?;
    let points = grid.points();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&z| rz_expression(z, phi.evaluate_derivative(z), gamma, mu, nu))
        .collect();
    let i = arg_extremum(&values, false);
    Ok(
        CheckReport::new(Criterion::RzDirection, values[i] >= -TOLERANCE, values[i], points[i], points.len())
            .with_metric("mu", mu)
            .with_metric("nu", nu),
    )
}

/// Resolution of the `(mu, nu)` search in [`direction_convexity_certificate`]:
/// `mu = 2 pi i / mu_steps`, `nu = pi j / nu_steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RzLattice {
    pub mu_steps: usize,
    pub nu_steps: usize,
}

impl Default for RzLattice {
    fn default() -> Self {
        Self {
            mu_steps: 90,
            nu_steps: 45,
        }
    }
}

const REFINEMENT_ROUNDS: usize = 3;
const REFINEMENT_HALF_WIDTH: i32 = 10;

/// Samples `(z, F'(z))` sorted by decreasing radius, so failures near the
/// boundary end the scan early.
struct DerivativeSamples {
    samples: Vec<(Complex64, Complex64)>,
}

impl DerivativeSamples {
    fn new(f: &TruncatedSeries, grid: &SampleGrid) -> Self {
        let mut points = grid.points();
        points.reverse();
        let samples = points
            .par_iter()
            .map(|&z| (z, f.evaluate_derivative(z)))
            .collect();
        Self { samples }
    }

    /// Minimum and its witness; with `stop_below`, returns `None` as soon as a
    /// sample drops below it.
    fn min_for(&self, gamma: f64, mu: f64, nu: f64, stop_below: Option<f64>) -> Option<(f64, Complex64)> {
        let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
        for &(z, d) in &self.samples {
            let v = rz_expression(z, d, gamma, mu, nu);
            if let Some(limit) = stop_below {
                if v < limit {
                    return None;
                }
            }
            if v < best.0 {
                best = (v, z);
            }
        }
        Some(best)
    }
}

/// Searches a `(mu, nu)` lattice for a pair satisfying the directional
/// convexity criterion for `h - e^{2i gamma} g`.
///
/// A pass records the pair in the report metrics. Failure is one-sided: it
/// means no certificate was found, not that the map is non-convex.
pub fn direction_convexity_certificate(
    f: &HarmonicMap,
    gamma: f64,
    grid: &SampleGrid,
    lattice: RzLattice,
) -> Result<CheckReport> {
    if lattice.mu_steps == 0 || lattice.nu_steps == 0 {
        return Err(Error::InvalidArgument("lattice needs at least one step per axis".into()));
    }
    let sense = sense_preserving_check(f, grid)?;
    if !sense.passed {
        return Ok(CheckReport {
            criterion: Criterion::NotSensePreserving,
            ..sense
        });
    }

    let direction = f.direction_function(gamma);
    let grid = series_grid(grid, direction.reliable_radius(), f.order())?;
    let samples = DerivativeSamples::new(&direction, &grid);
    let n_samples = samples.samples.len();
    let mu_step = TAU / lattice.mu_steps as f64;
    let nu_step = PI / lattice.nu_steps as f64;
    let pairs: Vec<(f64, f64)> = (0..lattice.mu_steps)
        .flat_map(|i| (0..lattice.nu_steps).map(move |j| (i as f64 * mu_step, j as f64 * nu_step)))
        .collect();

    let passing = |mu: f64, nu: f64| {
        samples
            .min_for(gamma, mu, nu, Some(-TOLERANCE))
            .map(|(v, z)| (mu, nu, v, z))
    };
    let certified = |mu: f64, nu: f64, v: f64, z: Complex64| {
        CheckReport::new(Criterion::DirectionConvexity, true, v, z, n_samples)
            .with_metric("gamma", gamma)
            .with_metric("mu", mu)
            .with_metric("nu", nu)
    };

    if let Some((mu, nu, v, z)) = pairs.par_iter().find_map_first(|&(mu, nu)| passing(mu, nu)) {
        return Ok(certified(mu, nu, v, z));
    }

    // Nothing on the coarse lattice: refine around the best pair.
    let scored: Vec<(f64, f64, f64, Complex64)> = pairs
        .par_iter()
        .map(|&(mu, nu)| {
            let (v, z) = samples.min_for(gamma, mu, nu, None).expect("no early exit");
            (mu, nu, v, z)
        })
        .collect();
    let mut best = scored
        .iter()
        .copied()
        .fold(None::<(f64, f64, f64, Complex64)>, |acc, s| match acc {
            Some(a) if a.2 >= s.2 => Some(a),
            _ => Some(s),
        })
        .expect("lattice is non-empty");
    let (mut dmu, mut dnu) = (mu_step, nu_step);
    for _ in 0..REFINEMENT_ROUNDS {
        dmu /= 10.0;
        dnu /= 10.0;
        let (cmu, cnu) = (best.0, best.1);
        let local: Vec<(f64, f64)> = (-REFINEMENT_HALF_WIDTH..=REFINEMENT_HALF_WIDTH)
            .flat_map(|i| {
                (-REFINEMENT_HALF_WIDTH..=REFINEMENT_HALF_WIDTH)
                    .map(move |j| ((cmu + i as f64 * dmu).rem_euclid(TAU), cnu + j as f64 * dnu))
            })
            .filter(|&(_, nu)| (0.0..PI).contains(&nu))
            .collect();
        if let Some((mu, nu, v, z)) = local.par_iter().find_map_first(|&(mu, nu)| passing(mu, nu)) {
            return Ok(certified(mu, nu, v, z).with_metric("refined", 1.0));
        }
        for (mu, nu) in local {
            let (v, z) = samples.min_for(gamma, mu, nu, None).expect("no early exit");
            if v > best.2 {
                best = (mu, nu, v, z);
            }
        }
    }
    Ok(CheckReport::new(Criterion::NoCertificate, false, best.2, best.3, n_samples)
        .with_metric("gamma", gamma)
        .with_metric("mu", best.0)
        .with_metric("nu", best.1))
}

/// Number of sign changes of the first differences of
/// `theta -> Im(e^{-i gamma} w(r e^{i theta}))` around the closed circle.
/// A curve bounding a domain convex in direction `gamma` yields 2.
pub fn boundary_extrema_count_with<F>(eval: F, gamma: f64, r: f64, m: usize) -> Result<usize>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidArgument(format!("radius {r} outside (0, 1]")));
    }
    if m < 64 {
        return Err(Error::InvalidArgument(format!("need at least 64 boundary samples, got {m}")));
    }
    let rot = cis(-gamma);
    let heights: Vec<f64> = circle_points(r, m)
        .par_iter()
        .map(|&z| (rot * eval(z)).im)
        .collect();
    let diffs: Vec<f64> = (0..m)
        .map(|j| heights[(j + 1) % m] - heights[j])
        .filter(|d| d.abs() >= FLAT_DIFFERENCE)
        .collect();
    if diffs.is_empty() {
        return Ok(0);
    }
    let changes = (0..diffs.len())
        .filter(|&j| (diffs[j] > 0.0) != (diffs[(j + 1) % diffs.len()] > 0.0))
        .count();
    Ok(changes)
}

/// [`boundary_extrema_count_with`] for a series map; `r` must not exceed the
/// reliable radius of the truncation order.
pub fn boundary_extrema_count(f: &HarmonicMap, gamma: f64, r: f64, m: usize) -> Result<usize> {
    let cap = f.reliable_radius();
    if r > cap + RADIUS_CAP_SLACK {
        return Err(Error::RadiusBeyondSeriesCap {
            radius: r,
            cap,
            order: f.order(),
        });
    }
    boundary_extrema_count_with(|z| f.evaluate(z), gamma, r, m)
}
