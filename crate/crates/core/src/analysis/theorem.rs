use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::certificates::sup_modulus;
use super::grid::{circle_points, SampleGrid};
use super::report::{CheckReport, Criterion};
use super::TOLERANCE;
use crate::convolve::{omega1_monomial, MonomialDilatation, DENOMINATOR_EPSILON};
use crate::error::{Error, Result};
use crate::mappings::cis;

/// Samples on `|z| = 1` used for the `|q|^2 - |p|^2` check.
pub const BOUNDARY_SAMPLES: usize = 2048;

const RANGE_SLACK: f64 = 1e-12;
const REFINEMENT_ROUNDS: usize = 3;
const REFINEMENT_HALF_WIDTH: i32 = 10;
const MAX_SEARCH_RADIUS: f64 = 1.0 - 1e-9;

/// Largest `|a|` for which `omega = a z^n` is covered by the monomial theorem.
pub fn theorem_bound(n: usize) -> Result<f64> {
    match n {
        0 => Err(Error::InvalidArgument("theorem bound needs n >= 1".into())),
        1 | 2 => Ok(1.0),
        _ => {
            // n - 1 - sqrt(n^2 - 2n), written as the reciprocal of the other
            // root of 1 + t^2 - 2(n - 1)t to avoid cancellation.
            let n = n as f64;
            Ok(1.0 / (n - 1.0 + (n * n - 2.0 * n).sqrt()))
        }
    }
}

/// `1 + |a|^2 - |a| (|2 - n| + n)`.
pub fn bound_expression(a: Complex64, n: usize) -> f64 {
    let m = a.norm();
    let n = n as f64;
    1.0 + m * m - m * ((2.0 - n).abs() + n)
}

/// Minimum of `|q|^2 - |p|^2` over `samples` points of the unit circle, with
/// the point attaining it.
pub fn boundary_gap(d: &MonomialDilatation, samples: usize) -> (f64, Complex64) {
    circle_points(1.0, samples.max(1))
        .into_par_iter()
        .map(|z| (d.q_at(z).norm_sqr() - d.p_at(z).norm_sqr(), z))
        .reduce(
            || (f64::INFINITY, Complex64::new(1.0, 0.0)),
            |a, b| if b.0 < a.0 { b } else { a },
        )
}

/// [`verify_monomial_theorem_with`] using [`BOUNDARY_SAMPLES`].
pub fn verify_monomial_theorem(
    a: Complex64,
    n: usize,
    mu: f64,
    nu: f64,
    grid: &SampleGrid,
) -> Result<CheckReport> {
    verify_monomial_theorem_with(a, n, mu, nu, grid, BOUNDARY_SAMPLES)
}

/// Checks the conclusions of the monomial theorem for `omega = a z^n`:
/// the bound expression is nonnegative, `q` has no zero on the grid,
/// `|omega_1| < 1` on the grid and `|q|^2 >= |p|^2` on the unit circle.
///
/// Parameters outside the theorem's range give an `out-of-theorem-range`
/// report rather than an error.
pub fn verify_monomial_theorem_with(
    a: Complex64,
    n: usize,
    mu: f64,
    nu: f64,
    grid: &SampleGrid,
    boundary_samples: usize,
) -> Result<CheckReport> {
    let bound = theorem_bound(n)?;
    if a.norm() > bound + RANGE_SLACK {
        return Ok(
            CheckReport::new(Criterion::OutOfTheoremRange, false, a.norm(), Complex64::new(0.0, 0.0), 0)
                .with_metric("theorem_bound", bound),
        );
    }
    let d = omega1_monomial(a, n, mu, nu)?;
    let expr = bound_expression(a, n);

    let points = grid.points();
    let (min_q, min_q_at) = points
        .par_iter()
        .map(|&z| (d.q_at(z).norm(), z))
        .reduce(
            || (f64::INFINITY, Complex64::new(0.0, 0.0)),
            |a, b| if b.0 < a.0 { b } else { a },
        );
    let (gap, gap_at) = boundary_gap(&d, boundary_samples);

    let base = |criterion, passed, value, witness| {
        CheckReport::new(criterion, passed, value, witness, points.len())
            .with_metric("theorem_bound", bound)
            .with_metric("bound_expression", expr)
            .with_metric("min_abs_q", min_q)
            .with_metric("boundary_gap_min", gap)
    };
    if min_q <= DENOMINATOR_EPSILON {
        return Ok(base(Criterion::MonomialTheorem, false, min_q, min_q_at));
    }
    let sup = sup_modulus(|z| d.omega1(z), grid)?;
    let passed = expr >= -TOLERANCE && sup.passed && gap >= -TOLERANCE;
    let (value, witness) = if sup.passed && gap < -TOLERANCE {
        (gap, gap_at)
    } else {
        (sup.extremal_value, sup.witness)
    };
    Ok(base(Criterion::MonomialTheorem, passed, value, witness).with_metric("sup_modulus", sup.extremal_value))
}

fn omega1_modulus(d: &MonomialDilatation, z: Complex64) -> Option<f64> {
    if d.q_at(z).norm() <= DENOMINATOR_EPSILON {
        None
    } else {
        d.omega1(z).ok().map(|w| w.norm())
    }
}

fn best_of(d: &MonomialDilatation, points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    points
        .par_iter()
        .filter_map(|&(r, t)| omega1_modulus(d, Complex64::from_polar(r, t)).map(|m| (m, r, t)))
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a })
}

/// Looks for a point with `|omega_1| > 1` for `a = e^{i phase}`, `n >= 3`.
///
/// After a pass over the grid, the best cell is refined three times, each
/// time shrinking the radial and angular steps tenfold. The report also
/// carries `|p_0 / p_{n+2}|`, which equals `n / 2`.
pub fn counterexample_search(
    n: usize,
    phase: f64,
    mu: f64,
    nu: f64,
    grid: &SampleGrid,
) -> Result<CheckReport> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("counterexample search needs n >= 3, got {n}")));
    }
    let d = omega1_monomial(cis(phase), n, mu, nu)?;
    let radii = grid.radii();
    let coarse: Vec<(f64, f64)> = radii
        .iter()
        .flat_map(|&r| (0..grid.angle_count()).map(move |j| (r, grid.angle(j))))
        .collect();
    let mut best = best_of(&d, &coarse).ok_or_else(|| Error::Evaluation {
        z: Complex64::new(0.0, 0.0),
        reason: "q vanishes at every grid point".into(),
    })?;

    let mut dr = radii
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(radii[0], f64::min);
    let mut dt = TAU / grid.angle_count() as f64;
    for _ in 0..REFINEMENT_ROUNDS {
        dr /= 10.0;
        dt /= 10.0;
        let (_, r0, t0) = best;
        let local: Vec<(f64, f64)> = (-REFINEMENT_HALF_WIDTH..=REFINEMENT_HALF_WIDTH)
            .flat_map(|i| {
                (-REFINEMENT_HALF_WIDTH..=REFINEMENT_HALF_WIDTH).map(move |j| {
                    (
                        (r0 + i as f64 * dr).clamp(f64::MIN_POSITIVE, MAX_SEARCH_RADIUS),
                        t0 + j as f64 * dt,
                    )
                })
            })
            .collect();
        if let Some(candidate) = best_of(&d, &local) {
            if candidate.0 > best.0 {
                best = candidate;
            }
        }
    }
    let (max, r, t) = best;
    let samples = coarse.len() + REFINEMENT_ROUNDS * (2 * REFINEMENT_HALF_WIDTH as usize + 1).pow(2);
    Ok(
        CheckReport::new(Criterion::Counterexample, max > 1.0 + TOLERANCE, max, Complex64::from_polar(r, t), samples)
            .with_metric("root_product_modulus", d.root_product_modulus())
            .with_metric("n", n as f64),
    )
}
