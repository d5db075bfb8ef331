//! The `verify` suites.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::commands::emit_json;
use super::{CliError, Suite, VerifyArgs};
use crate::analysis::{
    boundary_extrema_count, convexity_check, counterexample_search,
    direction_convexity_certificate, sense_preserving_check, theorem_bound,
    verify_monomial_theorem, CheckReport, Criterion,
};
use crate::convolve::{harmonic_convolve, tilde_convolve};
use crate::mappings::{
    cis, generalized_half_plane_map, phi_series, shear_construct, HarmonicMap, KernelParams,
};
use crate::series::{order_for_radius, TruncatedSeries};

/// Radius and sample count of the boundary check in `generalized-f1`.
const BOUNDARY_RADIUS: f64 = 0.95;
const BOUNDARY_SAMPLES: usize = 720;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteCase {
    pub name: String,
    pub params: BTreeMap<String, f64>,
    pub report: CheckReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub cases: Vec<SuiteCase>,
}

impl SuiteReport {
    fn new(suite: &str, cases: Vec<SuiteCase>) -> Self {
        Self {
            suite: suite.to_owned(),
            passed: cases.iter().all(|c| c.report.passed),
            cases,
        }
    }
}

fn case(name: &str, params: &[(&str, f64)], report: CheckReport) -> SuiteCase {
    SuiteCase {
        name: name.to_owned(),
        params: params.iter().map(|(k, v)| ((*k).to_owned(), *v)).collect(),
        report,
    }
}

fn complex_params(a: Complex64) -> [(&'static str, f64); 2] {
    [("a_re", a.re), ("a_im", a.im)]
}

pub(super) fn verify(args: &VerifyArgs) -> Result<bool, CliError> {
    let grid = args.grid.grid()?;
    let report = match args.suite {
        Suite::MonomialTheorem => {
            let n = args.n.unwrap_or(1);
            let bound = theorem_bound(n).map_err(CliError::invalid)?;
            let a = args.a.unwrap_or(Complex64::new(bound, 0.0));
            let (mu, nu) = (args.mu.unwrap_or(0.0), args.nu.unwrap_or(0.0));
            let r = verify_monomial_theorem(a, n, mu, nu, &grid).map_err(CliError::invalid)?;
            let [re, im] = complex_params(a);
            SuiteReport::new(
                "monomial-theorem",
                vec![case("theorem", &[("n", n as f64), re, im, ("mu", mu), ("nu", nu)], r)],
            )
        }
        Suite::Counterexample => {
            let n = args.n.unwrap_or(3);
            let phase = args.phase.unwrap_or(0.0);
            let (mu, nu) = (args.mu.unwrap_or(0.0), args.nu.unwrap_or(0.0));
            let r = counterexample_search(n, phase, mu, nu, &grid)?;
            SuiteReport::new(
                "counterexample",
                vec![case("search", &[("n", n as f64), ("phase", phase), ("mu", mu), ("nu", nu)], r)],
            )
        }
        Suite::GeneralizedF1 => generalized_f1(args, &grid)?,
        Suite::PhiConvex => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            let mut cases = Vec::with_capacity(args.samples);
            for _ in 0..args.samples {
                let mu = rng.gen_range(0.0..TAU);
                let nu = rng.gen_range(0.0..PI);
                let phi = phi_series(KernelParams::new(mu, nu), args.order)?;
                cases.push(case("convex", &[("mu", mu), ("nu", nu)], convexity_check(&phi, &grid)?));
            }
            SuiteReport::new("phi-convex", cases)
        }
        Suite::TildeConvex => tilde_convex(args, &grid)?,
    };
    emit_json(args.out.as_deref(), &report)?;
    Ok(report.passed)
}

fn monomial_omega(a: Complex64, n: usize, order: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(a, n, order)
}

fn generalized_f1(args: &VerifyArgs, grid: &crate::analysis::SampleGrid) -> Result<SuiteReport, CliError> {
    let n = args.n.unwrap_or(1);
    let bound = theorem_bound(n).map_err(CliError::invalid)?;
    let a = args.a.unwrap_or(Complex64::new(bound / 2.0, 0.0));
    let mu1 = args.mu1.unwrap_or(0.3);
    let mu2 = args.mu2.unwrap_or(0.5);
    let nu = args.nu.unwrap_or(0.7);
    let mu = mu1 + mu2;
    let gamma = -mu;

    let build = |order: usize| -> Result<HarmonicMap, CliError> {
        let f1 = generalized_half_plane_map(mu1, order);
        let phi = phi_series(KernelParams::new(mu, nu), order)?;
        let f2 = shear_construct(&phi, mu2, &monomial_omega(a, n, order)).map_err(CliError::invalid)?;
        Ok(harmonic_convolve(&f1, &f2))
    };
    let f = build(args.order)?;
    let [re, im] = complex_params(a);
    let params = [("n", n as f64), re, im, ("mu1", mu1), ("mu2", mu2), ("nu", nu)];

    let theorem = verify_monomial_theorem(cis(2.0 * mu1) * a, n, mu, nu, grid).map_err(CliError::invalid)?;
    let sense = sense_preserving_check(&f, grid)?;
    let direction = direction_convexity_certificate(&f, gamma, grid, args.grid.lattice())?;
    let wide = build(order_for_radius(BOUNDARY_RADIUS).max(args.order))?;
    let count = boundary_extrema_count(&wide, gamma, BOUNDARY_RADIUS, BOUNDARY_SAMPLES)?;
    let boundary = CheckReport::new(
        Criterion::BoundaryExtrema,
        count == 2,
        count as f64,
        Complex64::from_polar(BOUNDARY_RADIUS, 0.0),
        BOUNDARY_SAMPLES,
    )
    .with_metric("gamma", gamma)
    .with_metric("r", BOUNDARY_RADIUS);

    Ok(SuiteReport::new(
        "generalized-f1",
        vec![
            case("closed-form-dilatation", &params, theorem),
            case("sense-preserving", &params, sense),
            case("direction-convexity", &params, direction),
            case("boundary-extrema", &params, boundary),
        ],
    ))
}

fn tilde_convex(args: &VerifyArgs, grid: &crate::analysis::SampleGrid) -> Result<SuiteReport, CliError> {
    let mu = args.mu.unwrap_or(0.4);
    let nu = args.nu.unwrap_or(1.0);
    let a = args.a.unwrap_or(Complex64::new(0.5, 0.0));
    if args.directions == 0 {
        return Err(CliError::Usage("need at least one direction".into()));
    }
    let order = args.order;
    let f = shear_construct(&TruncatedSeries::convolution_identity(order), mu, &monomial_omega(a, 1, order))
        .map_err(CliError::invalid)?;
    let phi = phi_series(KernelParams::new(mu, nu), order)?;
    let conv = tilde_convolve(&f, &phi);
    let [re, im] = complex_params(a);
    let mut cases = Vec::with_capacity(args.directions);
    for k in 0..args.directions {
        let gamma = PI * k as f64 / args.directions as f64;
        let r = direction_convexity_certificate(&conv, gamma, grid, args.grid.lattice())?;
        cases.push(case("direction-convexity", &[("gamma", gamma), ("mu", mu), ("nu", nu), re, im], r));
    }
    Ok(SuiteReport::new("tilde-convex", cases))
}
