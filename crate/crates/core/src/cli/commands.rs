use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;

use super::document::{CurveExport, FamilyConfig, MapDocument};
use super::{CheckArgs, CheckCriterion, CliError, ConvolveArgs, ConvolveMode, ExportArgs, GenArgs};
use crate::analysis::{
    boundary_extrema_count, convexity_check, direction_convexity_certificate,
    sense_preserving_check, CheckReport, Criterion,
};
use crate::convolve::{harmonic_convolve, tilde_convolve};
use crate::error::Error;
use crate::mappings::HarmonicMap;
use crate::series::{order_for_radius, RADIUS_CAP_SLACK};

pub(super) fn read_document(path: &Path) -> Result<MapDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    MapDocument::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Writes `text` plus a final newline to `out`, or to stdout when no path is
/// given.
pub(super) fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    let mut text = text.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

pub(super) fn emit_json<T: serde::Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("reports hold finite numbers only");
    emit(out, &text)
}

pub(super) fn gen(args: &GenArgs) -> Result<bool, CliError> {
    let config = FamilyConfig {
        family: args.family,
        mu: args.mu,
        nu: args.nu,
        alpha: args.alpha,
        mu1: args.mu1,
        omega: args.omega.map(|m| m.coefficients()).unwrap_or_default(),
    };
    let map = config.build(args.order).map_err(CliError::invalid)?;
    eprintln!(
        "{} N={}: normalized={} s0={} |omega(0)|={}",
        config.family,
        map.order(),
        map.is_normalized(),
        map.is_in_s0(),
        map.dilatation().map(|w| w.coeff(0).norm()).unwrap_or(f64::NAN),
    );
    emit(args.out.as_deref(), &MapDocument::from_family(&config, &map).to_json())?;
    Ok(true)
}

pub(super) fn convolve(args: &ConvolveArgs) -> Result<bool, CliError> {
    let first = read_document(&args.first)?;
    let second = read_document(&args.second)?;
    if first.truncation != second.truncation {
        eprintln!(
            "warning: truncation orders differ ({} vs {}); truncating to {}",
            first.truncation,
            second.truncation,
            first.truncation.min(second.truncation)
        );
    }
    let order = first.truncation.min(second.truncation);
    let f1 = first.to_map()?.truncate(order);
    let f2 = second.to_map()?.truncate(order);
    let result = match args.mode {
        ConvolveMode::Harmonic => harmonic_convolve(&f1, &f2),
        ConvolveMode::Tilde => {
            if !f2.g().is_zero() {
                return Err(CliError::Usage(
                    "tilde convolution needs an analytic second document (g = 0)".into(),
                ));
            }
            tilde_convolve(&f1, f2.h())
        }
    };
    emit(args.out.as_deref(), &MapDocument::custom(&result).to_json())?;
    Ok(true)
}

pub(super) fn check(args: &CheckArgs) -> Result<bool, CliError> {
    let doc = read_document(&args.doc)?;
    let map = doc.to_map()?;
    let report = match args.criterion {
        CheckCriterion::Sense => sense_preserving_check(&map, &args.grid.grid()?)?,
        CheckCriterion::Convex => {
            if !map.g().is_zero() {
                return Err(CliError::Usage(
                    "the convex criterion applies to analytic documents (g = 0)".into(),
                ));
            }
            convexity_check(map.h(), &args.grid.grid()?)?
        }
        CheckCriterion::Direction => {
            direction_convexity_certificate(&map, args.gamma, &args.grid.grid()?, args.grid.lattice())?
        }
        CheckCriterion::Boundary => {
            let count = boundary_extrema_count(&map, args.gamma, args.r, args.samples)?;
            CheckReport::new(
                Criterion::BoundaryExtrema,
                count == 2,
                count as f64,
                Complex64::from_polar(args.r, 0.0),
                args.samples,
            )
            .with_metric("gamma", args.gamma)
            .with_metric("r", args.r)
        }
    };
    emit_json(args.out.as_deref(), &report)?;
    Ok(report.passed)
}

/// The document's map, regenerated at a higher order when `r` lies beyond
/// the reliable radius of the stored truncation.
fn map_for_radius(doc: &MapDocument, r: f64) -> Result<HarmonicMap, CliError> {
    let map = doc.to_map()?;
    let cap = map.reliable_radius();
    if r <= cap + RADIUS_CAP_SLACK {
        return Ok(map);
    }
    match doc.family_config() {
        Some(config) => {
            let order = order_for_radius(r).max(doc.truncation);
            eprintln!("note: regenerating {} at N={order} for r={r}", config.family);
            Ok(config.build(order)?)
        }
        None => Err(Error::RadiusBeyondSeriesCap {
            radius: r,
            cap,
            order: doc.truncation,
        }
        .into()),
    }
}

pub(super) fn export_boundary(args: &ExportArgs) -> Result<bool, CliError> {
    if !(args.r > 0.0 && args.r < 1.0) {
        return Err(CliError::Usage(format!("radius {} must lie in (0, 1)", args.r)));
    }
    if args.samples == 0 {
        return Err(CliError::Usage("need at least one boundary sample".into()));
    }
    let doc = read_document(&args.doc)?;
    let map = map_for_radius(&doc, args.r)?;
    if let Some((lo, hi)) = doc.family_config().and_then(|s| s.strip_bounds()) {
        eprintln!("strip bounds: {lo} {hi}");
    }
    emit(args.out.as_deref(), &CurveExport::sample(&map, args.r, args.samples).to_csv())?;
    Ok(true)
}
