//! On-disk formats: JSON map documents and CSV boundary curves.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mappings::{
    generalized_half_plane_map, phi_series, right_half_plane_map, shear_construct,
    slanted_half_plane_map, slanted_strip_map, strip_bounds, vertical_strip_map, Family,
    HarmonicMap, KernelParams,
};
use crate::series::TruncatedSeries;

pub const SCHEMA_VERSION: &str = "1";
pub const CUSTOM_FAMILY: &str = "custom";

/// A document parameter: an angle or a coefficient list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Real(f64),
    Coefficients(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapDocument {
    pub schema_version: String,
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, Param>,
    pub truncation: usize,
    pub h: Vec<Complex64>,
    pub g: Vec<Complex64>,
}

impl MapDocument {
    pub fn custom(map: &HarmonicMap) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_owned(),
            family: CUSTOM_FAMILY.to_owned(),
            params: BTreeMap::new(),
            truncation: map.order(),
            h: map.h().coeffs().to_vec(),
            g: map.g().coeffs().to_vec(),
        }
    }

    pub fn from_family(config: &FamilyConfig, map: &HarmonicMap) -> Self {
        Self {
            family: config.family.to_string(),
            params: config.to_params(),
            ..Self::custom(map)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents hold finite numbers only")
    }

    /// Parses and validates a document.
    pub fn from_json(text: &str) -> std::result::Result<Self, String> {
        let doc: Self = serde_json::from_str(text).map_err(|e| format!("malformed document: {e}"))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(format!(
                "unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)",
                doc.schema_version
            ));
        }
        if doc.h.len() != doc.truncation + 1 || doc.g.len() != doc.truncation + 1 {
            return Err(format!(
                "coefficient lists must have truncation + 1 = {} entries (h has {}, g has {})",
                doc.truncation + 1,
                doc.h.len(),
                doc.g.len()
            ));
        }
        Ok(doc)
    }

    pub fn to_map(&self) -> Result<HarmonicMap> {
        Ok(HarmonicMap::new(
            TruncatedSeries::new(self.h.clone())?,
            TruncatedSeries::new(self.g.clone())?,
        ))
    }

    /// The family description, for documents produced by `gen`.
    pub fn family_config(&self) -> Option<FamilyConfig> {
        let family = self.family.parse().ok()?;
        FamilyConfig::from_params(family, &self.params).ok()
    }
}

/// A named family with its construction parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyConfig {
    pub family: Family,
    pub mu: Option<f64>,
    pub nu: Option<f64>,
    pub alpha: Option<f64>,
    pub mu1: Option<f64>,
    /// Polynomial dilatation, lowest degree first; empty means `omega = 0`.
    pub omega: Vec<Complex64>,
}

impl FamilyConfig {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            mu: None,
            nu: None,
            alpha: None,
            mu1: None,
            omega: Vec::new(),
        }
    }

    fn require_mu(&self) -> Result<f64> {
        self.mu
            .ok_or_else(|| Error::InvalidArgument(format!("family {} needs --mu", self.family)))
    }

    fn omega_series(&self, order: usize) -> Result<TruncatedSeries> {
        if self.omega.is_empty() {
            return Ok(TruncatedSeries::zero(order));
        }
        TruncatedSeries::polynomial(&self.omega, order)
    }

    fn reject_omega(&self) -> Result<()> {
        if self.omega.iter().any(|c| c.norm() != 0.0) {
            return Err(Error::InvalidArgument(format!(
                "family {} has a fixed dilatation; --omega is not accepted",
                self.family
            )));
        }
        Ok(())
    }

    /// Builds the map truncated at `order`.
    pub fn build(&self, order: usize) -> Result<HarmonicMap> {
        if order == 0 {
            return Err(Error::DegenerateOrder { order });
        }
        match self.family {
            Family::HalfPlane => {
                self.reject_omega()?;
                Ok(right_half_plane_map(order))
            }
            Family::GeneralizedHalfPlane => {
                self.reject_omega()?;
                Ok(generalized_half_plane_map(self.mu1.unwrap_or(0.0), order))
            }
            Family::SlantedHalfPlane => {
                slanted_half_plane_map(self.alpha.unwrap_or(0.0), &self.omega_series(order)?, order)
            }
            Family::Strip => vertical_strip_map(self.require_mu()?, &self.omega_series(order)?, order),
            Family::SlantedStrip => slanted_strip_map(
                self.require_mu()?,
                self.alpha.unwrap_or(0.0),
                &self.omega_series(order)?,
                order,
            ),
            Family::PhiKernel => {
                let mu = self.mu.unwrap_or(0.0);
                let phi = phi_series(KernelParams::new(mu, self.nu.unwrap_or(0.0)), order)?;
                shear_construct(&phi, self.alpha.unwrap_or(mu), &self.omega_series(order)?)
            }
        }
    }

    /// Analytic real-part bounds of strip images (of `Re(e^{i alpha} w)` for
    /// slanted strips).
    pub fn strip_bounds(&self) -> Option<(f64, f64)> {
        match self.family {
            Family::Strip | Family::SlantedStrip => self.mu.map(strip_bounds),
            _ => None,
        }
    }

    pub fn to_params(&self) -> BTreeMap<String, Param> {
        let mut params = BTreeMap::new();
        for (key, value) in [("mu", self.mu), ("nu", self.nu), ("alpha", self.alpha), ("mu1", self.mu1)] {
            if let Some(v) = value {
                params.insert(key.to_owned(), Param::Real(v));
            }
        }
        if !self.omega.is_empty() {
            params.insert("omega".to_owned(), Param::Coefficients(self.omega.clone()));
        }
        params
    }

    pub fn from_params(family: Family, params: &BTreeMap<String, Param>) -> Result<Self> {
        let mut config = Self::new(family);
        for (key, value) in params {
            match (key.as_str(), value) {
                ("mu", Param::Real(v)) => config.mu = Some(*v),
                ("nu", Param::Real(v)) => config.nu = Some(*v),
                ("alpha", Param::Real(v)) => config.alpha = Some(*v),
                ("mu1", Param::Real(v)) => config.mu1 = Some(*v),
                ("omega", Param::Coefficients(c)) => config.omega = c.clone(),
                _ => return Err(Error::InvalidArgument(format!("unexpected parameter `{key}`"))),
            }
        }
        Ok(config)
    }
}

/// Samples of a boundary curve `theta -> f(r e^{i theta})`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveExport {
    pub r: f64,
    pub rows: Vec<(f64, Complex64)>,
}

impl CurveExport {
    pub fn sample(map: &HarmonicMap, r: f64, m: usize) -> Self {
        let rows = (0..m)
            .map(|j| {
                let theta = std::f64::consts::TAU * j as f64 / m as f64;
                (theta, map.evaluate(Complex64::from_polar(r, theta)))
            })
            .collect();
        Self { r, rows }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,re,im\n");
        for (theta, w) in &self.rows {
            let _ = writeln!(out, "{theta},{},{}", w.re, w.im);
        }
        out
    }
}
