use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series of order {order} cannot be differentiated further")]
    DegenerateOrder { order: usize },

    #[error("series must contain at least one coefficient")]
    EmptySeries,

    #[error("non-finite coefficient at index {index}")]
    NonFiniteCoefficient { index: usize },

    #[error("near-singular division: |c0| = {modulus:e} <= {threshold:e}")]
    NearSingularDivision { modulus: f64, threshold: f64 },

    #[error("dilatation is not sense-preserving at the origin: |omega(0)| = {modulus}")]
    NotSensePreservingAtOrigin { modulus: f64 },

    #[error("target is not normalized: c0 = {c0}, c1 = {c1}")]
    TargetNotNormalized { c0: Complex64, c1: Complex64 },

    #[error("degenerate strip angle mu = {mu} (sin mu vanishes)")]
    DegenerateStrip { mu: f64 },

    #[error("denominator vanishes at z = {z}: |den| = {modulus:e}")]
    VanishingDenominator { z: Complex64, modulus: f64 },

    #[error("|a| = {modulus} lies outside the closed unit disk")]
    OutOfClass { modulus: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("radius {radius} exceeds the reliable series radius {cap} for order {order}")]
    RadiusBeyondSeriesCap { radius: f64, cap: f64, order: usize },

    #[error("evaluation failed at z = {z}: {reason}")]
    Evaluation { z: Complex64, reason: String },
}
