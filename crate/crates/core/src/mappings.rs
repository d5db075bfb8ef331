//! Harmonic mappings `f = h + conj(g)` and the shear construction.
//!
//! Given a normalized analytic target `T`, an angle `mu` and an analytic
//! dilatation `omega`, [`shear_construct`] returns the unique normalized pair
//! `(h, g)` with `h + e^{-2i mu} g = T` and `g' = omega h'`. All canonical
//! families (half-plane, slanted half-plane, strips, the kernel `phi`) are
//! built this way.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Reduces an angle into `[0, 2 pi)`.
pub fn reduce_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// `e^{i theta}`.
pub fn cis(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap {
    h: TruncatedSeries,
    g: TruncatedSeries,
}

impl HarmonicMap {
    /// Pairs an analytic and a co-analytic part, truncating both to the
    /// smaller order.
    pub fn new(h: TruncatedSeries, g: TruncatedSeries) -> Self {
        let order = h.order().min(g.order());
        Self {
            h: h.truncate(order),
            g: g.truncate(order),
        }
    }

    /// An analytic map viewed as harmonic (`g = 0`).
    pub fn analytic(h: TruncatedSeries) -> Self {
        let g = TruncatedSeries::zero(h.order());
        Self { h, g }
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn g(&self) -> &TruncatedSeries {
        &self.g
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.h.truncate(order), self.g.truncate(order))
    }

    /// Smaller of the reliable radii of the two parts.
    pub fn reliable_radius(&self) -> f64 {
        self.h.reliable_radius().min(self.g.reliable_radius())
    }

    /// `f(z) = h(z) + conj(g(z))`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.h.evaluate(z) + self.g.evaluate(z).conj()
    }

    /// `h(0) = h'(0) - 1 = g(0) = 0`.
    pub fn is_normalized(&self) -> bool {
        self.h.coeff(0).norm() <= NORMALIZATION_TOLERANCE
            && (self.h.coeff(1) - ONE).norm() <= NORMALIZATION_TOLERANCE
            && self.g.coeff(0).norm() <= NORMALIZATION_TOLERANCE
    }

    /// Normalized with the additional condition `g'(0) = 0`.
    pub fn is_in_s0(&self) -> bool {
        self.is_normalized() && self.g.coeff(1).norm() <= NORMALIZATION_TOLERANCE
    }

    /// The analytic combination `h + e^{-2i mu} g` prescribed by a shear.
    pub fn recombine(&self, mu: f64) -> TruncatedSeries {
        TruncatedSeries::linear_combine(ONE, &self.h, cis(-2.0 * mu), &self.g)
    }

    /// `h - e^{2i gamma} g`, which is convex in direction `gamma` exactly when
    /// the (locally univalent, sense-preserving) harmonic map is.
    pub fn direction_function(&self, gamma: f64) -> TruncatedSeries {
        TruncatedSeries::linear_combine(ONE, &self.h, -cis(2.0 * gamma), &self.g)
    }

    /// Analytic dilatation `omega = g' / h'`.
    pub fn dilatation(&self) -> Result<TruncatedSeries> {
        dilatation_series(self)
    }
}

/// Angles of the kernel `phi(z) = int_0^z dt / (1 - 2 t e^{i mu} cos nu + t^2 e^{2i mu})`.
///
/// Constructed values satisfy `mu in [0, 2 pi)` and `nu in [0, pi)`. A `nu`
/// outside that range is folded back using the symmetry
/// `(mu, nu) ~ (mu + pi, nu - pi)`, which leaves the kernel unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelParams {
    mu: f64,
    nu: f64,
}

impl KernelParams {
    pub fn new(mu: f64, nu: f64) -> Self {
        let mut mu = reduce_angle(mu);
        let mut nu = reduce_angle(nu);
        if nu >= PI {
            nu -= PI;
            mu = reduce_angle(mu + PI);
        }
        Self { mu, nu }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `1 - 2 z e^{i mu} cos nu + z^2 e^{2i mu}`.
    pub fn quadratic(&self, z: Complex64) -> Complex64 {
        let w = cis(self.mu) * z;
        ONE - 2.0 * self.nu.cos() * w + w * w
    }

    /// `phi'(z)` in closed form.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.quadratic(z).inv()
    }

    /// `1 + z phi''(z) / phi'(z) = (1 - z^2 e^{2i mu}) / quadratic(z)`.
    pub fn convexity_expression(&self, z: Complex64) -> Complex64 {
        let w = cis(self.mu) * z;
        (ONE - w * w) / self.quadratic(z)
    }

    /// Coefficients of `phi'`: `c_n = e^{i n mu} U_n(cos nu)`, generated by
    /// the three-term recurrence of the Chebyshev polynomials of the second kind.
    pub fn derivative_series(&self, order: usize) -> TruncatedSeries {
        let step = 2.0 * self.nu.cos() * cis(self.mu);
        let rot2 = cis(2.0 * self.mu);
        let mut coeffs = Vec::with_capacity(order + 1);
        coeffs.push(ONE);
        if order >= 1 {
            coeffs.push(step);
        }
        for n in 2..=order {
            let next = step * coeffs[n - 1] - rot2 * coeffs[n - 2];
            coeffs.push(next);
        }
        TruncatedSeries::from_vec_unchecked(coeffs)
    }
}

/// The kernel `phi_{mu,nu}` truncated at `order`.
pub fn phi_series(params: KernelParams, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::DegenerateOrder { order });
    }
    Ok(params.derivative_series(order - 1).integrate())
}

/// Solves `h + e^{-2i mu} g = target`, `g' = omega h'` for `(h, g)`.
///
/// `h' = target' / (1 + e^{-2i mu} omega)`. The result is normalized when
/// `omega(0) = 0`; otherwise `h'(0) = 1 / (1 + e^{-2i mu} omega(0))`.
pub fn shear_construct(
    target: &TruncatedSeries,
    mu: f64,
    omega: &TruncatedSeries,
) -> Result<HarmonicMap> {
    let omega0 = omega.coeff(0).norm();
    if omega0 >= 1.0 {
        return Err(Error::NotSensePreservingAtOrigin { modulus: omega0 });
    }
    let (c0, c1) = (target.coeff(0), target.coeff(1));
    if target.order() == 0
        || c0.norm() > NORMALIZATION_TOLERANCE
        || (c1 - ONE).norm() > NORMALIZATION_TOLERANCE
    {
        return Err(Error::TargetNotNormalized { c0, c1 });
    }
    if omega.is_zero() {
        return Ok(HarmonicMap::analytic(target.clone()));
    }

    let rotation = cis(-2.0 * reduce_angle(mu));
    let target_prime = target.differentiate()?;
    let omega = omega.truncate(target_prime.order());
    let den = TruncatedSeries::linear_combine(
        ONE,
        &TruncatedSeries::one(omega.order()),
        rotation,
        &omega,
    );
    let h_prime = target_prime.divide(&den)?;
    let g_prime = omega.cauchy_product(&h_prime);
    Ok(HarmonicMap::new(h_prime.integrate(), g_prime.integrate()))
}

/// The right half-plane map: shear of `z / (1 - z)` with `omega = -z`.
/// Its parts have coefficients `h_n = (n + 1) / 2` and `g_n = (1 - n) / 2`.
pub fn right_half_plane_map(order: usize) -> HarmonicMap {
    let order = order.max(1);
    let omega = TruncatedSeries::monomial(-ONE, 1, order);
    shear_construct(&TruncatedSeries::convolution_identity(order), 0.0, &omega)
        .expect("identity target and omega = -z are admissible")
}

/// Slanted half-plane map: `h + e^{-2i alpha} g = z / (1 - e^{i alpha} z)`.
pub fn slanted_half_plane_map(
    alpha: f64,
    omega: &TruncatedSeries,
    order: usize,
) -> Result<HarmonicMap> {
    let target = TruncatedSeries::rotated_identity(reduce_angle(alpha), order.max(1));
    shear_construct(&target, alpha, omega)
}

/// Half-plane map with `h + e^{-2i mu1} g = z / (1 - z)` and
/// `omega = -e^{2i mu1} z`, so that `g = e^{2i mu1} g_half`.
pub fn generalized_half_plane_map(mu1: f64, order: usize) -> HarmonicMap {
    let order = order.max(1);
    let omega = TruncatedSeries::monomial(-cis(2.0 * reduce_angle(mu1)), 1, order);
    shear_construct(&TruncatedSeries::convolution_identity(order), mu1, &omega)
        .expect("identity target and |omega(0)| = 0 are admissible")
}

/// `(e^{-i alpha} / (2i sin mu)) log((1 + z e^{i(alpha+mu)}) / (1 + z e^{i(alpha-mu)}))`,
/// expanded termwise through `log(1 + w) = sum (-1)^{k+1} w^k / k`.
pub fn slanted_strip_target(mu: f64, alpha: f64, order: usize) -> Result<TruncatedSeries> {
    let mu = reduce_angle(mu);
    let sin_mu = mu.sin();
    if sin_mu.abs() < 1e-12 {
        return Err(Error::DegenerateStrip { mu });
    }
    let alpha = reduce_angle(alpha);
    let prefactor = cis(-alpha) / Complex64::new(0.0, 2.0 * sin_mu);
    let mut coeffs = vec![ZERO; order.max(1) + 1];
    for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let kf = k as f64;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let diff = cis(kf * (alpha + mu)) - cis(kf * (alpha - mu));
        *slot = prefactor * diff * (sign / kf);
    }
    Ok(TruncatedSeries::from_vec_unchecked(coeffs))
}

/// Slanted strip map onto `{(mu - pi)/(2 sin mu) < Re(e^{i alpha} w) < mu/(2 sin mu)}`.
pub fn slanted_strip_map(
    mu: f64,
    alpha: f64,
    omega: &TruncatedSeries,
    order: usize,
) -> Result<HarmonicMap> {
    let target = slanted_strip_target(mu, alpha, order)?;
    shear_construct(&target, alpha, omega)
}

/// Vertical strip map (`alpha = 0`).
pub fn vertical_strip_map(mu: f64, omega: &TruncatedSeries, order: usize) -> Result<HarmonicMap> {
    slanted_strip_map(mu, 0.0, omega, order)
}

/// Real-part bounds `((mu - pi)/(2 sin mu), mu/(2 sin mu))` of the vertical strip.
pub fn strip_bounds(mu: f64) -> (f64, f64) {
    let mu = reduce_angle(mu);
    let s = 2.0 * mu.sin();
    ((mu - PI) / s, mu / s)
}

/// `g' / h'` as a series quotient.
pub fn dilatation_series(f: &HarmonicMap) -> Result<TruncatedSeries> {
    let h_prime = f.h.differentiate()?;
    let g_prime = f.g.differentiate()?;
    g_prime.divide(&h_prime)
}

/// Named families exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    HalfPlane,
    SlantedHalfPlane,
    Strip,
    SlantedStrip,
    PhiKernel,
    GeneralizedHalfPlane,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::HalfPlane,
        Family::SlantedHalfPlane,
        Family::Strip,
        Family::SlantedStrip,
        Family::PhiKernel,
        Family::GeneralizedHalfPlane,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::HalfPlane => "half-plane",
            Family::SlantedHalfPlane => "slanted-half-plane",
            Family::Strip => "strip",
            Family::SlantedStrip => "slanted-strip",
            Family::PhiKernel => "phi-kernel",
            Family::GeneralizedHalfPlane => "generalized-half-plane",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|family| family.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}
