//! Truncated Taylor series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores the dense coefficients
//! `c_0..=c_N` of an analytic function on the unit disk. Binary operations
//! between series of different orders truncate to the smaller order.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncation order used when callers do not ask for one.
pub const DEFAULT_ORDER: usize = 256;

/// Smallest admissible `|c_0|` for [`TruncatedSeries::reciprocal`] and
/// [`TruncatedSeries::divide`].
pub const RECIPROCAL_EPSILON: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Geometric tail bound `r^(N+1) / (1 - r)` accepted for pointwise evaluation
/// of a truncated series. Calibrated so that the default order 256 is
/// trusted up to `r = 0.9`, i.e. the bound equals `0.9^257 / 0.1` (about 1.7e-11).
pub fn tail_tolerance() -> f64 {
    0.9f64.powi(DEFAULT_ORDER as i32 + 1) / 0.1
}

/// Largest radius at which a series of the given order is trusted for
/// pointwise evaluation (see [`tail_tolerance`]).
pub fn series_radius_cap(order: usize) -> f64 {
    let tol = tail_tolerance();
    let tail = |r: f64| r.powi(order as i32 + 1) / (1.0 - r);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if tail(mid) <= tol {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Smallest truncation order whose [`series_radius_cap`] reaches `r`.
pub fn order_for_radius(r: f64) -> usize {
    assert!(r > 0.0 && r < 1.0, "radius must lie in (0, 1), got {r}");
    let needed = ((tail_tolerance() * (1.0 - r)).ln() / r.ln()).ceil() as usize;
    needed.saturating_sub(1).max(1)
}

/// Slack used when comparing a radius against [`series_radius_cap`].
pub const RADIUS_CAP_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_N`; rejects empty input and non-finite values.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Polynomial given by `coeffs`, zero-padded or truncated to `order`.
    pub fn polynomial(coeffs: &[Complex64], order: usize) -> Result<Self> {
        let mut dense = vec![ZERO; order + 1];
        for (slot, &c) in dense.iter_mut().zip(coeffs) {
            *slot = c;
        }
        Self::new(dense)
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(ONE, 0, order)
    }

    /// `a z^n`, truncated to zero when `n > order`.
    pub fn monomial(a: Complex64, n: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if n <= order {
            s.coeffs[n] = a;
        }
        s
    }

    /// `z / (1 - z)`, the identity for the Hadamard product on series with `c_0 = 0`.
    pub fn convolution_identity(order: usize) -> Self {
        let mut coeffs = vec![ONE; order + 1];
        coeffs[0] = ZERO;
        Self { coeffs }
    }

    /// `z / (1 - e^{i alpha} z)` with coefficients `e^{i (n-1) alpha}`.
    pub fn rotated_identity(alpha: f64, order: usize) -> Self {
        let mut coeffs = vec![ZERO; order + 1];
        for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
            *c = Complex64::from_polar(1.0, (n - 1) as f64 * alpha);
        }
        Self { coeffs }
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient `c_k`, or zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `z f(z)` at the same truncation order.
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs }
    }

    /// Coefficient-wise `alpha f + beta g`.
    pub fn linear_combine(
        alpha: Complex64,
        f: &TruncatedSeries,
        beta: Complex64,
        g: &TruncatedSeries,
    ) -> Self {
        let coeffs = f
            .coeffs
            .iter()
            .zip(&g.coeffs)
            .map(|(a, b)| alpha * a + beta * b)
            .collect();
        Self { coeffs }
    }

    pub fn add(&self, other: &TruncatedSeries) -> Self {
        Self::linear_combine(ONE, self, ONE, other)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Self {
        Self::linear_combine(ONE, self, -ONE, other)
    }

    /// Ordinary product `c_k = sum_j f_j g_{k-j}`. Zero coefficients of the
    /// sparser operand are skipped, so products with polynomials are linear
    /// in the order.
    pub fn cauchy_product(&self, other: &TruncatedSeries) -> Self {
        let order = self.order().min(other.order());
        let (dense, sparse) = if self.nonzero_count() >= other.nonzero_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = vec![ZERO; order + 1];
        for (j, &s) in sparse.coeffs.iter().enumerate().take(order + 1) {
            if s == ZERO {
                continue;
            }
            for (k, slot) in coeffs.iter_mut().enumerate().skip(j) {
                *slot += s * dense.coeffs[k - j];
            }
        }
        Self { coeffs }
    }

    /// Hadamard (termwise) product `c_n = f_n g_n`.
    pub fn hadamard(&self, other: &TruncatedSeries) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .collect();
        Self { coeffs }
    }

    /// Term-by-term derivative; the result has order `N - 1`.
    pub fn differentiate(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::DegenerateOrder { order: 0 });
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Ok(Self { coeffs })
    }

    /// Antiderivative vanishing at the origin; the result has order `N + 1`.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c / (k + 1) as f64),
        );
        Self { coeffs }
    }

    /// Multiplicative inverse `1 / f` up to the truncation order.
    pub fn reciprocal(&self) -> Result<Self> {
        Self::one(self.order()).divide(self)
    }

    /// Series quotient `self / den`, solved by forward substitution. Cost is
    /// `O(N * nnz(den))`.
    pub fn divide(&self, den: &TruncatedSeries) -> Result<Self> {
        let d0 = den.coeffs[0];
        if d0.norm() <= RECIPROCAL_EPSILON {
            return Err(Error::NearSingularDivision {
                modulus: d0.norm(),
                threshold: RECIPROCAL_EPSILON,
            });
        }
        let order = self.order().min(den.order());
        let tail: Vec<(usize, Complex64)> = den
            .coeffs
            .iter()
            .enumerate()
            .take(order + 1)
            .skip(1)
            .filter(|(_, c)| **c != ZERO)
            .map(|(j, c)| (j, *c))
            .collect();
        let mut out = vec![ZERO; order + 1];
        for k in 0..=order {
            let mut acc = self.coeffs[k];
            for &(j, d) in &tail {
                if j > k {
                    break;
                }
                acc -= d * out[k - j];
            }
            out[k] = acc / d0;
            if !out[k].is_finite() {
                return Err(Error::NonFiniteCoefficient { index: k });
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Horner evaluation of `sum c_k z^k`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    /// `f'(z)` without materializing the derivative series.
    pub fn evaluate_derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(ZERO, |acc, (k, c)| acc * z + c * k as f64)
    }

    /// `f''(z)` without materializing the derivative series.
    pub fn evaluate_second_derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .fold(ZERO, |acc, (k, c)| acc * z + c * (k * (k - 1)) as f64)
    }

    /// Largest coefficient-wise distance over the common order.
    pub fn max_distance(&self, other: &TruncatedSeries) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Index of the last nonzero coefficient (0 for the zero series).
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| *c != ZERO).unwrap_or(0)
    }

    /// Radius up to which pointwise evaluation is trusted. A series whose
    /// upper half of coefficients vanishes is taken to be an exact
    /// polynomial and is trusted on the whole disk; otherwise the tail bound
    /// of [`series_radius_cap`] applies.
    pub fn reliable_radius(&self) -> f64 {
        if 2 * self.degree() <= self.order() {
            1.0
        } else {
            series_radius_cap(self.order())
        }
    }

    fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| **c != ZERO).count()
    }
}
