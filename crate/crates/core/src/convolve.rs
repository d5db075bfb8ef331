//! Hadamard convolutions of harmonic maps and the dilatation of a
//! convolution with the right half-plane map.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mappings::{cis, dilatation_series, HarmonicMap, KernelParams};
use crate::series::TruncatedSeries;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Smallest denominator modulus accepted by [`omega1_eval`].
pub const DENOMINATOR_EPSILON: f64 = 1e-12;

/// `f1 * f2 = h1 * h2 + conj(g1 * g2)`.
pub fn harmonic_convolve(f1: &HarmonicMap, f2: &HarmonicMap) -> HarmonicMap {
    HarmonicMap::new(f1.h().hadamard(f2.h()), f1.g().hadamard(f2.g()))
}

/// `f ~* phi = h * phi + conj(g * phi)`.
pub fn tilde_convolve(f: &HarmonicMap, phi: &TruncatedSeries) -> HarmonicMap {
    HarmonicMap::new(f.h().hadamard(phi), f.g().hadamard(phi))
}

/// Convolution with the right half-plane parts in closed form:
/// `((F + z F') / 2, (F - z F') / 2)`.
pub fn half_plane_convolve_shortcut(f: &TruncatedSeries) -> (TruncatedSeries, TruncatedSeries) {
    let (mut plus, mut minus) = (Vec::with_capacity(f.order() + 1), Vec::with_capacity(f.order() + 1));
    for (k, c) in f.coeffs().iter().enumerate() {
        let k = k as f64;
        plus.push(c * ((1.0 + k) / 2.0));
        minus.push(c * ((1.0 - k) / 2.0));
    }
    (
        TruncatedSeries::from_vec_unchecked(plus),
        TruncatedSeries::from_vec_unchecked(minus),
    )
}

/// `(g1 * g2)' / (h1 * h2)'` as a series quotient.
pub fn dilatation_of_convolution(f1: &HarmonicMap, f2: &HarmonicMap) -> Result<TruncatedSeries> {
    dilatation_series(&harmonic_convolve(f1, f2))
}

/// Pointwise dilatation of `f1 * f2`, where `f1` is the right half-plane map
/// and `f2` has dilatation `omega` with `h2 + e^{-2i mu} g2 = phi_{mu,nu}`.
///
/// With `Q = 1 - 2z e^{i mu} cos nu + z^2 e^{2i mu}` and `D = 1 + omega e^{-2i mu}`:
///
/// ```text
/// omega1 = -z (omega' Q - omega D Q') / (2 D (1 - z e^{i mu} cos nu) - z omega' e^{-2i mu} Q)
/// ```
///
/// obtained from `omega1 = -z g2'' / (2 h2' + z h2'')` and `h2' = 1 / (D Q)`.
pub fn omega1_eval(omega: &TruncatedSeries, mu: f64, nu: f64, z: Complex64) -> Result<Complex64> {
    let params = KernelParams::new(mu, nu);
    let rot = cis(params.mu());
    let cos_nu = params.nu().cos();
    let w = omega.evaluate(z);
    let dw = omega.evaluate_derivative(z);
    let q = params.quadratic(z);
    let dq = 2.0 * rot * (rot * z - cos_nu);
    let d = ONE + w * rot.conj() * rot.conj();
    let num = dw * q - w * d * dq;
    let den = 2.0 * d * (ONE - z * rot * cos_nu) - z * dw * rot.conj() * rot.conj() * q;
    if den.norm() <= DENOMINATOR_EPSILON {
        return Err(Error::VanishingDenominator { z, modulus: den.norm() });
    }
    Ok(-z * num / den)
}

/// Dilatation seen by [`omega1_eval`] when the half-plane factor is the
/// generalized map with angle `mu1`: `omega2 = e^{2i mu1} omega`.
pub fn generalized_dilatation(omega: &TruncatedSeries, mu1: f64) -> TruncatedSeries {
    omega.scale(cis(2.0 * mu1))
}

/// Dilatation of the convolution for a monomial `omega = a z^n`, stored as
/// the polynomial pair
///
/// ```text
/// p(z) = a^2 z^{n+2} - a^2 cos nu e^{-i mu} z^{n+1} + a (1 - n/2) e^{2i mu} z^2
///        - a (1 - n) cos nu e^{i mu} z - a n / 2
/// q(z) = 1 - e^{i mu} cos nu z + a (1 - n/2) e^{-2i mu} z^n
///        - a (1 - n) cos nu e^{-i mu} z^{n+1} - a n z^{n+2} / 2
/// ```
///
/// so that `omega1(z) = z^n p(z) / q(z)`. For `|a| = 1` the pair is
/// self-inversive: `q(z) = a^2 z^{n+2} conj(p(1 / conj z))`, hence `|p| = |q|`
/// on the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct MonomialDilatation {
    a: Complex64,
    n: usize,
    mu: f64,
    nu: f64,
    p: Vec<Complex64>,
    q: Vec<Complex64>,
}

/// Builds the `(p, q)` pair for `omega = a z^n`.
pub fn omega1_monomial(a: Complex64, n: usize, mu: f64, nu: f64) -> Result<MonomialDilatation> {
    if n == 0 {
        return Err(Error::InvalidArgument("monomial degree n must be at least 1".into()));
    }
    if a.norm() > 1.0 + 1e-12 {
        return Err(Error::OutOfClass { modulus: a.norm() });
    }
    let params = KernelParams::new(mu, nu);
    let (mu, nu) = (params.mu(), params.nu());
    let nf = n as f64;
    let cos_nu = nu.cos();
    let a2 = a * a;
    let deg = n + 2;

    let mut p = vec![ZERO; deg + 1];
    p[deg] += a2;
    p[n + 1] -= a2 * cos_nu * cis(-mu);
    p[2] += a * (1.0 - nf / 2.0) * cis(2.0 * mu);
    p[1] -= a * (1.0 - nf) * cos_nu * cis(mu);
    p[0] -= a * nf / 2.0;

    let mut q = vec![ZERO; deg + 1];
    q[0] += ONE;
    q[1] -= cis(mu) * cos_nu;
    q[n] += a * (1.0 - nf / 2.0) * cis(-2.0 * mu);
    q[n + 1] -= a * (1.0 - nf) * cos_nu * cis(-mu);
    q[deg] -= a * nf / 2.0;

    Ok(MonomialDilatation { a, n, mu, nu, p, q })
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

impl MonomialDilatation {
    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Coefficients of `p`, lowest degree first (length `n + 3`).
    pub fn p(&self) -> &[Complex64] {
        &self.p
    }

    /// Coefficients of `q`, lowest degree first (length `n + 3`).
    pub fn q(&self) -> &[Complex64] {
        &self.q
    }

    pub fn p_at(&self, z: Complex64) -> Complex64 {
        horner(&self.p, z)
    }

    pub fn q_at(&self, z: Complex64) -> Complex64 {
        horner(&self.q, z)
    }

    /// `z^n p(z) / q(z)`.
    pub fn omega1(&self, z: Complex64) -> Result<Complex64> {
        let q = self.q_at(z);
        if q.norm() <= DENOMINATOR_EPSILON {
            return Err(Error::VanishingDenominator { z, modulus: q.norm() });
        }
        Ok(z.powu(self.n as u32) * self.p_at(z) / q)
    }

    /// The dilatation `a z^n` of the second factor as a series.
    pub fn omega_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(self.a, self.n, order)
    }

    /// `|p_0 / p_{n+2}|`, the modulus of the product of the roots of `p`.
    /// Equals `n / 2` whenever `|a| = 1`.
    pub fn root_product_modulus(&self) -> f64 {
        (self.p[0] / self.p[self.n + 2]).norm()
    }

    /// `max_k |q_k - a^2 conj(p_{n+2-k})|`; zero exactly when the pair is
    /// self-inversive.
    pub fn self_inversive_defect(&self) -> f64 {
        let deg = self.n + 2;
        let a2 = self.a * self.a;
        (0..=deg)
            .map(|k| (self.q[k] - a2 * self.p[deg - k].conj()).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mappings::{
        phi_series, right_half_plane_map, shear_construct, slanted_half_plane_map,
    };
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn close(a: &[Complex64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - re(*y)).norm() < tol)
    }

    #[test]
    fn convolution_with_identity_pair_is_exact() {
        let n = 64;
        let f = right_half_plane_map(n);
        let id = HarmonicMap::new(
            TruncatedSeries::convolution_identity(n),
            TruncatedSeries::convolution_identity(n),
        );
        assert_eq!(harmonic_convolve(&f, &id), f);
    }

    #[test]
    fn half_plane_squared() {
        let f = right_half_plane_map(32);
        let ff = harmonic_convolve(&f, &f);
        for k in 1..=32 {
            let expected = ((k as f64 + 1.0) / 2.0).powi(2);
            assert_eq!(ff.h().coeff(k), re(expected));
        }
    }

    #[test]
    fn convolution_with_z_keeps_first_coefficient() {
        let f = right_half_plane_map(16);
        let z = HarmonicMap::analytic(TruncatedSeries::monomial(ONE, 1, 16));
        let out = harmonic_convolve(&f, &z);
        assert_eq!(out.h(), &TruncatedSeries::monomial(ONE, 1, 16));
        assert!(out.g().is_zero());
    }

    #[test]
    fn tilde_convolution_examples() {
        let f = right_half_plane_map(32);
        assert_eq!(tilde_convolve(&f, &TruncatedSeries::convolution_identity(32)), f);

        let analytic = HarmonicMap::analytic(TruncatedSeries::convolution_identity(8));
        let phi = phi_series(KernelParams::new(0.3, 0.8), 8).unwrap();
        let out = tilde_convolve(&analytic, &phi);
        assert!(out.h().max_distance(&phi) < 1e-15);
        assert!(out.g().is_zero());

        let arctan = phi_series(KernelParams::new(0.0, PI / 2.0), 32).unwrap();
        let out = tilde_convolve(&f, &arctan);
        assert!((out.h().coeff(3) - re(-2.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn shortcut_reproduces_half_plane_parts() {
        let n = 128;
        let (h, g) = half_plane_convolve_shortcut(&TruncatedSeries::convolution_identity(n));
        let f = right_half_plane_map(n);
        assert!(h.max_distance(f.h()) < 1e-15);
        assert!(g.max_distance(f.g()) < 1e-15);

        let (h, g) = half_plane_convolve_shortcut(&TruncatedSeries::monomial(ONE, 1, 8));
        assert_eq!(h, TruncatedSeries::monomial(ONE, 1, 8));
        assert!(g.is_zero());
    }

    #[test]
    fn omega1_vanishes_at_origin() {
        let omega = TruncatedSeries::monomial(re(0.7), 2, 8);
        assert_eq!(omega1_eval(&omega, 0.4, 1.1, ZERO).unwrap(), ZERO);
    }

    #[test]
    fn monomial_pair_for_unit_linear_dilatation() {
        let m = omega1_monomial(ONE, 1, 0.0, 0.0).unwrap();
        assert!(close(m.p(), &[-0.5, 0.0, -0.5, 1.0], 1e-15));
        assert!(close(m.q(), &[1.0, -0.5, 0.0, -0.5], 1e-15));
        assert!(m.self_inversive_defect() < 1e-15);
    }

    #[test]
    fn monomial_pair_for_cubic_dilatation() {
        let m = omega1_monomial(ONE, 3, 0.0, 0.0).unwrap();
        assert!(close(m.p(), &[-1.5, 2.0, -0.5, 0.0, -1.0, 1.0], 1e-15));
        assert!((m.root_product_modulus() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn monomial_with_zero_coefficient_is_trivial() {
        let m = omega1_monomial(ZERO, 2, 0.5, 0.5).unwrap();
        assert!(m.p().iter().all(|c| c.norm() == 0.0));
        assert_eq!(m.omega1(Complex64::new(0.3, 0.3)).unwrap(), ZERO);
    }

    #[test]
    fn monomial_rejects_out_of_class_coefficient() {
        assert!(matches!(
            omega1_monomial(re(1.01), 1, 0.0, 0.0),
            Err(Error::OutOfClass { .. })
        ));
    }

    #[test]
    fn closed_form_agrees_with_monomial_pair() {
        for &(a, n, mu, nu) in &[
            (Complex64::new(0.6, -0.3), 1usize, 0.4, 1.0),
            (Complex64::new(-0.2, 0.9), 2, 2.5, 0.3),
            (re(0.25), 3, 5.0, 2.9),
        ] {
            let m = omega1_monomial(a, n, mu, nu).unwrap();
            let omega = m.omega_series(n);
            for k in 0..40 {
                let z = Complex64::from_polar(0.02 * k as f64, 0.37 * k as f64);
                let lhs = omega1_eval(&omega, mu, nu, z).unwrap();
                let rhs = m.omega1(z).unwrap();
                assert!((lhs - rhs).norm() < 1e-12, "{lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn closed_form_agrees_with_series_oracle_for_half_plane_pair() {
        // f2 = right half-plane itself: omega = -z, mu = nu = 0.
        let order = 256;
        let f1 = right_half_plane_map(order);
        let oracle = dilatation_of_convolution(&f1, &f1).unwrap();
        let omega = TruncatedSeries::monomial(-ONE, 1, order);
        for k in 0..50 {
            let z = Complex64::from_polar(0.8 * (k as f64 / 50.0), 1.3 * k as f64);
            let closed = omega1_eval(&omega, 0.0, 0.0, z).unwrap();
            assert!((closed - oracle.evaluate(z)).norm() < 1e-8);
        }
    }

    #[test]
    fn closed_form_agrees_with_series_for_slanted_half_plane() {
        let order = 256;
        let mu = 1.3;
        let a = Complex64::new(0.5, 0.4);
        let omega = TruncatedSeries::monomial(a, 1, order);
        let f1 = right_half_plane_map(order);
        let f2 = slanted_half_plane_map(mu, &omega, order).unwrap();
        let oracle = dilatation_of_convolution(&f1, &f2).unwrap();
        for k in 0..50 {
            let z = Complex64::from_polar(0.8 * (k as f64 / 50.0), 2.1 * k as f64);
            let closed = omega1_eval(&omega, mu, 0.0, z).unwrap();
            assert!((closed - oracle.evaluate(z)).norm() < 1e-8);
        }
    }

    #[test]
    fn convolution_dilatation_is_symmetric() {
        let order = 64;
        let f1 = right_half_plane_map(order);
        let phi = phi_series(KernelParams::new(0.6, 1.2), order).unwrap();
        let f2 = shear_construct(&phi, 0.6, &TruncatedSeries::monomial(re(0.5), 2, order)).unwrap();
        let d12 = dilatation_of_convolution(&f1, &f2).unwrap();
        let d21 = dilatation_of_convolution(&f2, &f1).unwrap();
        assert_eq!(d12, d21);

        let analytic = HarmonicMap::analytic(phi);
        assert!(dilatation_of_convolution(&f1, &analytic).unwrap().is_zero());
    }
}
