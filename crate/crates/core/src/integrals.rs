//! Poisson-kernel integrals over `[0, π]`.
//!
//! With `Δ = 1 + a² - 2a cos φ` and `0 < a < 1`,
//!
//! ```text
//! I  = ∫ cos(iφ) / Δ^(n+1) dφ = π a^i (1-a²)^-(2n+1) V
//! II = ∫ Δ^n cos(iφ) dφ       = π a^i (1-a²)^(2n+1) U
//! V  = Σ (n-i over k)(n+i over i+k) a^(2k)
//! U  = Σ (-n-1-i over k)(-n-1+i over i+k) a^(2k)
//! ```
//!
//! `U` is `V` with `n` replaced by `-n-1`. Both are character series of the
//! kind handled in [`crate::transform`], so `V = (n+i over i) s` with `s` the
//! hypergeometric series at `x = a²`, and the transformation turns the two
//! closed forms into each other. The module evaluates the integrals by
//! quadrature and checks the closed forms and the two ratio identities
//! derived from them.

use alloc::format;
use core::f64::consts::PI;

use crate::binom::binom_char;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureResult, DEFAULT_MAX_PANELS};
use crate::scalar::Scalar;
use crate::series::{eval_series, EvalPoint, HypergeometricParams};
use crate::transform::{character_series, eval_transformed};

/// Requested absolute error of every quadrature.
pub const QUADRATURE_TOL: f64 = 1e-10;

const SERIES_MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralSpec {
    a_mod: f64,
    n: u32,
    i: u32,
}

impl IntegralSpec {
    pub fn new(a_mod: f64, n: u32, i: u32) -> Result<Self> {
        if !(a_mod > 0.0 && a_mod < 1.0) {
            return Err(Error::Domain(format!("kernel modulus must lie in (0, 1), got {a_mod}")));
        }
        Ok(IntegralSpec { a_mod, n, i })
    }

    pub fn a_mod(&self) -> f64 {
        self.a_mod
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    fn one_minus_a2(&self) -> f64 {
        1.0 - self.a_mod * self.a_mod
    }

    fn a_pow_i(&self) -> f64 {
        libm::pow(self.a_mod, self.i as f64)
    }
}

/// `Δ` and `Θ = Δ / (1 - a²)` at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelValue {
    pub delta: f64,
    pub theta: f64,
}

impl KernelValue {
    pub fn at(a_mod: f64, phi: f64) -> Self {
        let delta = 1.0 + a_mod * a_mod - 2.0 * a_mod * libm::cos(phi);
        KernelValue { delta, theta: delta / (1.0 - a_mod * a_mod) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub quadrature: f64,
    pub closed_form: f64,
    /// `V` for the first integral, `U` for the second.
    pub series_value: f64,
    pub abs_error_estimate: f64,
}

impl IntegralResult {
    pub fn agrees(&self) -> bool {
        (self.quadrature - self.closed_form).abs() <= 1e-8f64.max(10.0 * self.abs_error_estimate)
    }
}

fn powi(x: f64, e: i32) -> f64 {
    Scalar::float(x).powi(e as i64).to_f64()
}

fn quad_delta_power(spec: &IntegralSpec, power: i32, lo: f64, hi: f64) -> Result<QuadratureResult> {
    let (a, i) = (spec.a_mod, spec.i as f64);
    integrate(
        |phi| libm::cos(i * phi) * powi(KernelValue::at(a, phi).delta, power),
        lo,
        hi,
        QUADRATURE_TOL,
        DEFAULT_MAX_PANELS,
    )
}

/// `∫_0^π cos(iφ) / Δ^(n+1) dφ` by adaptive quadrature.
pub fn quad_i(spec: &IntegralSpec) -> Result<f64> {
    quad_delta_power(spec, -(spec.n as i32) - 1, 0.0, PI).map(|r| r.value)
}

/// `∫_0^π Δ^n cos(iφ) dφ` by adaptive quadrature.
pub fn quad_ii(spec: &IntegralSpec) -> Result<f64> {
    quad_delta_power(spec, spec.n as i32, 0.0, PI).map(|r| r.value)
}

/// The first integral over an arbitrary interval, for symmetry checks.
pub fn quad_i_over(spec: &IntegralSpec, lo: f64, hi: f64) -> Result<f64> {
    quad_delta_power(spec, -(spec.n as i32) - 1, lo, hi).map(|r| r.value)
}

/// The second integral over an arbitrary interval.
pub fn quad_ii_over(spec: &IntegralSpec, lo: f64, hi: f64) -> Result<f64> {
    quad_delta_power(spec, spec.n as i32, lo, hi).map(|r| r.value)
}

fn kernel_series(spec: &IntegralSpec, upper_first: i64, upper_second: i64, tol: f64) -> Result<f64> {
    let x = EvalPoint::new(Scalar::float(spec.a_mod * spec.a_mod))?;
    character_series(
        &Scalar::int(upper_first),
        &Scalar::int(upper_second),
        spec.i as usize,
        &x,
        tol,
        SERIES_MAX_TERMS,
    )
    .map(|e| e.value.to_f64())
}

/// `Σ (n-i over k)(n+i over i+k) a^(2k)`; a polynomial in `a²`.
pub fn v_series(spec: &IntegralSpec, tol: f64) -> Result<f64> {
    let (n, i) = (spec.n as i64, spec.i as i64);
    kernel_series(spec, n - i, n + i, tol)
}

/// `Σ (-n-1-i over k)(-n-1+i over i+k) a^(2k)`.
pub fn u_series(spec: &IntegralSpec, tol: f64) -> Result<f64> {
    let (n, i) = (spec.n as i64, spec.i as i64);
    kernel_series(spec, -n - 1 - i, -n - 1 + i, tol)
}

/// `π a^i (1-a²)^-(2n+1) V`.
pub fn closed_form_i(spec: &IntegralSpec, tol: f64) -> Result<f64> {
    let v = v_series(spec, tol)?;
    Ok(PI * spec.a_pow_i() * powi(spec.one_minus_a2(), -(2 * spec.n as i32 + 1)) * v)
}

/// `π a^i (1-a²)^(2n+1) U`.
pub fn closed_form_ii(spec: &IntegralSpec, tol: f64) -> Result<f64> {
    let u = u_series(spec, tol)?;
    Ok(PI * spec.a_pow_i() * powi(spec.one_minus_a2(), 2 * spec.n as i32 + 1) * u)
}

pub fn integral_i(spec: &IntegralSpec, tol: f64) -> Result<IntegralResult> {
    let q = quad_delta_power(spec, -(spec.n as i32) - 1, 0.0, PI)?;
    Ok(IntegralResult {
        quadrature: q.value,
        closed_form: closed_form_i(spec, tol)?,
        series_value: v_series(spec, tol)?,
        abs_error_estimate: q.abs_error,
    })
}

pub fn integral_ii(spec: &IntegralSpec, tol: f64) -> Result<IntegralResult> {
    let q = quad_delta_power(spec, spec.n as i32, 0.0, PI)?;
    Ok(IntegralResult {
        quadrature: q.value,
        closed_form: closed_form_ii(spec, tol)?,
        series_value: u_series(spec, tol)?,
        abs_error_estimate: q.abs_error,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub passed: bool,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        let residual = (lhs - rhs).abs();
        IdentityCheck { lhs, rhs, residual, passed: residual <= tol * (1.0 + lhs.abs()) }
    }
}

fn char_f64(upper: i64, lower: u32) -> f64 {
    binom_char(&Scalar::int(upper), lower as usize).to_f64()
}

/// `(n+i over i)(1-a²)^-n ∫Δ^n cos iφ = (-n-1+i over i)(1-a²)^(n+1) ∫Δ^(-n-1) cos iφ`,
/// both integrals by quadrature.
pub fn verify_ratio_identity(spec: &IntegralSpec, tol: f64) -> Result<IdentityCheck> {
    let (n, i) = (spec.n as i64, spec.i);
    let w = spec.one_minus_a2();
    let lhs = char_f64(n + i as i64, i) * powi(w, -(n as i32)) * quad_ii(spec)?;
    let rhs = char_f64(-n - 1 + i as i64, i) * powi(w, n as i32 + 1) * quad_i(spec)?;
    Ok(IdentityCheck::new(lhs, rhs, tol))
}

/// `(n over i) ∫ cos iφ / Θ^(n+1) = (-n-1 over i) ∫ Θ^n cos iφ`, with the
/// `Θ` integrals obtained by rescaling the `Δ` integrals.
pub fn verify_theta_identity(spec: &IntegralSpec, tol: f64) -> Result<IdentityCheck> {
    let (n, i) = (spec.n as i64, spec.i);
    let w = spec.one_minus_a2();
    let theta_first = powi(w, n as i32 + 1) * quad_i(spec)?;
    let theta_second = powi(w, -(n as i32)) * quad_ii(spec)?;
    let lhs = char_f64(n, i) * theta_first;
    let rhs = char_f64(-n - 1, i) * theta_second;
    Ok(IdentityCheck::new(lhs, rhs, tol))
}

/// Exact check of `(n over i) : (-n-1 over i) = (-n-1+i over i) : (n+i over i)`
/// together with `(n+i over i) = (-1)^i (-n-1 over i)` and
/// `(-n-1+i over i) = (-1)^i (n over i)`.
pub fn verify_sign_bridge(n: i64, i: usize) -> bool {
    let ch = |m: i64| binom_char(&Scalar::int(m), i);
    let ii = i as i64;
    let sign = if i.is_multiple_of(2) { Scalar::one() } else { Scalar::int(-1) };
    let proportion = &ch(n) * &ch(n + ii) == &ch(-n - 1) * &ch(-n - 1 + ii);
    let first = ch(n + ii) == &sign * &ch(-n - 1);
    let second = ch(-n - 1 + ii) == &sign * &ch(n);
    proportion && first && second
}

/// `V` three ways: its own series, `(n+i over i) s(a²)` with the raw
/// hypergeometric series, and `(n+i over i) (1-a²)^(2n+1) z(a²)` with the
/// transformed one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformationBridge {
    pub v: f64,
    pub via_raw: f64,
    pub via_transformed: f64,
}

pub fn transformation_bridge(spec: &IntegralSpec, tol: f64) -> Result<TransformationBridge> {
    let (n, i) = (spec.n as i64, spec.i as i64);
    // V = (n+i over i) · F(i-n, -n; i+1; a²)
    let params = HypergeometricParams::new(Scalar::int(i - n), Scalar::int(-n), Scalar::int(i + 1))?.to_float();
    let x = EvalPoint::new(Scalar::float(spec.a_mod * spec.a_mod))?;
    let lead = char_f64(n + i, spec.i);
    let raw = eval_series(&params, &x, tol, SERIES_MAX_TERMS)?.value.to_f64();
    let transformed = eval_transformed(&params, &x, tol, SERIES_MAX_TERMS)?.value.to_f64();
    Ok(TransformationBridge { v: v_series(spec, tol)?, via_raw: lead * raw, via_transformed: lead * transformed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(a: f64, n: u32, i: u32) -> IntegralSpec {
        IntegralSpec::new(a, n, i).unwrap()
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(IntegralSpec::new(0.0, 1, 1).is_err());
        assert!(IntegralSpec::new(1.0, 1, 1).is_err());
        assert!(IntegralSpec::new(-0.5, 1, 1).is_err());
        assert!(IntegralSpec::new(f64::NAN, 1, 1).is_err());
    }

    #[test]
    fn kernel_floor() {
        let k = KernelValue::at(0.6, 0.0);
        assert!((k.delta - 0.16).abs() < 1e-15);
        assert!((k.theta - 0.16 / 0.64).abs() < 1e-15);
    }

    #[test]
    fn quad_i_examples() {
        assert!((quad_i(&spec(0.5, 0, 0)).unwrap() - PI / 0.75).abs() < 1e-10);
        assert!((quad_i(&spec(0.5, 0, 1)).unwrap() - PI * 0.5 / 0.75).abs() < 1e-10);
        let expected = PI * (1.0 + 0.09) / libm::pow(0.91, 3.0);
        assert!((quad_i(&spec(0.3, 1, 0)).unwrap() - expected).abs() < 1e-10);
    }

    #[test]
    fn quad_ii_examples() {
        for a in [0.2, 0.5, 0.9] {
            assert!((quad_ii(&spec(a, 0, 0)).unwrap() - PI).abs() < 1e-10);
            assert!((quad_ii(&spec(a, 1, 0)).unwrap() - PI * (1.0 + a * a)).abs() < 1e-10);
            assert!((quad_ii(&spec(a, 1, 1)).unwrap() + PI * a).abs() < 1e-10);
        }
    }

    #[test]
    fn v_and_u_examples() {
        let a = 0.4;
        assert_eq!(v_series(&spec(a, 0, 0), 1e-14).unwrap(), 1.0);
        assert!((v_series(&spec(a, 1, 0), 1e-14).unwrap() - (1.0 + a * a)).abs() < 1e-15);
        assert_eq!(v_series(&spec(a, 1, 1), 1e-14).unwrap(), 2.0);
        let w = 1.0 - a * a;
        assert!((u_series(&spec(a, 1, 1), 1e-15).unwrap() + 1.0 / (w * w * w)).abs() < 1e-13);
        assert!((u_series(&spec(a, 0, 0), 1e-15).unwrap() - 1.0 / w).abs() < 1e-13);
    }

    #[test]
    fn closed_form_examples() {
        assert!((closed_form_i(&spec(0.5, 0, 0), 1e-14).unwrap() - PI / 0.75).abs() < 1e-13);
        let expected = PI * 0.5 * 2.0 / libm::pow(0.75, 3.0);
        assert!((closed_form_i(&spec(0.5, 1, 1), 1e-14).unwrap() - expected).abs() < 1e-12);
        assert!(closed_form_i(&spec(1e-9, 1, 2), 1e-14).unwrap().abs() < 1e-15);
        let r = integral_i(&spec(0.5, 1, 1), 1e-14).unwrap();
        assert!(r.agrees());
        assert_eq!(r.series_value, 2.0);
    }

    #[test]
    fn ratio_identity_examples() {
        let check = verify_ratio_identity(&spec(0.5, 1, 1), 1e-9).unwrap();
        assert!(check.passed);
        assert!((check.lhs - 2.0 / 0.75 * (-PI * 0.5)).abs() < 1e-9);
        let check = verify_ratio_identity(&spec(0.3, 0, 0), 1e-9).unwrap();
        assert!((check.lhs - PI).abs() < 1e-9);
        assert!((check.rhs - PI).abs() < 1e-9);
        assert!(verify_ratio_identity(&spec(0.7, 2, 3), 1e-8).unwrap().passed);
    }

    #[test]
    fn theta_identity_examples() {
        let check = verify_theta_identity(&spec(0.5, 1, 1), 1e-9).unwrap();
        assert!(check.passed);
        assert!((check.lhs - 4.0 * PI / 3.0).abs() < 1e-9);
        assert!((check.rhs - 4.0 * PI / 3.0).abs() < 1e-9);
        // (1 over 2) = 0 and ∫ Θ cos 2φ vanishes.
        let check = verify_theta_identity(&spec(0.5, 1, 2), 1e-9).unwrap();
        assert_eq!(check.lhs, 0.0);
        assert!(check.rhs.abs() < 1e-9);
        assert!(verify_theta_identity(&spec(0.3, 0, 2), 1e-9).unwrap().passed);
    }

    #[test]
    fn sign_bridge_examples() {
        assert!(verify_sign_bridge(1, 1));
        assert!(verify_sign_bridge(2, 2));
        for n in 0..5 {
            assert!(verify_sign_bridge(n, 0));
        }
        assert_eq!(binom_char(&Scalar::int(4), 2), binom_char(&Scalar::int(-3), 2));
    }

    #[test]
    fn bridge_agrees() {
        let b = transformation_bridge(&spec(0.6, 2, 1), 1e-15).unwrap();
        assert!((b.v - b.via_raw).abs() < 1e-12);
        assert!((b.v - b.via_transformed).abs() < 1e-12);
    }
}
