//! The hypergeometric series
//!
//! ```text
//! s = 1 + ab/(1·c) x + ab(a+1)(b+1)/(1·2·c(c+1)) x² + …
//! ```
//!
//! Coefficients follow the running-product recurrence
//! `c_{k+1} (k+1)(c+k) = c_k (a+k)(b+k)` with `c_0 = 1`. The series is a
//! polynomial exactly when `a` or `b` is a nonpositive integer.
//!
//! Infinite sums stop once a rigorous bound on the remaining tail drops
//! below the requested tolerance. For `k > |c|` every later term ratio
//! satisfies
//!
//! ```text
//! |t_{j+1} / t_j| <= |x| (1 + |a|/k) (1 + (|b|+|c|)/(k-|c|))    (j >= k)
//! ```
//!
//! so once that majorant `ρ` is below one the tail after `t_k` is at most
//! `|t_k| r_k / (1 - ρ)`, with `r_k` the actual next ratio.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::scalar::{Kind, Scalar};

/// Largest degree accepted by the exact-mode coefficient and residual
/// operations.
pub const EXACT_DEGREE_CAP: usize = 64;

/// Parameters `(a, b, c)` of the series. `c` is never zero or a negative
/// integer.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricParams {
    a: Scalar,
    b: Scalar,
    c: Scalar,
}

impl HypergeometricParams {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        if c.is_nonpositive_integer() {
            return Err(Error::InvalidC(format!("{c}")));
        }
        Ok(HypergeometricParams { a, b, c })
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    /// Exact only if all three parameters are exact.
    pub fn kind(&self) -> Kind {
        self.a.kind().join(self.b.kind()).join(self.c.kind())
    }

    pub fn to_float(&self) -> Self {
        HypergeometricParams {
            a: self.a.to_float(),
            b: self.b.to_float(),
            c: self.c.to_float(),
        }
    }

    fn to_kind(&self, kind: Kind) -> Self {
        match kind {
            Kind::Float => self.to_float(),
            Kind::Exact => self.clone(),
        }
    }

    /// Ratio `c_{k+1} / c_k = (a+k)(b+k) / ((k+1)(c+k))`.
    pub fn coefficient_ratio(&self, k: usize) -> Scalar {
        let k = k as i64;
        let num = &self.a.add_int(k) * &self.b.add_int(k);
        let den = self.c.add_int(k).mul_int(k + 1);
        &num / &den
    }
}

impl fmt::Display for HypergeometricParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={}, c={})", self.a, self.b, self.c)
    }
}

/// Evaluation point `x` with `|x| < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPoint {
    x: Scalar,
}

impl EvalPoint {
    pub fn new(x: Scalar) -> Result<Self> {
        let inside = match &x {
            Scalar::Exact(r) => {
                let one = num_rational::BigRational::from_integer(1.into());
                num_traits::Signed::abs(r) < one
            }
            Scalar::Float(v) => v.is_finite() && v.abs() < 1.0,
        };
        if !inside {
            return Err(Error::Domain(format!("|x| must be below 1, got x = {x}")));
        }
        Ok(EvalPoint { x })
    }

    pub fn x(&self) -> &Scalar {
        &self.x
    }
}

/// Result of summing a series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesEvaluation {
    pub value: Scalar,
    /// Number of terms added, counting the leading one.
    pub terms_used: usize,
    /// The series is a polynomial and every nonzero term was added.
    pub terminated: bool,
    /// Bound on the omitted tail; zero when `terminated`.
    pub tail_bound: f64,
}

/// Coefficients `c_0 = 1, c_1, …, c_N` of `x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientList {
    pub coefficients: Vec<Scalar>,
}

impl CoefficientList {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&Scalar> {
        self.coefficients.get(k)
    }

    /// Horner evaluation of the truncated series.
    pub fn evaluate(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coefficients.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }
}

/// Coefficients of `x^k` in `L[s_N]`, where `s_N` is the degree-`N`
/// truncation and `L = x(1-x) d²/dx² + [c - (a+b+1)x] d/dx - ab`.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeResidual {
    /// Indices `0..=N+1`.
    pub residual_coefficients: Vec<Scalar>,
    pub degree_checked: usize,
}

/// Per-power differences of the two sides of the operator identity.
///
/// `differences[j]` is the coefficient of `x^(j + shift)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorResidual {
    pub shift: Scalar,
    pub differences: Vec<Scalar>,
    pub degree_checked: usize,
}

impl OperatorResidual {
    /// Number of leading differences that must vanish for a truncation of
    /// degree `N`: every power below `x^(N + b - 1)`.
    pub fn guaranteed_zero_len(&self) -> usize {
        self.degree_checked + 1
    }
}

fn check_exact_degree(params: &HypergeometricParams, degree: usize) -> Result<()> {
    if params.kind() == Kind::Exact && degree > EXACT_DEGREE_CAP {
        return Err(Error::DegreeTooLarge { degree, cap: EXACT_DEGREE_CAP });
    }
    Ok(())
}

pub fn coefficients(params: &HypergeometricParams, degree: usize) -> Result<CoefficientList> {
    check_exact_degree(params, degree)?;
    let params = params.to_kind(params.kind());
    let mut coefficients = Vec::with_capacity(degree + 1);
    let mut current = unit(params.kind());
    coefficients.push(current.clone());
    for k in 0..degree {
        current = &current * &params.coefficient_ratio(k);
        coefficients.push(current.clone());
    }
    Ok(CoefficientList { coefficients })
}

/// Smallest `m >= 0` with `a + m = 0` or `b + m = 0`.
pub fn termination_index(params: &HypergeometricParams) -> Option<usize> {
    match (
        params.a.nonpositive_integer_magnitude(),
        params.b.nonpositive_integer_magnitude(),
    ) {
        (Some(m), Some(n)) => Some(m.min(n)),
        (m, n) => m.or(n),
    }
}

fn unit(kind: Kind) -> Scalar {
    match kind {
        Kind::Exact => Scalar::one(),
        Kind::Float => Scalar::float(1.0),
    }
}

/// Magnitudes of a hypergeometric term ratio, used for tail bounds.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RatioModel {
    a: f64,
    b: f64,
    c: f64,
    x: f64,
}

impl RatioModel {
    pub(crate) fn new(params: &HypergeometricParams, x: &Scalar) -> Self {
        RatioModel {
            a: params.a.to_f64(),
            b: params.b.to_f64(),
            c: params.c.to_f64(),
            x: x.to_f64().abs(),
        }
    }

    /// `|t_{k+1} / t_k|` for the `order`-th derivative series (`k >= order`).
    fn ratio(&self, k: usize, order: usize) -> f64 {
        let kf = k as f64;
        let base = self.x * ((self.a + kf) * (self.b + kf)).abs() / ((kf + 1.0) * (self.c + kf).abs());
        base * (kf + 1.0) / (kf + 1.0 - order as f64)
    }

    /// Upper bound on `ratio(j, order)` for every `j >= k`, if one is
    /// available at `k`.
    fn majorant(&self, k: usize, order: usize) -> Option<f64> {
        let kf = k as f64;
        let (a, b, c) = (self.a.abs(), self.b.abs(), self.c.abs());
        if k == 0 || kf <= c || k < order {
            return None;
        }
        let rho = self.x * (1.0 + a / kf) * (1.0 + (b + c) / (kf - c)) * (kf + 1.0) / (kf + 1.0 - order as f64);
        rho.is_finite().then_some(rho)
    }

    /// Rough number of terms a geometric model needs to reach `tol`.
    pub(crate) fn estimated_terms(&self, tol: f64) -> usize {
        if self.x == 0.0 {
            return 1;
        }
        let lead = self.a.abs().max(self.b.abs()).max(self.c.abs());
        let geometric = libm::ceil(libm::log(tol) / libm::log(self.x)).max(1.0);
        (libm::ceil(lead) + geometric) as usize
    }
}

/// A value that can be accumulated by [`sum_series`].
pub(crate) trait Summand: Clone {
    fn plus(&self, other: &Self) -> Self;
    fn magnitude(&self) -> f64;
    fn into_scalar(self) -> Scalar;
    fn zero_like(&self) -> Self;
}

impl Summand for Scalar {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }

    fn magnitude(&self) -> f64 {
        self.abs_f64()
    }

    fn into_scalar(self) -> Scalar {
        self
    }

    fn zero_like(&self) -> Self {
        Scalar::zero().to_kind(self.kind())
    }
}

impl Summand for DoubleDouble {
    fn plus(&self, other: &Self) -> Self {
        self.add(*other)
    }

    fn magnitude(&self) -> f64 {
        self.abs_f64()
    }

    fn into_scalar(self) -> Scalar {
        Scalar::float(self.to_f64())
    }

    fn zero_like(&self) -> Self {
        DoubleDouble::from_f64(0.0)
    }
}

/// Sum `term(start) + term(start+1) + …`, where consecutive terms follow the
/// ratio model (of the `order`-th derivative), stopping at `last` or when
/// the tail bound is at most `tol`.
pub(crate) fn sum_series<T, F>(
    mut term: F,
    start: usize,
    model: &RatioModel,
    order: usize,
    last: Option<usize>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation>
where
    T: Summand,
    F: FnMut(usize) -> T,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    if max_terms == 0 {
        return Err(Error::Domain("max_terms must be at least 1".into()));
    }
    if let Some(m) = last {
        if m < start {
            let zero = term(start).zero_like().into_scalar();
            return Ok(SeriesEvaluation { value: zero, terms_used: 1, terminated: true, tail_bound: 0.0 });
        }
    }
    let mut k = start;
    let mut t = term(k);
    let mut sum = t.clone();
    let mut used = 1;
    if model.x == 0.0 {
        return Ok(SeriesEvaluation {
            value: sum.into_scalar(),
            terms_used: 1,
            terminated: last.is_some(),
            tail_bound: 0.0,
        });
    }
    loop {
        if last.is_some_and(|m| k >= m) {
            return Ok(SeriesEvaluation { value: sum.into_scalar(), terms_used: used, terminated: true, tail_bound: 0.0 });
        }
        let tail = match model.majorant(k + 1, order) {
            Some(rho) if rho < 1.0 => t.magnitude() * model.ratio(k, order) / (1.0 - rho),
            _ => f64::INFINITY,
        };
        if tail <= tol {
            return Ok(SeriesEvaluation { value: sum.into_scalar(), terms_used: used, terminated: false, tail_bound: tail });
        }
        if used >= max_terms {
            return Err(Error::NoConvergence { terms: used, tail_bound: tail, tol });
        }
        k += 1;
        t = term(k);
        sum = sum.plus(&t);
        used += 1;
    }
}

fn falling_factorial(k: usize, order: usize) -> i64 {
    (0..order as i64).map(|j| k as i64 - j).product()
}

/// Value of the `order`-th derivative of the series at `point`, summed term
/// by term.
///
/// Float-mode terms and partial sums are carried in double-double precision
/// and rounded once at the end.
pub fn eval_derivative(
    params: &HypergeometricParams,
    point: &EvalPoint,
    order: usize,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation> {
    let kind = params.kind().join(point.x.kind());
    let last = termination_index(params);
    match kind {
        Kind::Exact => eval_derivative_exact(params, &point.x, order, last, tol, max_terms),
        Kind::Float => eval_derivative_float(params, point.x.to_f64(), order, last, tol, max_terms),
    }
}

fn eval_derivative_exact(
    params: &HypergeometricParams,
    x: &Scalar,
    order: usize,
    last: Option<usize>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation> {
    let model = RatioModel::new(params, x);
    // State holds the coefficient c_k and x^(k - order) of the next term.
    let mut coef = Scalar::one();
    for k in 0..order {
        coef = &coef * &params.coefficient_ratio(k);
    }
    let mut xpow = Scalar::one();
    let term = |k: usize| {
        let t = (&coef * &xpow).mul_int(falling_factorial(k, order));
        coef = &coef * &params.coefficient_ratio(k);
        xpow = &xpow * x;
        t
    };
    sum_series(term, order, &model, order, last, tol, max_terms)
}

fn eval_derivative_float(
    params: &HypergeometricParams,
    x: f64,
    order: usize,
    last: Option<usize>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation> {
    let model = RatioModel::new(params, &Scalar::float(x));
    let (a, b, c) = (params.a.to_f64(), params.b.to_f64(), params.c.to_f64());
    let ratio = |k: usize| {
        let kf = k as f64;
        let num = DoubleDouble::from_f64(a).add_f64(kf).mul(DoubleDouble::from_f64(b).add_f64(kf));
        let den = DoubleDouble::from_f64(c).add_f64(kf).mul_f64(kf + 1.0);
        num.div(den)
    };
    let mut coef = DoubleDouble::ONE;
    for k in 0..order {
        coef = coef.mul(ratio(k));
    }
    let mut xpow = DoubleDouble::ONE;
    let term = |k: usize| {
        let t = coef.mul(xpow).mul_f64(falling_factorial(k, order) as f64);
        coef = coef.mul(ratio(k));
        xpow = xpow.mul_f64(x);
        t
    };
    sum_series(term, order, &model, order, last, tol, max_terms)
}

/// Value of the series at `point`.
pub fn eval_series(
    params: &HypergeometricParams,
    point: &EvalPoint,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation> {
    eval_derivative(params, point, 0, tol, max_terms)
}

type Poly = Vec<Scalar>;

fn poly_derivative(p: &[Scalar]) -> Poly {
    p.iter().enumerate().skip(1).map(|(k, c)| c.mul_int(k as i64)).collect()
}

/// `acc += scale · x^shift · p`
fn poly_accumulate(acc: &mut Poly, p: &[Scalar], shift: usize, scale: &Scalar) {
    for (k, c) in p.iter().enumerate() {
        let slot = &mut acc[k + shift];
        *slot = &*slot + &(c * scale);
    }
}

/// Apply the hypergeometric differential operator to the degree-`N`
/// truncation of the series and collect the coefficients of the result.
///
/// Coefficients `0..N` vanish; coefficient `N` is `-(a+N)(b+N) c_N`.
pub fn ode_residual(params: &HypergeometricParams, degree: usize) -> Result<OdeResidual> {
    if degree < 2 {
        return Err(Error::Domain(format!("ODE residual needs degree >= 2, got {degree}")));
    }
    let s = coefficients(params, degree)?.coefficients;
    let kind = params.kind();
    let p = params.to_kind(kind);
    let ds = poly_derivative(&s);
    let dds = poly_derivative(&ds);
    let zero = Scalar::zero().to_kind(s[0].kind());
    let one = unit(kind);
    let mut acc = vec![zero; degree + 2];

    let ab = &p.a * &p.b;
    let apb1 = (&p.a + &p.b).add_int(1);
    poly_accumulate(&mut acc, &dds, 1, &one); // x s''
    poly_accumulate(&mut acc, &dds, 2, &-&one); // -x² s''
    poly_accumulate(&mut acc, &ds, 0, &p.c); // c s'
    poly_accumulate(&mut acc, &ds, 1, &-&apb1); // -(a+b+1) x s'
    poly_accumulate(&mut acc, &s, 0, &-&ab); // -ab s

    Ok(OdeResidual { residual_coefficients: acc, degree_checked: degree })
}

/// A finite sum `Σ coeffs[j] x^(j + shift)` with a formal (possibly
/// non-integer) shift.
#[derive(Debug, Clone)]
struct FormalSeries {
    shift: Scalar,
    coeffs: Vec<Scalar>,
}

impl FormalSeries {
    fn times_monomial(&self, p: &Scalar) -> Self {
        FormalSeries { shift: &self.shift + p, coeffs: self.coeffs.clone() }
    }

    fn scaled(&self, k: &Scalar) -> Self {
        FormalSeries { shift: self.shift.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `d/dx x^(j+σ) = (j+σ) x^(j+σ-1)`; a constant term differentiates to 0.
    fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * &self.shift.add_int(j as i64))
            .collect();
        FormalSeries { shift: self.shift.add_int(-1), coeffs }
    }

    /// `Σ sign_i · series_i` on a common monomial basis.
    fn combine(parts: &[(&FormalSeries, bool)]) -> Result<Self> {
        let base = parts
            .iter()
            .map(|(p, _)| p.shift.clone())
            .reduce(|m, s| if s.partial_cmp_value(&m) == Some(core::cmp::Ordering::Less) { s } else { m })
            .ok_or_else(|| Error::Domain("empty combination".into()))?;
        let mut offsets = Vec::with_capacity(parts.len());
        let mut len = 0;
        for (p, _) in parts {
            let off = (&p.shift - &base)
                .as_integer()
                .and_then(|o| usize::try_from(o).ok())
                .ok_or_else(|| Error::Domain("monomial shifts differ by a non-integer".into()))?;
            len = len.max(off + p.coeffs.len());
            offsets.push(off);
        }
        let zero = Scalar::zero().to_kind(base.kind());
        let mut coeffs = vec![zero; len];
        for ((p, positive), off) in parts.iter().zip(offsets) {
            for (j, c) in p.coeffs.iter().enumerate() {
                let slot = &mut coeffs[j + off];
                *slot = if *positive { &*slot + c } else { &*slot - c };
            }
        }
        Ok(FormalSeries { shift: base, coeffs })
    }
}

fn formal_truncation(params: &HypergeometricParams, degree: usize) -> Result<FormalSeries> {
    let s = coefficients(params, degree)?.coefficients;
    let zero = Scalar::zero().to_kind(s[0].kind());
    Ok(FormalSeries { shift: zero, coeffs: s })
}

/// Expanded form of the pre-division operator identity on the degree-`N`
/// truncation:
///
/// ```text
/// x^(b+1) s'' + (a+b+1) x^b s' + ab x^(b-1) s  -  [x^b s'' + c x^(b-1) s']
/// ```
///
/// Exponents are handled formally, so non-integer `b` is fine.
pub fn operator_identity_residual(params: &HypergeometricParams, degree: usize) -> Result<OperatorResidual> {
    if degree < 2 {
        return Err(Error::Domain(format!("operator identity needs degree >= 2, got {degree}")));
    }
    let p = params.to_kind(params.kind());
    let s = formal_truncation(&p, degree)?;
    let ds = s.derivative();
    let dds = ds.derivative();
    let b_minus_1 = p.b.add_int(-1);

    let l1 = dds.times_monomial(&p.b.add_int(1));
    let l2 = ds.scaled(&(&p.a + &p.b).add_int(1)).times_monomial(&p.b);
    let l3 = s.scaled(&(&p.a * &p.b)).times_monomial(&b_minus_1);
    let r1 = dds.times_monomial(&p.b);
    let r2 = ds.scaled(&p.c).times_monomial(&b_minus_1);
    let diff = FormalSeries::combine(&[(&l1, true), (&l2, true), (&l3, true), (&r1, false), (&r2, false)])?;
    Ok(OperatorResidual { shift: diff.shift, differences: diff.coeffs, degree_checked: degree })
}

/// The same identity in its nested operator form,
/// `d(x^(b-a+1) d(x^a s)) - x^(b-c) d(x^c d s)`.
pub fn nested_operator_residual(params: &HypergeometricParams, degree: usize) -> Result<OperatorResidual> {
    if degree < 2 {
        return Err(Error::Domain(format!("operator identity needs degree >= 2, got {degree}")));
    }
    let p = params.to_kind(params.kind());
    let s = formal_truncation(&p, degree)?;
    let lhs = s
        .times_monomial(&p.a)
        .derivative()
        .times_monomial(&(&p.b - &p.a).add_int(1))
        .derivative();
    let rhs = s.derivative().times_monomial(&p.c).derivative().times_monomial(&(&p.b - &p.c));
    let diff = FormalSeries::combine(&[(&lhs, true), (&rhs, false)])?;
    Ok(OperatorResidual { shift: diff.shift, differences: diff.coeffs, degree_checked: degree })
}

const SUBSTITUTION_TOL: f64 = 1e-16;
const SUBSTITUTION_MAX_TERMS: usize = 200_000;

/// Left side of the differential equation obtained by substituting
/// `s = (1-x)^n z`, written (as the substitution produces it) with every
/// term divided by `z`:
///
/// ```text
/// x(1-x) z''/z - 2n x z'/z + [c-(a+b+1)x] z'/z
///   + n(n-1) x/(1-x) - n [c-(a+b+1)x]/(1-x) - ab
/// ```
///
/// `z, z', z''` come from the term-wise differentiated series for `s`.
/// The result vanishes for every `n`.
pub fn substitution_residual(params: &HypergeometricParams, n_exp: &Scalar, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 0.9) {
        return Err(Error::Domain(format!("substitution residual needs 0 < x < 0.9, got {x}")));
    }
    let p = params.to_float();
    let point = EvalPoint::new(Scalar::float(x))?;
    let s = eval_derivative(&p, &point, 0, SUBSTITUTION_TOL, SUBSTITUTION_MAX_TERMS)?.value.to_f64();
    let ds = eval_derivative(&p, &point, 1, SUBSTITUTION_TOL, SUBSTITUTION_MAX_TERMS)?.value.to_f64();
    let dds = eval_derivative(&p, &point, 2, SUBSTITUTION_TOL, SUBSTITUTION_MAX_TERMS)?.value.to_f64();
    let (a, b, c) = (p.a.to_f64(), p.b.to_f64(), p.c.to_f64());
    let n = n_exp.to_f64();
    let u = 1.0 - x;

    let scale = libm::pow(u, -n);
    let z = scale * s;
    let dz = scale * (ds + n * s / u);
    let ddz = scale * (dds + 2.0 * n * ds / u + n * (n + 1.0) * s / (u * u));
    if z == 0.0 {
        return Err(Error::Domain(format!("z vanishes at x = {x}")));
    }

    let lin = c - (a + b + 1.0) * x;
    Ok(x * u * ddz / z - 2.0 * n * x * dz / z + lin * dz / z + n * (n - 1.0) * x / u - n * lin / u - a * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    fn i(n: i64) -> Scalar {
        Scalar::int(n)
    }

    fn params(a: Scalar, b: Scalar, c: Scalar) -> HypergeometricParams {
        HypergeometricParams::new(a, b, c).unwrap()
    }

    #[test]
    fn rejects_bad_c() {
        assert!(matches!(HypergeometricParams::new(i(1), i(1), i(0)), Err(Error::InvalidC(_))));
        assert!(matches!(HypergeometricParams::new(i(1), i(1), i(-3)), Err(Error::InvalidC(_))));
        assert!(matches!(
            HypergeometricParams::new(i(1), i(1), Scalar::float(-2.0)),
            Err(Error::InvalidC(_))
        ));
        assert!(HypergeometricParams::new(i(1), i(1), Scalar::float(-2.0 + 1e-3)).is_ok());
    }

    #[test]
    fn rejects_points_outside_disc() {
        assert!(EvalPoint::new(i(1)).is_err());
        assert!(EvalPoint::new(i(-1)).is_err());
        assert!(EvalPoint::new(Scalar::float(1.5)).is_err());
        assert!(EvalPoint::new(r(-99, 100)).is_ok());
    }

    #[test]
    fn coefficient_examples() {
        let c = coefficients(&params(i(-2), i(3), i(1)), 4).unwrap();
        assert_eq!(c.coefficients, vec![i(1), i(-6), i(6), i(0), i(0)]);
        let c = coefficients(&params(i(1), i(1), i(2)), 3).unwrap();
        assert_eq!(c.coefficients, vec![i(1), r(1, 2), r(1, 3), r(1, 4)]);
        let c = coefficients(&params(r(3, 7), i(-5), r(1, 3)), 0).unwrap();
        assert_eq!(c.coefficients, vec![i(1)]);
    }

    #[test]
    fn exact_degree_cap() {
        let p = params(i(1), i(1), i(2));
        assert!(coefficients(&p, EXACT_DEGREE_CAP).is_ok());
        assert!(matches!(coefficients(&p, EXACT_DEGREE_CAP + 1), Err(Error::DegreeTooLarge { .. })));
        assert!(coefficients(&p.to_float(), 500).is_ok());
    }

    #[test]
    fn termination_examples() {
        assert_eq!(termination_index(&params(i(-2), i(3), i(1))), Some(2));
        assert_eq!(termination_index(&params(r(1, 2), r(1, 2), r(3, 2))), None);
        assert_eq!(termination_index(&params(i(5), i(-1), i(2))), Some(1));
        assert_eq!(termination_index(&params(i(-4), i(-1), i(2))), Some(1));
        assert_eq!(termination_index(&params(i(0), i(3), i(2))), Some(0));
    }

    #[test]
    fn eval_at_zero() {
        let p = params(r(1, 3), i(7), r(5, 2));
        let e = eval_series(&p, &EvalPoint::new(i(0)).unwrap(), 1e-12, 100).unwrap();
        assert_eq!(e.value, i(1));
        assert_eq!(e.terms_used, 1);
        assert_eq!(e.tail_bound, 0.0);
        assert!(!e.terminated);
        let poly = eval_series(&params(i(-3), i(7), r(5, 2)), &EvalPoint::new(i(0)).unwrap(), 1e-12, 100).unwrap();
        assert_eq!((poly.terms_used, poly.terminated), (1, true));
    }

    #[test]
    fn eval_log_case() {
        let p = params(i(1), i(1), i(2)).to_float();
        let e = eval_series(&p, &EvalPoint::new(Scalar::float(0.5)).unwrap(), 1e-14, 1000).unwrap();
        let expected = 2.0 * core::f64::consts::LN_2;
        assert!((e.value.to_f64() - expected).abs() < 1e-13);
        assert!(!e.terminated);
        assert!(e.tail_bound <= 1e-14);
    }

    #[test]
    fn eval_terminating_exact() {
        let p = params(i(-2), i(3), i(1));
        let e = eval_series(&p, &EvalPoint::new(r(1, 4)).unwrap(), 1e-12, 100).unwrap();
        assert_eq!(e.value, r(-1, 8));
        assert!(e.terminated);
        assert_eq!(e.terms_used, 3);
        assert_eq!(e.tail_bound, 0.0);
    }

    #[test]
    fn eval_reports_non_convergence() {
        let p = params(i(1), i(1), i(2)).to_float();
        let err = eval_series(&p, &EvalPoint::new(Scalar::float(0.99)).unwrap(), 1e-14, 20).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { terms: 20, .. }));
    }

    #[test]
    fn eval_rejects_bad_controls() {
        let p = params(i(1), i(1), i(2));
        let x = EvalPoint::new(r(1, 2)).unwrap();
        assert!(eval_series(&p, &x, 0.0, 10).is_err());
        assert!(eval_series(&p, &x, 1e-10, 0).is_err());
    }

    #[test]
    fn derivatives_of_log_case() {
        // s = -ln(1-x)/x, s' = 1/(x(1-x)) + ln(1-x)/x².
        let p = params(i(1), i(1), i(2)).to_float();
        let x = 0.3f64;
        let pt = EvalPoint::new(Scalar::float(x)).unwrap();
        let ds = eval_derivative(&p, &pt, 1, 1e-15, 1000).unwrap().value.to_f64();
        let l = libm::log(1.0 - x);
        let expected = 1.0 / (x * (1.0 - x)) + l / (x * x);
        assert!((ds - expected).abs() < 1e-12, "{ds} vs {expected}");
        let dds = eval_derivative(&p, &pt, 2, 1e-15, 1000).unwrap().value.to_f64();
        let expected2 = (1.0 - 2.0 * x) / -(x * x * (1.0 - x) * (1.0 - x)) - 1.0 / (x * x * (1.0 - x))
            - 2.0 * l / (x * x * x);
        // d/dx [1/(x(1-x))] = -(1-2x)/(x(1-x))², d/dx [l/x²] = -1/(x²(1-x)) - 2l/x³
        assert!((dds - expected2).abs() < 1e-11, "{dds} vs {expected2}");
    }

    #[test]
    fn ode_residual_examples() {
        let res = ode_residual(&params(i(-2), i(3), i(1)), 3).unwrap();
        assert!(res.residual_coefficients.iter().all(Scalar::is_zero));

        let res = ode_residual(&params(i(1), i(1), i(2)), 5).unwrap();
        let coeffs = &res.residual_coefficients;
        assert_eq!(coeffs.len(), 7);
        assert!(coeffs[..5].iter().all(Scalar::is_zero));
        assert_eq!(coeffs[5], i(-6));
        assert!(coeffs[6].is_zero());

        assert!(ode_residual(&params(i(1), i(1), i(2)), 1).is_err());
    }

    #[test]
    fn operator_identity_examples() {
        let res = operator_identity_residual(&params(i(-1), i(2), i(1)), 3).unwrap();
        assert!(res.differences.iter().all(Scalar::is_zero));

        let p = params(i(1), i(1), i(2));
        let res = operator_identity_residual(&p, 4).unwrap();
        assert_eq!(res.shift, i(-1));
        let n = res.guaranteed_zero_len();
        assert!(res.differences[..n].iter().all(Scalar::is_zero));
        // Leftover at x^(N+b-1) is (a+N)(b+N) c_N = 25 / 5.
        assert_eq!(res.differences[n], i(5));
        assert_eq!(res, nested_operator_residual(&p, 4).unwrap());

        let p = params(r(1, 3), r(-5, 2), r(7, 4));
        let res = operator_identity_residual(&p, 2).unwrap();
        assert_eq!(res.shift, r(-9, 2));
        assert!(res.differences[..3].iter().all(Scalar::is_zero));
        assert_eq!(res, nested_operator_residual(&p, 2).unwrap());
    }

    #[test]
    fn substitution_examples() {
        let p = params(i(1), i(1), i(2));
        assert!(substitution_residual(&p, &i(0), 0.5).unwrap().abs() < 1e-9);
        let p = params(r(1, 2), r(1, 2), r(3, 2));
        assert!(substitution_residual(&p, &r(1, 2), 0.25).unwrap().abs() < 1e-9);
        let p = params(i(1), i(2), i(3));
        assert!(substitution_residual(&p, &Scalar::float(-1.7), 0.3).unwrap().abs() < 1e-9);
        assert!(substitution_residual(&p, &i(1), 0.95).is_err());
    }
}
