//! Euler's transformation `s = (1-x)^(c-a-b) · z`, where `z` is the same
//! series with parameters `(c-a, c-b, c)`, and the reparametrizations built
//! on it.
//!
//! Writing `a = -f`, `b = -g`, `c = e + 1`, `h = g + e` turns both series into
//! sums of products of binomial characters. That gives three series
//!
//! ```text
//! A = Σ (f over k)      (h over e+k)      x^k
//! B = Σ (-e-f-1 over k) (e-h-1 over e+k)  x^k
//! C = Σ (-h-1 over k)   (-f-1 over e+k)   x^k
//! ```
//!
//! related by `(e-h-1 over e) A = (h over e) (1-x)^(f+h+1) B`,
//! `(-f-1 over e) A = (h over e) (1-x)^(f+h+1) C` and
//! `(-f-1 over e) B = (e-h-1 over e) C`.

use alloc::format;

use crate::binom::binom_char;
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::scalar::{Kind, Scalar};
use crate::series::{
    eval_series, sum_series, termination_index, EvalPoint, HypergeometricParams, RatioModel, SeriesEvaluation,
};

/// `(α, β, c)` with `α = c - a`, `β = c - b`, and the exponent `c - a - b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub c: Scalar,
    pub exponent: Scalar,
}

impl TransformedParams {
    /// Parameters of the transformed series `z`.
    pub fn series_params(&self) -> HypergeometricParams {
        HypergeometricParams::new(self.alpha.clone(), self.beta.clone(), self.c.clone())
            .expect("c was validated when the original parameters were built")
    }
}

pub fn euler_transform_params(params: &HypergeometricParams) -> TransformedParams {
    let c = params.c().clone();
    let alpha = &c - params.a();
    let beta = &c - params.b();
    let exponent = &(&alpha + &beta) - &c;
    TransformedParams { alpha, beta, c, exponent }
}

/// `(1-x)^(c-a-b) · z(x)`.
///
/// The power is exact for exact inputs with an integer exponent, so
/// polynomial `z` gives an exact value in that case.
pub fn eval_transformed(
    params: &HypergeometricParams,
    point: &EvalPoint,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation> {
    let tp = euler_transform_params(params);
    let prefactor = Scalar::one_minus_pow(point.x(), &tp.exponent);
    let scale = prefactor.abs_f64();
    let z_tol = if scale > 0.0 { tol / scale } else { tol };
    let z = eval_series(&tp.series_params(), point, z_tol, max_terms)?;
    Ok(SeriesEvaluation {
        value: &prefactor * &z.value,
        terms_used: z.terms_used,
        terminated: z.terminated,
        tail_bound: z.tail_bound * scale,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Raw,
    Transformed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionReason {
    /// Only the raw series is a polynomial.
    RawTerminates,
    /// Only the transformed series is a polynomial.
    TransformedTerminates,
    /// Both or neither terminate; the smaller estimated term count won.
    FewerEstimatedTerms,
    /// Equal estimates; raw is preferred.
    Tie,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub representation: Representation,
    pub reason: SelectionReason,
    pub raw_estimate: usize,
    pub transformed_estimate: usize,
}

fn estimated_terms(params: &HypergeometricParams, point: &EvalPoint, tol: f64) -> (usize, bool) {
    let geometric = RatioModel::new(params, point.x()).estimated_terms(tol);
    if point.x().is_zero() {
        return (1, termination_index(params).is_some());
    }
    match termination_index(params) {
        Some(m) => (m + 1, true),
        None => (geometric, false),
    }
}

/// Pick the representation that needs fewer terms.
///
/// A polynomial side always wins over a non-polynomial one. Otherwise the
/// estimate is `ceil(max(|a|,|b|,|c|)) + ceil(ln tol / ln |x|)` for an
/// infinite series and `m + 1` for a polynomial of degree `m`; ties go to
/// the raw series.
pub fn select_representation(params: &HypergeometricParams, point: &EvalPoint, tol: f64) -> Selection {
    let tp = euler_transform_params(params).series_params();
    let (raw_estimate, raw_term) = estimated_terms(params, point, tol);
    let (transformed_estimate, tr_term) = estimated_terms(&tp, point, tol);
    let (representation, reason) = match (raw_term, tr_term) {
        (true, false) => (Representation::Raw, SelectionReason::RawTerminates),
        (false, true) => (Representation::Transformed, SelectionReason::TransformedTerminates),
        _ if transformed_estimate < raw_estimate => (Representation::Transformed, SelectionReason::FewerEstimatedTerms),
        _ if raw_estimate < transformed_estimate => (Representation::Raw, SelectionReason::FewerEstimatedTerms),
        _ => (Representation::Raw, SelectionReason::Tie),
    };
    Selection { representation, reason, raw_estimate, transformed_estimate }
}

/// `a = -f`, `b = -g`, `α = -ζ`, `β = -η`.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeParams {
    pub f: Scalar,
    pub g: Scalar,
    pub zeta: Scalar,
    pub eta: Scalar,
}

impl NegativeParams {
    pub fn from_params(params: &HypergeometricParams) -> Self {
        let f = -params.a();
        let g = -params.b();
        let zeta = &-params.c() - &f;
        let eta = &-params.c() - &g;
        NegativeParams { f, g, zeta, eta }
    }

    /// `c = -ζ - f`.
    pub fn c(&self) -> Scalar {
        &-&self.zeta - &self.f
    }

    pub fn to_params(&self) -> Result<HypergeometricParams> {
        HypergeometricParams::new(-&self.f, -&self.g, self.c())
    }
}

/// `c = e + 1`, `g = h - e`, i.e. `(a, b, c) = (-f, e - h, e + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleParams {
    pub e: Scalar,
    pub f: Scalar,
    pub h: Scalar,
}

impl TripleParams {
    pub fn new(e: Scalar, f: Scalar, h: Scalar) -> Result<Self> {
        if e.add_int(1).is_nonpositive_integer() {
            return Err(Error::InvalidC(format!("e + 1 = {}", e.add_int(1))));
        }
        Ok(TripleParams { e, f, h })
    }

    pub fn from_negative(np: &NegativeParams) -> Result<Self> {
        let c = np.c();
        TripleParams::new(c.add_int(-1), np.f.clone(), &np.g + &c.add_int(-1))
    }

    pub fn to_params(&self) -> Result<HypergeometricParams> {
        HypergeometricParams::new(-&self.f, &self.e - &self.h, self.e.add_int(1))
    }

    /// `e` as a lower index; the character series need it to be a
    /// nonnegative integer.
    pub fn lower_index(&self) -> Result<usize> {
        self.e
            .as_integer()
            .and_then(|e| usize::try_from(e).ok())
            .ok_or_else(|| Error::Domain(format!("e must be a nonnegative integer, got {}", self.e)))
    }

    /// `f + h + 1`, the exponent linking the three sums.
    pub fn exponent(&self) -> Scalar {
        (&self.f + &self.h).add_int(1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleSums {
    pub a_sum: SeriesEvaluation,
    pub b_sum: SeriesEvaluation,
    pub c_sum: SeriesEvaluation,
    pub x: Scalar,
}

/// `Σ (p over k)(q over e+k) x^k`, with the tail bound taken from the
/// equivalent hypergeometric parameters `(-p, e-q; e+1)`.
pub(crate) fn character_series(
    p: &Scalar,
    q: &Scalar,
    e: usize,
    point: &EvalPoint,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation> {
    let kind = p.kind().join(q.kind()).join(point.x().kind());
    let (p, q, x) = (p.to_kind(kind), q.to_kind(kind), point.x().to_kind(kind));
    let e_s = Scalar::int(e as i64).to_kind(kind);
    let model_params = HypergeometricParams::new(-&p, &e_s - &q, e_s.add_int(1))?;
    let model = RatioModel::new(&model_params, &x);
    let last = termination_index(&model_params);
    if kind == Kind::Float {
        return character_series_float(p.to_f64(), q.to_f64(), e, x.to_f64(), &model, last, tol, max_terms);
    }
    let mut xpow = x.powi(0);
    let term = |k: usize| {
        let t = &(&binom_char(&p, k) * &binom_char(&q, e + k)) * &xpow;
        xpow = &xpow * &x;
        t
    };
    sum_series(term, 0, &model, 0, last, tol, max_terms)
}

/// Character `(m over k)` advanced from `(m over k-1)`.
fn next_char_dd(m: f64, k: usize, previous: DoubleDouble) -> DoubleDouble {
    let j = (k - 1) as f64;
    previous.mul(DoubleDouble::from_f64(m).add_f64(-j)).div(DoubleDouble::from_f64(j + 1.0))
}

#[allow(clippy::too_many_arguments)]
fn character_series_float(
    p: f64,
    q: f64,
    e: usize,
    x: f64,
    model: &RatioModel,
    last: Option<usize>,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesEvaluation> {
    let mut p_char = DoubleDouble::ONE;
    let mut q_char = (1..=e).fold(DoubleDouble::ONE, |acc, j| next_char_dd(q, j, acc));
    let mut xpow = DoubleDouble::ONE;
    let term = |k: usize| {
        if k > 0 {
            p_char = next_char_dd(p, k, p_char);
            q_char = next_char_dd(q, e + k, q_char);
            xpow = xpow.mul_f64(x);
        }
        p_char.mul(q_char).mul(xpow)
    };
    sum_series(term, 0, model, 0, last, tol, max_terms)
}

pub fn triple_sums(tp: &TripleParams, point: &EvalPoint, tol: f64, max_terms: usize) -> Result<TripleSums> {
    let e = tp.lower_index()?;
    let (f, h) = (&tp.f, &tp.h);
    let e_s = Scalar::int(e as i64);
    let a_sum = character_series(f, h, e, point, tol, max_terms)?;
    let b_sum = character_series(
        &(&-&e_s - f).add_int(-1),
        &(&e_s - h).add_int(-1),
        e,
        point,
        tol,
        max_terms,
    )?;
    let c_sum = character_series(&(-h).add_int(-1), &(-f).add_int(-1), e, point, tol, max_terms)?;
    Ok(TripleSums { a_sum, b_sum, c_sum, x: point.x().clone() })
}

#[derive(Debug, Clone, PartialEq)]
pub enum RelationCheck {
    Checked { lhs: f64, rhs: f64, residual: f64, passed: bool },
    /// The leading character `(h over e)` vanishes, so both sides are
    /// identically zero.
    NotApplicable,
}

impl RelationCheck {
    fn compare(lhs: &Scalar, rhs: &Scalar, tol: f64) -> Self {
        let (l, r) = (lhs.to_f64(), rhs.to_f64());
        let residual = (lhs - rhs).abs_f64();
        RelationCheck::Checked { lhs: l, rhs: r, residual, passed: residual <= tol * (1.0 + l.abs()) }
    }

    pub fn passed(&self) -> bool {
        match self {
            RelationCheck::Checked { passed, .. } => *passed,
            RelationCheck::NotApplicable => true,
        }
    }

    pub fn residual(&self) -> Option<f64> {
        match self {
            RelationCheck::Checked { residual, .. } => Some(*residual),
            RelationCheck::NotApplicable => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TripleCheck {
    pub sums: TripleSums,
    pub relations: [RelationCheck; 3],
}

impl TripleCheck {
    pub fn passed(&self) -> bool {
        self.relations.iter().all(RelationCheck::passed)
    }
}

const TRIPLE_MAX_TERMS: usize = 100_000;

/// Check the three proportions between `A`, `B` and `C`; each residual
/// `|lhs - rhs|` must be at most `tol · (1 + |lhs|)`.
///
/// Signs come from computing the characters directly, so no parity rule is
/// involved.
pub fn verify_triple_relations(tp: &TripleParams, point: &EvalPoint, tol: f64) -> Result<TripleCheck> {
    let sums = triple_sums(tp, point, (tol * 1e-3).max(1e-18), TRIPLE_MAX_TERMS)?;
    let e = tp.lower_index()?;
    let lead_a = binom_char(&tp.h, e);
    let lead_b = binom_char(&(&tp.e - &tp.h).add_int(-1), e);
    let lead_c = binom_char(&(-&tp.f).add_int(-1), e);
    let power = Scalar::one_minus_pow(point.x(), &tp.exponent());
    let (a, b, c) = (&sums.a_sum.value, &sums.b_sum.value, &sums.c_sum.value);

    let (first, second) = if lead_a.is_zero() {
        (RelationCheck::NotApplicable, RelationCheck::NotApplicable)
    } else {
        let scaled = &lead_a * &power;
        (
            RelationCheck::compare(&(&lead_b * a), &(&scaled * b), tol),
            RelationCheck::compare(&(&lead_c * a), &(&scaled * c), tol),
        )
    };
    let third = RelationCheck::compare(&(&lead_c * b), &(&lead_b * c), tol);
    Ok(TripleCheck { sums, relations: [first, second, third] })
}
